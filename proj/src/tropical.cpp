#include "tropic/tropical.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "tropic/error.hpp"
#include "tropic/linalg.hpp"
#include "tropic/lp.hpp"

namespace tropic {

namespace {

RatVec lift_term(const TropTerm& t) {
  RatVec v = to_rat_vec(t.m);
  v.push_back(t.c);
  return v;
}

}  // namespace

TropPolynomial trop_from_part(const Polytope& part, const PLFunction& h) {
  require(part.lattice() == h.fan()->lattice(),
          "tropical polynomial: part and coefficient function live on different sides");
  TropPolynomial f;
  f.rank = part.rank();
  for (const RatVec& m : lattice_points(part)) f.terms.push_back({to_int_vec(m), h.eval(m)});
  require(!f.terms.empty(), "tropical polynomial: no terms");
  return f;
}

Rat trop_eval(const TropPolynomial& f, const RatVec& x) {
  require(!f.terms.empty(), "tropical eval: no terms");
  Rat best;
  bool first = true;
  for (const TropTerm& t : f.terms) {
    Rat v = t.c + dot(to_rat_vec(t.m), x);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

std::vector<int> trop_attaining(const TropPolynomial& f, const RatVec& x) {
  Rat best = trop_eval(f, x);
  std::vector<int> out;
  for (size_t i = 0; i < f.terms.size(); ++i)
    if (f.terms[i].c + dot(to_rat_vec(f.terms[i].m), x) == best) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<TropPiece> corner_locus(const TropPolynomial& f) {
  const int n = f.rank;
  std::vector<RatVec> lifted;
  for (const TropTerm& t : f.terms) lifted.push_back(lift_term(t));
  RatVec up = zero_vec(n + 1);
  up[n] = 1;
  Polyhedron hat = Polyhedron::from_points(lifted, Lattice::M, {up});

  // Bounded faces of the lifted hull, found by closing facet incidences.
  // A face is recorded by the set of terms lying on it; it is bounded exactly
  // when one of its active facets has a positive last normal coordinate.
  const auto& facets = hat.ineqs();
  std::vector<std::vector<int>> on_facet(facets.size());
  for (size_t q = 0; q < facets.size(); ++q)
    for (size_t t = 0; t < lifted.size(); ++t)
      if (dot(facets[q].a, lifted[t]) == facets[q].b) on_facet[q].push_back(static_cast<int>(t));

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (size_t q = 0; q < facets.size(); ++q) {
    if (facets[q].a[n] <= 0) continue;  // unbounded or upper facet
    if (seen.insert(on_facet[q]).second) queue.push_back(on_facet[q]);
  }
  std::vector<std::vector<int>> bounded_faces;
  while (!queue.empty()) {
    std::vector<int> face = std::move(queue.back());
    queue.pop_back();
    if (face.size() >= 2) bounded_faces.push_back(face);
    for (size_t q = 0; q < facets.size(); ++q) {
      std::vector<int> sub;
      std::set_intersection(face.begin(), face.end(), on_facet[q].begin(), on_facet[q].end(),
                            std::back_inserter(sub));
      if (sub.empty() || sub == face) continue;
      if (seen.insert(sub).second) queue.push_back(sub);
    }
  }

  std::vector<TropPiece> out;
  for (const std::vector<int>& face : bounded_faces) {
    const TropTerm& base = f.terms[face[0]];
    std::vector<Eqn> eqs;
    for (size_t k = 1; k < face.size(); ++k) {
      const TropTerm& t = f.terms[face[k]];
      eqs.push_back({vsub(to_rat_vec(t.m), to_rat_vec(base.m)), base.c - t.c});
    }
    std::vector<Ineq> ineqs;
    std::set<int> in_face(face.begin(), face.end());
    for (size_t s = 0; s < f.terms.size(); ++s) {
      if (in_face.count(static_cast<int>(s))) continue;
      const TropTerm& t = f.terms[s];
      ineqs.push_back({vsub(to_rat_vec(t.m), to_rat_vec(base.m)), base.c - t.c});
    }
    TropPiece piece;
    piece.poly = Polyhedron::from_hrep(ineqs, eqs, n, Lattice::N);
    require(!piece.poly.empty(), "tie locus: piece of a bounded face is empty");
    piece.attain.push_back(face);
    out.push_back(std::move(piece));
  }
  return out;
}

namespace {

// Pairs kept by one displacement draw, among the given candidates.
std::set<std::pair<int, int>> displacement_pairs(const std::vector<TropPiece>& a,
                                                 const std::vector<TropPiece>& b, int n,
                                                 std::mt19937_64& rng,
                                                 const std::vector<std::pair<int, int>>& cand) {
  std::uniform_int_distribution<long> coord(-(1L << 30), 1L << 30);
  RatVec v(n);
  bool nonzero = false;
  for (int k = 0; k < n; ++k) {
    v[k] = Rat(coord(rng));
    nonzero = nonzero || v[k] != 0;
  }
  if (!nonzero) v[0] = 1;
  std::set<std::pair<int, int>> keep;
  for (const auto& [i, j] : cand) {
    std::vector<LinCon> cons;
    for (const Ineq& q : a[i].poly.ineqs()) cons.emplace_back(q.a, Rel::GE, q.b);
    for (const Eqn& e : a[i].poly.eqs()) cons.emplace_back(e.a, Rel::EQ, e.b);
    for (const Ineq& q : b[j].poly.ineqs())
      cons.emplace_back(q.a, Rel::GE, q.b, Jet(Rat(0), dot(q.a, v)));
    for (const Eqn& e : b[j].poly.eqs())
      cons.emplace_back(e.a, Rel::EQ, e.b, Jet(Rat(0), dot(e.a, v)));
    if (lp_feasible(cons, n).feasible) keep.emplace(i, j);
  }
  return keep;
}

// Directions of the affine span: a basis of the common nullspace of the
// affine-hull equations.
std::vector<RatVec> span_directions(const Polyhedron& p, int n) {
  if (p.eqs().empty()) {
    std::vector<RatVec> dirs;
    for (int k = 0; k < n; ++k) {
      RatVec e = zero_vec(n);
      e[k] = 1;
      dirs.push_back(std::move(e));
    }
    return dirs;
  }
  RatMat m;
  for (const Eqn& e : p.eqs()) m.push_back(e.a);
  return nullspace(m);
}

}  // namespace

std::vector<TropPiece> stable_intersection(const std::vector<TropPiece>& a,
                                           const std::vector<TropPiece>& b, int rank,
                                           std::uint64_t seed) {
  // Support of the limit of displaced intersections: pairs that meet and
  // whose affine spans jointly fill the ambient space.  (A displaced
  // intersection that stays nonempty for all small displacements forces a
  // plain intersection, since disjoint polyhedra keep a positive gap; a pair
  // whose joint span is deficient is separated by every displacement off the
  // span.)
  std::vector<std::vector<RatVec>> adirs, bdirs;
  for (const TropPiece& p : a) adirs.push_back(span_directions(p.poly, rank));
  for (const TropPiece& p : b) bdirs.push_back(span_directions(p.poly, rank));
  std::vector<std::pair<int, int>> cand;
  std::set<std::pair<int, int>> keep;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      std::vector<LinCon> cons;
      for (const Ineq& q : a[i].poly.ineqs()) cons.emplace_back(q.a, Rel::GE, q.b);
      for (const Eqn& e : a[i].poly.eqs()) cons.emplace_back(e.a, Rel::EQ, e.b);
      for (const Ineq& q : b[j].poly.ineqs()) cons.emplace_back(q.a, Rel::GE, q.b);
      for (const Eqn& e : b[j].poly.eqs()) cons.emplace_back(e.a, Rel::EQ, e.b);
      if (!lp_feasible(cons, rank).feasible) continue;
      cand.emplace_back(static_cast<int>(i), static_cast<int>(j));
      RatMat joint;
      for (const RatVec& d : adirs[i]) joint.push_back(d);
      for (const RatVec& d : bdirs[j]) joint.push_back(d);
      if (tropic::rank(joint) == rank) keep.emplace(static_cast<int>(i), static_cast<int>(j));
    }

  // Genericity certificate: a displaced intersection keeps only transversal
  // pairs, and every kept piece stays reachable in the displaced limit.
  std::mt19937_64 rng(seed);
  bool agreed = false;
  for (int attempt = 0; attempt < 8 && !agreed; ++attempt) {
    const std::set<std::pair<int, int>> drawn = displacement_pairs(a, b, rank, rng, cand);
    bool ok = true;
    for (const auto& pr : drawn)
      if (!keep.count(pr)) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& [i, j] : keep) {
        const RatVec x = intersect(a[i].poly, b[j].poly).relint_sample();
        bool covered = false;
        for (const auto& [di, dj] : drawn) {
          if (a[di].poly.contains(x) && b[dj].poly.contains(x)) {
            covered = true;
            break;
          }
        }
        if (!covered) {
          ok = false;
          break;
        }
      }
    agreed = ok;
  }
  require(agreed, "stable intersection: displacement draws keep disagreeing");

  std::vector<TropPiece> out;
  std::set<std::string> dedup;
  for (const auto& [i, j] : keep) {
    TropPiece piece;
    piece.poly = intersect(a[i].poly, b[j].poly);
    require(!piece.poly.empty(), "stable intersection: kept pair with empty intersection");
    piece.attain = a[i].attain;
    piece.attain.insert(piece.attain.end(), b[j].attain.begin(), b[j].attain.end());
    std::string key = piece.poly.key();
    for (const auto& lst : piece.attain) {
      key += "|";
      for (int t : lst) key += std::to_string(t) + ",";
    }
    if (dedup.insert(key).second) out.push_back(std::move(piece));
  }
  return out;
}

TropVariety::TropVariety(std::vector<TropPolynomial> polys, FanPtr fan, std::uint64_t seed)
    : fan_(std::move(fan)), polys_(std::move(polys)) {
  require(!polys_.empty(), "tropical variety: no polynomials");
  const int n = fan_->rank();
  for (const TropPolynomial& f : polys_)
    require(f.rank == n, "tropical variety: polynomial rank mismatch");
  require(fan_->is_complete(), "tropical variety: ambient fan must be complete");

  pieces_ = corner_locus(polys_[0]);
  for (size_t i = 1; i < polys_.size(); ++i)
    pieces_ = stable_intersection(pieces_, corner_locus(polys_[i]), n, seed + i);

  for (size_t c = 0; c < fan_->cones().size(); ++c) {
    if (fan_->cones()[c].dim == 0) zero_cone_ = static_cast<int>(c);
    charts_.emplace(static_cast<int>(c),
                    quotient_projection(fan_->cone_generators(static_cast<int>(c)), n));
  }
  require(zero_cone_ >= 0, "tropical variety: fan without a zero cone");

  // Orbit strata: project the pieces whose recession cone meets the open cone.
  for (size_t c = 0; c < fan_->cones().size(); ++c) {
    const FanCone& cone = fan_->cones()[c];
    if (cone.dim == 0) continue;
    for (size_t p = 0; p < pieces_.size(); ++p) {
      const Polyhedron& poly = pieces_[p].poly;
      std::vector<LinCon> cons;
      for (const Ineq& q : poly.ineqs()) cons.emplace_back(q.a, Rel::GE, Rat(0));
      for (const Eqn& e : poly.eqs()) cons.emplace_back(e.a, Rel::EQ, Rat(0));
      for (const RatVec& a : cone.ineqs) cons.emplace_back(a, Rel::GT, Rat(0));
      for (const RatVec& a : cone.eqs) cons.emplace_back(a, Rel::EQ, Rat(0));
      if (!lp_feasible(cons, n).feasible) continue;
      const QuotientProjection& qp = charts_.at(static_cast<int>(c));
      RatMat q = to_rat_mat(qp.q);
      Stratum st;
      st.cone = static_cast<int>(c);
      st.source_piece = static_cast<int>(p);
      st.poly = affine_image(poly, q, zero_vec(n - cone.dim), Lattice::N);
      strata_.push_back(std::move(st));
    }
  }
}

std::vector<int> TropVariety::strata_of(int cone) const {
  std::vector<int> out;
  for (size_t s = 0; s < strata_.size(); ++s)
    if (strata_[s].cone == cone) out.push_back(static_cast<int>(s));
  return out;
}

const QuotientProjection& TropVariety::orbit_chart(int cone) const {
  auto it = charts_.find(cone);
  require(it != charts_.end(), "tropical variety: unknown cone");
  return it->second;
}

TropPoint TropVariety::project(int cone, const RatVec& dense) const {
  const QuotientProjection& qp = orbit_chart(cone);
  TropPoint p;
  p.cone = cone;
  p.coords.assign(qp.q.size(), Rat(0));
  for (size_t row = 0; row < qp.q.size(); ++row)
    for (size_t k = 0; k < dense.size(); ++k) p.coords[row] += Rat(qp.q[row][k]) * dense[k];
  return p;
}

bool TropVariety::contains_dense(const RatVec& x) const {
  for (const TropPiece& p : pieces_)
    if (p.poly.contains(x)) return true;
  return false;
}

bool TropVariety::contains(const TropPoint& p) const {
  if (p.cone == zero_cone_) return contains_dense(p.coords);
  for (const Stratum& st : strata_)
    if (st.cone == p.cone && st.poly.contains(p.coords)) return true;
  return false;
}

}  // namespace tropic
