#include "tropic/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tropic {

namespace {

// Scale (a, b) so a is a primitive integer vector; keeps the halfspace.
void canonicalize_constraint(RatVec& a, Rat& b) {
  RatVec full = a;
  full.push_back(b);
  IntVec prim = primitive(full);
  // primitive() preserves orientation, so the inequality direction survives.
  for (size_t i = 0; i < a.size(); ++i) a[i] = Rat(prim[i]);
  b = Rat(prim[a.size()]);
}

std::vector<RatVec> dedupe_sorted(std::vector<RatVec> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Polyhedron Polyhedron::from_points(const std::vector<RatVec>& pts, Lattice tag,
                                   const std::vector<RatVec>& rays) {
  Polyhedron p;
  p.lattice_ = tag;
  if (pts.empty()) {
    require(rays.empty(), "polyhedron with rays but no points");
    return p;
  }
  p.rank_ = static_cast<int>(pts[0].size());
  int h = p.rank_ + 1;
  std::vector<RatVec> gens;
  for (const RatVec& q : pts) {
    require(static_cast<int>(q.size()) == p.rank_, "hull: point dimension mismatch");
    RatVec g{Rat(1)};
    g.insert(g.end(), q.begin(), q.end());
    gens.push_back(std::move(g));
  }
  for (const RatVec& r : rays) {
    require(static_cast<int>(r.size()) == p.rank_, "hull: ray dimension mismatch");
    require(!is_zero(r), "hull: zero recession ray");
    RatVec g{Rat(0)};
    g.insert(g.end(), r.begin(), r.end());
    gens.push_back(std::move(g));
  }
  ConeHalfspaces hrep = cone_to_halfspaces(gens, {}, h);
  std::vector<Ineq> ineqs;
  std::vector<Eqn> eqs;
  for (const RatVec& row : hrep.eqs) {
    RatVec a(row.begin() + 1, row.end());
    if (is_zero(a)) continue;
    Rat b = -row[0];
    canonicalize_constraint(a, b);
    eqs.push_back({a, b});
  }
  for (const RatVec& row : hrep.ineqs) {
    RatVec a(row.begin() + 1, row.end());
    if (is_zero(a)) continue;  // the vacuous t >= 0 facet
    Rat b = -row[0];
    canonicalize_constraint(a, b);
    ineqs.push_back({a, b});
  }
  Polyhedron out = from_hrep(ineqs, eqs, p.rank_, tag);
  // Cross-check: the generator form produced every input point and ray.
  for (const RatVec& q : pts)
    require(out.contains(q), "hull: derived facets exclude input point " + vec_string(q));
  require(!out.empty(), "hull: internal inconsistency (empty result)");
  return out;
}

Polyhedron Polyhedron::from_hrep(const std::vector<Ineq>& ineqs, const std::vector<Eqn>& eqs,
                                 int rank, Lattice tag) {
  Polyhedron p;
  p.rank_ = rank;
  p.lattice_ = tag;
  int h = rank + 1;
  RatMat ceqs, cineqs;
  for (const Eqn& e : eqs) {
    RatVec row{-e.b};
    row.insert(row.end(), e.a.begin(), e.a.end());
    ceqs.push_back(std::move(row));
  }
  for (const Ineq& q : ineqs) {
    RatVec row{-q.b};
    row.insert(row.end(), q.a.begin(), q.a.end());
    cineqs.push_back(std::move(row));
  }
  {
    RatVec trow = zero_vec(h);
    trow[0] = 1;
    cineqs.push_back(std::move(trow));  // homogenization t >= 0
  }
  ConeGenerators gens = cone_from_halfspaces(ceqs, cineqs, h);
  std::vector<RatVec> verts, rrays, lin;
  for (const RatVec& g : gens.rays) {
    if (g[0] > 0) {
      RatVec v(g.begin() + 1, g.end());
      verts.push_back(vscale(1 / g[0], v));
    } else {
      RatVec r(g.begin() + 1, g.end());
      if (!is_zero(r)) rrays.push_back(to_rat_vec(primitive(r)));
    }
  }
  for (const RatVec& g : gens.lineality) {
    RatVec l(g.begin() + 1, g.end());
    require(g[0] == 0, "from_hrep: lineality with nonzero homogenizing coordinate");
    if (!is_zero(l)) lin.push_back(to_rat_vec(primitive(l)));
  }
  // No generator at homogenizing level 1 means the slice t=1 is empty even when
  // the homogenized cone keeps nontrivial recession directions.
  if (verts.empty()) return p;
  p.empty_ = false;
  p.vertices_ = dedupe_sorted(std::move(verts));
  p.rays_ = dedupe_sorted(std::move(rrays));
  p.lineality_ = dedupe_sorted(std::move(lin));
  // Recompute the irredundant facet description from the generator form so the
  // stored H-representation is canonical regardless of the input.
  std::vector<RatVec> hom;
  for (const RatVec& v : p.vertices_) {
    RatVec g{Rat(1)};
    g.insert(g.end(), v.begin(), v.end());
    hom.push_back(std::move(g));
  }
  for (const RatVec& r : p.rays_) {
    RatVec g{Rat(0)};
    g.insert(g.end(), r.begin(), r.end());
    hom.push_back(std::move(g));
  }
  std::vector<RatVec> hlin;
  for (const RatVec& l : p.lineality_) {
    RatVec g{Rat(0)};
    g.insert(g.end(), l.begin(), l.end());
    hlin.push_back(std::move(g));
  }
  ConeHalfspaces hrep = cone_to_halfspaces(hom, hlin, h);
  for (const RatVec& row : hrep.eqs) {
    RatVec a(row.begin() + 1, row.end());
    if (is_zero(a)) continue;
    Rat b = -row[0];
    canonicalize_constraint(a, b);
    p.eqs_.push_back({a, b});
  }
  for (const RatVec& row : hrep.ineqs) {
    RatVec a(row.begin() + 1, row.end());
    if (is_zero(a)) continue;
    Rat b = -row[0];
    canonicalize_constraint(a, b);
    p.ineqs_.push_back({a, b});
  }
  std::sort(p.eqs_.begin(), p.eqs_.end(), [](const Eqn& x, const Eqn& y) {
    RatVec vx = x.a, vy = y.a;
    vx.push_back(x.b);
    vy.push_back(y.b);
    return lex_less(vx, vy);
  });
  std::sort(p.ineqs_.begin(), p.ineqs_.end(), [](const Ineq& x, const Ineq& y) {
    RatVec vx = x.a, vy = y.a;
    vx.push_back(x.b);
    vy.push_back(y.b);
    return lex_less(vx, vy);
  });
  // Cross-check between representations.
  for (const RatVec& v : p.vertices_) {
    for (const Ineq& q : ineqs)
      require(dot(q.a, v) >= q.b, "from_hrep: vertex violates an input inequality");
    for (const Eqn& e : eqs)
      require(dot(e.a, v) == e.b, "from_hrep: vertex violates an input equation");
  }
  RatMat eqrows;
  for (const Eqn& e : p.eqs_) eqrows.push_back(e.a);
  p.dim_ = p.rank_ - (eqrows.empty() ? 0 : tropic::rank(eqrows));
  return p;
}

bool Polyhedron::contains(const RatVec& x) const {
  if (empty_) return false;
  for (const Eqn& e : eqs_)
    if (dot(e.a, x) != e.b) return false;
  for (const Ineq& q : ineqs_)
    if (dot(q.a, x) < q.b) return false;
  return true;
}

bool Polyhedron::contains_relint(const RatVec& x) const {
  if (empty_) return false;
  for (const Eqn& e : eqs_)
    if (dot(e.a, x) != e.b) return false;
  for (const Ineq& q : ineqs_)
    if (dot(q.a, x) <= q.b) return false;
  return true;
}

RatVec Polyhedron::relint_sample() const {
  require(!empty_, "relint_sample: empty polyhedron");
  RatVec s = zero_vec(rank_);
  for (const RatVec& v : vertices_) s = vadd(s, v);
  s = vscale(Rat(1, static_cast<long>(vertices_.size())), s);
  for (const RatVec& r : rays_) s = vadd(s, r);
  return s;
}

bool Polyhedron::is_lattice() const {
  for (const RatVec& v : vertices_)
    if (!is_integral(v)) return false;
  return true;
}

bool Polyhedron::operator==(const Polyhedron& o) const {
  return rank_ == o.rank_ && lattice_ == o.lattice_ && empty_ == o.empty_ &&
         vertices_ == o.vertices_ && rays_ == o.rays_ && lineality_ == o.lineality_;
}

std::string Polyhedron::key() const {
  std::ostringstream os;
  os << lattice_name(lattice_) << rank_ << "|";
  for (const RatVec& v : vertices_) os << vec_string(v);
  os << "|";
  for (const RatVec& r : rays_) os << vec_string(r);
  os << "|";
  for (const RatVec& l : lineality_) os << vec_string(l);
  return os.str();
}

Polytope hull(const std::vector<RatVec>& pts, Lattice tag) {
  require(!pts.empty(), "hull: empty point set");
  return Polyhedron::from_points(pts, tag);
}

Polytope polar_dual(const Polytope& p) {
  require(!p.empty() && p.bounded(), "polar_dual: bounded nonempty polytope required");
  require(p.dim() == p.rank(),
          "polar_dual: polytope is not full-dimensional (affine hull is a proper subspace)");
  for (const Ineq& q : p.ineqs()) {
    std::ostringstream os;
    if (q.b >= 0) {
      os << "polar_dual: origin is not interior; facet " << vec_string(q.a)
         << " . x >= " << q.b.get_str() << " excludes it";
      fail(os.str());
    }
  }
  std::vector<Ineq> dual_ineqs;
  for (const RatVec& v : p.vertices()) dual_ineqs.push_back({v, Rat(-1)});
  Lattice dual_tag = p.lattice() == Lattice::M ? Lattice::N : Lattice::M;
  Polytope d = Polyhedron::from_hrep(dual_ineqs, {}, p.rank(), dual_tag);
  require(d.bounded(), "polar_dual: dual is unbounded (origin interior check failed)");
  return d;
}

bool is_reflexive(const Polytope& p) {
  if (p.empty() || !p.bounded() || p.dim() != p.rank() || !p.is_lattice()) return false;
  for (const Ineq& q : p.ineqs())
    if (q.b >= 0) return false;
  return polar_dual(p).is_lattice();
}

Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  require(p.lattice() == q.lattice(),
          std::string("minkowski_sum: lattice tag mismatch (") + lattice_name(p.lattice()) +
              " vs " + lattice_name(q.lattice()) + ")");
  require(p.rank() == q.rank(), "minkowski_sum: ambient rank mismatch");
  if (p.empty() || q.empty()) return Polyhedron();
  std::vector<RatVec> pts;
  for (const RatVec& a : p.vertices())
    for (const RatVec& b : q.vertices()) pts.push_back(vadd(a, b));
  std::vector<RatVec> rays = p.rays();
  rays.insert(rays.end(), q.rays().begin(), q.rays().end());
  rays.insert(rays.end(), p.lineality().begin(), p.lineality().end());
  for (const RatVec& l : p.lineality()) rays.push_back(vscale(Rat(-1), l));
  rays.insert(rays.end(), q.lineality().begin(), q.lineality().end());
  for (const RatVec& l : q.lineality()) rays.push_back(vscale(Rat(-1), l));
  return Polyhedron::from_points(pts, p.lattice(), rays);
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  require(p.rank() == q.rank() && p.lattice() == q.lattice(),
          "intersect: ambient mismatch");
  if (p.empty() || q.empty()) return Polyhedron();
  std::vector<Ineq> ineqs = p.ineqs();
  ineqs.insert(ineqs.end(), q.ineqs().begin(), q.ineqs().end());
  std::vector<Eqn> eqs = p.eqs();
  eqs.insert(eqs.end(), q.eqs().begin(), q.eqs().end());
  return Polyhedron::from_hrep(ineqs, eqs, p.rank(), p.lattice());
}

Polyhedron affine_image(const Polyhedron& p, const RatMat& mat, const RatVec& off, Lattice tag) {
  if (p.empty()) return Polyhedron();
  std::vector<RatVec> pts, rays;
  for (const RatVec& v : p.vertices()) pts.push_back(vadd(mat_vec(mat, v), off));
  for (const RatVec& r : p.rays()) {
    RatVec img = mat_vec(mat, r);
    if (!is_zero(img)) rays.push_back(img);
  }
  for (const RatVec& l : p.lineality()) {
    RatVec img = mat_vec(mat, l);
    if (!is_zero(img)) {
      rays.push_back(img);
      rays.push_back(vscale(Rat(-1), img));
    }
  }
  return Polyhedron::from_points(pts, tag, rays);
}

Polyhedron translate(const Polyhedron& p, const RatVec& off) {
  return affine_image(p, rat_identity(p.rank()), off, p.lattice());
}

Polyhedron dilate(const Polyhedron& p, const Rat& c) {
  require(c > 0, "dilate: positive factor required");
  RatMat m = rat_identity(p.rank());
  for (int i = 0; i < p.rank(); ++i) m[i][i] = c;
  return affine_image(p, m, zero_vec(p.rank()), p.lattice());
}

ConeGenerators recession_cone(const Polyhedron& p) {
  ConeGenerators out;
  out.rays = p.rays();
  out.lineality = p.lineality();
  return out;
}

FaceLattice face_lattice(const Polytope& p) {
  require(!p.empty(), "face_lattice: empty polytope");
  require(p.bounded(), "face_lattice: bounded polytope required");
  size_t nv = p.vertices().size();
  size_t nf = p.ineqs().size();
  // Tight vertex sets per facet.
  std::vector<std::vector<bool>> facet_mask(nf, std::vector<bool>(nv, false));
  for (size_t i = 0; i < nf; ++i)
    for (size_t j = 0; j < nv; ++j)
      facet_mask[i][j] = dot(p.ineqs()[i].a, p.vertices()[j]) == p.ineqs()[i].b;
  std::vector<bool> full(nv, true);
  std::map<std::vector<bool>, std::vector<int>> seen;  // mask -> facets tight on it
  seen[full] = {};
  std::vector<std::vector<bool>> frontier{full};
  while (!frontier.empty()) {
    std::vector<std::vector<bool>> next;
    for (const auto& mask : frontier)
      for (size_t i = 0; i < nf; ++i) {
        std::vector<bool> inter(nv);
        bool nonempty = false;
        for (size_t j = 0; j < nv; ++j) {
          inter[j] = mask[j] && facet_mask[i][j];
          nonempty = nonempty || inter[j];
        }
        if (!nonempty || inter == mask) continue;
        if (seen.emplace(inter, std::vector<int>{}).second) next.push_back(inter);
      }
    frontier = std::move(next);
  }
  FaceLattice fl;
  for (auto& [mask, facets] : seen) {
    Face f;
    for (size_t j = 0; j < nv; ++j)
      if (mask[j]) f.verts.push_back(static_cast<int>(j));
    for (size_t i = 0; i < nf; ++i) {
      bool tight = true;
      for (int j : f.verts) tight = tight && facet_mask[i][j];
      if (tight) f.facets.push_back(static_cast<int>(i));
    }
    RatMat dirs;
    for (size_t k = 1; k < f.verts.size(); ++k)
      dirs.push_back(vsub(p.vertices()[f.verts[k]], p.vertices()[f.verts[0]]));
    f.dim = dirs.empty() ? 0 : rank(dirs);
    fl.faces.push_back(std::move(f));
  }
  std::sort(fl.faces.begin(), fl.faces.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.verts < b.verts;
  });
  fl.top = static_cast<int>(fl.faces.size()) - 1;
  fl.f_vector.assign(p.dim(), 0);
  for (const Face& f : fl.faces)
    if (f.dim < p.dim()) ++fl.f_vector[f.dim];
  // Hasse covers: containment with dim difference one.
  for (size_t i = 0; i < fl.faces.size(); ++i)
    for (size_t j = 0; j < fl.faces.size(); ++j) {
      if (fl.faces[j].dim != fl.faces[i].dim + 1) continue;
      if (std::includes(fl.faces[j].verts.begin(), fl.faces[j].verts.end(),
                        fl.faces[i].verts.begin(), fl.faces[i].verts.end())) {
        fl.faces[i].parents.push_back(static_cast<int>(j));
        fl.faces[j].children.push_back(static_cast<int>(i));
      }
    }
  return fl;
}

std::vector<RatVec> face_points(const Polytope& p, const Face& f) {
  std::vector<RatVec> pts;
  for (int j : f.verts) pts.push_back(p.vertices()[j]);
  return pts;
}

std::vector<RatVec> lattice_points(const Polytope& p) {
  require(!p.empty(), "lattice_points: empty polytope");
  require(p.bounded(), "lattice_points: bounded polytope required");
  int n = p.rank();
  std::vector<Int> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rat mn = p.vertices()[0][i], mx = mn;
    for (const RatVec& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_rat(mn);
    hi[i] = floor_rat(mx);
  }
  std::vector<RatVec> out;
  RatVec cur(n);
  auto scan = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (p.contains(cur)) out.push_back(cur);
      return;
    }
    for (Int x = lo[i]; x <= hi[i]; ++x) {
      cur[i] = Rat(x);
      self(self, i + 1);
    }
  };
  scan(scan, 0);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool is_face_of(const Polytope& q, const Polytope& p) {
  if (q.empty()) return true;
  FaceLattice fl = face_lattice(p);
  for (const Face& f : fl.faces) {
    std::vector<RatVec> pts = face_points(p, f);
    std::sort(pts.begin(), pts.end(), lex_less);
    if (pts == q.vertices()) return true;
  }
  return false;
}

}  // namespace tropic
