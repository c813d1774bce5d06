#include "tropic/shuffle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tropic/error.hpp"
#include "tropic/lattice.hpp"

namespace tropic {

namespace {

constexpr int kMaxNotes = 25;

void note(ComplexCheck& check, const std::string& msg) {
  check.pass = false;
  if (static_cast<int>(check.failures.size()) < kMaxNotes) check.failures.push_back(msg);
}

// Simplex vertex lists of a pulling decomposition: cone the first vertex over
// the decompositions of the facets missing it.
std::vector<std::vector<RatVec>> pulling_simplices(const Polytope& p) {
  const auto& verts = p.vertices();
  const int dim = p.dim();
  if (static_cast<int>(verts.size()) == dim + 1) return {verts};
  const RatVec apex = verts.front();
  std::vector<std::vector<RatVec>> out;
  for (const auto& iq : p.ineqs()) {
    if (dot(iq.a, apex) == iq.b) continue;  // facet contains the apex
    std::vector<RatVec> on_facet;
    for (const RatVec& v : verts)
      if (dot(iq.a, v) == iq.b) on_facet.push_back(v);
    Polytope facet = hull(on_facet, p.lattice());
    require(facet.dim() == dim - 1, "pulling decomposition: facet dimension drop");
    for (auto piece : pulling_simplices(facet)) {
      piece.insert(piece.begin(), apex);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

// Two simplices of a triangulation must meet in a common face: every vertex
// of the intersection is a vertex of both.
bool meet_in_common_face(const Polytope& a, const Polytope& b) {
  Polyhedron cap = intersect(a, b);
  if (cap.empty()) return true;
  auto is_vertex_of = [](const RatVec& v, const Polytope& p) {
    for (const RatVec& w : p.vertices())
      if (w == v) return true;
    return false;
  };
  for (const RatVec& v : cap.vertices())
    if (!is_vertex_of(v, a) || !is_vertex_of(v, b)) return false;
  return true;
}

ComplexCheck check_triangulation(const std::vector<Polytope>& simplices,
                                 const Polytope& target, const std::string& tag,
                                 bool want_unimodular) {
  ComplexCheck check;
  const int dim = target.dim();
  Int total(0);
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const Polytope& s = simplices[i];
    std::ostringstream name;
    name << tag << " simplex " << i;
    if (static_cast<int>(s.vertices().size()) != dim + 1 || s.dim() != dim) {
      note(check, name.str() + " is not full-dimensional");
      continue;
    }
    for (const RatVec& v : s.vertices())
      if (!target.contains(v)) note(check, name.str() + " leaves the target");
    total += simplex_lattice_volume(s.vertices());
    if (want_unimodular && !is_unimodular_simplex(s.vertices()))
      note(check, name.str() + " is not unimodular");
  }
  if (total != pulling_volume(target))
    note(check, tag + ": simplex volumes do not fill the target");
  for (std::size_t i = 0; i < simplices.size(); ++i)
    for (std::size_t j = i + 1; j < simplices.size(); ++j)
      if (!meet_in_common_face(simplices[i], simplices[j])) {
        std::ostringstream os;
        os << tag << " simplices " << i << " and " << j << " overlap improperly";
        note(check, os.str());
      }
  return check;
}

}  // namespace

Int multinomial(const std::vector<int>& k) {
  Int num(1);
  int total = 0;
  for (int ki : k) {
    require(ki >= 0, "multinomial: negative part");
    for (int t = 1; t <= ki; ++t) {
      num *= (total + t);
      Int div(t);
      require(num % div == 0, "multinomial: non-integer intermediate");
      num /= div;
    }
    total += ki;
  }
  return num;
}

std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& k) {
  const int parts = static_cast<int>(k.size());
  int total = 0;
  for (int ki : k) {
    require(ki >= 0, "shuffle: negative part");
    total += ki;
  }
  std::vector<Shuffle> out;
  Shuffle cur;
  cur.counts.assign(1, std::vector<int>(parts, 0));
  std::vector<int> pos(parts, 0);
  auto rec = [&](auto&& self, int step) -> void {
    if (step == total) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < parts; ++i) {
      if (pos[i] == k[i]) continue;
      ++pos[i];
      cur.moves.push_back(i);
      cur.counts.push_back(pos);
      self(self, step + 1);
      cur.counts.pop_back();
      cur.moves.pop_back();
      --pos[i];
    }
  };
  rec(rec, 0);
  return out;
}

Shuffle shuffle_from_moves(const std::vector<int>& moves, const std::vector<int>& k) {
  const int parts = static_cast<int>(k.size());
  Shuffle s;
  s.moves = moves;
  std::vector<int> pos(parts, 0);
  s.counts.push_back(pos);
  for (int mv : moves) {
    require(mv >= 0 && mv < parts, "shuffle: move outside the composition");
    ++pos[mv];
    require(pos[mv] <= k[mv], "shuffle: move overshoots its part");
    s.counts.push_back(pos);
  }
  for (int i = 0; i < parts; ++i)
    require(pos[i] == k[i], "shuffle: walk does not end at the composition");
  return s;
}

std::vector<RatVec> staircase_vertices(const Shuffle& s,
                                       const std::vector<std::vector<RatVec>>& chains) {
  require(!chains.empty(), "staircase: no chains");
  const int n = static_cast<int>(chains.front().front().size());
  std::vector<RatVec> verts;
  for (const auto& pos : s.counts) {
    require(pos.size() == chains.size(), "staircase: walk arity mismatch");
    RatVec v = zero_vec(n);
    for (std::size_t i = 0; i < chains.size(); ++i) {
      require(pos[i] < static_cast<int>(chains[i].size()),
              "staircase: walk leaves its chain");
      v = vadd(v, chains[i][pos[i]]);
    }
    verts.push_back(std::move(v));
  }
  return verts;
}

std::vector<Polytope> staircase_triangulation(const std::vector<std::vector<RatVec>>& chains) {
  std::vector<int> k;
  for (const auto& c : chains) {
    require(!c.empty(), "staircase: empty chain");
    k.push_back(static_cast<int>(c.size()) - 1);
  }
  std::vector<Polytope> out;
  for (const Shuffle& s : enumerate_shuffles(k))
    out.push_back(hull(staircase_vertices(s, chains), Lattice::N));
  return out;
}

Int pulling_volume(const Polytope& p) {
  require(!p.empty() && p.bounded(), "pulling volume needs a polytope");
  Int vol(0);
  for (const auto& piece : pulling_simplices(p)) vol += simplex_lattice_volume(piece);
  return vol;
}

ComplexCheck verify_product_triangulation(const std::vector<std::vector<RatVec>>& chains) {
  ComplexCheck check;
  std::vector<int> k;
  Polytope product = hull(chains.front(), Lattice::N);
  k.push_back(static_cast<int>(chains.front().size()) - 1);
  for (std::size_t i = 1; i < chains.size(); ++i) {
    product = minkowski_sum(product, hull(chains[i], Lattice::N));
    k.push_back(static_cast<int>(chains[i].size()) - 1);
  }
  int expected_dim = 0;
  for (int ki : k) expected_dim += ki;
  if (product.dim() != expected_dim) {
    note(check, "chains are not affinely independent: product dimension drops");
    return check;
  }
  const std::vector<Polytope> simplices = staircase_triangulation(chains);
  if (Int(static_cast<long>(simplices.size())) != multinomial(k))
    note(check, "staircase count differs from the multinomial");
  ComplexCheck tri = check_triangulation(simplices, product, "product", false);
  if (!tri.pass) {
    check.pass = false;
    for (auto& f : tri.failures) check.failures.push_back(f);
  }
  return check;
}

std::vector<Polytope> triangulate_cell(const DualComplex& dc, int cell) {
  const auto chains = dc.ordered_points(cell);
  const Cell& c = dc.cells()[cell];
  int expected = c.nu.dim() + 1;
  require(static_cast<int>(chains.front().size()) == expected,
          "cell triangulation: first factor is not an elementary simplex");
  for (std::size_t i = 0; i < c.beta.size(); ++i)
    require(static_cast<int>(chains[i + 1].size()) == c.beta[i].dim() + 1,
            "cell triangulation: unit locus factor is not an elementary simplex");
  return staircase_triangulation(chains);
}

std::vector<Polytope> triangulate_complex(const DualComplex& dc) {
  std::vector<Polytope> out;
  for (int cell : dc.top_cells())
    for (Polytope& s : triangulate_cell(dc, cell)) out.push_back(std::move(s));
  return out;
}

ComplexCheck verify_complex_triangulation(const DualComplex& dc) {
  ComplexCheck check;
  std::vector<Polytope> all;
  for (int cell : dc.top_cells()) {
    const auto chains = dc.ordered_points(cell);
    std::vector<int> k;
    for (const auto& ch : chains) k.push_back(static_cast<int>(ch.size()) - 1);
    std::vector<Polytope> simplices = triangulate_cell(dc, cell);
    if (Int(static_cast<long>(simplices.size())) != multinomial(k)) {
      std::ostringstream os;
      os << "cell " << cell << ": staircase count differs from the multinomial";
      note(check, os.str());
    }
    std::ostringstream tag;
    tag << "cell " << cell;
    ComplexCheck tri =
        check_triangulation(simplices, dc.cells()[cell].poly, tag.str(), true);
    if (!tri.pass) {
      check.pass = false;
      for (auto& f : tri.failures) check.failures.push_back(f);
    }
    for (Polytope& s : simplices) all.push_back(std::move(s));
  }
  // Simplices of neighbouring cells must also meet in common faces, so the
  // per-cell staircases glue into one triangulation of the whole complex.
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (!meet_in_common_face(all[i], all[j])) {
        std::ostringstream os;
        os << "global simplices " << i << " and " << j << " overlap improperly";
        note(check, os.str());
      }
  return check;
}

}  // namespace tropic
