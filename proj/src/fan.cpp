#include "tropic/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropic/dd.hpp"
#include "tropic/error.hpp"
#include "tropic/lattice.hpp"
#include "tropic/linalg.hpp"

namespace tropic {

namespace {

struct RawCone {
  std::vector<IntVec> rays;  // canonical: primitive, lex-sorted
  ConeHalfspaces hs;
};

RawCone canonical_cone(const std::vector<RatVec>& gens, int rank) {
  RawCone rc;
  rc.hs = cone_to_halfspaces(gens, {}, rank);
  ConeGenerators cg = cone_from_halfspaces(rc.hs.eqs, rc.hs.ineqs, rank);
  require(cg.lineality.empty(), "fan: cone is not strongly convex");
  for (const auto& r : cg.rays) rc.rays.push_back(to_int_vec(r));
  return rc;
}

bool raw_contains(const RawCone& big, const IntVec& v) {
  RatVec x = to_rat_vec(v);
  for (const auto& e : big.hs.eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& a : big.hs.ineqs)
    if (dot(a, x) < 0) return false;
  return true;
}

bool raw_contains(const RawCone& big, const RawCone& small) {
  for (const auto& r : small.rays)
    if (!raw_contains(big, r)) return false;
  return true;
}

int matrix_rank_of(const std::vector<IntVec>& vecs) {
  if (vecs.empty()) return 0;
  RatMat m;
  for (const auto& v : vecs) m.push_back(to_rat_vec(v));
  return rank(m);
}

}  // namespace

Fan Fan::from_max_cones(const std::vector<std::vector<RatVec>>& max_gens, int rank,
                        Lattice tag) {
  require(rank >= 0, "fan: negative ambient rank");
  require(!max_gens.empty(), "fan: no cones given");
  Fan f;
  f.rank_ = rank;
  f.lattice_ = tag;

  std::vector<RawCone> raw;
  for (const auto& gens : max_gens) {
    for (const auto& g : gens)
      require(static_cast<int>(g.size()) == rank, "fan: generator of wrong length");
    raw.push_back(canonical_cone(gens, rank));
  }

  // Keep only inclusion-maximal cones, first occurrence on ties.
  std::vector<RawCone> maxc;
  for (size_t i = 0; i < raw.size(); ++i) {
    bool drop = false;
    for (size_t j = 0; j < raw.size() && !drop; ++j) {
      if (i == j) continue;
      if (!raw_contains(raw[j], raw[i])) continue;
      if (!raw_contains(raw[i], raw[j]) || j < i) drop = true;
    }
    if (!drop) maxc.push_back(raw[i]);
  }

  // Global ray table, lex-sorted.
  std::set<IntVec> ray_set;
  for (const auto& c : maxc)
    for (const auto& r : c.rays) ray_set.insert(r);
  f.rays_.assign(ray_set.begin(), ray_set.end());
  std::map<IntVec, int> ray_id;
  for (size_t i = 0; i < f.rays_.size(); ++i) ray_id[f.rays_[i]] = static_cast<int>(i);

  // Face closure of each maximal cone via facet-tightness masks.
  std::map<std::vector<int>, std::set<int>> face_owners;  // face rays -> maximal cones
  std::vector<std::vector<int>> max_keys;
  for (size_t ci = 0; ci < maxc.size(); ++ci) {
    const auto& c = maxc[ci];
    const int nr = static_cast<int>(c.rays.size());
    std::vector<std::vector<bool>> tight;
    for (const auto& a : c.hs.ineqs) {
      std::vector<bool> mask(nr, false);
      for (int r = 0; r < nr; ++r) mask[r] = dot(a, to_rat_vec(c.rays[r])) == 0;
      tight.push_back(mask);
    }
    std::set<std::vector<bool>> seen;
    std::vector<std::vector<bool>> queue{std::vector<bool>(nr, true)};
    seen.insert(queue[0]);
    while (!queue.empty()) {
      std::vector<bool> cur = queue.back();
      queue.pop_back();
      for (const auto& t : tight) {
        std::vector<bool> next(nr);
        for (int r = 0; r < nr; ++r) next[r] = cur[r] && t[r];
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    for (const auto& mask : seen) {
      std::vector<int> key;
      for (int r = 0; r < nr; ++r)
        if (mask[r]) key.push_back(ray_id.at(c.rays[r]));
      std::sort(key.begin(), key.end());
      face_owners[key].insert(static_cast<int>(ci));
    }
    std::vector<int> full;
    for (const auto& r : c.rays) full.push_back(ray_id.at(r));
    std::sort(full.begin(), full.end());
    max_keys.push_back(full);
  }
  face_owners[{}];  // zero cone is a face of every fan

  // Pairwise intersections of maximal cones must be common faces.
  for (size_t i = 0; i < maxc.size(); ++i) {
    for (size_t j = i + 1; j < maxc.size(); ++j) {
      RatMat eqs = maxc[i].hs.eqs, ineqs = maxc[i].hs.ineqs;
      eqs.insert(eqs.end(), maxc[j].hs.eqs.begin(), maxc[j].hs.eqs.end());
      ineqs.insert(ineqs.end(), maxc[j].hs.ineqs.begin(), maxc[j].hs.ineqs.end());
      ConeGenerators g = cone_from_halfspaces(eqs, ineqs, rank);
      require(g.lineality.empty(), "fan: improper intersection of cones");
      std::vector<int> key;
      for (const auto& r : g.rays) {
        auto it = ray_id.find(to_int_vec(r));
        require(it != ray_id.end(),
                "fan: cones intersect in a set that is not a common face");
        key.push_back(it->second);
      }
      std::sort(key.begin(), key.end());
      auto it = face_owners.find(key);
      require(it != face_owners.end() && it->second.count(static_cast<int>(i)) &&
                  it->second.count(static_cast<int>(j)),
              "fan: cones intersect in a set that is not a common face");
    }
  }

  // Materialize all cones, sorted by (dim, rays).
  std::vector<std::pair<std::vector<int>, std::set<int>>> entries(face_owners.begin(),
                                                                  face_owners.end());
  for (const auto& [key, owners] : entries) {
    (void)owners;
    FanCone fc;
    fc.rays = key;
    std::vector<RatVec> gens;
    std::vector<IntVec> igens;
    for (int r : key) {
      gens.push_back(to_rat_vec(f.rays_[r]));
      igens.push_back(f.rays_[r]);
    }
    ConeHalfspaces hs = cone_to_halfspaces(gens, {}, rank);
    fc.ineqs = hs.ineqs;
    fc.eqs = hs.eqs;
    fc.dim = matrix_rank_of(igens);
    f.cones_.push_back(fc);
  }
  std::sort(f.cones_.begin(), f.cones_.end(), [](const FanCone& a, const FanCone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.rays < b.rays;
  });
  for (const auto& key : max_keys) {
    int idx = f.find_cone(key);
    require(idx >= 0, "fan: lost a maximal cone");
    f.max_cones_.push_back(idx);
  }
  std::sort(f.max_cones_.begin(), f.max_cones_.end());

  // Walls: maximal pairs meeting in a face of one less dimension on both sides.
  for (size_t a = 0; a < f.max_cones_.size(); ++a) {
    for (size_t b = a + 1; b < f.max_cones_.size(); ++b) {
      const FanCone& ca = f.cones_[f.max_cones_[a]];
      const FanCone& cb = f.cones_[f.max_cones_[b]];
      std::vector<int> common;
      std::set_intersection(ca.rays.begin(), ca.rays.end(), cb.rays.begin(),
                            cb.rays.end(), std::back_inserter(common));
      int idx = f.find_cone(common);
      if (idx < 0) continue;
      if (f.cones_[idx].dim == ca.dim - 1 && f.cones_[idx].dim == cb.dim - 1)
        f.walls_.push_back({f.max_cones_[a], f.max_cones_[b], idx});
    }
  }
  return f;
}

bool Fan::cone_contains(int cone, const RatVec& x) const {
  const FanCone& c = cones_.at(cone);
  for (const auto& e : c.eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& a : c.ineqs)
    if (dot(a, x) < 0) return false;
  return true;
}

bool Fan::cone_contains_relint(int cone, const RatVec& x) const {
  const FanCone& c = cones_.at(cone);
  for (const auto& e : c.eqs)
    if (dot(e, x) != 0) return false;
  for (const auto& a : c.ineqs)
    if (dot(a, x) <= 0) return false;
  return true;
}

int Fan::locate(const RatVec& x) const {
  require(static_cast<int>(x.size()) == rank_, "fan: point of wrong length");
  for (size_t i = 0; i < cones_.size(); ++i)
    if (cone_contains(static_cast<int>(i), x)) return static_cast<int>(i);
  return -1;
}

int Fan::find_cone(const std::vector<int>& ray_idx) const {
  for (size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].rays == ray_idx) return static_cast<int>(i);
  return -1;
}

int Fan::find_ray(const IntVec& v) const {
  for (size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return static_cast<int>(i);
  return -1;
}

std::vector<RatVec> Fan::cone_generators(int cone) const {
  std::vector<RatVec> out;
  for (int r : cones_.at(cone).rays) out.push_back(to_rat_vec(rays_[r]));
  return out;
}

RatVec Fan::cone_relint_sample(int cone) const {
  RatVec x = zero_vec(rank_);
  for (int r : cones_.at(cone).rays) x = vadd(x, to_rat_vec(rays_[r]));
  return x;
}

bool Fan::is_simplicial() const {
  for (int m : max_cones_) {
    const FanCone& c = cones_[m];
    if (static_cast<int>(c.rays.size()) != c.dim) return false;
  }
  return true;
}

bool Fan::is_unimodular() const {
  if (!is_simplicial()) return false;
  for (int m : max_cones_) {
    const FanCone& c = cones_[m];
    if (c.rays.empty()) continue;
    std::vector<IntVec> gens;
    for (int r : c.rays) gens.push_back(rays_[r]);
    if (lattice_index(gens, rank_) != 1) return false;
  }
  return true;
}

bool Fan::is_complete() const {
  if (rank_ == 0) return true;
  if (max_cones_.empty()) return false;
  for (int m : max_cones_)
    if (cones_[m].dim != rank_) return false;
  for (size_t i = 0; i < cones_.size(); ++i) {
    if (cones_[i].dim != rank_ - 1) continue;
    int owners = 0;
    for (int m : max_cones_) {
      if (std::includes(cones_[m].rays.begin(), cones_[m].rays.end(),
                        cones_[i].rays.begin(), cones_[i].rays.end()))
        ++owners;
    }
    if (owners != 2) return false;
  }
  return true;
}

bool Fan::same_fan(const Fan& o) const {
  if (rank_ != o.rank_) return false;
  auto keys = [](const Fan& f) {
    std::set<std::vector<IntVec>> out;
    for (int m : f.max_cones_) {
      std::vector<IntVec> k;
      for (int r : f.cones_[m].rays) k.push_back(f.rays_[r]);
      out.insert(k);
    }
    return out;
  };
  return keys(*this) == keys(o);
}

Fan normal_fan(const Polyhedron& p) {
  require(!p.empty(), "normal fan: empty polyhedron");
  require(p.dim() == p.rank(),
          "normal fan: polyhedron is not full-dimensional, cones would not be pointed");
  const auto& verts = p.vertices();
  std::vector<std::vector<RatVec>> max_gens;
  for (const auto& v : verts) {
    RatMat ineqs;
    for (const auto& w : verts) {
      if (w == v) continue;
      ineqs.push_back(vsub(w, v));  // <w - v, y> >= 0
    }
    for (const auto& r : p.rays()) ineqs.push_back(r);
    ConeGenerators g = cone_from_halfspaces({}, ineqs, p.rank());
    require(g.lineality.empty(), "normal fan: vertex cone not pointed");
    std::vector<RatVec> gens = g.rays;
    max_gens.push_back(gens);
  }
  return Fan::from_max_cones(max_gens, p.rank(),
                             p.lattice() == Lattice::M ? Lattice::N : Lattice::M);
}

Polytope fan_polytope(const Fan& f) {
  require(!f.rays().empty(), "fan polytope: fan has no rays");
  std::vector<RatVec> pts;
  for (const auto& r : f.rays()) pts.push_back(to_rat_vec(r));
  return Polytope::from_points(pts, f.lattice());
}

bool is_refinement(const Fan& fine, const Fan& coarse) {
  if (fine.rank() != coarse.rank()) return false;
  // Every maximal cone of `fine` must land inside some cone of `coarse`.
  std::vector<int> home(fine.max_cones().size(), -1);
  for (size_t a = 0; a < fine.max_cones().size(); ++a) {
    const auto gens = fine.cone_generators(fine.max_cones()[a]);
    for (int m : coarse.max_cones()) {
      bool inside = true;
      for (const auto& g : gens)
        if (!coarse.cone_contains(m, g)) {
          inside = false;
          break;
        }
      if (inside) {
        home[a] = m;
        break;
      }
    }
    if (home[a] < 0) return false;
  }
  // Each maximal coarse cone must be covered by its fine members: some member of
  // full dimension, and every internal facet of a full-dimensional member shared
  // with a second member.
  for (int m : coarse.max_cones()) {
    const int d = coarse.cones()[m].dim;
    std::vector<int> members;
    for (size_t a = 0; a < fine.max_cones().size(); ++a)
      if (home[a] == m) members.push_back(fine.max_cones()[a]);
    bool full = false;
    for (int c : members)
      if (fine.cones()[c].dim == d) full = true;
    if (!full) return false;
    for (int c : members) {
      if (fine.cones()[c].dim != d) continue;
      for (size_t fi = 0; fi < fine.cones().size(); ++fi) {
        const FanCone& face = fine.cones()[fi];
        if (face.dim != d - 1) continue;
        if (!std::includes(fine.cones()[c].rays.begin(), fine.cones()[c].rays.end(),
                           face.rays.begin(), face.rays.end()))
          continue;
        RatVec x = fine.cone_relint_sample(static_cast<int>(fi));
        bool boundary = false;
        for (const auto& a : coarse.cones()[m].ineqs)
          if (dot(a, x) == 0) boundary = true;
        for (const auto& e : coarse.cones()[m].eqs)
          if (dot(e, x) != 0) boundary = true;  // defensive; x lies in the cone
        if (boundary) continue;
        int owners = 0;
        for (int c2 : members)
          if (fine.cones()[c2].dim == d && fine.cone_contains(c2, x)) ++owners;
        if (owners < 2) return false;
      }
    }
  }
  return true;
}

}  // namespace tropic
