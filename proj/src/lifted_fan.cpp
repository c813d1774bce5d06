#include "tropic/lifted_fan.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "tropic/dd.hpp"
#include "tropic/error.hpp"
#include "tropic/linalg.hpp"

namespace tropic {

namespace {

RatVec with_height(const RatVec& v, long h) {
  RatVec w = v;
  w.emplace_back(h);
  return w;
}

RatVec drop_height(const RatVec& v) { return RatVec(v.begin(), v.end() - 1); }

// Cone containment via the halfspace description of the container.
struct ConeBody {
  std::vector<RatVec> gens;
  ConeHalfspaces hs;
};

bool cone_leq(const ConeBody& a, const ConeBody& b) {
  for (const auto& g : a.gens) {
    for (const auto& e : b.hs.eqs)
      if (dot(e, g) != 0) return false;
    for (const auto& q : b.hs.ineqs)
      if (dot(q, g) < 0) return false;
  }
  return true;
}

std::string gens_key(std::vector<RatVec> gens) {
  for (auto& g : gens) g = to_rat_vec(primitive(g));
  std::sort(gens.begin(), gens.end(), lex_less);
  std::string key;
  for (const auto& g : gens) key += vec_string(g) + ";";
  return key;
}

bool on_boundary(const Polytope& p, const RatVec& x) {
  return p.contains(x) && !p.contains_relint(x);
}

std::vector<Polytope> face_polytopes(const Polytope& p, bool include_top) {
  FaceLattice fl = face_lattice(p);
  std::vector<Polytope> out;
  for (size_t i = 0; i < fl.faces.size(); ++i) {
    if (!include_top && static_cast<int>(i) == fl.top) continue;
    out.push_back(hull(face_points(p, fl.faces[i]), p.lattice()));
  }
  return out;
}

}  // namespace

Fan build_lifted_fan(const Polytope& delta_dual, const Polytope& correction) {
  require(delta_dual.lattice() == Lattice::N && correction.lattice() == Lattice::N,
          "lifted fan: both polytopes must live in N");
  require(delta_dual.rank() == correction.rank(), "lifted fan: ambient rank mismatch");
  const int n = delta_dual.rank();
  const Polyhedron sum = minkowski_sum(delta_dual, correction);

  std::vector<Polytope> f1 = face_polytopes(delta_dual, /*include_top=*/false);
  std::vector<Polytope> f2 = face_polytopes(correction, /*include_top=*/true);

  std::vector<std::vector<RatVec>> candidates;
  auto add = [&](const Polytope* a, const Polytope* b) {
    std::vector<RatVec> gens;
    if (a != nullptr)
      for (const auto& v : a->vertices()) gens.push_back(with_height(v, 0));
    if (b != nullptr)
      for (const auto& w : b->vertices()) gens.push_back(with_height(w, 1));
    candidates.push_back(std::move(gens));
  };
  for (const Polytope& a : f1) add(&a, nullptr);
  for (const Polytope& b : f2) add(nullptr, &b);
  for (const Polytope& a : f1)
    for (const Polytope& b : f2)
      if (is_face_of(minkowski_sum(a, b), sum)) add(&a, &b);

  // Keep one representative per cone and drop cones inside a bigger one.
  std::map<std::string, ConeBody> bodies;
  for (auto& gens : candidates) {
    std::string key = gens_key(gens);
    if (bodies.count(key)) continue;
    ConeHalfspaces hs = cone_to_halfspaces(gens, {}, n + 1);
    bodies.emplace(std::move(key), ConeBody{std::move(gens), std::move(hs)});
  }
  std::vector<std::vector<RatVec>> max_gens;
  for (const auto& [key, body] : bodies) {
    bool maximal = true;
    for (const auto& [other_key, other] : bodies) {
      if (other_key == key) continue;
      if (cone_leq(body, other) && !cone_leq(other, body)) {
        maximal = false;
        break;
      }
    }
    if (maximal) max_gens.push_back(body.gens);
  }
  return Fan::from_max_cones(max_gens, n + 1, Lattice::N);
}

LiftedCone classify_lifted_cone(const Fan& fan, int cone, const Polytope& delta_dual,
                                const Polytope& correction) {
  const int n = delta_dual.rank();
  require(fan.rank() == n + 1, "lifted cone: fan rank mismatch");
  std::vector<RatVec> horizontal, lifted;
  for (const RatVec& g : fan.cone_generators(cone)) {
    const Rat& h = g.back();
    require(h >= 0, "lifted cone: generator below height zero");
    if (h == 0) {
      RatVec v = drop_height(g);
      require(on_boundary(delta_dual, v),
              "lifted cone: horizontal generator off the boundary of delta_dual");
      horizontal.push_back(std::move(v));
    } else {
      require(h == 1, "lifted cone: non-horizontal generator not at height one");
      RatVec v = drop_height(g);
      require(is_integral(v) && correction.contains(v),
              "lifted cone: height-one generator outside the correction polytope");
      lifted.push_back(std::move(v));
    }
  }
  LiftedCone out;
  if (!horizontal.empty()) out.mu = hull(horizontal, Lattice::N);
  if (!lifted.empty()) out.nu = hull(lifted, Lattice::N);
  out.family = out.mu && out.nu ? 2 : (out.mu ? 1 : 3);
  require(out.mu || out.nu, "lifted cone: zero cone has no type");

  // The cone must be recovered from the two parts; in particular no generator
  // may be interior to the hull of the others.
  std::vector<RatVec> rebuilt;
  if (out.mu)
    for (const auto& v : out.mu->vertices()) rebuilt.push_back(with_height(v, 0));
  if (out.nu)
    for (const auto& w : out.nu->vertices()) rebuilt.push_back(with_height(w, 1));
  require(gens_key(rebuilt) == gens_key(fan.cone_generators(cone)),
          "lifted cone: cannot decompose cone into horizontal and height-one parts");
  return out;
}

LiftedCheck check_lifted_conditions(const Fan& fine, const Fan& lifted, const Fan& sigma_prime,
                                    const Polytope& delta_dual, const Polytope& correction) {
  LiftedCheck rep;
  auto fail = [&rep](std::string msg) {
    rep.pass = false;
    rep.failures.push_back(std::move(msg));
  };
  const int n = delta_dual.rank();
  if (fine.rank() != n + 1) {
    fail("fan rank is not ambient rank plus one");
    return rep;
  }

  if (!is_refinement(fine, lifted)) fail("fan does not refine the lifted fan");

  for (size_t r = 0; r < fine.rays().size(); ++r) {
    const IntVec& ray = fine.rays()[r];
    RatVec v = drop_height(to_rat_vec(ray));
    if (ray.back() == 0) {
      if (!on_boundary(delta_dual, v))
        fail("horizontal ray " + vec_string(to_rat_vec(ray)) +
             " is not a boundary lattice point of delta_dual");
    } else if (ray.back() == 1) {
      if (!correction.contains(v))
        fail("ray " + vec_string(to_rat_vec(ray)) + " is not (n, 1) with n in the correction");
    } else {
      fail("ray " + vec_string(to_rat_vec(ray)) + " has height other than 0 or 1");
    }
  }

  // Height-zero slice must reproduce sigma_prime exactly: every sliced maximal
  // cone is a cone of sigma_prime and every maximal cone of sigma_prime shows
  // up as a slice.
  std::vector<std::vector<RatVec>> slices;
  for (int mc : fine.max_cones()) {
    std::vector<RatVec> slice;
    for (const RatVec& g : fine.cone_generators(mc))
      if (g.back() == 0) slice.push_back(drop_height(g));
    if (!slice.empty()) slices.push_back(std::move(slice));
  }
  std::vector<bool> max_seen(sigma_prime.max_cones().size(), false);
  for (const auto& slice : slices) {
    ConeHalfspaces hs = cone_to_halfspaces(slice, {}, n);
    bool matched = false;
    for (size_t c = 0; c < sigma_prime.cones().size() && !matched; ++c) {
      bool fwd = true;
      for (const auto& g : slice)
        if (!sigma_prime.cone_contains(static_cast<int>(c), g)) fwd = false;
      if (!fwd) continue;
      bool bwd = true;
      for (const auto& g : sigma_prime.cone_generators(static_cast<int>(c))) {
        for (const auto& e : hs.eqs)
          if (dot(e, g) != 0) bwd = false;
        for (const auto& q : hs.ineqs)
          if (dot(q, g) < 0) bwd = false;
      }
      if (!bwd) continue;
      matched = true;
      for (size_t k = 0; k < sigma_prime.max_cones().size(); ++k)
        if (sigma_prime.max_cones()[k] == static_cast<int>(c)) max_seen[k] = true;
    }
    if (!matched) {
      std::string gens;
      for (const auto& g : slice) gens += vec_string(g) + " ";
      fail("height-zero slice {" + gens + "} is not a cone of the base fan");
    }
  }
  for (size_t k = 0; k < max_seen.size(); ++k)
    if (!max_seen[k])
      fail("maximal cone " + std::to_string(sigma_prime.max_cones()[k]) +
           " of the base fan is not a height-zero slice");

  if (!fine.is_unimodular()) fail("fan has a non-unimodular cone");
  return rep;
}

}  // namespace tropic
