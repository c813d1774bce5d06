#pragma once

#include <memory>
#include <vector>

#include "tropic/polytope.hpp"

namespace tropic {

// A cone of a fan: extreme rays (as indices into the fan's ray table) plus
// its own irredundant H-representation. All cones are strongly convex.
struct FanCone {
  std::vector<int> rays;  // sorted indices
  RatMat ineqs;           // a . x >= 0
  RatMat eqs;             // a . x  = 0
  int dim = 0;
};

// Rational polyhedral fan: finitely many strongly convex cones closed under
// faces, any two intersecting in a common face (validated on construction).
class Fan {
 public:
  static Fan from_max_cones(const std::vector<std::vector<RatVec>>& max_gens, int rank,
                            Lattice tag);

  int rank() const { return rank_; }
  Lattice lattice() const { return lattice_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<FanCone>& cones() const { return cones_; }
  const std::vector<int>& max_cones() const { return max_cones_; }

  bool cone_contains(int cone, const RatVec& x) const;
  bool cone_contains_relint(int cone, const RatVec& x) const;
  // Smallest cone containing x, or -1 when x is outside the support.
  int locate(const RatVec& x) const;
  // Cone index with exactly this sorted ray index set, or -1.
  int find_cone(const std::vector<int>& ray_idx) const;
  // Index of a ray vector in the ray table, or -1.
  int find_ray(const IntVec& v) const;

  std::vector<RatVec> cone_generators(int cone) const;
  RatVec cone_relint_sample(int cone) const;

  // Pairs of maximal cones sharing a codimension-one face, with that face.
  struct Wall {
    int c1, c2, face;
  };
  const std::vector<Wall>& walls() const { return walls_; }

  bool is_simplicial() const;
  bool is_unimodular() const;
  bool is_complete() const;

  // Same rank and same set of maximal cones (by canonical generator sets).
  bool same_fan(const Fan& o) const;

 private:
  int rank_ = 0;
  Lattice lattice_ = Lattice::N;
  std::vector<IntVec> rays_;
  std::vector<FanCone> cones_;
  std::vector<int> max_cones_;
  std::vector<Wall> walls_;
};

using FanPtr = std::shared_ptr<const Fan>;

// Inner-normal fan of a full-dimensional polyhedron: the maximal cone at a
// vertex v collects the directions minimized at v. Lives on the dual lattice
// side. Errors on lower-dimensional input (cones would not be pointed).
Fan normal_fan(const Polyhedron& p);

// Convex hull of the primitive ray generators.
Polytope fan_polytope(const Fan& f);

// Every maximal cone of `fine` contained in a cone of `coarse` and supports equal.
bool is_refinement(const Fan& fine, const Fan& coarse);

}  // namespace tropic
