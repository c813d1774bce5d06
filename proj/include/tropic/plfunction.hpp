#pragma once

#include <vector>

#include "tropic/fan.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// Piecewise linear function on a fan, stored as one linear functional per
// maximal cone. Functionals are validated to agree on shared faces.
class PLFunction {
 public:
  PLFunction(FanPtr fan, RatMat functionals);

  // Interpolates prescribed values at the rays (one per fan ray, in ray-table
  // order). Errors if the values are not linear on some maximal cone.
  static PLFunction from_ray_values(FanPtr fan, const RatVec& values);

  // phi(y) = -min_{x in P} <x, y>: the convex support-style function of P on
  // `fan`, which must refine the normal fan of P (errors otherwise).
  static PLFunction support_function(const Polytope& p, FanPtr fan);

  const FanPtr& fan() const { return fan_; }
  const RatMat& functionals() const { return functionals_; }
  const RatVec& functional_on(int max_cone_position) const {
    return functionals_.at(max_cone_position);
  }

  Rat eval(const RatVec& x) const;  // errors outside the support
  RatVec ray_values() const;

  bool is_convex() const;
  bool is_strictly_convex() const;
  bool is_integral() const;  // integer values on all rays

  PLFunction operator+(const PLFunction& o) const;  // same fan required
  PLFunction scale(const Rat& c) const;

  // Convex hull of the negated functionals; equals P for support_function(P).
  // Requires a convex function on a complete fan.
  Polytope newton_polytope() const;

 private:
  FanPtr fan_;
  RatMat functionals_;  // indexed like fan_->max_cones()
};

// {(x, l) : x in base, l >= h(x)} inside rank+1 ambient space. Requires h
// convex on a complete fan over the lattice of `base`.
Polyhedron lift_above_graph(const Polytope& base, const PLFunction& h);

// Transport h to a finer fan; every maximal cone of `fine` inherits the
// functional of the cone of h's fan it sits inside. Errors when a cone of
// `fine` straddles two domains of linearity.
PLFunction restrict_pl(const PLFunction& h, FanPtr fine);

}  // namespace tropic
