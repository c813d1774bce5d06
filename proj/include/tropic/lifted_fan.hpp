#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropic/fan.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// Decomposition of a cone of the lifted fan into its horizontal part mu (a
// polytope on the boundary of delta_dual) and its height-one part nu (a
// polytope inside the correction polytope): the cone is
// cone(mu x {0}) + cone(nu x {1}).
struct LiftedCone {
  int family = 0;  // 1 = horizontal only, 2 = mixed, 3 = height-one only
  std::optional<Polytope> mu;
  std::optional<Polytope> nu;
};

// Fan in N x Z built from pairs (F1, F2) of a proper face F1 of `delta_dual`
// and a face F2 of `correction` with F1 + F2 a face of the Minkowski sum:
// cones cone(F1) x {0}, cone(F1) x {0} + cone(F2 x {1}) and cone(F2 x {1}).
// Equals the normal fan of the Minkowski sum of the parts lifted above the
// graph of the correction function (checked by the callers).
Fan build_lifted_fan(const Polytope& delta_dual, const Polytope& correction);

// Reads mu and nu off an arbitrary cone (works for cones of refinements too).
// Requires horizontal generators on the boundary of delta_dual and
// non-horizontal generators of the form (n, 1) with n in the correction.
LiftedCone classify_lifted_cone(const Fan& fan, int cone, const Polytope& delta_dual,
                                const Polytope& correction);

struct LiftedCheck {
  bool pass = true;
  std::vector<std::string> failures;
};

// Structural conditions a refinement of the lifted fan must satisfy before a
// cell complex can be read off it: refines `lifted`, restricts on height zero
// to exactly `sigma_prime`, horizontal rays are generated by boundary lattice
// points of delta_dual, non-horizontal rays have the form (n, 1) with n a
// lattice point of the correction polytope, and every cone is unimodular.
LiftedCheck check_lifted_conditions(const Fan& fine, const Fan& lifted, const Fan& sigma_prime,
                                    const Polytope& delta_dual, const Polytope& correction);

}  // namespace tropic
