#pragma once

#include "tropic/linalg.hpp"

namespace tropic {

// Generator form of a (not necessarily pointed) rational polyhedral cone:
// cone = span(lineality) + cone(rays), with rays extreme modulo lineality.
// Rays are scaled to primitive integer vectors; everything sorted lex so the
// representation is canonical.
struct ConeGenerators {
  std::vector<RatVec> lineality;
  std::vector<RatVec> rays;
};

// Facet form: { x : eq . x = 0, ineq . x >= 0 } with irredundant facets.
struct ConeHalfspaces {
  RatMat eqs;
  RatMat ineqs;
};

// Double description: extreme rays + lineality of the intersection
// { x in R^n : eqs x = 0, ineqs x >= 0 }.
ConeGenerators cone_from_halfspaces(const RatMat& eqs, const RatMat& ineqs, int n);

// Inverse direction (runs the same algorithm on the dual side).
ConeHalfspaces cone_to_halfspaces(const std::vector<RatVec>& rays,
                                  const std::vector<RatVec>& lineality, int n);

}  // namespace tropic
