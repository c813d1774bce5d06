#pragma once

#include "tropic/linalg.hpp"

namespace tropic {

// Surjective integer projection matrix Q ((n-r) x n) whose kernel is the
// saturation of the integer span of `gens` (r = rank). Comes with an integer
// right inverse (n x (n-r)) so quotient classes can be lifted back.
struct QuotientProjection {
  IntMat q;
  IntMat lift;   // q * lift = identity on the quotient
  IntMat basis;  // lattice basis of the saturated span (n x r as columns -> stored as r rows)
  int ambient = 0;
  int rank = 0;
};

QuotientProjection quotient_projection(const std::vector<RatVec>& gens, int ambient);

// Lattice basis (as rows) of sat(span gens) = span_Q(gens) cap Z^n.
std::vector<IntVec> saturation_basis(const std::vector<RatVec>& gens, int ambient);

// Normalized lattice volume factor of the parallelepiped spanned by integer
// vectors inside their saturated span: the index [sat(span) : Z-span].
// Equals 1 exactly when the vectors extend to a lattice basis.
Int lattice_index(const std::vector<IntVec>& vecs, int ambient);

// Normalized volume of the lattice simplex conv{v0..vk} with respect to the
// lattice Z^n cap aff-direction; vertices must be integral.
Int simplex_lattice_volume(const std::vector<RatVec>& verts);

bool is_unimodular_simplex(const std::vector<RatVec>& verts);

}  // namespace tropic
