#pragma once

#include <vector>

#include "tropic/dual_complex.hpp"

namespace tropic {

// Monotone lattice walk from the origin to the composition k: each move
// advances one component by one. Walks are produced in lexicographic move
// order, so enumeration order is deterministic.
struct Shuffle {
  std::vector<int> moves;                 // component advanced at each step
  std::vector<std::vector<int>> counts;   // counts[l] = position after l moves
};

Int multinomial(const std::vector<int>& k);
std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& k);
// Rebuild the count table from a move list, validating it ends at k.
Shuffle shuffle_from_moves(const std::vector<int>& moves, const std::vector<int>& k);

// Vertex l of the staircase simplex is the sum over chains of the point at
// the walk position after l moves.
std::vector<RatVec> staircase_vertices(const Shuffle& s,
                                       const std::vector<std::vector<RatVec>>& chains);

// All staircase simplices of the product of the chains' hulls.
std::vector<Polytope> staircase_triangulation(const std::vector<std::vector<RatVec>>& chains);

// Normalized lattice volume via a pulling decomposition into simplices.
Int pulling_volume(const Polytope& p);

// The staircase simplices triangulate the Minkowski sum of the chain hulls:
// counts match the multinomial, simplices sit inside the sum, volumes add up,
// and any two simplices meet in a common face.
ComplexCheck verify_product_triangulation(const std::vector<std::vector<RatVec>>& chains);

// Staircase triangulation of one cell of the boundary complex on its
// alphabet-ordered factors, and of the whole complex.
std::vector<Polytope> triangulate_cell(const DualComplex& dc, int cell);
std::vector<Polytope> triangulate_complex(const DualComplex& dc);

// Per-cell counts match multinomials, simplices are unimodular, volumes add
// up cell by cell, and simplices from any two cells meet in common faces, so
// neighbouring cells induce the same triangulation on shared faces.
ComplexCheck verify_complex_triangulation(const DualComplex& dc);

}  // namespace tropic
