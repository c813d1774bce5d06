#pragma once

#include <optional>
#include <vector>

#include "tropic/rational.hpp"

namespace tropic {

// Dense row-major matrices over the rationals / integers. Sizes here are
// desk-scale (rank <= ~10, a few hundred rows), so simplicity wins.
using RatMat = std::vector<RatVec>;
using IntMat = std::vector<IntVec>;

RatMat rat_identity(int n);
RatMat rat_zero(int rows, int cols);
RatMat transpose(const RatMat& a);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_vec(const RatMat& a, const RatVec& x);

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMat& a);
int rank(RatMat a);
Rat det(RatMat a);

// Solves a x = b; empty optional when inconsistent. Underdetermined systems
// return the particular solution with non-pivot coordinates zero.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);
// Basis of { x : a x = 0 }.
std::vector<RatVec> nullspace(const RatMat& a);
// Inverse of a square nonsingular matrix; errors otherwise.
RatMat inverse(const RatMat& a);

// Integer helpers.
IntMat int_identity(int n);
RatMat to_rat_mat(const IntMat& a);
IntMat to_int_mat(const RatMat& a);
Int int_det(IntMat a);

// Scales a nonzero rational vector to the primitive integer vector on the
// same ray (integral entries, gcd 1, same orientation).
IntVec primitive(const RatVec& v);

struct SmithResult {
  IntMat u;  // unimodular, rows x rows
  IntMat d;  // diagonal with divisibility chain d[i] | d[i+1]
  IntMat v;  // unimodular, cols x cols, with u * a * v = d
};
SmithResult smith_normal_form(const IntMat& a);

}  // namespace tropic
