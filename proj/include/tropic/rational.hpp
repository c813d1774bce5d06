#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tropic/error.hpp"

namespace tropic {

// Exact arbitrary-precision arithmetic everywhere; no floating point in any
// geometric predicate. mpq_class keeps values canonical (gcd 1, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

// Side of the dual pairing a lattice object lives on.
enum class Lattice { M, N };

inline const char* lattice_name(Lattice l) { return l == Lattice::M ? "M" : "N"; }

inline Rat rat(long num, long den = 1) {
  require(den != 0, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "123" or "-3/4"; used by the JSON readers.
Rat parse_rat(const std::string& s);
std::string rat_string(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

RatVec rat_vec(const std::vector<long>& v);
IntVec int_vec(const std::vector<long>& v);
RatVec to_rat_vec(const IntVec& v);
// Requires every entry integral.
IntVec to_int_vec(const RatVec& v);
bool is_integral(const RatVec& v);

Rat dot(const RatVec& a, const RatVec& b);
RatVec vadd(const RatVec& a, const RatVec& b);
RatVec vsub(const RatVec& a, const RatVec& b);
RatVec vscale(const Rat& c, const RatVec& a);
bool is_zero(const RatVec& a);
RatVec zero_vec(int n);

// Lexicographic order; the canonical sort used for all serialized output.
bool lex_less(const RatVec& a, const RatVec& b);

std::string vec_string(const RatVec& v);

}  // namespace tropic
