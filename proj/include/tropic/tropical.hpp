#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tropic/fan.hpp"
#include "tropic/lattice.hpp"
#include "tropic/plfunction.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// Min-plus polynomial on N: value at x is the minimum of c + <m, x> over the
// terms.
struct TropTerm {
  IntVec m;
  Rat c;
};

struct TropPolynomial {
  int rank = 0;
  std::vector<TropTerm> terms;
};

// One term per lattice point of the part, with coefficient h at that point.
TropPolynomial trop_from_part(const Polytope& part, const PLFunction& h);

Rat trop_eval(const TropPolynomial& f, const RatVec& x);
std::vector<int> trop_attaining(const TropPolynomial& f, const RatVec& x);

// A polyhedron on which, for each defining polynomial, a fixed set of at
// least two terms ties for the minimum.
struct TropPiece {
  Polyhedron poly;
  std::vector<std::vector<int>> attain;  // one index list per polynomial
};

// The tie locus of f as a polyhedral complex: one piece per bounded proper
// face of the lifted term hull carrying at least two terms.
std::vector<TropPiece> corner_locus(const TropPolynomial& f);

// Support of the stable intersection: keep P cap Q for exactly the pairs
// where P meets Q and the affine directions of P and Q together span the
// ambient space, so the meet survives a generic small displacement. A seeded
// epsilon-jet displacement draw certifies genericity: drawn surviving pairs
// must be a subset of the kept pairs and must cover every kept piece.
std::vector<TropPiece> stable_intersection(const std::vector<TropPiece>& a,
                                           const std::vector<TropPiece>& b, int rank,
                                           std::uint64_t seed);

// A point of the toric variety of a fan: the orbit is named by a cone index
// and the finite coordinates live in the quotient modulo the span of the
// cone. The zero cone names the dense torus.
struct TropPoint {
  int cone = 0;
  RatVec coords;
};

// Closure of the intersection of the tie loci inside the toric variety of
// the fan: the dense pieces plus, per orbit, the projections of the pieces
// whose recession cone meets the relative interior of the orbit's cone.
class TropVariety {
 public:
  TropVariety(std::vector<TropPolynomial> polys, FanPtr fan, std::uint64_t seed);

  const FanPtr& fan() const { return fan_; }
  const std::vector<TropPolynomial>& polynomials() const { return polys_; }
  const std::vector<TropPiece>& dense_pieces() const { return pieces_; }
  int zero_cone() const { return zero_cone_; }

  struct Stratum {
    int cone = 0;
    int source_piece = -1;
    Polyhedron poly;  // in the quotient coordinates of the orbit
  };
  const std::vector<Stratum>& strata() const { return strata_; }
  std::vector<int> strata_of(int cone) const;

  const QuotientProjection& orbit_chart(int cone) const;
  TropPoint project(int cone, const RatVec& dense) const;

  bool contains_dense(const RatVec& x) const;
  bool contains(const TropPoint& p) const;

 private:
  FanPtr fan_;
  std::vector<TropPolynomial> polys_;
  std::vector<TropPiece> pieces_;
  std::vector<Stratum> strata_;
  std::map<int, QuotientProjection> charts_;
  int zero_cone_ = -1;
};

}  // namespace tropic
