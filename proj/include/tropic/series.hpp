#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropic/contraction.hpp"
#include "tropic/dual_complex.hpp"
#include "tropic/rational.hpp"
#include "tropic/tropical.hpp"
#include "tropic/valuation.hpp"

namespace tropic {

// Power series in s with exact rational coefficients, truncated after s^order.
// Binary operations require matching truncation orders.
class TruncSeries {
 public:
  explicit TruncSeries(int order, const Rat& constant = Rat(0));
  static TruncSeries monomial(int order, int k, const Rat& c);

  int order() const { return static_cast<int>(a_.size()) - 1; }
  const Rat& coeff(int k) const;
  void set_coeff(int k, const Rat& c);
  // Exponent of the lowest stored nonzero term; order + 1 when all vanish.
  int valuation() const;
  bool is_zero() const { return valuation() > order(); }
  bool is_unit() const { return coeff(0) != 0; }

 private:
  std::vector<Rat> a_;
};

TruncSeries add(const TruncSeries& x, const TruncSeries& y);
TruncSeries sub(const TruncSeries& x, const TruncSeries& y);
TruncSeries mul(const TruncSeries& x, const TruncSeries& y);
TruncSeries scale(const Rat& c, const TruncSeries& x);
TruncSeries shift(const TruncSeries& x, int k);  // multiply by s^k, k >= 0
TruncSeries inverse(const TruncSeries& x);       // requires a unit
// Integer power; negative exponents invert, so x must then be a unit.
TruncSeries power(const TruncSeries& x, const Int& e);

// A closed point over the field of fractional power series: s = t^(1/q) and
// coordinate j is s^val[j] times the stored unit. trop() is the vector of
// t-adic coordinate valuations val/q.
struct SeriesPoint {
  int q = 1;
  std::vector<Int> val;
  std::vector<TruncSeries> unit;

  int dim() const { return static_cast<int>(val.size()); }
  RatVec trop() const;
};

// One seeded coefficient in 1..9 per term, turning the min-plus data into an
// honest one-parameter family gamma_m t^(c_m) z^m whose coordinatewise
// valuations reproduce the tropical picture.
std::vector<Rat> seeded_coefficients(const TropPolynomial& f, std::uint64_t seed);

// The family evaluated at the point, divided by s^(minimal term valuation):
// zero through the truncation order exactly when the point solves the family
// to that order. Every term valuation q*c_m + <m, val> must be integral.
TruncSeries eval_family(const TropPolynomial& f, const std::vector<Rat>& gamma,
                        const SeriesPoint& p);

struct HenselCertificate {
  int residual_valuation = 0;  // exceeds the truncation order on success
  bool derivative_unit = false;
  int newton_steps = 0;
};

// Newton-lift a solution of the family with coordinate valuations w. The
// attaining set of w must be exactly two terms with primitive exponent
// difference: a unimodular substitution turns the leading binomial into a
// simple rational root in one coordinate while the others become seeded
// constant units. Returns nothing when w is unsuitable, so callers resample.
std::optional<SeriesPoint> hensel_sample(const TropPolynomial& f,
                                         const std::vector<Rat>& gamma, const RatVec& w,
                                         int trunc, std::uint64_t seed,
                                         HenselCertificate* cert = nullptr);

struct SampleReport {
  int accepted = 0;
  int attempted = 0;
  ComplexCheck check;
};

// Draw valuation vectors on the tropical hypersurface inside the contraction
// region of the distinguished vertex, lift each to a series solution, and
// check exactly on every accepted sample: the lift solves the family through
// the truncation order, its valuation vector is the drawn point, the level
// valuations of the staircase monomials read off the lift match the
// retraction weights, and their combination of staircase vertices equals the
// contraction value. Fails unless `target` samples are accepted.
SampleReport verify_sampled_commutation(const DualComplex& dc, const Contraction& con,
                                        const VertexRetraction& vr, int target, int trunc,
                                        std::uint64_t seed);

}  // namespace tropic
