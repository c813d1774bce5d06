#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropic/dual_complex.hpp"
#include "tropic/tropical.hpp"

namespace tropic {

// The retraction from the compactified tropical variety onto the boundary
// cell complex. A point is contracted through a pair of cells tau' <= tau:
// project along the cone over mu of tau', take the unique preimage under that
// projection inside the open chain region of the pair, and certify that the
// point differs from its image by an element of the monoid generated by the
// unit loci of tau' (allowing infinite coordinates). The value is independent
// of the chosen pair; evaluation checks that on every call.
class Contraction {
 public:
  Contraction(const DualComplex& dc, const TropVariety& tv);

  const DualComplex& complex() const { return *dc_; }
  const TropVariety& variety() const { return *tv_; }

  struct Branch {
    int tau_prime = -1;
    int tau = -1;
    RatVec w;
  };

  // All pairs (tau', tau) whose chart region contains p, with the section
  // value of each.
  std::vector<Branch> branches(const TropPoint& p) const;
  // Contraction value; requires p on the variety and at least one branch, and
  // checks that all branches agree.
  RatVec eval(const TropPoint& p) const;
  std::optional<RatVec> try_eval(const TropPoint& p) const;

  // Membership of p in the chart region of the pair; fills the section value.
  bool in_chart_region(int tau_prime, int tau, const TropPoint& p, RatVec* w_out) const;
  // Membership in the union over tau' <= tau (the region contracting onto the
  // open star of tau).
  bool in_total_region(int tau, const TropPoint& p) const;

  // Deterministic probe pool: relative interior samples and vertex/ray mixes
  // of every dense piece and every orbit stratum, plus region-built points.
  std::vector<TropPoint> probe_points(std::uint64_t seed) const;

  // The contraction fixes the boundary complex pointwise.
  ComplexCheck verify_identity_on_skeleton() const;
  // delta composed with itself equals delta on the probe pool.
  ComplexCheck verify_idempotent(std::uint64_t seed) const;
  // Every probe point admitting several branch pairs gets one value.
  ComplexCheck verify_chart_independence(std::uint64_t seed) const;
  // Preimage of the open star of any cell equals the union of its chart
  // regions, tested pointwise on the probe pool.
  ComplexCheck verify_preimage_law(std::uint64_t seed) const;
  // Adding the unit-locus cone of a vertex (or of the cell itself) to the
  // open cell leaves the variety nowhere except the open cell: exact
  // emptiness certificates piece by piece, including the orbit strata.
  ComplexCheck verify_star_cone_lemma() const;
  // The vertex chart composed with the contraction is affine with integer
  // slopes on every region piece over a vertex region: slopes measured by
  // exact line search, affineness confirmed on extra samples.
  ComplexCheck verify_affine_charts() const;

 private:
  const DualComplex* dc_;
  const TropVariety* tv_;

  std::vector<RatVec> unit_locus_generators(int cell) const;
  std::optional<RatVec> section_point(int tau_prime, int tau, const RatVec& y) const;
};

}  // namespace tropic
