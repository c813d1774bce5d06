#pragma once

#include <optional>
#include <vector>

#include "tropic/fan.hpp"
#include "tropic/plfunction.hpp"
#include "tropic/polytope.hpp"

namespace tropic {

// A reflexive lattice polytope Delta split as a Minkowski sum of lattice
// polytopes Delta_1 + ... + Delta_r, together with everything canonically
// attached to the split: the dual pair (Nabla, Nabla*), both normal fans, and
// the piecewise linear support data phi_i / phi_check_i. Construction
// cross-checks every classical identity of the duality (ray values in {0,1},
// sums of supports, hull descriptions of the polars) and throws on the first
// violation, so an inconsistent object cannot exist.
class NefPartition {
 public:
  NefPartition(Polytope delta, std::vector<Polytope> parts);

  int rank() const { return rank_; }
  int parts_count() const { return static_cast<int>(parts_.size()); }
  // Dimension of the complete intersection cut out by the partition.
  int ci_dim() const { return rank_ - parts_count(); }

  const Polytope& delta() const { return delta_; }            // in M
  const Polytope& delta_dual() const { return delta_dual_; }  // in N
  const Polytope& nabla() const { return nabla_; }            // in N
  const Polytope& nabla_dual() const { return nabla_dual_; }  // in M
  const Polytope& part(int i) const { return parts_.at(i); }            // Delta_i
  const Polytope& dual_part(int i) const { return dual_parts_.at(i); }  // Nabla_i

  const FanPtr& sigma() const { return sigma_; }              // normal fan of Delta
  const FanPtr& sigma_check() const { return sigma_check_; }  // normal fan of Nabla

  const PLFunction& phi(int i) const { return phis_.at(i); }
  const PLFunction& phi_check(int i) const { return phi_checks_.at(i); }
  const PLFunction& phi_total() const { return *phi_total_; }
  const PLFunction& phi_check_total() const { return *phi_check_total_; }

  // Sub-face of `face` spanned by the vertices with phi_i value 1 (N side) or
  // phi_check_i value 1 (M side). Every vertex must evaluate to 0 or 1; the
  // attaining set is a genuine face because the support function is linear on
  // the cone over `face`. Returns nullopt when no vertex attains 1.
  std::optional<Polytope> unit_locus(int i, const Polytope& face) const;
  // Minkowski sum of unit_locus(i, face) over all i; nullopt if any factor
  // is missing.
  std::optional<Polytope> unit_locus_sum(const Polytope& face) const;

  // Boundary lattice points of Delta* with phi_i = 1, lex-sorted. These sets
  // partition the boundary lattice points as i runs over the parts.
  const std::vector<RatVec>& boundary_alphabet(int i) const { return alphabets_.at(i); }

 private:
  int rank_ = 0;
  Polytope delta_, delta_dual_, nabla_, nabla_dual_;
  std::vector<Polytope> parts_, dual_parts_;
  FanPtr sigma_, sigma_check_;
  std::vector<PLFunction> phis_, phi_checks_;
  std::optional<PLFunction> phi_total_, phi_check_total_;
  std::vector<std::vector<RatVec>> alphabets_;
};

}  // namespace tropic
