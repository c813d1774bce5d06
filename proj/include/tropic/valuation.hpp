#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropic/contraction.hpp"
#include "tropic/dual_complex.hpp"
#include "tropic/shuffle.hpp"

namespace tropic {

// Monomial chart attached to a maximal cell: the factor lattice points lifted
// at heights one (first factor) and zero (the others) form a basis of the
// lifted lattice, and the dual basis indexes the chart coordinates. flat(i, j)
// is the row of the j-th point of factor i.
class ChartBasis {
 public:
  ChartBasis(const DualComplex& dc, int top_cell);

  int cell() const { return cell_; }
  int parts() const { return static_cast<int>(k_.size()); }
  int dim() const { return dim_; }    // sum of the factor degrees
  int rank() const { return rank_; }  // lifted lattice rank = dim + parts
  const std::vector<int>& degrees() const { return k_; }
  int flat(int i, int j) const;
  const IntVec& gen(int i, int j) const;   // lifted factor point
  const IntVec& dual(int i, int j) const;  // dual basis vector
  const IntMat& gens() const { return gens_; }
  const IntMat& duals() const { return duals_; }
  const std::vector<std::vector<RatVec>>& factor_points() const { return pts_; }
  // Point of the complex picking position jpos[i] in factor i.
  RatVec complex_point(const std::vector<int>& jpos) const;

 private:
  int cell_ = -1, dim_ = 0, rank_ = 0;
  std::vector<int> k_, offset_;
  std::vector<std::vector<RatVec>> pts_;
  IntMat gens_, duals_;
};

// One monotone walk through the factor positions of a chart together with the
// blow-up bookkeeping it drives. A full walk advances every factor to its last
// position; a partial walk advances the first factor fully, stops early in at
// least one other factor, and gets one extra formal step. Monomial maps are
// integer exponent matrices: row a lists the exponents expressing the source
// coordinate a in the target coordinates, so composition is matrix product.
class BlowupWalk {
 public:
  BlowupWalk(const ChartBasis& cb, Shuffle s, bool full);

  const ChartBasis& chart() const { return *cb_; }
  const Shuffle& shuffle() const { return s_; }
  bool full() const { return full_; }
  int steps() const;  // number of genuine walk steps
  const std::vector<int>& degree() const { return p_; }
  int last_level() const { return lbar_; }

  int move(int l) const;      // factor advanced at step l; 0 for the extra step
  int count(int i, int l) const;  // position of factor i after l steps
  std::vector<int> active(int l) const;  // factors still short of the end, plus 0
  std::vector<int> active_except_next(int l) const;
  int completion_level(int i) const;  // first level where factor i is done

  // Level data of full walks, l = 1 .. dim+1.
  IntVec level_gen(int l) const;   // sum over factors of gen(i, count(i, l-1))
  IntVec level_dual(int l) const;  // telescoping dual combination

  // Pullback exponents of the single blow-up at step l, l = 1 .. last_level().
  IntMat step_map(int l) const;
  // Product of the first l step maps, and its closed form.
  IntMat composed_map(int l) const;
  IntMat composed_map_closed(int l) const;
  // Final chart coordinates over the start coordinates: the inverse of the
  // fully composed map. Closed form for full walks only.
  IntMat chart_map() const;
  IntMat chart_map_closed() const;

 private:
  const ChartBasis* cb_ = nullptr;
  Shuffle s_;
  bool full_ = false;
  std::vector<int> p_, li_;
  int lbar_ = 0;
};

std::vector<BlowupWalk> full_walks(const ChartBasis& cb);
std::vector<BlowupWalk> partial_walks(const ChartBasis& cb);

// For every maximal cell and every walk: iterated blow-up maps match their
// closed forms, the final chart rows are the pairing vectors of the level
// duals, the level duals telescope to the height form, and the dual pairings
// against level generators follow the staircase pattern.
ComplexCheck verify_chart_identities(const DualComplex& dc);

// The valuation along each level divisor, read off the composed exponent
// matrix, recovers the level generator; its height-zero part is a vertex of
// the complex, and every vertex arises this way.
ComplexCheck verify_divisor_points(const DualComplex& dc);

// Piecewise linear retraction onto the staircase simplices at the
// distinguished vertex. Each maximal cell at the vertex contributes one region
// per full walk, cut out by the level-dual functionals; on it the retraction
// is the barycentric combination of the staircase vertices.
class VertexRetraction {
 public:
  explicit VertexRetraction(const DualComplex& dc);
  // Walks point into the chart storage.
  VertexRetraction(const VertexRetraction&) = delete;
  VertexRetraction& operator=(const VertexRetraction&) = delete;

  const std::vector<int>& chart_cells() const { return cells_; }
  const ChartBasis& chart(int c) const { return charts_.at(c); }
  const std::vector<BlowupWalk>& walks(int c) const { return walks_.at(c); }
  int chart_count() const { return static_cast<int>(charts_.size()); }

  // Membership of a finite point: barycentric weights nonnegative, the last
  // one positive, slack of every further factor nonnegative. Weights are
  // returned through `levels` when requested.
  bool in_region(int c, int walk, const RatVec& w, RatVec* levels = nullptr) const;
  RatVec retract(int c, int walk, const RatVec& w) const;
  // Retraction through any region containing w; all matches must agree.
  std::optional<RatVec> retract_any(const RatVec& w) const;
  // Closure of the region in ambient coordinates.
  Polyhedron region_polyhedron(int c, int walk) const;

  // On samples of region-and-piece intersections the retraction must agree
  // with the contraction, and land in the open star of the vertex.
  ComplexCheck verify_against_contraction(const Contraction& con, std::uint64_t seed,
                                          int* samples_out = nullptr) const;

 private:
  const DualComplex* dc_ = nullptr;
  std::vector<int> cells_;
  std::vector<ChartBasis> charts_;
  std::vector<std::vector<BlowupWalk>> walks_;
};

}  // namespace tropic
