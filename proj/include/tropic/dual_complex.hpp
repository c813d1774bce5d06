#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropic/lattice.hpp"
#include "tropic/lifted_fan.hpp"
#include "tropic/nef.hpp"

namespace tropic {

// One cell of the boundary complex: the Minkowski sum of the per-part unit
// loci of mu and the height-one polytope nu of the mixed cone it comes from.
struct Cell {
  Polytope poly;
  Polytope mu;                // horizontal part of the witness cone
  Polytope nu;                // height-one part of the witness cone
  std::vector<Polytope> beta;  // unit loci of mu, one per part
  int cone = -1;               // index of the witness cone in the fine fan
  int dim = 0;
  std::vector<int> faces;    // all proper faces among the cells
  std::vector<int> cofaces;  // all cells having this one as a proper face
  RatVec anchor;             // vertex centroid; the point itself for vertices
};

// A strictly increasing sequence of cells in the face order together with the
// simplex spanned by their anchors.
struct Chain {
  std::vector<int> cells;
  std::vector<RatVec> verts;
  Polytope simplex;
  bool in_gamma = false;  // first cell has dim >= 1 and last has dim <= d-1
};

struct ComplexCheck {
  bool pass = true;
  std::vector<std::string> failures;
};

// The cell complex cut out of the boundary of nabla_h by the mixed cones of a
// fine lifted fan, together with its barycentric-type chain subdivision, the
// discriminant subcomplex, the per-vertex and per-cell integral affine charts
// and the distinguished-vertex-rooted orders on the label alphabets.
class DualComplex {
 public:
  DualComplex(const NefPartition& np, FanPtr base_fan, FanPtr fine_fan, Polytope correction,
              Polytope nabla_h, std::optional<RatVec> distinguished = std::nullopt);

  int dim() const { return dim_; }
  const NefPartition& partition() const { return *np_; }
  const FanPtr& base_fan() const { return base_; }
  const FanPtr& fine_fan() const { return fine_; }
  const Fan& lifted_fan() const { return lifted_; }
  const Polytope& correction() const { return correction_; }
  const Polytope& nabla_h() const { return nabla_h_; }
  const LiftedCheck& structure_check() const { return structure_check_; }

  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<int>& vertex_cells() const { return vertex_cells_; }
  const std::vector<int>& top_cells() const { return top_cells_; }
  std::vector<int> f_vector() const;

  const std::vector<Chain>& chains() const { return chains_; }
  // Index of the unique chain whose simplex has x in its relative interior;
  // -1 when x is outside the complex.
  int locate_chain(const RatVec& x) const;
  // Smallest cell containing x; -1 when outside.
  int cell_at(const RatVec& x) const;
  bool in_gamma(const RatVec& x) const;
  // Open star of the anchor of `cell` in the chain subdivision.
  bool in_open_star(int cell, const RatVec& x) const;
  // Union of open chain simplices starting at the vertex cell `vcell`.
  bool in_vertex_region(int vcell, const RatVec& x) const;
  // Union of open chain simplices starting at `start` and passing through `mid`.
  bool in_region_pair(int start, int mid, const RatVec& x) const;
  std::vector<int> chains_from(int start) const;
  std::vector<int> chains_through(int cell) const;
  std::vector<int> chains_from_through(int start, int mid) const;

  // Vertex cell sitting at the given point; -1 if none.
  int vertex_cell_at(const RatVec& x) const;

  // Integral projection along the span of the vertex labels; a chart of the
  // affine structure on the open region of the vertex.
  const QuotientProjection& vertex_chart(int vcell) const;
  struct CellChart {
    RatVec base;
    std::vector<IntVec> basis;  // lattice basis of the direction space
  };
  const CellChart& cell_chart(int cell) const { return cell_charts_.at(cell); }
  // Coordinates of x in the cell chart; errors when x is off the affine hull.
  RatVec cell_coords(int cell, const RatVec& x) const;

  // Cone of the base fan equal to the cone over mu of the cell.
  int cone_in_base(int cell) const { return cone_in_base_.at(cell); }

  // Label alphabets: index 0 holds the height-one alphabet (boundary lattice
  // points of the correction polytope), index i >= 1 the boundary lattice
  // points of delta_dual owned by part i-1. Orders are lexicographic with the
  // distinguished vertex's own component moved to the end.
  const std::vector<RatVec>& alphabet(int i) const { return alphabets_.at(i); }
  int order_position(int i, const RatVec& pt) const;
  // Lattice points of the factors (nu, beta_1, ..., beta_r) of a cell, each
  // list sorted by its alphabet order.
  std::vector<std::vector<RatVec>> ordered_points(int cell) const;
  int distinguished_vertex() const { return distinguished_; }
  // Alphabet positions of the vertex label, comparable lexicographically.
  std::vector<int> label_key(int vcell) const;

  // Chart compatibility: for every top cell and every vertex of it, the
  // vertex chart composed with the inverse cell chart must be integral affine
  // with determinant +-1.
  ComplexCheck verify_transitions() const;

 private:
  const NefPartition* np_ = nullptr;
  FanPtr base_, fine_;
  Fan lifted_;
  Polytope correction_, nabla_h_;
  LiftedCheck structure_check_;
  int dim_ = 0;
  std::vector<Cell> cells_;
  std::map<std::string, int> cell_index_;
  std::vector<int> vertex_cells_, top_cells_;
  std::vector<Chain> chains_;
  std::vector<std::vector<RatVec>> alphabets_;
  int distinguished_ = -1;
  std::map<int, QuotientProjection> vertex_charts_;
  std::vector<CellChart> cell_charts_;
  std::vector<int> cone_in_base_;
};

}  // namespace tropic
