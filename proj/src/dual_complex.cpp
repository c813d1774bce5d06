#include "tropic/dual_complex.hpp"

#include <algorithm>
#include <utility>

#include "tropic/error.hpp"
#include "tropic/linalg.hpp"

namespace tropic {

namespace {

bool on_boundary(const Polytope& p, const RatVec& x) {
  return p.contains(x) && !p.contains_relint(x);
}

RatVec centroid(const Polytope& p) {
  RatVec c = zero_vec(p.rank());
  for (const RatVec& v : p.vertices()) c = vadd(c, v);
  return vscale(Rat(1, static_cast<long>(p.vertices().size())), c);
}

}  // namespace

DualComplex::DualComplex(const NefPartition& np, FanPtr base_fan, FanPtr fine_fan,
                         Polytope correction, Polytope nabla_h,
                         std::optional<RatVec> distinguished)
    : np_(&np),
      base_(std::move(base_fan)),
      fine_(std::move(fine_fan)),
      correction_(std::move(correction)),
      nabla_h_(std::move(nabla_h)) {
  const int n = np.rank();
  const int r = np.parts_count();
  require(np.ci_dim() >= 2, "cell complex: needs codimension leaving dimension at least two");
  require(base_->rank() == n && fine_->rank() == n + 1, "cell complex: fan rank mismatch");

  lifted_ = build_lifted_fan(np.delta_dual(), correction_);
  structure_check_ =
      check_lifted_conditions(*fine_, lifted_, *base_, np.delta_dual(), correction_);
  require(structure_check_.pass,
          "cell complex: fine fan fails the structural conditions: " +
              (structure_check_.failures.empty() ? std::string() : structure_check_.failures[0]));

  // Cells: one per mixed cone whose horizontal part has a nonempty unit locus
  // for every component.
  struct Raw {
    Polytope poly, mu, nu;
    std::vector<Polytope> beta;
    int cone;
  };
  std::vector<Raw> raw;
  std::map<std::string, size_t> seen;
  for (size_t c = 0; c < fine_->cones().size(); ++c) {
    if (fine_->cones()[c].dim == 0) continue;
    LiftedCone lc = classify_lifted_cone(*fine_, static_cast<int>(c), np.delta_dual(), correction_);
    if (lc.family != 2) continue;
    std::vector<Polytope> beta;
    bool relevant = true;
    for (int i = 0; i < r && relevant; ++i) {
      auto b = np.unit_locus(i, *lc.mu);
      if (!b)
        relevant = false;
      else
        beta.push_back(std::move(*b));
    }
    if (!relevant) continue;
    Polyhedron cell = *lc.nu;
    for (const Polytope& b : beta) cell = minkowski_sum(cell, b);
    auto it = seen.find(cell.key());
    if (it != seen.end()) {
      const Raw& prev = raw[it->second];
      require(prev.mu == *lc.mu && prev.nu == *lc.nu,
              "cell complex: two mixed cones with different parts give the same cell");
      continue;
    }
    seen.emplace(cell.key(), raw.size());
    raw.push_back({std::move(cell), std::move(*lc.mu), std::move(*lc.nu), std::move(beta),
                   static_cast<int>(c)});
  }
  require(!raw.empty(), "cell complex: no cell survives the relevance condition");

  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    int da = a.poly.dim(), db = b.poly.dim();
    return da != db ? da < db : a.poly.key() < b.poly.key();
  });
  for (auto& rw : raw) {
    Cell cell;
    cell.poly = std::move(rw.poly);
    cell.mu = std::move(rw.mu);
    cell.nu = std::move(rw.nu);
    cell.beta = std::move(rw.beta);
    cell.cone = rw.cone;
    cell.dim = cell.poly.dim();
    cell.anchor = cell.dim == 0 ? cell.poly.vertices()[0] : centroid(cell.poly);
    cell_index_.emplace(cell.poly.key(), static_cast<int>(cells_.size()));
    cells_.push_back(std::move(cell));
  }

  for (Cell& cell : cells_) {
    // The factor dimensions must add up to the cell dimension: the Minkowski
    // sum splits directions as a direct sum.
    int parts_dim = cell.nu.dim();
    for (const Polytope& b : cell.beta) parts_dim += b.dim();
    require(parts_dim == cell.dim, "cell complex: factor dimensions do not add up");
    for (const RatVec& v : cell.poly.vertices())
      require(on_boundary(nabla_h_, v), "cell complex: cell vertex off the boundary of nabla_h");
  }

  // Closure under faces, then the full face order.
  for (const Cell& cell : cells_) {
    FaceLattice fl = face_lattice(cell.poly);
    for (size_t f = 0; f < fl.faces.size(); ++f) {
      if (static_cast<int>(f) == fl.top) continue;
      Polytope fp = hull(face_points(cell.poly, fl.faces[f]), cell.poly.lattice());
      require(cell_index_.count(fp.key()) == 1, "cell complex: face of a cell is not a cell");
    }
  }
  for (size_t i = 0; i < cells_.size(); ++i)
    for (size_t j = 0; j < cells_.size(); ++j) {
      if (i == j) continue;
      if (cells_[i].dim >= cells_[j].dim) continue;
      if (is_face_of(cells_[i].poly, cells_[j].poly)) {
        cells_[i].cofaces.push_back(static_cast<int>(j));
        cells_[j].faces.push_back(static_cast<int>(i));
      }
    }

  dim_ = 0;
  for (const Cell& cell : cells_) dim_ = std::max(dim_, cell.dim);
  require(dim_ == np.ci_dim(), "cell complex: top dimension differs from the expected one");
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim == 0) vertex_cells_.push_back(static_cast<int>(i));
    if (cells_[i].dim == dim_) top_cells_.push_back(static_cast<int>(i));
    bool covered = cells_[i].dim == dim_;
    for (int cf : cells_[i].cofaces) covered = covered || cells_[cf].dim == dim_;
    require(covered, "cell complex: cell not contained in any top cell");
  }

  // Chain subdivision. Cells are sorted by dimension, so every chain is an
  // increasing index sequence and extending by cofaces is enough.
  std::vector<std::vector<int>> stack;
  for (size_t i = 0; i < cells_.size(); ++i) stack.push_back({static_cast<int>(i)});
  while (!stack.empty()) {
    std::vector<int> chain = std::move(stack.back());
    stack.pop_back();
    Chain rec;
    rec.cells = chain;
    for (int c : chain) rec.verts.push_back(cells_[c].anchor);
    rec.in_gamma = cells_[chain.front()].dim >= 1 && cells_[chain.back()].dim <= dim_ - 1;
    RatMat dirs;
    for (size_t k = 1; k < rec.verts.size(); ++k)
      dirs.push_back(vsub(rec.verts[k], rec.verts[0]));
    require(dirs.empty() || rank(dirs) == static_cast<int>(dirs.size()),
            "cell complex: chain anchors are affinely dependent");
    rec.simplex = hull(rec.verts, Lattice::N);
    chains_.push_back(std::move(rec));
    for (int cf : cells_[chain.back()].cofaces) {
      std::vector<int> ext = chain;
      ext.push_back(cf);
      stack.push_back(std::move(ext));
    }
  }
  std::sort(chains_.begin(), chains_.end(),
            [](const Chain& a, const Chain& b) { return a.cells < b.cells; });

  // Label alphabets with the distinguished-vertex components moved to the end.
  alphabets_.assign(r + 1, {});
  if (correction_.dim() == 0) {
    alphabets_[0].push_back(correction_.vertices()[0]);
  } else {
    for (const RatVec& p : lattice_points(correction_))
      if (on_boundary(correction_, p)) alphabets_[0].push_back(p);
  }
  for (int i = 0; i < r; ++i) alphabets_[i + 1] = np.boundary_alphabet(i);

  if (distinguished) {
    distinguished_ = vertex_cell_at(*distinguished);
    require(distinguished_ >= 0, "cell complex: distinguished point is not a vertex of the complex");
  } else {
    distinguished_ = vertex_cells_.front();
    for (int v : vertex_cells_)
      if (lex_less(cells_[distinguished_].poly.vertices()[0], cells_[v].poly.vertices()[0]))
        distinguished_ = v;
  }
  {
    const Cell& dv = cells_[distinguished_];
    auto reroot = [](std::vector<RatVec>& alphabet, const RatVec& pt) {
      auto it = std::find(alphabet.begin(), alphabet.end(), pt);
      require(it != alphabet.end(), "cell complex: distinguished label outside its alphabet");
      alphabet.erase(it);
      alphabet.push_back(pt);
    };
    reroot(alphabets_[0], dv.nu.vertices()[0]);
    for (int i = 0; i < r; ++i) reroot(alphabets_[i + 1], dv.beta[i].vertices()[0]);
  }

  // Charts.
  for (int v : vertex_cells_) {
    const Cell& cell = cells_[v];
    std::vector<RatVec> dirs;
    for (const Polytope& b : cell.beta) {
      require(b.dim() == 0, "cell complex: vertex cell with a positive-dimensional factor");
      dirs.push_back(b.vertices()[0]);
    }
    QuotientProjection qp = quotient_projection(dirs, n);
    require(qp.rank == r && n - qp.rank == dim_, "cell complex: vertex chart has wrong rank");
    vertex_charts_.emplace(v, std::move(qp));
  }
  for (const Cell& cell : cells_) {
    CellChart chart;
    chart.base = cell.poly.vertices()[0];
    RatMat dirs;
    for (const RatVec& v : cell.poly.vertices()) dirs.push_back(vsub(v, chart.base));
    chart.basis = saturation_basis(dirs, n);
    require(static_cast<int>(chart.basis.size()) == cell.dim,
            "cell complex: cell chart has wrong rank");
    cell_charts_.push_back(std::move(chart));
  }

  // Cone of the base fan over mu, for every cell.
  for (const Cell& cell : cells_) {
    std::vector<RatVec> gens = cell.mu.vertices();
    RatVec sample = zero_vec(n);
    for (const RatVec& g : gens) sample = vadd(sample, g);
    int home = base_->locate(sample);
    require(home >= 0, "cell complex: cone over mu escapes the base fan");
    bool fwd = true;
    for (const RatVec& g : gens) fwd = fwd && base_->cone_contains(home, g);
    ConeHalfspaces hs = cone_to_halfspaces(gens, {}, n);
    bool bwd = true;
    for (const RatVec& g : base_->cone_generators(home)) {
      for (const RatVec& e : hs.eqs) bwd = bwd && dot(e, g) == 0;
      for (const RatVec& q : hs.ineqs) bwd = bwd && dot(q, g) >= 0;
    }
    require(fwd && bwd, "cell complex: cone over mu is not a cone of the base fan");
    cone_in_base_.push_back(home);
  }
}

std::vector<int> DualComplex::f_vector() const {
  std::vector<int> f(static_cast<size_t>(dim_) + 1, 0);
  for (const Cell& cell : cells_) f[static_cast<size_t>(cell.dim)]++;
  return f;
}

int DualComplex::locate_chain(const RatVec& x) const {
  for (size_t s = 0; s < chains_.size(); ++s)
    if (chains_[s].simplex.contains_relint(x)) return static_cast<int>(s);
  return -1;
}

int DualComplex::cell_at(const RatVec& x) const {
  for (size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].poly.contains(x)) return static_cast<int>(i);
  return -1;
}

bool DualComplex::in_gamma(const RatVec& x) const {
  int s = locate_chain(x);
  return s >= 0 && chains_[s].in_gamma;
}

bool DualComplex::in_open_star(int cell, const RatVec& x) const {
  int s = locate_chain(x);
  if (s < 0) return false;
  const std::vector<int>& cs = chains_[s].cells;
  return std::find(cs.begin(), cs.end(), cell) != cs.end();
}

bool DualComplex::in_vertex_region(int vcell, const RatVec& x) const {
  int s = locate_chain(x);
  return s >= 0 && chains_[s].cells.front() == vcell;
}

bool DualComplex::in_region_pair(int start, int mid, const RatVec& x) const {
  int s = locate_chain(x);
  if (s < 0 || chains_[s].cells.front() != start) return false;
  const std::vector<int>& cs = chains_[s].cells;
  return std::find(cs.begin(), cs.end(), mid) != cs.end();
}

std::vector<int> DualComplex::chains_from(int start) const {
  std::vector<int> out;
  for (size_t s = 0; s < chains_.size(); ++s)
    if (chains_[s].cells.front() == start) out.push_back(static_cast<int>(s));
  return out;
}

std::vector<int> DualComplex::chains_through(int cell) const {
  std::vector<int> out;
  for (size_t s = 0; s < chains_.size(); ++s) {
    const std::vector<int>& cs = chains_[s].cells;
    if (std::find(cs.begin(), cs.end(), cell) != cs.end()) out.push_back(static_cast<int>(s));
  }
  return out;
}

std::vector<int> DualComplex::chains_from_through(int start, int mid) const {
  std::vector<int> out;
  for (int s : chains_from(start)) {
    const std::vector<int>& cs = chains_[s].cells;
    if (std::find(cs.begin(), cs.end(), mid) != cs.end()) out.push_back(s);
  }
  return out;
}

int DualComplex::vertex_cell_at(const RatVec& x) const {
  for (int v : vertex_cells_)
    if (cells_[v].poly.vertices()[0] == x) return v;
  return -1;
}

const QuotientProjection& DualComplex::vertex_chart(int vcell) const {
  auto it = vertex_charts_.find(vcell);
  require(it != vertex_charts_.end(), "cell complex: not a vertex cell");
  return it->second;
}

RatVec DualComplex::cell_coords(int cell, const RatVec& x) const {
  const CellChart& chart = cell_charts_.at(cell);
  RatVec rhs = vsub(x, chart.base);
  RatMat a(rhs.size(), RatVec(chart.basis.size(), Rat(0)));
  for (size_t col = 0; col < chart.basis.size(); ++col)
    for (size_t row = 0; row < rhs.size(); ++row) a[row][col] = Rat(chart.basis[col][row]);
  auto sol = solve(a, rhs);
  require(sol.has_value(), "cell chart: point off the affine hull of the cell");
  return *sol;
}

int DualComplex::order_position(int i, const RatVec& pt) const {
  const std::vector<RatVec>& alphabet = alphabets_.at(i);
  for (size_t k = 0; k < alphabet.size(); ++k)
    if (alphabet[k] == pt) return static_cast<int>(k);
  fail("label order: point is not in alphabet " + std::to_string(i));
}

std::vector<std::vector<RatVec>> DualComplex::ordered_points(int cell) const {
  const Cell& c = cells_.at(cell);
  std::vector<std::vector<RatVec>> out;
  auto sorted = [this](const Polytope& p, int alphabet) {
    std::vector<RatVec> pts = lattice_points(p);
    std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
      return order_position(alphabet, a) < order_position(alphabet, b);
    });
    return pts;
  };
  out.push_back(sorted(c.nu, 0));
  for (size_t i = 0; i < c.beta.size(); ++i)
    out.push_back(sorted(c.beta[i], static_cast<int>(i) + 1));
  return out;
}

std::vector<int> DualComplex::label_key(int vcell) const {
  const Cell& c = cells_.at(vcell);
  require(c.dim == 0, "label key: not a vertex cell");
  std::vector<int> key;
  key.push_back(order_position(0, c.nu.vertices()[0]));
  for (size_t i = 0; i < c.beta.size(); ++i)
    key.push_back(order_position(static_cast<int>(i) + 1, c.beta[i].vertices()[0]));
  return key;
}

ComplexCheck DualComplex::verify_transitions() const {
  ComplexCheck rep;
  for (int t : top_cells_) {
    const CellChart& chart = cell_charts_.at(t);
    for (int v : cells_[t].faces) {
      if (cells_[v].dim != 0) continue;
      const QuotientProjection& qp = vertex_charts_.at(v);
      // Transition matrix: vertex chart applied to the cell chart basis.
      IntMat m;
      for (const IntVec& b : chart.basis) {
        IntVec col(qp.q.size(), Int(0));
        for (size_t row = 0; row < qp.q.size(); ++row)
          for (size_t k = 0; k < b.size(); ++k) col[row] += qp.q[row][k] * b[k];
        m.push_back(col);
      }
      Int det = int_det(m);
      if (det != 1 && det != -1) {
        rep.pass = false;
        rep.failures.push_back("transition between vertex " + std::to_string(v) + " and cell " +
                               std::to_string(t) + " has determinant " + det.get_str());
      }
      RatVec shift(qp.q.size(), Rat(0));
      for (size_t row = 0; row < qp.q.size(); ++row)
        for (size_t k = 0; k < chart.base.size(); ++k)
          shift[row] += Rat(qp.q[row][k]) * chart.base[k];
      if (!is_integral(shift)) {
        rep.pass = false;
        rep.failures.push_back("transition between vertex " + std::to_string(v) + " and cell " +
                               std::to_string(t) + " has a non-integral shift");
      }
    }
  }
  return rep;
}

}  // namespace tropic
