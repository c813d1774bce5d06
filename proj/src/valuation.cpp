#include "tropic/valuation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "tropic/error.hpp"
#include "tropic/linalg.hpp"
#include "tropic/lp.hpp"

namespace tropic {

namespace {

constexpr int kMaxNotes = 25;

void note(ComplexCheck& check, const std::string& msg) {
  check.pass = false;
  if (static_cast<int>(check.failures.size()) < kMaxNotes) check.failures.push_back(msg);
}

Int int_dot(const IntVec& a, const IntVec& b) {
  require(a.size() == b.size(), "int_dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec iadd(const IntVec& a, const IntVec& b) {
  IntVec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVec isub(const IntVec& a, const IntVec& b) {
  IntVec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
  require(!a.empty() && a.front().size() == b.size(), "int_mat_mul: shape mismatch");
  IntMat out(a.size(), IntVec(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t c = 0; c < b.front().size(); ++c) out[i][c] += a[i][j] * b[j][c];
    }
  return out;
}

// First coordinates of a lifted covector, as rationals.
RatVec head_rat(const IntVec& v) {
  RatVec out(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

std::string walk_tag(const BlowupWalk& w) {
  std::ostringstream os;
  os << "cell " << w.chart().cell() << (w.full() ? ", full walk [" : ", partial walk [");
  for (std::size_t i = 0; i < w.shuffle().moves.size(); ++i)
    os << (i ? " " : "") << w.shuffle().moves[i];
  os << "]";
  return os.str();
}

// Barycentric level weights of the lifted point (w, 1) in a full walk.
RatVec level_weights(const ChartBasis& cb, const BlowupWalk& bw, const RatVec& w) {
  require(static_cast<int>(w.size()) == cb.rank() - 1, "level_weights: dimension mismatch");
  RatVec lifted = w;
  lifted.push_back(1);
  const int d = cb.dim();
  RatVec r(d + 1);
  Rat total = 0;
  for (int l = 1; l <= d + 1; ++l) {
    r[l - 1] = dot(to_rat_vec(bw.level_dual(l)), lifted);
    total += r[l - 1];
  }
  require(total == 1, "level_weights: weights do not sum to one");
  return r;
}

}  // namespace

ChartBasis::ChartBasis(const DualComplex& dc, int top_cell) : cell_(top_cell) {
  require(top_cell >= 0 && top_cell < static_cast<int>(dc.cells().size()),
          "chart: cell out of range");
  require(dc.cells()[top_cell].dim == dc.dim(), "chart: cell is not maximal");
  pts_ = dc.ordered_points(top_cell);
  const int parts = static_cast<int>(pts_.size());
  for (int i = 0; i < parts; ++i) {
    require(!pts_[i].empty(), "chart: factor without lattice points");
    k_.push_back(static_cast<int>(pts_[i].size()) - 1);
    offset_.push_back(i == 0 ? 0 : offset_[i - 1] + k_[i - 1] + 1);
    dim_ += k_[i];
  }
  rank_ = dim_ + parts;
  const int n = static_cast<int>(pts_[0][0].size());
  require(rank_ == n + 1, "chart: factors are not elementary simplices");
  for (int i = 0; i < parts; ++i)
    for (const RatVec& p : pts_[i]) {
      RatVec lift = p;
      lift.push_back(i == 0 ? 1 : 0);
      gens_.push_back(to_int_vec(lift));
    }
  RatMat g = to_rat_mat(gens_);
  const Rat dg = det(g);
  require(dg == 1 || dg == -1, "chart: generators are not a lattice basis");
  duals_ = to_int_mat(inverse(transpose(g)));
}

int ChartBasis::flat(int i, int j) const {
  require(i >= 0 && i < parts(), "chart: factor out of range");
  require(j >= 0 && j <= k_[i], "chart: position out of range");
  return offset_[i] + j;
}

const IntVec& ChartBasis::gen(int i, int j) const { return gens_[flat(i, j)]; }

const IntVec& ChartBasis::dual(int i, int j) const { return duals_[flat(i, j)]; }

RatVec ChartBasis::complex_point(const std::vector<int>& jpos) const {
  require(static_cast<int>(jpos.size()) == parts(), "chart: one position per factor");
  RatVec out = zero_vec(rank_ - 1);
  for (int i = 0; i < parts(); ++i) {
    require(jpos[i] >= 0 && jpos[i] <= k_[i], "chart: position out of range");
    out = vadd(out, pts_[i][jpos[i]]);
  }
  return out;
}

BlowupWalk::BlowupWalk(const ChartBasis& cb, Shuffle s, bool full)
    : cb_(&cb), s_(std::move(s)), full_(full) {
  const int parts = cb.parts();
  require(!s_.counts.empty() && static_cast<int>(s_.counts.front().size()) == parts,
          "walk: arity mismatch");
  p_ = s_.counts.back();
  const auto& k = cb.degrees();
  require(p_[0] == k[0], "walk: the first factor must be walked to the end");
  for (int i = 0; i < parts; ++i) require(p_[i] <= k[i], "walk: degree exceeds the factor");
  if (full_)
    require(p_ == k, "walk: a full walk must finish every factor");
  else
    require(p_ != k, "walk: a partial walk must stop early somewhere");
  const int pb = steps();
  li_.assign(parts, pb + 2);
  for (int i = 0; i < parts; ++i) {
    if (p_[i] != k[i]) continue;
    for (int l = 1; l <= pb; ++l)
      if (s_.counts[l][i] == k[i]) {
        li_[i] = l;
        break;
      }
  }
  if (full_) {
    lbar_ = 0;
    for (int l = 1; l <= pb && lbar_ == 0; ++l)
      if (active(l) == std::vector<int>{0}) lbar_ = l;
    require(lbar_ >= 1, "walk: no level finishes the later factors");
  } else {
    lbar_ = pb + 1;
  }
}

int BlowupWalk::steps() const { return static_cast<int>(s_.moves.size()); }

int BlowupWalk::move(int l) const {
  require(l >= 1 && l <= steps() + 1, "walk: step out of range");
  return l <= steps() ? s_.moves[l - 1] : 0;
}

int BlowupWalk::count(int i, int l) const {
  require(i >= 0 && i < cb_->parts(), "walk: factor out of range");
  require(l >= 0 && l <= steps() + 1, "walk: level out of range");
  if (l <= steps()) return s_.counts[l][i];
  require(!full_, "walk: full walks have no extra step");
  return i == 0 ? cb_->degrees()[0] + 1 : p_[i];
}

std::vector<int> BlowupWalk::active(int l) const {
  require(l >= 0 && l <= steps(), "walk: level out of range");
  std::vector<int> out{0};
  for (int i = 1; i < cb_->parts(); ++i)
    if (count(i, l) < cb_->degrees()[i]) out.push_back(i);
  return out;
}

std::vector<int> BlowupWalk::active_except_next(int l) const {
  std::vector<int> out;
  const int next = move(l + 1);
  for (int i : active(l))
    if (i != next) out.push_back(i);
  return out;
}

int BlowupWalk::completion_level(int i) const {
  require(i >= 0 && i < cb_->parts(), "walk: factor out of range");
  return li_[i];
}

IntVec BlowupWalk::level_gen(int l) const {
  require(full_, "walk: level generators need a full walk");
  require(l >= 1 && l <= steps() + 1, "walk: level out of range");
  IntVec out(cb_->rank(), 0);
  for (int i = 0; i < cb_->parts(); ++i) out = iadd(out, cb_->gen(i, count(i, l - 1)));
  return out;
}

IntVec BlowupWalk::level_dual(int l) const {
  require(full_, "walk: level duals need a full walk");
  require(l >= 1 && l <= steps() + 1, "walk: level out of range");
  if (l == 1) return cb_->dual(move(1), 0);
  const int il = move(l), ip = move(l - 1);
  IntVec m(cb_->rank(), 0);
  for (int j = 0; j <= count(il, l - 1); ++j) m = iadd(m, cb_->dual(il, j));
  for (int j = 0; j < count(ip, l - 1); ++j) m = isub(m, cb_->dual(ip, j));
  return m;
}

IntMat BlowupWalk::step_map(int l) const {
  require(l >= 1 && l <= lbar_, "walk: blow-up step out of range");
  IntMat e = int_identity(cb_->rank());
  const int col = cb_->flat(move(l), count(move(l), l - 1));
  for (int i : active_except_next(l - 1)) e[cb_->flat(i, count(i, l - 1))][col] += 1;
  return e;
}

IntMat BlowupWalk::composed_map(int l) const {
  require(l >= 1 && l <= lbar_, "walk: blow-up step out of range");
  IntMat out = step_map(1);
  for (int lp = 2; lp <= l; ++lp) out = int_mat_mul(out, step_map(lp));
  return out;
}

IntMat BlowupWalk::composed_map_closed(int l) const {
  require(l >= 1 && l <= lbar_, "walk: blow-up step out of range");
  IntMat out = int_identity(cb_->rank());
  for (int i = 0; i < cb_->parts(); ++i)
    for (int j = 0; j <= cb_->degrees()[i]; ++j) {
      const int row = cb_->flat(i, j);
      const int cap = i == 0 ? l : std::min(l, li_[i]);
      for (int lp = 1; lp <= cap; ++lp) {
        if (move(lp) == i || count(i, lp - 1) != j) continue;
        out[row][cb_->flat(move(lp), count(move(lp), lp - 1))] += 1;
      }
    }
  return out;
}

IntMat BlowupWalk::chart_map() const {
  const IntMat p = composed_map(lbar_);
  const Int dp = int_det(p);
  require(dp == 1 || dp == -1, "walk: composed map is not invertible over the integers");
  return to_int_mat(inverse(to_rat_mat(p)));
}

IntMat BlowupWalk::chart_map_closed() const {
  require(full_, "walk: the closed chart map needs a full walk");
  const auto& k = cb_->degrees();
  IntMat out(cb_->rank(), IntVec(cb_->rank(), 0));
  for (int i = 0; i < cb_->parts(); ++i)
    for (int j = 0; j <= k[i]; ++j) {
      const int row = cb_->flat(i, j);
      if ((i >= 1 && j == k[i]) || (i == move(1) && j == 0)) {
        out[row][row] = 1;
        continue;
      }
      int big = -1;
      for (int lp = 1; lp <= steps(); ++lp)
        if (count(i, lp) == j) big = lp;
      require(big >= 1, "walk: closed chart map misses a level");
      for (int jp = 0; jp <= j; ++jp) out[row][cb_->flat(i, jp)] += 1;
      const int im = move(big);
      for (int jp = 0; jp < count(im, big); ++jp) out[row][cb_->flat(im, jp)] -= 1;
    }
  return out;
}

std::vector<BlowupWalk> full_walks(const ChartBasis& cb) {
  std::vector<BlowupWalk> out;
  for (const Shuffle& s : enumerate_shuffles(cb.degrees())) out.emplace_back(cb, s, true);
  return out;
}

std::vector<BlowupWalk> partial_walks(const ChartBasis& cb) {
  const auto& k = cb.degrees();
  std::vector<std::vector<int>> degrees;
  std::vector<int> p(k.size());
  p[0] = k[0];
  const auto emit = [&](auto&& self, int i) -> void {
    if (i == static_cast<int>(k.size())) {
      if (p != k) degrees.push_back(p);
      return;
    }
    for (p[i] = 0; p[i] <= k[i]; ++p[i]) self(self, i + 1);
    p[i] = 0;
  };
  emit(emit, 1);
  std::vector<BlowupWalk> out;
  for (const auto& deg : degrees)
    for (const Shuffle& s : enumerate_shuffles(deg)) out.emplace_back(cb, s, false);
  return out;
}

ComplexCheck verify_chart_identities(const DualComplex& dc) {
  ComplexCheck check;
  for (int tc : dc.top_cells()) {
    const ChartBasis cb(dc, tc);
    const int d = cb.dim();
    for (const BlowupWalk& bw : full_walks(cb)) {
      const std::string tag = walk_tag(bw);
      for (int l = 1; l <= bw.last_level(); ++l)
        if (bw.composed_map(l) != bw.composed_map_closed(l))
          note(check, "iterated and closed blow-up maps differ at level " + std::to_string(l) +
                          ", " + tag);
      const IntMat chart = bw.chart_map();
      if (chart != bw.chart_map_closed())
        note(check, "iterated and closed chart coordinates differ, " + tag);
      // Each level dual is the monomial expressing the level coordinate.
      for (int l = 1; l <= d + 1; ++l) {
        const IntVec ml = bw.level_dual(l);
        const int row = cb.flat(bw.move(l), bw.count(bw.move(l), l - 1));
        IntVec pairing(cb.rank());
        for (int a = 0; a < cb.rank(); ++a) pairing[a] = int_dot(ml, cb.gens()[a]);
        if (chart[row] != pairing)
          note(check, "level dual mismatch at level " + std::to_string(l) + ", " + tag);
      }
      // The level duals telescope to the height form.
      IntVec tsum(cb.rank(), 0), hsum(cb.rank(), 0), unit(cb.rank(), 0);
      unit[cb.rank() - 1] = 1;
      for (int l = 1; l <= d + 1; ++l) tsum = iadd(tsum, bw.level_dual(l));
      for (int j = 0; j <= cb.degrees()[0]; ++j) hsum = iadd(hsum, cb.dual(0, j));
      if (tsum != hsum || tsum != unit)
        note(check, "level duals do not telescope to the height form, " + tag);
      // Dual pairings: level duals against level generators and end generators.
      bool dual_ok = true;
      for (int l = 1; l <= d + 1 && dual_ok; ++l) {
        for (int lp = 1; lp <= d + 1 && dual_ok; ++lp)
          if (int_dot(bw.level_dual(l), bw.level_gen(lp)) != (l == lp ? 1 : 0)) dual_ok = false;
        for (int i = 1; i < cb.parts() && dual_ok; ++i)
          if (int_dot(bw.level_dual(l), cb.gen(i, cb.degrees()[i])) != 0) dual_ok = false;
      }
      for (int i = 1; i < cb.parts() && dual_ok; ++i)
        for (int lp = 1; lp <= d + 1 && dual_ok; ++lp) {
          const Int want = lp >= bw.completion_level(i) + 1 ? 1 : 0;
          if (int_dot(cb.dual(i, cb.degrees()[i]), bw.level_gen(lp)) != want) dual_ok = false;
        }
      if (!dual_ok) note(check, "staircase pairing pattern fails, " + tag);
    }
    for (const BlowupWalk& bw : partial_walks(cb)) {
      const std::string tag = walk_tag(bw);
      for (int l = 1; l <= bw.last_level(); ++l)
        if (bw.composed_map(l) != bw.composed_map_closed(l))
          note(check, "iterated and closed blow-up maps differ at level " + std::to_string(l) +
                          ", " + tag);
      // Every partial walk extends to a full one with the same prefix.
      std::vector<int> ext = bw.shuffle().moves;
      for (int i = 1; i < cb.parts(); ++i)
        for (int c = bw.degree()[i]; c < cb.degrees()[i]; ++c) ext.push_back(i);
      const Shuffle full = shuffle_from_moves(ext, cb.degrees());
      for (int l = 0; l <= bw.steps(); ++l)
        if (full.counts[l] != bw.shuffle().counts[l]) {
          note(check, "no full walk extends the partial walk, " + tag);
          break;
        }
    }
  }
  return check;
}

ComplexCheck verify_divisor_points(const DualComplex& dc) {
  ComplexCheck check;
  std::set<std::string> found, expected;
  for (int vc : dc.vertex_cells()) expected.insert(vec_string(dc.cells()[vc].anchor));
  for (int tc : dc.top_cells()) {
    const ChartBasis cb(dc, tc);
    const int d = cb.dim();
    for (const BlowupWalk& bw : full_walks(cb)) {
      const std::string tag = walk_tag(bw);
      const IntMat composed = bw.composed_map(bw.last_level());
      for (int l = 1; l <= d + 1; ++l) {
        // Valuation along the level divisor: the exponent of the level
        // coordinate in each start coordinate. A coordinate ending a factor
        // vanishes through the defining equation instead, with order one from
        // the level past the factor's completion on.
        const int col = cb.flat(bw.move(l), bw.count(bw.move(l), l - 1));
        IntVec point(cb.rank(), 0);
        for (int i = 0; i < cb.parts(); ++i)
          for (int j = 0; j <= cb.degrees()[i]; ++j) {
            const int a = cb.flat(i, j);
            const Int order = (i >= 1 && j == cb.degrees()[i])
                                  ? Int(l >= bw.completion_level(i) + 1 ? 1 : 0)
                                  : composed[a][col];
            for (int c = 0; c < cb.rank(); ++c) point[c] += order * cb.gens()[a][c];
          }
        if (point != bw.level_gen(l)) {
          note(check, "divisor valuation misses the level generator at level " +
                          std::to_string(l) + ", " + tag);
          continue;
        }
        if (point.back() != 1) {
          note(check, "level divisor has the wrong height at level " + std::to_string(l) + ", " +
                          tag);
          continue;
        }
        RatVec base(point.size() - 1);
        for (std::size_t c = 0; c + 1 < point.size(); ++c) base[c] = Rat(point[c]);
        if (dc.vertex_cell_at(base) < 0) {
          note(check, "level divisor lands off the vertex set at level " + std::to_string(l) +
                          ", " + tag);
          continue;
        }
        found.insert(vec_string(base));
      }
    }
  }
  if (found != expected) note(check, "divisor points do not exhaust the vertex set");
  return check;
}

VertexRetraction::VertexRetraction(const DualComplex& dc) : dc_(&dc) {
  const int dv = dc.distinguished_vertex();
  require(dv >= 0, "retraction: complex has no distinguished vertex");
  const auto vfac = dc.ordered_points(dv);
  for (int tc : dc.top_cells()) {
    const Cell& cell = dc.cells()[tc];
    if (std::find(cell.faces.begin(), cell.faces.end(), dv) != cell.faces.end())
      cells_.push_back(tc);
  }
  require(!cells_.empty(), "retraction: the vertex has no maximal cofaces");
  // Walks keep a pointer to their chart; reserve so the charts never move.
  charts_.reserve(cells_.size());
  for (int tc : cells_) {
    charts_.emplace_back(dc, tc);
    const ChartBasis& cb = charts_.back();
    for (int i = 0; i < cb.parts(); ++i) {
      require(vfac[i].size() == 1, "retraction: vertex factors must be points");
      require(cb.factor_points()[i].back() == vfac[i][0],
              "retraction: the vertex is not last in the chart order");
    }
    walks_.push_back(full_walks(cb));
  }
}

bool VertexRetraction::in_region(int c, int walk, const RatVec& w, RatVec* levels) const {
  const ChartBasis& cb = charts_.at(c);
  const BlowupWalk& bw = walks_.at(c).at(walk);
  const int d = cb.dim();
  const RatVec r = level_weights(cb, bw, w);
  if (levels) *levels = r;
  for (int l = 1; l <= d; ++l)
    if (r[l - 1] < 0) return false;
  if (r[d] <= 0) return false;
  RatVec lifted = w;
  lifted.push_back(1);
  for (int i = 1; i < cb.parts(); ++i) {
    Rat s = dot(to_rat_vec(cb.dual(i, cb.degrees()[i])), lifted);
    for (int l = bw.completion_level(i) + 1; l <= d + 1; ++l) s -= r[l - 1];
    if (s < 0) return false;
  }
  return true;
}

RatVec VertexRetraction::retract(int c, int walk, const RatVec& w) const {
  const ChartBasis& cb = charts_.at(c);
  const BlowupWalk& bw = walks_.at(c).at(walk);
  const int d = cb.dim();
  const RatVec r = level_weights(cb, bw, w);
  RatVec out = zero_vec(cb.rank() - 1);
  for (int l = 1; l <= d + 1; ++l) {
    const IntVec g = bw.level_gen(l);
    RatVec base(g.size() - 1);
    for (std::size_t t = 0; t + 1 < g.size(); ++t) base[t] = Rat(g[t]);
    out = vadd(out, vscale(r[l - 1], base));
  }
  return out;
}

std::optional<RatVec> VertexRetraction::retract_any(const RatVec& w) const {
  std::optional<RatVec> out;
  for (int c = 0; c < chart_count(); ++c)
    for (std::size_t wi = 0; wi < walks_[c].size(); ++wi) {
      if (!in_region(c, static_cast<int>(wi), w)) continue;
      const RatVec val = retract(c, static_cast<int>(wi), w);
      if (out)
        require(*out == val, "retraction: overlapping regions disagree");
      else
        out = val;
    }
  return out;
}

Polyhedron VertexRetraction::region_polyhedron(int c, int walk) const {
  const ChartBasis& cb = charts_.at(c);
  const BlowupWalk& bw = walks_.at(c).at(walk);
  const int d = cb.dim(), n = cb.rank() - 1;
  std::vector<IntVec> mls;
  for (int l = 1; l <= d + 1; ++l) mls.push_back(bw.level_dual(l));
  std::vector<Ineq> ineqs;
  for (const IntVec& m : mls) ineqs.push_back(Ineq{head_rat(m), Rat(-m.back())});
  for (int i = 1; i < cb.parts(); ++i) {
    IntVec a = cb.dual(i, cb.degrees()[i]);
    for (int l = bw.completion_level(i) + 1; l <= d + 1; ++l) a = isub(a, mls[l - 1]);
    ineqs.push_back(Ineq{head_rat(a), Rat(-a.back())});
  }
  return Polyhedron::from_hrep(ineqs, {}, n, Lattice::N);
}

ComplexCheck VertexRetraction::verify_against_contraction(const Contraction& con,
                                                          std::uint64_t seed,
                                                          int* samples_out) const {
  ComplexCheck check;
  require(&con.complex() == dc_, "retraction: contraction built on a different complex");
  std::mt19937_64 rng(seed);
  const int dv = dc_->distinguished_vertex();
  const int n = charts_.front().rank() - 1;
  // Fattening rays at the vertex: its own unit-locus points, one per later
  // factor.
  std::vector<RatVec> rays;
  {
    const auto vfac = dc_->ordered_points(dv);
    for (std::size_t i = 1; i < vfac.size(); ++i) rays.push_back(vfac[i][0]);
  }
  // Membership of a point of B in the open star of the vertex, cell by cell:
  // the relative interior of some cell having the vertex as a face.
  const auto in_vertex_star = [&](const RatVec& u) {
    for (std::size_t t = 0; t < dc_->cells().size(); ++t) {
      const Cell& cell = dc_->cells()[t];
      const bool touches =
          static_cast<int>(t) == dv ||
          std::find(cell.faces.begin(), cell.faces.end(), dv) != cell.faces.end();
      if (touches && cell.poly.contains_relint(u)) return true;
    }
    return false;
  };
  int total = 0, commuting = 0;
  for (int c = 0; c < chart_count(); ++c)
    for (std::size_t wi = 0; wi < walks_[c].size(); ++wi) {
      const Polyhedron reg = region_polyhedron(c, static_cast<int>(wi));
      for (std::size_t pi = 0; pi < con.variety().dense_pieces().size(); ++pi) {
        const Polyhedron cap = intersect(reg, con.variety().dense_pieces()[pi].poly);
        if (cap.empty()) continue;
        std::ostringstream tag;
        tag << "chart " << cells_[c] << ", walk " << wi << ", piece " << pi;
        const RatVec mid = cap.relint_sample();
        std::vector<RatVec> samples{mid};
        for (const RatVec& v : cap.vertices())
          samples.push_back(vscale(rat(1, 4), vadd(vscale(Rat(3), mid), v)));
        for (const RatVec& r : cap.rays()) samples.push_back(vadd(mid, r));
        for (int t = 0; t < 3 && !cap.vertices().empty(); ++t) {
          RatVec mix = zero_vec(mid.size());
          Rat denom = 0;
          for (const RatVec& v : cap.vertices()) {
            const Rat wgt = Rat(1 + static_cast<long>(rng() % 7));
            mix = vadd(mix, vscale(wgt, v));
            denom += wgt;
          }
          mix = vscale(Rat(1) / denom, mix);
          for (const RatVec& r : cap.rays())
            mix = vadd(mix, vscale(Rat(1 + static_cast<long>(rng() % 3)), r));
          samples.push_back(mix);
        }
        std::set<std::string> seen;
        for (const RatVec& w : samples) {
          if (!seen.insert(vec_string(w)).second) continue;
          RatVec r;
          if (!in_region(c, static_cast<int>(wi), w, &r)) continue;
          ++total;
          const RatVec ret = retract(c, static_cast<int>(wi), w);
          const TropPoint tp{0, w};
          try {
            // The retraction value lies in the open star of the vertex, and
            // the sample decomposes as that value plus a nonnegative
            // combination of the vertex rays.
            if (!in_vertex_star(ret))
              note(check, "retraction leaves the vertex star at " + tag.str());
            {
              const ChartBasis& cb = charts_[c];
              const BlowupWalk& bw = walks_[c][wi];
              RatVec rest = vsub(w, ret);
              RatVec lifted = w;
              lifted.push_back(1);
              for (int i = 1; i < cb.parts(); ++i) {
                Rat s = dot(to_rat_vec(cb.dual(i, cb.degrees()[i])), lifted);
                for (int l = bw.completion_level(i) + 1; l <= cb.dim() + 1; ++l)
                  s -= r[l - 1];
                if (s < 0) note(check, "negative ray weight at " + tag.str());
                rest = vsub(rest, vscale(s, rays[i - 1]));
              }
              if (rest != zero_vec(n))
                note(check, "sample does not split over the rays at " + tag.str());
            }
            const auto any = retract_any(w);
            if (!any || *any != ret)
              note(check, "overlapping regions disagree at " + tag.str());
            if (!dc_->cells()[cells_[c]].poly.contains(ret))
              note(check, "retraction leaves the chart cell at " + tag.str());
            // The contraction agrees with the retraction exactly on the
            // vertex region, which is also characterised by the retraction
            // value falling into the chain star of the vertex.
            const bool commutes = con.in_total_region(dv, tp);
            const bool star = dc_->in_open_star(dv, ret);
            if (commutes != star)
              note(check, "vertex region and chain star disagree at " + tag.str());
            if (commutes) {
              ++commuting;
              const auto ev = con.try_eval(tp);
              if (!ev || *ev != ret)
                note(check, "retraction disagrees with the contraction at " + tag.str());
            }
          } catch (const TropicError& e) {
            note(check, std::string("error at ") + tag.str() + ": " + e.what());
          }
        }
      }
    }
  if (total == 0) note(check, "no region samples found");
  if (commuting == 0) note(check, "no samples inside the vertex region");
  // Conversely, points of the fattened chain star that lie on the variety
  // belong to the vertex region, fall into some chart region, and retract to
  // their contraction image.
  int covered = 0;
  for (int ci : dc_->chains_from(dv)) {
    const Chain& ch = dc_->chains()[ci];
    std::vector<RatVec> base{ch.simplex.relint_sample()};
    for (int t = 0; t < 2; ++t) {
      RatVec mix = zero_vec(n);
      Rat denom = 0;
      for (const RatVec& v : ch.verts) {
        const Rat wgt = Rat(1 + static_cast<long>(rng() % 5));
        mix = vadd(mix, vscale(wgt, v));
        denom += wgt;
      }
      base.push_back(vscale(Rat(1) / denom, mix));
    }
    std::vector<RatVec> pts;
    for (const RatVec& u : base) {
      pts.push_back(u);
      for (const RatVec& r : rays) {
        pts.push_back(vadd(u, r));
        pts.push_back(vadd(u, vscale(rat(1 + static_cast<long>(rng() % 5), 2), r)));
      }
    }
    for (const RatVec& w : pts) {
      if (!con.variety().contains_dense(w)) continue;
      ++covered;
      try {
        const TropPoint tp{0, w};
        if (!con.in_total_region(dv, tp)) {
          note(check, "fiber point misses the vertex region at chain " +
                          std::to_string(ci));
          continue;
        }
        const auto any = retract_any(w);
        if (!any) {
          note(check, "fiber point misses every chart at chain " +
                          std::to_string(ci));
          continue;
        }
        const auto ev = con.try_eval(tp);
        if (!ev || *ev != *any)
          note(check, "fiber point retracts away from the contraction at chain " +
                          std::to_string(ci));
      } catch (const TropicError& e) {
        note(check, std::string("error at chain ") + std::to_string(ci) + ": " + e.what());
      }
    }
  }
  if (covered == 0) note(check, "no fiber points found on the variety");
  total += covered;
  if (samples_out) *samples_out = total;
  return check;
}

}  // namespace tropic
