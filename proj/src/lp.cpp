#include "tropic/lp.hpp"

#include <algorithm>

namespace tropic {

namespace {

// Dense phase-1/phase-2 simplex with Bland's rule. Columns: x = u - w with
// u, w >= 0 (2n), one slack per inequality, one artificial per row. The
// constraint body stays rational; the rhs column carries jets.
struct Tableau {
  int n = 0;
  int cols = 0;
  std::vector<RatVec> body;  // m x cols
  std::vector<Jet> rhs;      // m
  std::vector<int> basis;    // m, column index basic in each row
  int art_begin = 0;

  bool pivot_phase(const RatVec& cost);
};

bool Tableau::pivot_phase(const RatVec& cost) {
  size_t m = body.size();
  // reduced costs r = cost - cost_B . body
  RatVec r = cost;
  for (size_t i = 0; i < m; ++i) {
    const Rat& cb = cost[basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < cols; ++j) r[j] -= cb * body[i][j];
  }
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (r[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return true;  // optimal
    int leave = -1;
    Jet best;
    for (size_t i = 0; i < m; ++i) {
      if (body[i][enter] <= 0) continue;
      Jet ratio = rhs[i].scaled(1 / body[i][enter]);
      bool take = leave < 0 || ratio < best ||
                  (ratio == best && basis[i] < basis[leave]);
      if (take) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded in this cost
    Rat piv = body[leave][enter];
    Rat inv = 1 / piv;
    for (int j = 0; j < cols; ++j) body[leave][j] *= inv;
    rhs[leave] = rhs[leave].scaled(inv);
    for (size_t i = 0; i < m; ++i) {
      if (static_cast<int>(i) == leave) continue;
      Rat f = body[i][enter];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) body[i][j] -= f * body[leave][j];
      rhs[i] = rhs[i] - rhs[leave].scaled(f);
    }
    Rat fr = r[enter];
    for (int j = 0; j < cols; ++j) r[j] -= fr * body[leave][j];
    basis[leave] = enter;
  }
}

struct SolveOut {
  bool feasible = false;
  std::vector<Jet> x;  // n jet values of the free variables
  Tableau t;
};

SolveOut solve_system(const std::vector<LinCon>& cons, int n) {
  size_t m = cons.size();
  int n_ineq = 0;
  for (const LinCon& c : cons)
    if (c.rel != Rel::EQ) ++n_ineq;
  Tableau t;
  t.n = n;
  t.art_begin = 2 * n + n_ineq;
  t.cols = t.art_begin + static_cast<int>(m);
  t.body.assign(m, zero_vec(t.cols));
  t.rhs.assign(m, Jet());
  t.basis.assign(m, 0);
  int slack = 2 * n;
  for (size_t i = 0; i < m; ++i) {
    const LinCon& c = cons[i];
    require(static_cast<int>(c.a.size()) == n, "lp: constraint dimension mismatch");
    for (int j = 0; j < n; ++j) {
      t.body[i][j] = c.a[j];
      t.body[i][n + j] = -c.a[j];
    }
    Jet b(c.b);
    b = b + c.shift;
    if (c.rel == Rel::GT) b = b + Jet(Rat(0), Rat(1));  // a.x >= b + eps
    if (c.rel != Rel::EQ) t.body[i][slack++] = -1;      // a.x - s = b
    if (b.sign() < 0) {
      for (int j = 0; j < t.cols; ++j) t.body[i][j] = -t.body[i][j];
      b = -b;
    }
    t.rhs[i] = b;
    t.body[i][t.art_begin + static_cast<int>(i)] = 1;
    t.basis[i] = t.art_begin + static_cast<int>(i);
  }
  RatVec phase1(t.cols, Rat(0));
  for (int j = t.art_begin; j < t.cols; ++j) phase1[j] = 1;
  bool bounded = t.pivot_phase(phase1);
  require(bounded, "lp: phase-1 objective cannot be unbounded");
  Jet total;
  for (size_t i = 0; i < m; ++i)
    if (t.basis[i] >= t.art_begin) total = total + t.rhs[i];
  SolveOut out;
  out.t = std::move(t);
  if (total.sign() != 0) return out;
  out.feasible = true;
  out.x.assign(n, Jet());
  for (size_t i = 0; i < m; ++i) {
    int b = out.t.basis[i];
    if (b < n)
      out.x[b] = out.x[b] + out.t.rhs[i];
    else if (b < 2 * n)
      out.x[b - n] = out.x[b - n] - out.t.rhs[i];
  }
  return out;
}

bool check_witness(const std::vector<LinCon>& cons, const RatVec& x) {
  for (const LinCon& c : cons) {
    Rat v = dot(c.a, x) - c.b;
    if (c.rel == Rel::EQ && v != 0) return false;
    if (c.rel == Rel::GE && v < 0) return false;
    if (c.rel == Rel::GT && v <= 0) return false;
  }
  return true;
}

}  // namespace

LPResult lp_feasible(const std::vector<LinCon>& cons, int n) {
  SolveOut s = solve_system(cons, n);
  LPResult res;
  res.feasible = s.feasible;
  if (!s.feasible) return res;
  bool shifted = false;
  for (const LinCon& c : cons)
    if (!(c.shift == Jet())) shifted = true;
  if (shifted) return res;  // jet witness has no single rational realization
  // Realize the jet point x0 + eps*x1 with a concrete small eps.
  RatVec x0(n), x1(n);
  for (int j = 0; j < n; ++j) {
    x0[j] = s.x[j].a;
    x1[j] = s.x[j].b;
  }
  Rat delta(1);
  for (int tries = 0; tries < 512; ++tries) {
    RatVec cand(n);
    for (int j = 0; j < n; ++j) cand[j] = x0[j] + delta * x1[j];
    if (check_witness(cons, cand)) {
      res.point = std::move(cand);
      return res;
    }
    delta /= 2;
  }
  fail("lp_feasible: failed to realize jet witness concretely");
}

OptResult lp_minimize(const std::vector<LinCon>& cons, const RatVec& c, int n) {
  for (const LinCon& con : cons)
    require(con.rel != Rel::GT && con.shift == Jet(),
            "lp_minimize: strict or shifted constraints not supported");
  OptResult res;
  SolveOut s = solve_system(cons, n);
  if (!s.feasible) return res;
  Tableau& t = s.t;
  // Phase 2: artificials are forbidden from re-entering.
  RatVec cost(t.cols, Rat(0));
  for (int j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  // Block artificial columns by zeroing them everywhere (they are nonbasic or
  // basic at value zero after a feasible phase 1).
  for (auto& row : t.body)
    for (int j = t.art_begin; j < t.cols; ++j) row[j] = 0;
  for (size_t i = 0; i < t.body.size(); ++i)
    if (t.basis[i] >= t.art_begin) {
      // Degenerate basic artificial: pivot to any usable column, else the row
      // is redundant and can stay (its rhs is zero and all entries are zero).
      int enter = -1;
      for (int j = 0; j < t.art_begin; ++j)
        if (t.body[i][j] != 0) {
          enter = j;
          break;
        }
      if (enter < 0) continue;
      Rat inv = 1 / t.body[i][enter];
      for (int j = 0; j < t.cols; ++j) t.body[i][j] *= inv;
      t.rhs[i] = t.rhs[i].scaled(inv);
      for (size_t k = 0; k < t.body.size(); ++k) {
        if (k == i) continue;
        Rat f = t.body[k][enter];
        if (f == 0) continue;
        for (int j = 0; j < t.cols; ++j) t.body[k][j] -= f * t.body[i][j];
        t.rhs[k] = t.rhs[k] - t.rhs[i].scaled(f);
      }
      t.basis[i] = enter;
    }
  bool bounded = t.pivot_phase(cost);
  if (!bounded) {
    res.status = OptStatus::UNBOUNDED;
    return res;
  }
  res.status = OptStatus::OPT;
  RatVec x(n, Rat(0));
  for (size_t i = 0; i < t.body.size(); ++i) {
    int b = t.basis[i];
    require(t.rhs[i].b == 0, "lp_minimize: unexpected jet remainder");
    if (b < n)
      x[b] += t.rhs[i].a;
    else if (b < 2 * n)
      x[b - n] -= t.rhs[i].a;
  }
  res.arg = x;
  res.value = dot(c, x);
  return res;
}

OptResult lp_maximize(const std::vector<LinCon>& cons, const RatVec& c, int n) {
  RatVec neg = vscale(Rat(-1), c);
  OptResult r = lp_minimize(cons, neg, n);
  if (r.status == OptStatus::OPT) r.value = -r.value;
  return r;
}

}  // namespace tropic
