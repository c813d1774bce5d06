#include "tropic/linalg.hpp"

#include <algorithm>

namespace tropic {

RatMat rat_identity(int n) {
  RatMat a(n, zero_vec(n));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

RatMat rat_zero(int rows, int cols) { return RatMat(rows, zero_vec(cols)); }

RatMat transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  require(a.empty() || b.empty() || a[0].size() == b.size(), "mat_mul: shape mismatch");
  if (a.empty() || b.empty()) return {};
  RatMat c(a.size(), zero_vec(static_cast<int>(b[0].size())));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec mat_vec(const RatMat& a, const RatVec& x) {
  RatVec y(a.size());
  for (size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

std::vector<int> rref(RatMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(RatMat a) { return static_cast<int>(rref(a).size()); }

Rat det(RatMat a) {
  require(!a.empty() && a.size() == a[0].size(), "det: square matrix required");
  size_t n = a.size();
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    Rat inv = 1 / a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] * inv;
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  require(a.size() == b.size(), "solve: rhs size mismatch");
  if (a.empty()) return RatVec{};
  size_t cols = a[0].size();
  RatMat aug(a.size(), RatVec(cols + 1));
  for (size_t i = 0; i < a.size(); ++i) {
    std::copy(a[i].begin(), a[i].end(), aug[i].begin());
    aug[i][cols] = b[i];
  }
  std::vector<int> piv = rref(aug);
  for (int p : piv)
    if (p == static_cast<int>(cols)) return std::nullopt;  // row (0..0 | 1)
  RatVec x(cols, Rat(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
  return x;
}

std::vector<RatVec> nullspace(const RatMat& a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  RatMat m = a;
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<RatVec> basis;
  for (size_t c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMat inverse(const RatMat& a) {
  require(!a.empty() && a.size() == a[0].size(), "inverse: square matrix required");
  size_t n = a.size();
  RatMat aug(n, RatVec(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    std::copy(a[i].begin(), a[i].end(), aug[i].begin());
    aug[i][n + i] = 1;
  }
  std::vector<int> piv = rref(aug);
  require(piv.size() == n, "inverse: singular matrix");
  RatMat inv(n, RatVec(n));
  for (size_t i = 0; i < n; ++i)
    std::copy(aug[i].begin() + n, aug[i].end(), inv[i].begin());
  return inv;
}

IntMat int_identity(int n) {
  IntMat a(n, IntVec(n, Int(0)));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

RatMat to_rat_mat(const IntMat& a) {
  RatMat out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = to_rat_vec(a[i]);
  return out;
}

IntMat to_int_mat(const RatMat& a) {
  IntMat out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = to_int_vec(a[i]);
  return out;
}

Int int_det(IntMat a) {
  RatMat r = to_rat_mat(a);
  Rat d = det(r);
  require(d.get_den() == 1, "int_det: non-integral determinant");
  return d.get_num();
}

IntVec primitive(const RatVec& v) {
  require(!is_zero(v), "primitive: zero vector has no primitive representative");
  Int den_lcm = 1;
  for (const Rat& q : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  IntVec w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(den_lcm);
    w[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
  }
  for (Int& x : w) x /= g;
  return w;
}

namespace {

// Position of the entry with smallest nonzero absolute value in the working
// submatrix starting at (t, t); nullopt when the submatrix is zero.
std::optional<std::pair<size_t, size_t>> smallest_nonzero(const IntMat& a, size_t t) {
  std::optional<std::pair<size_t, size_t>> best;
  Int best_abs;
  for (size_t i = t; i < a.size(); ++i)
    for (size_t j = t; j < a[i].size(); ++j) {
      if (a[i][j] == 0) continue;
      Int ab = abs(a[i][j]);
      if (!best || ab < best_abs) {
        best = {i, j};
        best_abs = ab;
      }
    }
  return best;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  SmithResult res{int_identity(static_cast<int>(rows)), a, int_identity(static_cast<int>(cols))};
  IntMat& d = res.d;
  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      auto pos = smallest_nonzero(d, t);
      if (!pos) return res;  // remaining submatrix is zero
      auto [pi, pj] = *pos;
      if (pi != t) {
        std::swap(d[pi], d[t]);
        std::swap(res.u[pi], res.u[t]);
      }
      if (pj != t) {
        for (size_t i = 0; i < rows; ++i) std::swap(d[i][pj], d[i][t]);
        for (size_t i = 0; i < cols; ++i) std::swap(res.v[i][pj], res.v[i][t]);
      }
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
        for (size_t j = 0; j < cols; ++j) d[i][j] -= q * d[t][j];
        for (size_t j = 0; j < rows; ++j) res.u[i][j] -= q * res.u[t][j];
        if (d[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
        for (size_t i = 0; i < rows; ++i) d[i][j] -= q * d[i][t];
        for (size_t i = 0; i < cols; ++i) res.v[i][j] -= q * res.v[i][t];
        if (d[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Row and column t are clear; enforce d[t][t] | d[i][j] for the rest.
      bool divides_all = true;
      for (size_t i = t + 1; i < rows && divides_all; ++i)
        for (size_t j = t + 1; j < cols && divides_all; ++j)
          if (d[i][j] % d[t][t] != 0) {
            for (size_t jj = 0; jj < cols; ++jj) d[t][jj] += d[i][jj];
            for (size_t jj = 0; jj < rows; ++jj) res.u[t][jj] += res.u[i][jj];
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (d[t][t] < 0) {
      for (size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
      for (size_t j = 0; j < rows; ++j) res.u[t][j] = -res.u[t][j];
    }
  }
  return res;
}

}  // namespace tropic
