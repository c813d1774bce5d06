#include "tropic/series.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "tropic/error.hpp"
#include "tropic/linalg.hpp"
#include "tropic/parallel.hpp"

namespace tropic {

namespace {

void note(ComplexCheck& check, const std::string& msg) {
  check.pass = false;
  check.failures.push_back(msg);
}

Rat ratz(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

int to_int(const Int& z, const char* what) {
  require(z.fits_sint_p(), std::string(what) + " exceeds the machine integer range");
  return static_cast<int>(z.get_si());
}

IntMat int_transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat out(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

IntVec int_mat_vec(const IntMat& a, const IntVec& x) {
  IntVec out(a.size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

// s-valuation q*c + <m, val> of one family term on a point with s = t^(1/q).
Int term_valuation(const TropTerm& term, int q, const std::vector<Int>& val) {
  Rat qc = Rat(q) * term.c;
  require(qc.get_den() == 1, "series: term height is not integral at this ramification");
  Int e = qc.get_num();
  for (std::size_t j = 0; j < term.m.size(); ++j) e += term.m[j] * val[j];
  return e;
}

}  // namespace

TruncSeries::TruncSeries(int order, const Rat& constant) {
  require(order >= 0, "series: negative truncation order");
  a_.assign(static_cast<std::size_t>(order) + 1, Rat(0));
  a_[0] = constant;
}

TruncSeries TruncSeries::monomial(int order, int k, const Rat& c) {
  TruncSeries x(order);
  require(k >= 0, "series: negative exponent in a monomial");
  if (k <= order) x.a_[static_cast<std::size_t>(k)] = c;
  return x;
}

const Rat& TruncSeries::coeff(int k) const {
  require(k >= 0 && k <= order(), "series: coefficient index out of range");
  return a_[static_cast<std::size_t>(k)];
}

void TruncSeries::set_coeff(int k, const Rat& c) {
  require(k >= 0 && k <= order(), "series: coefficient index out of range");
  a_[static_cast<std::size_t>(k)] = c;
}

int TruncSeries::valuation() const {
  for (int k = 0; k <= order(); ++k)
    if (a_[static_cast<std::size_t>(k)] != 0) return k;
  return order() + 1;
}

TruncSeries add(const TruncSeries& x, const TruncSeries& y) {
  require(x.order() == y.order(), "series: truncation order mismatch");
  TruncSeries out(x.order());
  for (int k = 0; k <= x.order(); ++k) out.set_coeff(k, x.coeff(k) + y.coeff(k));
  return out;
}

TruncSeries sub(const TruncSeries& x, const TruncSeries& y) {
  require(x.order() == y.order(), "series: truncation order mismatch");
  TruncSeries out(x.order());
  for (int k = 0; k <= x.order(); ++k) out.set_coeff(k, x.coeff(k) - y.coeff(k));
  return out;
}

TruncSeries mul(const TruncSeries& x, const TruncSeries& y) {
  require(x.order() == y.order(), "series: truncation order mismatch");
  TruncSeries out(x.order());
  for (int i = 0; i <= x.order(); ++i) {
    if (x.coeff(i) == 0) continue;
    for (int j = 0; i + j <= x.order(); ++j) {
      if (y.coeff(j) == 0) continue;
      out.set_coeff(i + j, out.coeff(i + j) + x.coeff(i) * y.coeff(j));
    }
  }
  return out;
}

TruncSeries scale(const Rat& c, const TruncSeries& x) {
  TruncSeries out(x.order());
  for (int k = 0; k <= x.order(); ++k) out.set_coeff(k, c * x.coeff(k));
  return out;
}

TruncSeries shift(const TruncSeries& x, int k) {
  require(k >= 0, "series: negative shift");
  TruncSeries out(x.order());
  for (int i = 0; i + k <= x.order(); ++i) out.set_coeff(i + k, x.coeff(i));
  return out;
}

TruncSeries inverse(const TruncSeries& x) {
  require(x.is_unit(), "series: inverting a non-unit");
  TruncSeries out(x.order());
  const Rat lead = 1 / x.coeff(0);
  out.set_coeff(0, lead);
  for (int k = 1; k <= x.order(); ++k) {
    Rat acc(0);
    for (int i = 1; i <= k; ++i) acc += x.coeff(i) * out.coeff(k - i);
    out.set_coeff(k, -lead * acc);
  }
  return out;
}

TruncSeries power(const TruncSeries& x, const Int& e) {
  TruncSeries base = e < 0 ? inverse(x) : x;
  Int n = abs(e);
  TruncSeries out(x.order(), Rat(1));
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) out = mul(out, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return out;
}

RatVec SeriesPoint::trop() const {
  RatVec w(val.size());
  for (std::size_t j = 0; j < val.size(); ++j) w[j] = ratz(val[j], Int(q));
  return w;
}

std::vector<Rat> seeded_coefficients(const TropPolynomial& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rat> gamma;
  gamma.reserve(f.terms.size());
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    gamma.push_back(Rat(1 + static_cast<long>(rng() % 9)));
  return gamma;
}

TruncSeries eval_family(const TropPolynomial& f, const std::vector<Rat>& gamma,
                        const SeriesPoint& p) {
  require(gamma.size() == f.terms.size(), "series: one coefficient per term required");
  require(p.dim() == f.rank, "series: point dimension mismatch");
  const int order = p.unit.empty() ? 0 : p.unit[0].order();
  for (const TruncSeries& u : p.unit) {
    require(u.order() == order, "series: mixed truncation orders in a point");
    require(u.is_unit(), "series: point coordinate with vanishing unit part");
  }
  std::vector<Int> evals;
  evals.reserve(f.terms.size());
  for (const TropTerm& t : f.terms) evals.push_back(term_valuation(t, p.q, p.val));
  const Int vmin = *std::min_element(evals.begin(), evals.end());
  // Per-coordinate power cache; exponents repeat heavily across terms.
  std::vector<std::map<Int, TruncSeries>> powers(p.unit.size());
  TruncSeries out(order);
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Int gap = evals[i] - vmin;
    if (gap > order) continue;
    TruncSeries term(order, gamma[i]);
    for (std::size_t j = 0; j < p.unit.size(); ++j) {
      const Int e = f.terms[i].m[j];
      auto it = powers[j].find(e);
      if (it == powers[j].end()) it = powers[j].emplace(e, power(p.unit[j], e)).first;
      term = mul(term, it->second);
    }
    out = add(out, shift(term, to_int(gap, "series: term valuation gap")));
  }
  return out;
}

std::optional<SeriesPoint> hensel_sample(const TropPolynomial& f,
                                         const std::vector<Rat>& gamma, const RatVec& w,
                                         int trunc, std::uint64_t seed,
                                         HenselCertificate* cert) {
  require(trunc >= 4, "series: truncation order must be at least 4");
  require(gamma.size() == f.terms.size(), "series: one coefficient per term required");
  const int n = f.rank;
  require(static_cast<int>(w.size()) == n, "series: valuation vector dimension mismatch");
  const std::vector<int> attain = trop_attaining(f, w);
  if (attain.size() != 2) return std::nullopt;
  const IntVec& ma = f.terms[attain[0]].m;
  const IntVec& mb = f.terms[attain[1]].m;
  IntVec g(n);
  for (int j = 0; j < n; ++j) g[j] = ma[j] - mb[j];
  if (primitive(to_rat_vec(g)) != g) return std::nullopt;

  // Ramification: lowest q making every coordinate valuation and term height
  // an integer multiple of 1/q.
  Int qz(1);
  for (const Rat& x : w) qz = lcm(qz, x.get_den());
  for (const TropTerm& t : f.terms) qz = lcm(qz, t.c.get_den());
  const int q = to_int(qz, "series: ramification index");
  const int order = q * trunc;
  require(order <= 100000, "series: truncation order blows up at this ramification");
  std::vector<Int> val(n);
  for (int j = 0; j < n; ++j) {
    const Rat scaled = Rat(q) * w[j];
    require(scaled.get_den() == 1, "series: ramification misses a coordinate denominator");
    val[j] = scaled.get_num();
  }

  // Unimodular U with U g = e1: substituting ytilde = y^(transpose-inverse of
  // U exponents) turns the attaining pair into the binomial
  // gamma_b + gamma_a ytilde_1 at order zero.
  SmithResult snf = smith_normal_form(IntMat{g});
  require(snf.d[0][0] == 1, "series: attaining difference lost primitivity");
  IntMat u = int_transpose(snf.v);
  if (snf.u[0][0] < 0)
    for (Int& x : u[0]) x = -x;
  {
    IntVec image = int_mat_vec(u, g);
    require(image[0] == 1, "series: basis completion failed");
    for (int k = 1; k < n; ++k) require(image[k] == 0, "series: basis completion failed");
  }

  std::mt19937_64 rng(seed);
  std::vector<Rat> slice(n);  // seeded constants for ytilde_2 .. ytilde_n
  for (int k = 1; k < n; ++k) slice[k] = Rat(1 + static_cast<long>(rng() % 9));

  // Transformed family: sum of Gamma_m s^(e(m)) ytilde_1^(lambda_1(m)) up to a
  // common unit, with e = 0 exactly on the attaining pair.
  struct HTerm {
    int e = 0;
    Int lam1;
    Rat coeff;
  };
  std::vector<HTerm> hterms;
  std::vector<Int> evals;
  evals.reserve(f.terms.size());
  for (const TropTerm& t : f.terms) evals.push_back(term_valuation(t, q, val));
  const Int vmin = *std::min_element(evals.begin(), evals.end());
  Rat lead_a, lead_b;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Int gap = evals[i] - vmin;
    if (gap > order) continue;
    IntVec rel(n);
    for (int j = 0; j < n; ++j) rel[j] = f.terms[i].m[j] - mb[j];
    const IntVec lam = int_mat_vec(u, rel);
    Rat coeff = gamma[i];
    for (int k = 1; k < n; ++k) {
      Rat p(1);
      Int e = abs(lam[k]);
      const Rat base = lam[k] < 0 ? 1 / slice[k] : slice[k];
      for (Int s(0); s < e; ++s) p *= base;
      coeff *= p;
    }
    if (static_cast<int>(i) == attain[0]) lead_a = coeff;
    if (static_cast<int>(i) == attain[1]) lead_b = coeff;
    hterms.push_back(HTerm{to_int(gap, "series: term valuation gap"), lam[0], coeff});
  }
  require(lead_a != 0 && lead_b != 0, "series: vanishing leading coefficient");

  const auto eval_h = [&](const TruncSeries& y, bool derivative) {
    std::map<Int, TruncSeries> cache;
    const auto pow_y = [&](const Int& e) {
      auto it = cache.find(e);
      if (it == cache.end()) it = cache.emplace(e, power(y, e)).first;
      return it->second;
    };
    TruncSeries out(order);
    for (const HTerm& t : hterms) {
      if (derivative && t.lam1 == 0) continue;
      const Rat c = derivative ? t.coeff * Rat(t.lam1) : t.coeff;
      const Int e = derivative ? Int(t.lam1 - 1) : t.lam1;
      out = add(out, shift(scale(c, pow_y(e)), t.e));
    }
    return out;
  };

  // Newton iteration from the binomial root; residual valuation doubles.
  TruncSeries y(order, -lead_b / lead_a);
  HenselCertificate local;
  int prev = 0;
  while (true) {
    const TruncSeries res = eval_h(y, false);
    local.residual_valuation = res.valuation();
    if (res.is_zero()) break;
    if (local.newton_steps > 0 && res.valuation() <= prev) return std::nullopt;
    prev = res.valuation();
    if (local.newton_steps > 64) return std::nullopt;
    const TruncSeries dh = eval_h(y, true);
    local.derivative_unit = dh.is_unit();
    if (!local.derivative_unit) return std::nullopt;
    y = sub(y, mul(res, inverse(dh)));
    ++local.newton_steps;
  }
  local.derivative_unit = eval_h(y, true).is_unit();
  if (!local.derivative_unit) return std::nullopt;

  // Back substitution: coordinate j collects ytilde_k^(u[k][j]).
  SeriesPoint p;
  p.q = q;
  p.val = std::move(val);
  for (int j = 0; j < n; ++j) {
    Rat c(1);
    for (int k = 1; k < n; ++k) {
      Int e = abs(u[k][j]);
      const Rat base = u[k][j] < 0 ? 1 / slice[k] : slice[k];
      for (Int s(0); s < e; ++s) c *= base;
    }
    p.unit.push_back(scale(c, power(y, u[0][j])));
  }
  if (cert) *cert = local;
  return p;
}

SampleReport verify_sampled_commutation(const DualComplex& dc, const Contraction& con,
                                        const VertexRetraction& vr, int target, int trunc,
                                        std::uint64_t seed) {
  SampleReport rep;
  ComplexCheck& check = rep.check;
  require(&con.complex() == &dc, "sampled commutation: contraction built on a different complex");
  const TropVariety& tv = con.variety();
  require(tv.polynomials().size() == 1,
          "sampled commutation: sampling needs a single defining polynomial");
  const TropPolynomial& f = tv.polynomials()[0];
  const std::vector<Rat> gamma = seeded_coefficients(f, seed);
  const int dv = dc.distinguished_vertex();
  const int n = f.rank;
  const Rat margin = Rat(trunc) / 2;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::set<std::string> seen;

  // Phase one, serial: draw candidate valuation vectors from the dense
  // pieces, round-robin so every region near the vertex contributes, filter
  // cheaply, and over-collect a little so a rare stalled lift cannot starve
  // the target.
  struct Candidate {
    RatVec w;
    std::uint64_t seed = 0;
    bool bounded = false;
  };
  std::vector<Candidate> cand;
  const int want = target + 8;
  for (int round = 0; round < 2048 && static_cast<int>(cand.size()) < want; ++round) {
    for (std::size_t pi = 0;
         pi < tv.dense_pieces().size() && static_cast<int>(cand.size()) < want; ++pi) {
      const TropPiece& piece = tv.dense_pieces()[pi];
      if (piece.attain[0].size() != 2) continue;
      RatVec w = zero_vec(n);
      Rat tot(0);
      for (const RatVec& v : piece.poly.vertices()) {
        const long a = 1 + static_cast<long>(rng() % 6);
        w = vadd(w, vscale(Rat(a), v));
        tot += a;
      }
      for (const RatVec& r : piece.poly.rays()) {
        const long b = static_cast<long>(rng() % 10);
        if (b) w = vadd(w, vscale(rat(b, 2) * tot, r));
      }
      const std::uint64_t sample_seed = rng();
      if (tot == 0) continue;
      w = vscale(1 / tot, w);
      if (!seen.insert(vec_string(w)).second) continue;
      ++rep.attempted;
      // Ramification and safety margin: every valuation entering a check
      // must sit well below the truncation order.
      Int qz(1);
      for (const Rat& x : w) qz = lcm(qz, x.get_den());
      if (qz > 18) continue;
      bool small = true;
      for (const Rat& x : w)
        if (abs(x) >= margin) small = false;
      if (!small) continue;
      const std::vector<int> attain = trop_attaining(f, w);
      if (attain.size() != 2) continue;
      IntVec g(n);
      for (int j = 0; j < n; ++j) g[j] = f.terms[attain[0]].m[j] - f.terms[attain[1]].m[j];
      if (primitive(to_rat_vec(g)) != g) continue;
      if (!con.in_total_region(dv, TropPoint{0, w})) continue;
      cand.push_back(Candidate{w, sample_seed,
                               piece.poly.rays().empty() && piece.poly.lineality().empty()});
    }
  }

  // Phase two, parallel: lift every candidate and run the per-sample checks
  // into index-addressed slots.
  struct Outcome {
    bool accepted = false;
    std::vector<std::string> failures;
  };
  std::vector<Outcome> out(cand.size());
  parallel_for(static_cast<int>(cand.size()), [&](int ci) {
    const Candidate& c = cand[static_cast<std::size_t>(ci)];
    Outcome& o = out[static_cast<std::size_t>(ci)];
    const auto flag = [&](const std::string& msg) {
      o.failures.push_back("sample " + vec_string(c.w) + ": " + msg);
    };
    HenselCertificate cert;
    const auto sp = hensel_sample(f, gamma, c.w, trunc, c.seed, &cert);
    if (!sp) return;
    o.accepted = true;
    if (cert.residual_valuation <= sp->q * trunc)
      flag("residual short of the truncation order");
    if (!cert.derivative_unit) flag("derivative is not a unit");
    if (sp->trop() != c.w) flag("lifted point has wrong valuations");
    if (!eval_family(f, gamma, *sp).is_zero()) flag("lift fails the family equation");
    if (!tv.contains_dense(c.w)) flag("drawn point leaves the variety");
    const TropPoint tp{0, c.w};
    // Route the retraction weights through the sampled point: the staircase
    // monomial valuations must reproduce them and recombine to the
    // contraction value.
    bool matched = false;
    for (int ch = 0; ch < vr.chart_count() && !matched; ++ch)
      for (std::size_t wi = 0; wi < vr.walks(ch).size() && !matched; ++wi) {
        RatVec levels;
        if (!vr.in_region(ch, static_cast<int>(wi), c.w, &levels)) continue;
        matched = true;
        const BlowupWalk& bw = vr.walks(ch)[wi];
        const int d = vr.chart(ch).dim();
        Rat total(0);
        RatVec combo = zero_vec(n);
        for (int l = 1; l <= d + 1; ++l) {
          const IntVec ml = bw.level_dual(l);
          Int num(0);
          for (int j = 0; j < n; ++j) num += ml[j] * sp->val[j];
          const Rat vl = ratz(num, Int(sp->q)) + Rat(ml.back());
          if (vl != levels[l - 1])
            flag("staircase monomial valuation disagrees with the region weight");
          if (abs(vl) >= margin) flag("level valuation outside the safety margin");
          total += vl;
          const IntVec gl = bw.level_gen(l);
          RatVec head(n);
          for (int j = 0; j < n; ++j) head[j] = Rat(gl[j]);
          combo = vadd(combo, vscale(vl, head));
        }
        if (total != 1) flag("level valuations do not sum to one");
        if (combo != vr.retract(ch, static_cast<int>(wi), c.w))
          flag("recombination misses the retraction value");
        const auto ev = con.try_eval(tp);
        if (!ev)
          flag("contraction undefined on the sample");
        else if (*ev != combo)
          flag("contraction and lifted retraction disagree");
        if (c.bounded && ev && *ev != c.w) flag("contraction moves a point of the skeleton");
      }
    if (!matched) flag("contraction region sample misses every retraction region");
  });

  // Phase three, serial: merge in index order and stop at the target, so the
  // report is identical for every thread count.
  for (const Outcome& o : out) {
    if (!o.accepted) continue;
    for (const std::string& msg : o.failures) note(check, msg);
    if (++rep.accepted == target) break;
  }
  if (rep.accepted < target) {
    std::ostringstream msg;
    msg << "only " << rep.accepted << " of " << target << " samples accepted";
    note(check, msg.str());
  }
  return rep;
}

}  // namespace tropic
