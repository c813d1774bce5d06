#include "tropic/contraction.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

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

std::string point_key(const TropPoint& p) {
  std::ostringstream os;
  os << p.cone << '|' << vec_string(p.coords);
  return os.str();
}

// Barycentric weights theta with sum 1 and q * (verts * theta) = y. The
// projected simplex must keep full rank, so the weights are unique whenever
// the system is consistent.
std::optional<RatVec> simplex_weights(const std::vector<RatVec>& verts, const RatMat& q,
                                      const RatVec& y) {
  const int k = static_cast<int>(verts.size());
  const int rows = static_cast<int>(q.size());
  RatMat a(rows + 1, RatVec(k, Rat(0)));
  RatVec rhs(rows + 1, Rat(0));
  for (int t = 0; t < rows; ++t) {
    for (int j = 0; j < k; ++j) a[t][j] = dot(q[t], verts[j]);
    rhs[t] = y[t];
  }
  for (int j = 0; j < k; ++j) a[rows][j] = Rat(1);
  rhs[rows] = Rat(1);
  require(rank(a) == k, "contraction: chain simplex projects degenerately");
  return solve(a, rhs);
}

RatVec weighted_point(const std::vector<RatVec>& verts, const RatVec& theta) {
  RatVec w = zero_vec(static_cast<int>(verts.front().size()));
  for (std::size_t j = 0; j < verts.size(); ++j) w = vadd(w, vscale(theta[j], verts[j]));
  return w;
}

bool all_positive(const RatVec& theta) {
  for (const Rat& t : theta)
    if (sgn(t) <= 0) return false;
  return true;
}

bool all_nonnegative(const RatVec& theta) {
  for (const Rat& t : theta)
    if (sgn(t) < 0) return false;
  return true;
}

}  // namespace

Contraction::Contraction(const DualComplex& dc, const TropVariety& tv) : dc_(&dc), tv_(&tv) {
  require(dc.base_fan().get() == tv.fan().get() || dc.base_fan()->same_fan(*tv.fan()),
          "contraction: complex and variety live on different fans");
  const Fan& fan = *dc_->base_fan();
  for (std::size_t c = 0; c < dc_->cells().size(); ++c) {
    const int cone = dc_->cone_in_base(static_cast<int>(c));
    for (const RatVec& s : unit_locus_generators(static_cast<int>(c)))
      require(fan.cone_contains(cone, s),
              "contraction: unit locus generator escapes the cell cone");
  }
}

std::vector<RatVec> Contraction::unit_locus_generators(int cell) const {
  std::vector<RatVec> gens;
  std::set<std::string> seen;
  for (const Polytope& b : dc_->cells()[cell].beta)
    for (const RatVec& v : b.vertices())
      if (seen.insert(vec_string(v)).second) gens.push_back(v);
  return gens;
}

std::optional<RatVec> Contraction::section_point(int tau_prime, int tau, const RatVec& y) const {
  const QuotientProjection& qp = tv_->orbit_chart(dc_->cone_in_base(tau_prime));
  const RatMat q = to_rat_mat(qp.q);
  std::optional<RatVec> found;
  for (int ci : dc_->chains_from_through(tau_prime, tau)) {
    const Chain& ch = dc_->chains()[ci];
    auto theta = simplex_weights(ch.verts, q, y);
    if (!theta || !all_positive(*theta)) continue;
    RatVec w = weighted_point(ch.verts, *theta);
    if (found) require(*found == w, "contraction: section hits two chain simplices");
    found = std::move(w);
  }
  return found;
}

bool Contraction::in_chart_region(int tau_prime, int tau, const TropPoint& p,
                                  RatVec* w_out) const {
  if (tau_prime != tau) {
    const auto& faces = dc_->cells()[tau].faces;
    if (std::find(faces.begin(), faces.end(), tau_prime) == faces.end()) return false;
  }
  const Fan& fan = *dc_->base_fan();
  const int n = dc_->partition().rank();
  const int big = dc_->cone_in_base(tau_prime);
  const std::vector<RatVec> s_gens = unit_locus_generators(tau_prime);

  // The orbit cone of p must be a face of the cell cone reachable along the
  // unit locus directions: the directions landing in it must span into its
  // relative interior.
  std::vector<RatVec> span_gens;
  if (p.cone != tv_->zero_cone()) {
    span_gens = fan.cone_generators(p.cone);
    for (const RatVec& g : span_gens)
      if (!fan.cone_contains(big, g)) return false;
    RatVec acc = zero_vec(n);
    bool any = false;
    for (const RatVec& s : s_gens)
      if (fan.cone_contains(p.cone, s)) {
        acc = vadd(acc, s);
        any = true;
      }
    if (!any || !fan.cone_contains_relint(p.cone, acc)) return false;
  }

  const RatVec lifted = mat_vec(to_rat_mat(tv_->orbit_chart(p.cone).lift), p.coords);
  const RatVec y = mat_vec(to_rat_mat(tv_->orbit_chart(big).q), lifted);
  auto w = section_point(tau_prime, tau, y);
  if (!w) return false;

  // Certificate: some lift of p differs from w by a combination of unit locus
  // directions (nonnegative) and the span of the orbit cone (free).
  const int k = static_cast<int>(s_gens.size());
  const int g = static_cast<int>(span_gens.size());
  const RatVec target = vsub(lifted, *w);
  std::vector<LinCon> cons;
  for (int row = 0; row < n; ++row) {
    RatVec a(k + g, Rat(0));
    for (int j = 0; j < k; ++j) a[j] = s_gens[j][row];
    for (int t = 0; t < g; ++t) a[k + t] = span_gens[t][row];
    cons.emplace_back(std::move(a), Rel::EQ, target[row]);
  }
  for (int j = 0; j < k; ++j) {
    RatVec a(k + g, Rat(0));
    a[j] = Rat(1);
    cons.emplace_back(std::move(a), Rel::GE, Rat(0));
  }
  if (!lp_feasible(cons, k + g).feasible) return false;
  if (w_out) *w_out = *w;
  return true;
}

bool Contraction::in_total_region(int tau, const TropPoint& p) const {
  if (in_chart_region(tau, tau, p, nullptr)) return true;
  for (int tp : dc_->cells()[tau].faces)
    if (in_chart_region(tp, tau, p, nullptr)) return true;
  return false;
}

std::vector<Contraction::Branch> Contraction::branches(const TropPoint& p) const {
  std::vector<Branch> out;
  const int count = static_cast<int>(dc_->cells().size());
  for (int tau = 0; tau < count; ++tau) {
    std::vector<int> starts = dc_->cells()[tau].faces;
    starts.push_back(tau);
    std::sort(starts.begin(), starts.end());
    for (int tp : starts) {
      RatVec w;
      if (in_chart_region(tp, tau, p, &w)) out.push_back(Branch{tp, tau, std::move(w)});
    }
  }
  return out;
}

RatVec Contraction::eval(const TropPoint& p) const {
  require(tv_->contains(p), "contraction: point is off the tropical variety");
  auto br = branches(p);
  require(!br.empty(), "contraction: no chart region contains the point");
  for (const Branch& b : br)
    require(b.w == br.front().w, "contraction: chart regions disagree on the value");
  return br.front().w;
}

std::optional<RatVec> Contraction::try_eval(const TropPoint& p) const {
  if (!tv_->contains(p)) return std::nullopt;
  auto br = branches(p);
  if (br.empty()) return std::nullopt;
  for (const Branch& b : br)
    require(b.w == br.front().w, "contraction: chart regions disagree on the value");
  return br.front().w;
}

std::vector<TropPoint> Contraction::probe_points(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<TropPoint> out;
  std::set<std::string> seen;
  const int zero = tv_->zero_cone();
  auto push = [&](TropPoint p) {
    if (seen.insert(point_key(p)).second) out.push_back(std::move(p));
  };
  auto spread = [&](int cone, const Polyhedron& poly) {
    RatVec c = poly.relint_sample();
    push(TropPoint{cone, c});
    for (const RatVec& v : poly.vertices())
      push(TropPoint{cone, vscale(rat(1, 4), vadd(vscale(Rat(3), c), v))});
    for (const RatVec& r : poly.rays()) push(TropPoint{cone, vadd(c, r)});
  };
  for (const TropPiece& piece : tv_->dense_pieces()) spread(zero, piece.poly);
  for (const auto& st : tv_->strata()) spread(st.cone, st.poly);

  // Skeleton points and their images at infinity along valid escape faces.
  const Fan& fan = *dc_->base_fan();
  const int cells = static_cast<int>(dc_->cells().size());
  for (int c = 0; c < cells; ++c) {
    const std::vector<RatVec> s_gens = unit_locus_generators(c);
    std::vector<RatVec> skel = {dc_->cells()[c].anchor};
    for (int ci : dc_->chains_from(c)) {
      const Chain& ch = dc_->chains()[ci];
      RatVec mixed = zero_vec(static_cast<int>(ch.verts.front().size()));
      Rat total(0);
      for (const RatVec& v : ch.verts) {
        Rat wgt(static_cast<long>(1 + rng() % 7));
        mixed = vadd(mixed, vscale(wgt, v));
        total += wgt;
      }
      skel.push_back(vscale(Rat(1) / total, mixed));
    }
    for (const RatVec& w : skel) push(TropPoint{zero, w});
    const int big = dc_->cone_in_base(c);
    for (std::size_t cone = 0; cone < fan.cones().size(); ++cone) {
      const int ci = static_cast<int>(cone);
      if (ci == zero || fan.cones()[ci].dim == 0) continue;
      bool face = true;
      for (const RatVec& g : fan.cone_generators(ci))
        if (!fan.cone_contains(big, g)) {
          face = false;
          break;
        }
      if (!face) continue;
      RatVec acc = zero_vec(dc_->partition().rank());
      bool any = false;
      for (const RatVec& s : s_gens)
        if (fan.cone_contains(ci, s)) {
          acc = vadd(acc, s);
          any = true;
        }
      if (!any || !fan.cone_contains_relint(ci, acc)) continue;
      for (const RatVec& w : skel) {
        TropPoint p = tv_->project(ci, w);
        if (tv_->contains(p)) push(std::move(p));
      }
    }
  }
  return out;
}

ComplexCheck Contraction::verify_identity_on_skeleton() const {
  ComplexCheck check;
  const int zero = tv_->zero_cone();
  std::vector<RatVec> pts;
  for (const Cell& c : dc_->cells()) pts.push_back(c.anchor);
  for (const Chain& ch : dc_->chains()) {
    pts.push_back(ch.simplex.relint_sample());
    for (const RatVec& v : ch.verts)
      pts.push_back(vscale(rat(1, 3), vadd(vscale(Rat(2), pts.back()), v)));
  }
  for (const RatVec& w : pts) {
    auto got = try_eval(TropPoint{zero, w});
    if (!got)
      note(check, "contraction undefined on skeleton point " + vec_string(w));
    else if (*got != w)
      note(check, "contraction moves skeleton point " + vec_string(w) + " to " +
                      vec_string(*got));
  }
  return check;
}

ComplexCheck Contraction::verify_idempotent(std::uint64_t seed) const {
  ComplexCheck check;
  const int zero = tv_->zero_cone();
  for (const TropPoint& p : probe_points(seed)) {
    auto w = try_eval(p);
    if (!w) {
      note(check, "contraction undefined on probe " + point_key(p));
      continue;
    }
    auto ww = try_eval(TropPoint{zero, *w});
    if (!ww)
      note(check, "contraction undefined on image point " + vec_string(*w));
    else if (*ww != *w)
      note(check, "contraction not idempotent at probe " + point_key(p));
  }
  return check;
}

ComplexCheck Contraction::verify_chart_independence(std::uint64_t seed) const {
  ComplexCheck check;
  bool overlap_seen = false;
  for (const TropPoint& p : probe_points(seed)) {
    auto br = branches(p);
    if (br.empty()) {
      note(check, "no chart region contains probe " + point_key(p));
      continue;
    }
    if (br.size() > 1) overlap_seen = true;
    for (const Branch& b : br)
      if (b.w != br.front().w) {
        note(check, "chart regions disagree at probe " + point_key(p));
        break;
      }
  }
  if (!overlap_seen) note(check, "no probe point hit two chart regions");
  return check;
}

ComplexCheck Contraction::verify_preimage_law(std::uint64_t seed) const {
  ComplexCheck check;
  const int cells = static_cast<int>(dc_->cells().size());
  for (const TropPoint& p : probe_points(seed)) {
    auto br = branches(p);
    if (br.empty()) {
      note(check, "no chart region contains probe " + point_key(p));
      continue;
    }
    const RatVec& w = br.front().w;
    for (int tau = 0; tau < cells; ++tau) {
      const bool in_preimage = dc_->in_open_star(tau, w);
      bool in_region = false;
      for (const Branch& b : br)
        if (b.tau == tau) {
          in_region = true;
          break;
        }
      if (in_preimage != in_region) {
        std::ostringstream os;
        os << "preimage law fails at probe " << point_key(p) << " for cell " << tau
           << ": image " << (in_preimage ? "inside" : "outside") << " open star, probe "
           << (in_region ? "inside" : "outside") << " region union";
        note(check, os.str());
      }
    }
  }
  return check;
}

ComplexCheck Contraction::verify_star_cone_lemma() const {
  ComplexCheck check;
  const Fan& fan = *dc_->base_fan();
  const int n = dc_->partition().rank();
  const int zero = tv_->zero_cone();
  for (int sigma : dc_->top_cells()) {
    const Polytope& sp = dc_->cells()[sigma].poly;
    std::vector<int> sources = {sigma};
    for (int f : dc_->cells()[sigma].faces)
      if (dc_->cells()[f].dim == 0) sources.push_back(f);
    for (int src : sources) {
      const std::vector<RatVec> s_gens = unit_locus_generators(src);
      const int k = static_cast<int>(s_gens.size());
      const int big = dc_->cone_in_base(src);
      // Variables x (ambient), y (point of the open cell), lambda (cone
      // coefficients); x = y + sum lambda_j s_j.
      std::vector<LinCon> base;
      const int nv = 2 * n + k;
      for (int row = 0; row < n; ++row) {
        RatVec a(nv, Rat(0));
        a[row] = Rat(1);
        a[n + row] = Rat(-1);
        for (int j = 0; j < k; ++j) a[2 * n + j] = -s_gens[j][row];
        base.emplace_back(std::move(a), Rel::EQ, Rat(0));
      }
      for (int j = 0; j < k; ++j) {
        RatVec a(nv, Rat(0));
        a[2 * n + j] = Rat(1);
        base.emplace_back(std::move(a), Rel::GE, Rat(0));
      }
      auto on_y = [&](const RatVec& coeff, Rel rel, const Rat& rhs) {
        RatVec a(nv, Rat(0));
        for (int t = 0; t < n; ++t) a[n + t] = coeff[t];
        return LinCon(std::move(a), rel, rhs);
      };
      auto on_x = [&](const RatVec& coeff, Rel rel, const Rat& rhs) {
        RatVec a(nv, Rat(0));
        for (int t = 0; t < n; ++t) a[t] = coeff[t];
        return LinCon(std::move(a), rel, rhs);
      };
      for (const auto& e : sp.eqs()) base.push_back(on_y(e.a, Rel::EQ, e.b));
      for (const auto& iq : sp.ineqs()) base.push_back(on_y(iq.a, Rel::GT, iq.b));

      // Violations of the open cell, one strict complement case at a time.
      std::vector<LinCon> violations;
      for (const auto& e : sp.eqs()) {
        violations.push_back(on_x(e.a, Rel::GT, e.b));
        violations.push_back(on_x(vscale(Rat(-1), e.a), Rel::GT, -e.b));
      }
      for (const auto& iq : sp.ineqs())
        violations.push_back(on_x(vscale(Rat(-1), iq.a), Rel::GE, -iq.b));

      for (std::size_t pi = 0; pi < tv_->dense_pieces().size(); ++pi) {
        const Polyhedron& pp = tv_->dense_pieces()[pi].poly;
        std::vector<LinCon> piece = base;
        for (const auto& e : pp.eqs()) piece.push_back(on_x(e.a, Rel::EQ, e.b));
        for (const auto& iq : pp.ineqs()) piece.push_back(on_x(iq.a, Rel::GE, iq.b));
        for (const LinCon& viol : violations) {
          std::vector<LinCon> cons = piece;
          cons.push_back(viol);
          if (lp_feasible(cons, nv).feasible) {
            std::ostringstream os;
            os << "escape from open cell " << sigma << " via cone of cell " << src
               << " inside piece " << pi;
            note(check, os.str());
          }
        }
      }

      // Orbit strata: the shifted cone must also miss the variety at infinity.
      for (std::size_t cone = 0; cone < fan.cones().size(); ++cone) {
        const int ci = static_cast<int>(cone);
        if (ci == zero || fan.cones()[ci].dim == 0) continue;
        bool face = true;
        for (const RatVec& gvec : fan.cone_generators(ci))
          if (!fan.cone_contains(big, gvec)) {
            face = false;
            break;
          }
        if (!face) continue;
        RatVec acc = zero_vec(n);
        bool any = false;
        for (const RatVec& s : s_gens)
          if (fan.cone_contains(ci, s)) {
            acc = vadd(acc, s);
            any = true;
          }
        if (!any || !fan.cone_contains_relint(ci, acc)) continue;
        const RatMat q = to_rat_mat(tv_->orbit_chart(ci).q);
        // Variables y, lambda; the stratum constraint acts on q(y + sum
        // lambda_j s_j).
        const int mv = n + k;
        std::vector<LinCon> cons;
        for (int j = 0; j < k; ++j) {
          RatVec a(mv, Rat(0));
          a[n + j] = Rat(1);
          cons.emplace_back(std::move(a), Rel::GE, Rat(0));
        }
        auto proj_row = [&](const RatVec& coeff, Rel rel, const Rat& rhs) {
          RatVec qa = zero_vec(n);
          for (std::size_t t = 0; t < q.size(); ++t)
            qa = vadd(qa, vscale(coeff[t], q[t]));
          RatVec a(mv, Rat(0));
          for (int t = 0; t < n; ++t) a[t] = qa[t];
          for (int j = 0; j < k; ++j) a[n + j] = dot(qa, s_gens[j]);
          return LinCon(std::move(a), rel, rhs);
        };
        auto rim_row = [&](const RatVec& coeff, Rel rel, const Rat& rhs) {
          RatVec a(mv, Rat(0));
          for (int t = 0; t < n; ++t) a[t] = coeff[t];
          return LinCon(std::move(a), rel, rhs);
        };
        for (const auto& e : sp.eqs()) cons.push_back(rim_row(e.a, Rel::EQ, e.b));
        for (const auto& iq : sp.ineqs()) cons.push_back(rim_row(iq.a, Rel::GT, iq.b));
        for (int sti : tv_->strata_of(ci)) {
          const Polyhedron& st = tv_->strata()[sti].poly;
          std::vector<LinCon> all = cons;
          for (const auto& e : st.eqs()) all.push_back(proj_row(e.a, Rel::EQ, e.b));
          for (const auto& iq : st.ineqs()) all.push_back(proj_row(iq.a, Rel::GE, iq.b));
          if (lp_feasible(all, mv).feasible) {
            std::ostringstream os;
            os << "escape from open cell " << sigma << " via cone of cell " << src
               << " reaches the stratum of cone " << ci;
            note(check, os.str());
          }
        }
      }
    }
  }
  return check;
}

ComplexCheck Contraction::verify_affine_charts() const {
  ComplexCheck check;
  const int n = dc_->partition().rank();
  const int zero = tv_->zero_cone();
  for (int v : dc_->vertex_cells()) {
    const QuotientProjection& chart = dc_->vertex_chart(v);
    const RatMat psi = to_rat_mat(chart.q);
    const RatMat qbig = to_rat_mat(tv_->orbit_chart(dc_->cone_in_base(v)).q);
    const std::vector<RatVec> s_gens = unit_locus_generators(v);
    const Polyhedron tube_cone =
        Polyhedron::from_points({zero_vec(n)}, Lattice::N, s_gens);
    for (int ci : dc_->chains_from(v)) {
      const Chain& ch = dc_->chains()[ci];
      const Polyhedron tube = minkowski_sum(ch.simplex, tube_cone);
      // Affine formula on this region: barycentric section of the projection
      // along the cell cone, followed by the vertex chart.
      auto formula = [&](const RatVec& x) -> std::optional<RatVec> {
        auto theta = simplex_weights(ch.verts, qbig, mat_vec(qbig, x));
        if (!theta || !all_nonnegative(*theta)) return std::nullopt;
        return weighted_point(ch.verts, *theta);
      };
      for (std::size_t pi = 0; pi < tv_->dense_pieces().size(); ++pi) {
        const Polyhedron region = intersect(tube, tv_->dense_pieces()[pi].poly);
        if (region.empty()) continue;
        std::ostringstream tag;
        tag << "vertex " << v << ", chain " << ci << ", piece " << pi;
        const RatVec x0 = region.relint_sample();
        auto w0 = formula(x0);
        if (!w0) {
          note(check, "region sample escapes its chain at " + tag.str());
          continue;
        }
        auto global0 = try_eval(TropPoint{zero, x0});
        if (!global0 || *global0 != *w0) {
          note(check, "chart formula disagrees with the contraction at " + tag.str());
          continue;
        }
        const RatVec u0 = mat_vec(psi, *w0);
        // Lattice frame of the region's direction space.
        std::vector<RatVec> dirs;
        const auto& verts = region.vertices();
        for (std::size_t t = 1; t < verts.size(); ++t)
          dirs.push_back(vsub(verts[t], verts.front()));
        for (const RatVec& r : region.rays()) dirs.push_back(r);
        for (const RatVec& l : region.lineality()) dirs.push_back(l);
        std::vector<IntVec> frame = saturation_basis(dirs, n);
        if (frame.empty()) continue;
        RatMat frame_cols(n, RatVec(frame.size(), Rat(0)));
        std::vector<RatVec> slopes;
        bool ok = true;
        for (std::size_t t = 0; t < frame.size() && ok; ++t) {
          const RatVec b = to_rat_vec(frame[t]);
          for (int row = 0; row < n; ++row) frame_cols[row][t] = b[row];
          // Exact step keeping x0 + step*b inside the region.
          std::vector<LinCon> cons;
          for (const auto& iq : region.ineqs())
            cons.emplace_back(RatVec{dot(iq.a, b)}, Rel::GE, iq.b - dot(iq.a, x0));
          for (const auto& e : region.eqs())
            cons.emplace_back(RatVec{dot(e.a, b)}, Rel::EQ, e.b - dot(e.a, x0));
          auto t_max = lp_maximize(cons, RatVec{Rat(1)}, 1);
          Rat step(1);
          if (t_max.status == OptStatus::OPT) step = t_max.value / 2;
          require(t_max.status != OptStatus::INFEASIBLE,
                  "contraction: region line search infeasible");
          if (sgn(step) <= 0) {
            note(check, "zero slack along a frame direction at " + tag.str());
            ok = false;
            break;
          }
          const RatVec x1 = vadd(x0, vscale(step, b));
          auto w1 = formula(x1);
          if (!w1) {
            note(check, "stepped sample escapes its chain at " + tag.str());
            ok = false;
            break;
          }
          RatVec slope = vscale(Rat(1) / step, vsub(mat_vec(psi, *w1), u0));
          if (!is_integral(slope)) {
            note(check, "non-integer slope " + vec_string(slope) + " at " + tag.str());
            ok = false;
            break;
          }
          slopes.push_back(std::move(slope));
        }
        if (!ok) continue;
        // Affineness on extra samples: interpolation must reproduce the
        // formula, and the formula must keep matching the contraction.
        std::vector<RatVec> samples;
        for (const RatVec& vx : verts)
          samples.push_back(vscale(rat(1, 3), vadd(vscale(Rat(2), x0), vx)));
        for (const RatVec& r : region.rays()) samples.push_back(vadd(x0, r));
        for (const RatVec& xs : samples) {
          auto cs = solve(frame_cols, vsub(xs, x0));
          require(cs.has_value(), "contraction: sample leaves the region frame");
          RatVec predicted = u0;
          for (std::size_t t = 0; t < slopes.size(); ++t)
            predicted = vadd(predicted, vscale((*cs)[t], slopes[t]));
          auto ws = formula(xs);
          if (!ws || mat_vec(psi, *ws) != predicted) {
            note(check, "chart fails to interpolate affinely at " + tag.str());
            break;
          }
          auto glob = try_eval(TropPoint{zero, xs});
          if (!glob || *glob != *ws) {
            note(check, "contraction leaves the chart formula at " + tag.str());
            break;
          }
        }
      }
    }
  }
  return check;
}

}  // namespace tropic
