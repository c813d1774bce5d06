#include "tropic/pipeline.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tropic/error.hpp"
#include "tropic/shuffle.hpp"

namespace tropic {

namespace {

using nlohmann::json;

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::DualComplex: return "dualcomplex";
    case Stage::TropCI: return "tropci";
    case Stage::Contraction: return "contraction";
    case Stage::Shuffles: return "shuffles";
    case Stage::Valuation: return "valuation";
  }
  return "?";
}

// Runs one named check, timing it and catching construction errors so the
// report is emitted even when a stage blows up.
struct Runner {
  VerificationReport& rep;

  bool run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto [ok, detail] = fn();
      r.pass = ok;
      r.detail = detail;
    } catch (const TropicError& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
    rep.checks.push_back(std::move(r));
    return rep.checks.back().pass;
  }

  void skip(const std::string& name, const std::string& why) {
    rep.checks.push_back(CheckResult{name, false, 0, "skipped: " + why});
  }
};

std::string summarize(const ComplexCheck& c, const std::string& ok_detail) {
  if (c.pass) return ok_detail;
  std::ostringstream out;
  out << c.failures.size() << " failures; first: " << (c.failures.empty() ? "" : c.failures[0]);
  return out.str();
}

std::pair<bool, std::string> from_check(const ComplexCheck& c, const std::string& ok_detail) {
  return {c.pass, summarize(c, ok_detail)};
}

std::string join_counts(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

json vec_json(const RatVec& v) {
  json out = json::array();
  for (const Rat& x : v) out.push_back(x.get_str());
  return out;
}

json ivec_json(const IntVec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(x.get_str());
  return out;
}

// Decimal rendering for mesh formats; exact when the denominator divides a
// power of ten, shortest round-tripping double otherwise.
std::string off_coord(const Rat& x) {
  const double d = x.get_d();
  std::ostringstream out;
  out.precision(17);
  out << d;
  return out.str();
}

std::string off_mesh(int rank, const std::vector<RatVec>& verts,
                     const std::vector<std::vector<int>>& faces, const std::string& header) {
  std::ostringstream out;
  if (rank == 3)
    out << "OFF\n";
  else
    out << "nOFF\n" << rank << "\n";
  out << "# " << header << "\n";
  out << verts.size() << " " << faces.size() << " 0\n";
  for (const RatVec& v : verts) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << off_coord(v[j]);
    out << "\n";
  }
  for (const auto& f : faces) {
    out << f.size();
    for (int i : f) out << " " << i;
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::vector<Stage> parse_stages(const std::string& name) {
  if (name == "all")
    return {Stage::DualComplex, Stage::TropCI, Stage::Contraction, Stage::Shuffles,
            Stage::Valuation};
  if (name == "dualcomplex") return {Stage::DualComplex};
  if (name == "tropci") return {Stage::TropCI};
  if (name == "contraction") return {Stage::Contraction};
  if (name == "shuffles") return {Stage::Shuffles};
  if (name == "valuation") return {Stage::Valuation};
  fail("unknown stage \"" + name + "\" (expected all, dualcomplex, tropci, contraction, "
       "shuffles or valuation)");
}

VerificationReport run_pipeline(Workspace& ws, const std::vector<Stage>& stages) {
  VerificationReport rep;
  rep.problem = ws.problem().name;
  rep.seed = ws.problem().seed;
  Runner run{rep};
  std::map<Stage, bool> ok;

  const auto ran_ok = [&](Stage s) { return !ok.count(s) || ok[s]; };

  for (Stage s : stages) {
    switch (s) {
      case Stage::DualComplex: {
        bool good = run.run("dual-complex-structure", [&] {
          const DualComplex& dc = ws.complex();
          ComplexCheck combined;
          const LiftedCheck& lc = dc.structure_check();
          combined.pass = lc.pass;
          combined.failures = lc.failures;
          std::ostringstream detail;
          detail << "f-vector " << join_counts(dc.f_vector()) << ", " << dc.chains().size()
                 << " chains";
          return from_check(combined, detail.str());
        });
        good = run.run("dual-complex-transitions", [&] {
                 return from_check(ws.complex().verify_transitions(), "charts consistent");
               }) &&
               good;
        ok[s] = good;
        break;
      }
      case Stage::TropCI: {
        bool good = run.run("tropical-ci", [&] {
          const TropVariety& tv = ws.variety();
          std::ostringstream detail;
          detail << tv.dense_pieces().size() << " dense pieces, " << tv.strata().size()
                 << " orbit strata";
          return std::pair<bool, std::string>(!tv.dense_pieces().empty(), detail.str());
        });
        if (!ran_ok(Stage::DualComplex)) {
          run.skip("skeleton-on-variety", "dualcomplex failed");
          good = false;
        } else {
          good = run.run("skeleton-on-variety", [&] {
                   const DualComplex& dc = ws.complex();
                   const TropVariety& tv = ws.variety();
                   ComplexCheck c;
                   for (std::size_t i = 0; i < dc.cells().size(); ++i) {
                     const Cell& cell = dc.cells()[i];
                     RatVec centroid = zero_vec(ws.problem().rank);
                     for (const RatVec& v : cell.poly.vertices())
                       centroid = vadd(centroid, v);
                     centroid = vscale(Rat(1, static_cast<long>(cell.poly.vertices().size())),
                                       centroid);
                     for (const RatVec* x : {&cell.anchor, &centroid})
                       if (!tv.contains_dense(*x)) {
                         c.pass = false;
                         c.failures.push_back("cell " + std::to_string(i) +
                                              " point off the variety: " + vec_string(*x));
                       }
                   }
                   std::ostringstream detail;
                   detail << dc.cells().size() << " anchors and centroids on the variety";
                   return from_check(c, detail.str());
                 }) &&
                 good;
        }
        ok[s] = good;
        break;
      }
      case Stage::Contraction: {
        if (!ran_ok(Stage::DualComplex) || !ran_ok(Stage::TropCI)) {
          for (const char* name :
               {"contraction-skeleton-identity", "contraction-idempotent",
                "contraction-chart-independence", "contraction-preimage-law",
                "contraction-star-cones", "contraction-affine-charts"})
            run.skip(name, "a prerequisite stage failed");
          ok[s] = false;
          break;
        }
        const std::uint64_t seed = ws.problem().seed;
        bool good = true;
        good = run.run("contraction-skeleton-identity", [&] {
                 return from_check(ws.contraction().verify_identity_on_skeleton(), "fixed");
               }) &&
               good;
        good = run.run("contraction-idempotent", [&] {
                 return from_check(ws.contraction().verify_idempotent(seed), "idempotent");
               }) &&
               good;
        good = run.run("contraction-chart-independence", [&] {
                 return from_check(ws.contraction().verify_chart_independence(seed), "agree");
               }) &&
               good;
        good = run.run("contraction-preimage-law", [&] {
                 return from_check(ws.contraction().verify_preimage_law(seed), "verified");
               }) &&
               good;
        good = run.run("contraction-star-cones", [&] {
                 return from_check(ws.contraction().verify_star_cone_lemma(), "exact");
               }) &&
               good;
        good = run.run("contraction-affine-charts", [&] {
                 return from_check(ws.contraction().verify_affine_charts(), "integral affine");
               }) &&
               good;
        ok[s] = good;
        break;
      }
      case Stage::Shuffles: {
        if (!ran_ok(Stage::DualComplex)) {
          run.skip("shuffle-triangulation", "dualcomplex failed");
          ok[s] = false;
          break;
        }
        ok[s] = run.run("shuffle-triangulation", [&] {
          const DualComplex& dc = ws.complex();
          const auto tris = triangulate_complex(dc);
          std::ostringstream detail;
          detail << tris.size() << " simplices over " << dc.top_cells().size() << " cells";
          return from_check(verify_complex_triangulation(dc), detail.str());
        });
        break;
      }
      case Stage::Valuation: {
        if (!ran_ok(Stage::DualComplex) || !ran_ok(Stage::TropCI) ||
            !ran_ok(Stage::Contraction)) {
          for (const char* name : {"chart-identities", "divisor-points",
                                   "retraction-contraction", "sampled-commutation"})
            run.skip(name, "a prerequisite stage failed");
          ok[s] = false;
          break;
        }
        bool good = true;
        good = run.run("chart-identities", [&] {
                 return from_check(verify_chart_identities(ws.complex()), "exact");
               }) &&
               good;
        good = run.run("divisor-points", [&] {
                 return from_check(verify_divisor_points(ws.complex()), "vertices recovered");
               }) &&
               good;
        good = run.run("retraction-contraction", [&] {
                 int samples = 0;
                 const ComplexCheck c = ws.retraction().verify_against_contraction(
                     ws.contraction(), ws.problem().seed, &samples);
                 std::ostringstream detail;
                 detail << samples << " samples";
                 return from_check(c, detail.str());
               }) &&
               good;
        if (ws.problem().parts.size() == 1) {
          good = run.run("sampled-commutation", [&] {
                   const SampleReport sr = verify_sampled_commutation(
                       ws.complex(), ws.contraction(), ws.retraction(), ws.problem().samples,
                       ws.problem().trunc, ws.problem().seed);
                   std::ostringstream detail;
                   detail << sr.accepted << " of " << sr.attempted << " draws accepted";
                   return from_check(sr.check, detail.str());
                 }) &&
                 good;
        }
        ok[s] = good;
        break;
      }
    }
  }
  (void)stage_name;
  return rep;
}

std::string dual_complex_json(Workspace& ws) {
  const DualComplex& dc = ws.complex();
  json j;
  j["schema"] = "tropic-dualcomplex-v1";
  j["dim"] = dc.dim();
  json fv = json::array();
  for (int c : dc.f_vector()) fv.push_back(c);
  j["f_vector"] = std::move(fv);
  json cells = json::array();
  for (std::size_t i = 0; i < dc.cells().size(); ++i) {
    const Cell& cell = dc.cells()[i];
    json e;
    e["id"] = i;
    e["dim"] = cell.dim;
    json verts = json::array();
    for (const RatVec& v : cell.poly.vertices()) verts.push_back(vec_json(v));
    e["vertices"] = std::move(verts);
    e["faces"] = cell.faces;
    e["anchor"] = vec_json(cell.anchor);
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  json gamma = json::array();
  for (const Chain& ch : dc.chains()) {
    if (!ch.in_gamma) continue;
    json simplex = json::array();
    for (const RatVec& v : ch.verts) simplex.push_back(vec_json(v));
    gamma.push_back(std::move(simplex));
  }
  j["discriminant"] = std::move(gamma);
  json charts = json::array();
  for (int tc : dc.top_cells()) {
    ChartBasis cb(dc, tc);
    json e;
    e["cell"] = tc;
    json gens = json::array();
    for (const IntVec& row : cb.gens()) gens.push_back(ivec_json(row));
    e["generators"] = std::move(gens);
    json duals = json::array();
    for (const IntVec& row : cb.duals()) duals.push_back(ivec_json(row));
    e["duals"] = std::move(duals);
    charts.push_back(std::move(e));
  }
  j["charts"] = std::move(charts);
  return j.dump(2) + "\n";
}

std::string trop_complex_json(Workspace& ws) {
  const TropVariety& tv = ws.variety();
  json j;
  j["schema"] = "tropic-tropci-v1";
  json pieces = json::array();
  for (const TropPiece& p : tv.dense_pieces()) {
    json e;
    e["cone"] = 0;
    json ineqs = json::array();
    for (const Ineq& q : p.poly.ineqs()) {
      json c;
      c["a"] = vec_json(q.a);
      c["b"] = q.b.get_str();
      ineqs.push_back(std::move(c));
    }
    e["ineqs"] = std::move(ineqs);
    json eqs = json::array();
    for (const Eqn& q : p.poly.eqs()) {
      json c;
      c["a"] = vec_json(q.a);
      c["b"] = q.b.get_str();
      eqs.push_back(std::move(c));
    }
    e["eqs"] = std::move(eqs);
    e["attain"] = p.attain;
    pieces.push_back(std::move(e));
  }
  j["pieces"] = std::move(pieces);
  json strata = json::array();
  for (const auto& st : tv.strata()) {
    json e;
    e["cone"] = st.cone;
    e["piece"] = st.source_piece;
    strata.push_back(std::move(e));
  }
  j["strata"] = std::move(strata);
  return j.dump(2) + "\n";
}

std::string skeleton_off(Workspace& ws) {
  const DualComplex& dc = ws.complex();
  const int d = dc.dim();
  std::vector<RatVec> verts;
  std::map<std::string, int> index;
  std::vector<std::vector<int>> faces;
  for (const Chain& ch : dc.chains()) {
    if (static_cast<int>(ch.verts.size()) != d + 1) continue;
    std::vector<int> face;
    for (const RatVec& v : ch.verts) {
      const std::string key = vec_string(v);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(verts.size())).first;
        verts.push_back(v);
      }
      face.push_back(it->second);
    }
    faces.push_back(std::move(face));
  }
  std::ostringstream header;
  header << "f-vector " << join_counts(dc.f_vector());
  return off_mesh(ws.problem().rank, verts, faces, header.str());
}

std::string product_off(const std::vector<int>& degrees) {
  require(!degrees.empty(), "product mesh: at least one factor required");
  int rank = 0;
  for (int k : degrees) {
    require(k >= 1, "product mesh: factor dimensions must be positive");
    rank += k;
  }
  // Factor i walks one block of coordinates: 0, e1, e1+e2, ... within the
  // block, so the Minkowski sum of the chain hulls is the product.
  std::vector<std::vector<RatVec>> chains;
  int off = 0;
  for (int k : degrees) {
    std::vector<RatVec> chain;
    RatVec p = zero_vec(rank);
    chain.push_back(p);
    for (int j = 0; j < k; ++j) {
      p[off + j] = 1;
      chain.push_back(p);
    }
    chains.push_back(std::move(chain));
    off += k;
  }
  const auto tris = staircase_triangulation(chains);
  std::vector<RatVec> verts;
  std::map<std::string, int> index;
  std::vector<std::vector<int>> faces;
  for (const Polytope& t : tris) {
    std::vector<int> face;
    for (const RatVec& v : t.vertices()) {
      const std::string key = vec_string(v);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(verts.size())).first;
        verts.push_back(v);
      }
      face.push_back(it->second);
    }
    faces.push_back(std::move(face));
  }
  std::ostringstream header;
  header << "staircase simplices " << tris.size() << ", expected "
         << multinomial(degrees).get_str();
  return off_mesh(rank, verts, faces, header.str());
}

std::string series_point_json(const SeriesPoint& p) {
  json j;
  j["schema"] = "tropic-seriespoint-v1";
  j["ramification"] = p.q;
  json coords = json::array();
  for (int jx = 0; jx < p.dim(); ++jx) {
    json terms = json::array();
    const TruncSeries& u = p.unit[static_cast<std::size_t>(jx)];
    for (int k = 0; k <= u.order(); ++k) {
      if (u.coeff(k) == 0) continue;
      Rat expo(p.val[static_cast<std::size_t>(jx)] + k, Int(p.q));
      expo.canonicalize();
      json term = json::array();
      term.push_back(expo.get_str());
      term.push_back(u.coeff(k).get_str());
      terms.push_back(std::move(term));
    }
    coords.push_back(std::move(terms));
  }
  j["coords"] = std::move(coords);
  return j.dump(2) + "\n";
}

}  // namespace tropic
