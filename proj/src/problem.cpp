#include "tropic/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tropic/error.hpp"
#include "tropic/lifted_fan.hpp"

namespace tropic {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
  fail("problem schema: " + path + ": " + msg);
}

Rat json_rat(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const TropicError& e) {
      schema_fail(path, e.what());
    }
  }
  schema_fail(path, "expected an integer or a rational string");
}

RatVec json_vec(const json& v, int rank, const std::string& path) {
  if (!v.is_array()) schema_fail(path, "expected an array");
  if (static_cast<int>(v.size()) != rank)
    schema_fail(path, "expected " + std::to_string(rank) + " entries");
  RatVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_rat(v[i], path + "/" + std::to_string(i)));
  return out;
}

json vec_json(const RatVec& v) {
  json out = json::array();
  for (const Rat& x : v) out.push_back(x.get_str());
  return out;
}

}  // namespace

std::string problem_json(const ProblemInstance& p) {
  json j;
  j["schema"] = "tropic-problem-v1";
  j["name"] = p.name;
  j["rank"] = p.rank;
  json parts = json::array();
  for (const auto& part : p.parts) {
    json lst = json::array();
    for (const RatVec& v : part) lst.push_back(vec_json(v));
    parts.push_back(std::move(lst));
  }
  j["parts"] = std::move(parts);
  j["fans"] = p.fans;
  j["heights"] = p.heights;
  j["distinguished"] = p.distinguished ? vec_json(*p.distinguished) : json();
  j["seed"] = p.seed;
  j["trunc"] = p.trunc;
  j["samples"] = p.samples;
  return j.dump(2) + "\n";
}

ProblemInstance parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("problem schema: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("problem schema: top level must be an object");
  const std::set<std::string> known = {"schema", "name",          "rank", "parts",
                                       "fans",   "heights",       "seed", "trunc",
                                       "samples", "distinguished"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) schema_fail("/" + item.key(), "unknown key");
  if (!j.contains("schema") || !j["schema"].is_string() ||
      j["schema"].get<std::string>() != "tropic-problem-v1")
    schema_fail("/schema", "expected \"tropic-problem-v1\"");

  ProblemInstance p;
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    schema_fail("/name", "expected a nonempty string");
  p.name = j["name"].get<std::string>();
  if (!j.contains("rank") || !j["rank"].is_number_integer() || j["rank"].get<int>() < 1)
    schema_fail("/rank", "expected a positive integer");
  p.rank = j["rank"].get<int>();
  if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].empty())
    schema_fail("/parts", "expected a nonempty array");
  for (std::size_t i = 0; i < j["parts"].size(); ++i) {
    const json& part = j["parts"][i];
    const std::string path = "/parts/" + std::to_string(i);
    if (!part.is_array() || part.empty()) schema_fail(path, "expected a nonempty array");
    std::vector<RatVec> verts;
    for (std::size_t k = 0; k < part.size(); ++k)
      verts.push_back(json_vec(part[k], p.rank, path + "/" + std::to_string(k)));
    p.parts.push_back(std::move(verts));
  }
  if (j.contains("fans")) {
    if (!j["fans"].is_string()) schema_fail("/fans", "expected a string");
    p.fans = j["fans"].get<std::string>();
  }
  if (p.fans != "trivial")
    schema_fail("/fans", "schema v1 supports only the \"trivial\" shorthand");
  if (j.contains("heights")) {
    if (!j["heights"].is_string()) schema_fail("/heights", "expected a string");
    p.heights = j["heights"].get<std::string>();
  }
  if (p.heights != "support")
    schema_fail("/heights", "schema v1 supports only the \"support\" shorthand");
  if (j.contains("distinguished") && !j["distinguished"].is_null())
    p.distinguished = json_vec(j["distinguished"], p.rank, "/distinguished");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      schema_fail("/seed", "expected a nonnegative integer");
    p.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trunc")) {
    if (!j["trunc"].is_number_integer() || j["trunc"].get<int>() < 4)
      schema_fail("/trunc", "expected an integer of at least 4");
    p.trunc = j["trunc"].get<int>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer() || j["samples"].get<int>() < 1)
      schema_fail("/samples", "expected a positive integer");
    p.samples = j["samples"].get<int>();
  }
  return p;
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("problem: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::vector<std::string> builtin_names() { return {"quartic-k3", "quintic", "cubic-cubic-p5"}; }

ProblemInstance builtin_problem(const std::string& name) {
  ProblemInstance p;
  p.name = name;
  p.seed = 20260814u;
  if (name == "quartic-k3") {
    p.rank = 3;
    p.parts = {{rat_vec({3, -1, -1}), rat_vec({-1, 3, -1}), rat_vec({-1, -1, 3}),
                rat_vec({-1, -1, -1})}};
    p.samples = 100;
  } else if (name == "quintic") {
    p.rank = 4;
    p.parts = {{rat_vec({4, -1, -1, -1}), rat_vec({-1, 4, -1, -1}), rat_vec({-1, -1, 4, -1}),
                rat_vec({-1, -1, -1, 4}), rat_vec({-1, -1, -1, -1})}};
    p.samples = 50;
  } else if (name == "cubic-cubic-p5") {
    p.rank = 5;
    p.parts = {{rat_vec({-1, -1, -1, 0, 0}), rat_vec({2, -1, -1, 0, 0}), rat_vec({-1, 2, -1, 0, 0}),
                rat_vec({-1, -1, 2, 0, 0}), rat_vec({-1, -1, -1, 3, 0}), rat_vec({-1, -1, -1, 0, 3})},
               {rat_vec({0, 0, 0, -1, -1}), rat_vec({3, 0, 0, -1, -1}), rat_vec({0, 3, 0, -1, -1}),
                rat_vec({0, 0, 3, -1, -1}), rat_vec({0, 0, 0, 2, -1}), rat_vec({0, 0, 0, -1, 2})}};
    p.samples = 100;
  } else {
    fail("problem: unknown builtin \"" + name + "\"");
  }
  return p;
}

Workspace::Workspace(ProblemInstance p) : p_(std::move(p)) {}

const NefPartition& Workspace::nef() {
  if (!np_) {
    std::vector<Polytope> parts;
    for (const auto& verts : p_.parts) parts.push_back(hull(verts, Lattice::M));
    Polytope delta = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) delta = minkowski_sum(delta, parts[i]);
    np_ = std::make_unique<NefPartition>(std::move(delta), std::move(parts));
  }
  return *np_;
}

const Polytope& Workspace::correction() {
  if (!corr_)
    corr_ = std::make_unique<Polytope>(hull({zero_vec(p_.rank)}, Lattice::N));
  return *corr_;
}

const DualComplex& Workspace::complex() {
  if (!dc_) {
    const NefPartition& np = nef();
    fine_ = std::make_shared<Fan>(build_lifted_fan(np.delta_dual(), correction()));
    dc_ = std::make_unique<DualComplex>(np, np.sigma(), fine_, correction(), np.nabla(),
                                        p_.distinguished);
  }
  return *dc_;
}

const std::vector<TropPolynomial>& Workspace::polynomials() {
  if (!polys_) {
    const NefPartition& np = nef();
    auto polys = std::make_unique<std::vector<TropPolynomial>>();
    for (int i = 0; i < np.parts_count(); ++i)
      polys->push_back(trop_from_part(np.part(i), np.phi_check(i)));
    polys_ = std::move(polys);
  }
  return *polys_;
}

const TropVariety& Workspace::variety() {
  if (!tv_) tv_ = std::make_unique<TropVariety>(polynomials(), nef().sigma(), p_.seed);
  return *tv_;
}

const Contraction& Workspace::contraction() {
  if (!con_) con_ = std::make_unique<Contraction>(complex(), variety());
  return *con_;
}

const VertexRetraction& Workspace::retraction() {
  if (!vr_) vr_ = std::make_unique<VertexRetraction>(complex());
  return *vr_;
}

}  // namespace tropic
