#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropic/contraction.hpp"
#include "tropic/dual_complex.hpp"
#include "tropic/nef.hpp"
#include "tropic/tropical.hpp"
#include "tropic/valuation.hpp"

namespace tropic {

// A self-contained instance: the part polytopes of a nef partition (their
// Minkowski sum is the ambient reflexive polytope), fan and height shorthand,
// and the verification knobs. Schema v1 supports the "trivial" shorthand:
// fans are the normal fans and the heights are the tautological support
// levels, so the correction polytope is the origin.
struct ProblemInstance {
  std::string name;
  int rank = 0;
  std::vector<std::vector<RatVec>> parts;  // vertex lists in M
  std::string fans = "trivial";
  std::string heights = "support";
  std::optional<RatVec> distinguished;  // vertex anchor override in N
  std::uint64_t seed = 0;
  int trunc = 12;
  int samples = 100;
};

// Canonical serialization: rationals as "a/b" strings, sorted keys, so
// parse -> serialize is the identity on serialized instances.
std::string problem_json(const ProblemInstance& p);
ProblemInstance parse_problem(const std::string& text);
ProblemInstance load_problem(const std::string& path);

std::vector<std::string> builtin_names();
ProblemInstance builtin_problem(const std::string& name);

// Lazily constructed bundle of the derived objects; construction of each
// layer validates it, and addresses stay stable for the cross-referencing
// verifiers.
class Workspace {
 public:
  explicit Workspace(ProblemInstance p);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const ProblemInstance& problem() const { return p_; }
  const NefPartition& nef();
  const Polytope& correction();
  const DualComplex& complex();
  const std::vector<TropPolynomial>& polynomials();
  const TropVariety& variety();
  const Contraction& contraction();
  const VertexRetraction& retraction();

 private:
  ProblemInstance p_;
  std::unique_ptr<NefPartition> np_;
  std::unique_ptr<Polytope> corr_;
  FanPtr fine_;
  std::unique_ptr<DualComplex> dc_;
  std::unique_ptr<std::vector<TropPolynomial>> polys_;
  std::unique_ptr<TropVariety> tv_;
  std::unique_ptr<Contraction> con_;
  std::unique_ptr<VertexRetraction> vr_;
};

}  // namespace tropic
