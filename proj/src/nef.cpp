#include "tropic/nef.hpp"

#include <string>
#include <utility>

#include "tropic/error.hpp"

namespace tropic {

namespace {

bool is_zero_one(const Rat& v) { return v == 0 || v == 1; }

Polyhedron fold_minkowski(const std::vector<Polytope>& ps) {
  Polyhedron acc = ps.front();
  for (size_t i = 1; i < ps.size(); ++i) acc = minkowski_sum(acc, ps[i]);
  return acc;
}

}  // namespace

NefPartition::NefPartition(Polytope delta, std::vector<Polytope> parts)
    : rank_(delta.rank()), delta_(std::move(delta)), parts_(std::move(parts)) {
  require(!parts_.empty(), "partition: no parts given");
  require(delta_.lattice() == Lattice::M, "partition: ambient polytope must live in M");
  require(delta_.bounded() && !delta_.empty(), "partition: ambient polytope must be a polytope");
  require(delta_.is_lattice(), "partition: ambient polytope has non-integral vertices");
  require(is_reflexive(delta_), "partition: ambient polytope is not reflexive");
  require(rank_ - parts_count() >= 1, "partition: more parts than the ambient rank allows");
  for (size_t i = 0; i < parts_.size(); ++i) {
    const Polytope& p = parts_[i];
    std::string where = "partition: part " + std::to_string(i);
    require(p.lattice() == Lattice::M && p.rank() == rank_, where + " lives in the wrong space");
    require(!p.empty() && p.bounded(), where + " is not a polytope");
    require(p.is_lattice(), where + " has non-integral vertices");
  }
  require(fold_minkowski(parts_) == delta_, "partition: parts do not sum to the polytope");

  sigma_ = std::make_shared<Fan>(normal_fan(delta_));
  phi_total_ = PLFunction::support_function(delta_, sigma_);
  for (const Polytope& p : parts_) phis_.push_back(PLFunction::support_function(p, sigma_));
  for (size_t i = 0; i < phis_.size(); ++i)
    for (const Rat& v : phis_[i].ray_values())
      require(is_zero_one(v),
              "partition: support of part " + std::to_string(i) + " is not 0/1 on the rays");
  {
    PLFunction sum = phis_.front();
    for (size_t i = 1; i < phis_.size(); ++i) sum = sum + phis_[i];
    require(sum.functionals() == phi_total_->functionals(),
            "partition: part supports do not sum to the total support");
  }
  for (size_t i = 0; i < parts_.size(); ++i)
    require(parts_[i].contains(zero_vec(rank_)),
            "partition: part " + std::to_string(i) + " misses the origin");

  // Dual parts: the origin together with the rays where the i-th support is 1.
  for (size_t i = 0; i < phis_.size(); ++i) {
    std::vector<RatVec> pts = {zero_vec(rank_)};
    RatVec vals = phis_[i].ray_values();
    for (size_t r = 0; r < sigma_->rays().size(); ++r)
      if (vals[r] == 1) pts.push_back(to_rat_vec(sigma_->rays()[r]));
    dual_parts_.push_back(hull(pts, Lattice::N));
  }
  nabla_ = fold_minkowski(dual_parts_);
  require(is_reflexive(nabla_), "partition: dual sum polytope is not reflexive");

  delta_dual_ = polar_dual(delta_);
  nabla_dual_ = polar_dual(nabla_);
  {
    std::vector<RatVec> pts;
    for (const Polytope& q : dual_parts_)
      pts.insert(pts.end(), q.vertices().begin(), q.vertices().end());
    require(hull(pts, Lattice::N) == delta_dual_,
            "partition: polar of the polytope is not the hull of the dual parts");
  }
  {
    std::vector<RatVec> pts;
    for (const Polytope& q : parts_)
      pts.insert(pts.end(), q.vertices().begin(), q.vertices().end());
    require(hull(pts, Lattice::M) == nabla_dual_,
            "partition: polar of the dual sum is not the hull of the parts");
  }

  sigma_check_ = std::make_shared<Fan>(normal_fan(nabla_));
  phi_check_total_ = PLFunction::support_function(nabla_, sigma_check_);
  for (const Polytope& q : dual_parts_)
    phi_checks_.push_back(PLFunction::support_function(q, sigma_check_));
  for (size_t i = 0; i < phi_checks_.size(); ++i)
    for (const Rat& v : phi_checks_[i].ray_values())
      require(is_zero_one(v),
              "partition: dual support " + std::to_string(i) + " is not 0/1 on the rays");
  {
    PLFunction sum = phi_checks_.front();
    for (size_t i = 1; i < phi_checks_.size(); ++i) sum = sum + phi_checks_[i];
    require(sum.functionals() == phi_check_total_->functionals(),
            "partition: dual supports do not sum to the total dual support");
  }

  // Boundary alphabet: each boundary lattice point of Delta* carries value 1
  // for exactly one part and lies in that part's dual polytope.
  alphabets_.assign(parts_.size(), {});
  for (const RatVec& n : lattice_points(delta_dual_)) {
    if (delta_dual_.contains_relint(n)) continue;
    int owner = -1;
    Rat total = 0;
    for (size_t i = 0; i < phis_.size(); ++i) {
      Rat v = phis_[i].eval(n);
      require(is_zero_one(v), "partition: boundary point with support value outside {0,1}");
      total += v;
      if (v == 1) owner = static_cast<int>(i);
    }
    require(total == 1 && owner >= 0, "partition: boundary point not owned by exactly one part");
    require(dual_parts_[owner].contains(n),
            "partition: boundary point escapes the dual part owning it");
    alphabets_[owner].push_back(n);
  }
}

std::optional<Polytope> NefPartition::unit_locus(int i, const Polytope& face) const {
  require(i >= 0 && i < parts_count(), "unit locus: part index out of range");
  require(face.rank() == rank_ && !face.empty() && face.bounded(),
          "unit locus: face in the wrong ambient space");
  const PLFunction& f = face.lattice() == Lattice::N ? phis_.at(i) : phi_checks_.at(i);
  std::vector<RatVec> hits;
  for (const RatVec& v : face.vertices()) {
    Rat val = f.eval(v);
    require(is_zero_one(val), "unit locus: vertex with support value outside {0,1}");
    if (val == 1) hits.push_back(v);
  }
  if (hits.empty()) return std::nullopt;
  return hull(hits, face.lattice());
}

std::optional<Polytope> NefPartition::unit_locus_sum(const Polytope& face) const {
  std::vector<Polytope> factors;
  for (int i = 0; i < parts_count(); ++i) {
    auto f = unit_locus(i, face);
    if (!f) return std::nullopt;
    factors.push_back(std::move(*f));
  }
  return fold_minkowski(factors);
}

}  // namespace tropic
