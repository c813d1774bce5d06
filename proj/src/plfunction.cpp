#include "tropic/plfunction.hpp"

#include <algorithm>

#include "tropic/error.hpp"
#include "tropic/linalg.hpp"

namespace tropic {

namespace {

// Position of a cone index inside fan.max_cones().
int max_pos(const Fan& fan, int cone_idx) {
  for (size_t i = 0; i < fan.max_cones().size(); ++i)
    if (fan.max_cones()[i] == cone_idx) return static_cast<int>(i);
  fail("pl function: cone is not maximal");
}

}  // namespace

PLFunction::PLFunction(FanPtr fan, RatMat functionals)
    : fan_(std::move(fan)), functionals_(std::move(functionals)) {
  require(fan_ != nullptr, "pl function: null fan");
  require(functionals_.size() == fan_->max_cones().size(),
          "pl function: need one functional per maximal cone");
  for (const auto& u : functionals_)
    require(static_cast<int>(u.size()) == fan_->rank(),
            "pl function: functional of wrong length");
  // Functionals of any two maximal cones must agree on every shared ray, so
  // the function is single-valued on the whole fan.
  const auto& mc = fan_->max_cones();
  for (size_t a = 0; a < mc.size(); ++a) {
    for (size_t b = a + 1; b < mc.size(); ++b) {
      const auto& ra = fan_->cones()[mc[a]].rays;
      const auto& rb = fan_->cones()[mc[b]].rays;
      std::vector<int> common;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                            std::back_inserter(common));
      for (int r : common) {
        RatVec g = to_rat_vec(fan_->rays()[r]);
        require(dot(functionals_[a], g) == dot(functionals_[b], g),
                "pl function: functionals disagree on a shared ray");
      }
    }
  }
}

PLFunction PLFunction::from_ray_values(FanPtr fan, const RatVec& values) {
  require(fan != nullptr, "pl function: null fan");
  require(values.size() == fan->rays().size(),
          "pl function: need one value per fan ray");
  RatMat functionals;
  for (int m : fan->max_cones()) {
    const auto& rays = fan->cones()[m].rays;
    if (rays.empty()) {
      functionals.push_back(zero_vec(fan->rank()));
      continue;
    }
    RatMat a;
    RatVec b;
    for (int r : rays) {
      a.push_back(to_rat_vec(fan->rays()[r]));
      b.push_back(values[r]);
    }
    auto u = solve(a, b);
    require(u.has_value(), "pl function: ray values are not linear on a maximal cone");
    functionals.push_back(*u);
  }
  return PLFunction(std::move(fan), std::move(functionals));
}

PLFunction PLFunction::support_function(const Polytope& p, FanPtr fan) {
  require(fan != nullptr, "support function: null fan");
  require(!p.empty(), "support function: empty polytope");
  require(fan->rank() == p.rank(), "support function: rank mismatch");
  require(fan->lattice() != p.lattice(),
          "support function: fan must live on the dual lattice side");
  RatMat functionals;
  for (int m : fan->max_cones()) {
    RatVec x = fan->cone_relint_sample(m);
    const auto& verts = p.vertices();
    Rat best = dot(verts[0], x);
    int arg = 0;
    int ties = 1;
    for (size_t i = 1; i < verts.size(); ++i) {
      Rat v = dot(verts[i], x);
      if (v < best) {
        best = v;
        arg = static_cast<int>(i);
        ties = 1;
      } else if (v == best) {
        ++ties;
      }
    }
    require(ties == 1,
            "support function: fan does not refine the normal fan (no unique "
            "minimizing vertex on a maximal cone)");
    for (const auto& g : fan->cone_generators(m)) {
      for (const auto& r : p.rays())
        require(dot(r, g) >= 0,
                "support function: unbounded below on the fan support");
      for (const auto& w : verts)
        require(dot(verts[arg], g) <= dot(w, g),
                "support function: fan does not refine the normal fan");
    }
    functionals.push_back(vscale(-1, verts[arg]));
  }
  return PLFunction(std::move(fan), std::move(functionals));
}

Rat PLFunction::eval(const RatVec& x) const {
  for (size_t i = 0; i < fan_->max_cones().size(); ++i)
    if (fan_->cone_contains(fan_->max_cones()[i], x)) return dot(functionals_[i], x);
  fail("pl function: point outside the fan support");
}

RatVec PLFunction::ray_values() const {
  RatVec out;
  for (const auto& r : fan_->rays()) out.push_back(eval(to_rat_vec(r)));
  return out;
}

bool PLFunction::is_convex() const {
  for (const auto& w : fan_->walls()) {
    const RatVec& u1 = functionals_[max_pos(*fan_, w.c1)];
    const RatVec& u2 = functionals_[max_pos(*fan_, w.c2)];
    for (const auto& g : fan_->cone_generators(w.c2))
      if (dot(u2, g) < dot(u1, g)) return false;
    for (const auto& g : fan_->cone_generators(w.c1))
      if (dot(u1, g) < dot(u2, g)) return false;
  }
  return true;
}

bool PLFunction::is_strictly_convex() const {
  if (!is_convex()) return false;
  for (const auto& w : fan_->walls())
    if (functionals_[max_pos(*fan_, w.c1)] == functionals_[max_pos(*fan_, w.c2)])
      return false;
  return true;
}

bool PLFunction::is_integral() const {
  for (const auto& u : functionals_)
    if (!tropic::is_integral(u)) return false;
  return true;
}

PLFunction PLFunction::operator+(const PLFunction& o) const {
  require(fan_ == o.fan_ || fan_->same_fan(*o.fan_),
          "pl function: sum requires functions on the same fan");
  RatMat sum;
  if (fan_ == o.fan_) {
    for (size_t i = 0; i < functionals_.size(); ++i)
      sum.push_back(vadd(functionals_[i], o.functionals_[i]));
  } else {
    for (size_t i = 0; i < fan_->max_cones().size(); ++i) {
      std::vector<IntVec> key;
      for (int r : fan_->cones()[fan_->max_cones()[i]].rays)
        key.push_back(fan_->rays()[r]);
      int found = -1;
      for (size_t j = 0; j < o.fan_->max_cones().size(); ++j) {
        std::vector<IntVec> okey;
        for (int r : o.fan_->cones()[o.fan_->max_cones()[j]].rays)
          okey.push_back(o.fan_->rays()[r]);
        if (okey == key) {
          found = static_cast<int>(j);
          break;
        }
      }
      require(found >= 0, "pl function: sum could not match maximal cones");
      sum.push_back(vadd(functionals_[i], o.functionals_[found]));
    }
  }
  return PLFunction(fan_, std::move(sum));
}

PLFunction PLFunction::scale(const Rat& c) const {
  RatMat out;
  for (const auto& u : functionals_) out.push_back(vscale(c, u));
  return PLFunction(fan_, std::move(out));
}

Polytope PLFunction::newton_polytope() const {
  require(fan_->is_complete(), "newton polytope: fan is not complete");
  require(is_convex(), "newton polytope: function is not convex");
  std::vector<RatVec> pts;
  for (const auto& u : functionals_) pts.push_back(vscale(-1, u));
  Lattice dual = fan_->lattice() == Lattice::M ? Lattice::N : Lattice::M;
  return Polytope::from_points(pts, dual);
}

Polyhedron lift_above_graph(const Polytope& base, const PLFunction& h) {
  require(h.fan()->rank() == base.rank(), "graph lift: rank mismatch");
  require(h.fan()->lattice() == base.lattice(),
          "graph lift: function must live on the ambient space of the base");
  require(h.fan()->is_complete(), "graph lift: fan is not complete");
  require(h.is_convex(), "graph lift: function is not convex");
  const int n = base.rank();
  std::vector<Ineq> ineqs;
  std::vector<Eqn> eqs;
  for (const auto& q : base.ineqs()) {
    RatVec a = q.a;
    a.push_back(0);
    ineqs.push_back({a, q.b});
  }
  for (const auto& q : base.eqs()) {
    RatVec a = q.a;
    a.push_back(0);
    eqs.push_back({a, q.b});
  }
  for (const auto& u : h.functionals()) {
    RatVec a = vscale(-1, u);
    a.push_back(1);  // l - <u, x> >= 0
    ineqs.push_back({a, Rat(0)});
  }
  return Polyhedron::from_hrep(ineqs, eqs, n + 1, base.lattice());
}

PLFunction restrict_pl(const PLFunction& h, FanPtr fine) {
  require(fine->rank() == h.fan()->rank(), "restrict: rank mismatch");
  require(fine->lattice() == h.fan()->lattice(), "restrict: lattice mismatch");
  const Fan& coarse = *h.fan();
  RatMat functionals;
  for (int mc : fine->max_cones()) {
    RatVec sample = fine->cone_relint_sample(mc);
    int home = coarse.locate(sample);
    require(home >= 0, "restrict: cone outside the support of the function");
    int pos = -1;
    for (size_t k = 0; k < coarse.max_cones().size(); ++k)
      if (coarse.max_cones()[k] == home) pos = static_cast<int>(k);
    require(pos >= 0, "restrict: sample landed in a non-maximal cone");
    const RatVec& u = h.functional_on(pos);
    // Linearity of h on the whole fine cone, i.e. well-definedness of the
    // restriction, is equivalent to the functional matching on every generator.
    for (const auto& g : fine->cone_generators(mc))
      require(h.eval(g) == dot(u, g), "restrict: cone straddles domains of linearity");
    functionals.push_back(u);
  }
  return PLFunction(std::move(fine), std::move(functionals));
}

}  // namespace tropic
