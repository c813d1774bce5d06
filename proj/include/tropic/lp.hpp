#pragma once

#include "tropic/rational.hpp"

namespace tropic {

// First-order jet a + b*eps over an infinitesimal eps > 0, ordered
// lexicographically. Strict inequalities are solved exactly by writing
// "> b" as ">= b + eps"; displacement genericity checks shift constraint
// systems by eps times a direction. Constraint matrices stay rational, so
// jets only ever occur on the right-hand side and no jet*jet product arises.
struct Jet {
  Rat a;  // constant part
  Rat b;  // eps coefficient

  Jet() : a(0), b(0) {}
  Jet(Rat a_, Rat b_ = Rat(0)) : a(std::move(a_)), b(std::move(b_)) {}

  Jet operator+(const Jet& o) const { return Jet(a + o.a, b + o.b); }
  Jet operator-(const Jet& o) const { return Jet(a - o.a, b - o.b); }
  Jet operator-() const { return Jet(-a, -b); }
  Jet scaled(const Rat& c) const { return Jet(c * a, c * b); }

  int sign() const {
    int s = sgn(a);
    return s != 0 ? s : sgn(b);
  }
  bool operator<(const Jet& o) const { return (*this - o).sign() < 0; }
  bool operator==(const Jet& o) const { return a == o.a && b == o.b; }
};

enum class Rel { GE, EQ, GT };

struct LinCon {
  RatVec a;
  Rel rel;
  Rat b;
  Jet shift;  // optional extra jet added to b (used for eps-displacements)

  LinCon(RatVec a_, Rel r_, Rat b_) : a(std::move(a_)), rel(r_), b(std::move(b_)) {}
  LinCon(RatVec a_, Rel r_, Rat b_, Jet s_)
      : a(std::move(a_)), rel(r_), b(std::move(b_)), shift(std::move(s_)) {}
};

struct LPResult {
  bool feasible = false;
  // Concrete rational witness satisfying every constraint (strictly where
  // demanded); only filled when feasible and no jet shifts were supplied.
  RatVec point;
};

// Exact feasibility of a mixed system of free variables.
LPResult lp_feasible(const std::vector<LinCon>& cons, int n);

enum class OptStatus { INFEASIBLE, UNBOUNDED, OPT };

struct OptResult {
  OptStatus status = OptStatus::INFEASIBLE;
  Rat value;
  RatVec arg;
};

// min c.x subject to cons; only GE/EQ constraints allowed here.
OptResult lp_minimize(const std::vector<LinCon>& cons, const RatVec& c, int n);
OptResult lp_maximize(const std::vector<LinCon>& cons, const RatVec& c, int n);

}  // namespace tropic
