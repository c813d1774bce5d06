#include "tropic/rational.hpp"

#include <sstream>

namespace tropic {

Rat parse_rat(const std::string& s) {
  require(!s.empty(), "empty rational literal");
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail("malformed rational literal '" + s + "'");
  }
}

std::string rat_string(const Rat& q) { return q.get_str(); }

Int floor_rat(const Rat& q) {
  Int quo;
  mpz_fdiv_q(quo.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return quo;
}

Int ceil_rat(const Rat& q) {
  Int quo;
  mpz_cdiv_q(quo.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return quo;
}

RatVec rat_vec(const std::vector<long>& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

IntVec int_vec(const std::vector<long>& v) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

IntVec to_int_vec(const RatVec& v) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    require(v[i].get_den() == 1, "expected integral vector, found " + vec_string(v));
    out[i] = v[i].get_num();
  }
  return out;
}

bool is_integral(const RatVec& v) {
  for (const Rat& q : v)
    if (q.get_den() != 1) return false;
  return true;
}

Rat dot(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec vadd(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), "vadd: dimension mismatch");
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vsub(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), "vsub: dimension mismatch");
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vscale(const Rat& c, const RatVec& a) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

bool is_zero(const RatVec& a) {
  for (const Rat& q : a)
    if (q != 0) return false;
  return true;
}

RatVec zero_vec(int n) { return RatVec(static_cast<size_t>(n), Rat(0)); }

bool lex_less(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

std::string vec_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace tropic
