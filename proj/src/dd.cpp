#include "tropic/dd.hpp"

#include <algorithm>
#include <cstdint>

namespace tropic {

namespace {

// Tight-constraint sets per ray, over the inequalities processed so far.
struct Bits {
  std::vector<uint64_t> w;
  void resize(size_t nbits) { w.assign((nbits + 63) / 64, 0); }
  void set(size_t i) { w[i / 64] |= (uint64_t{1} << (i % 64)); }
  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits c;
    c.w.resize(a.w.size());
    for (size_t i = 0; i < a.w.size(); ++i) c.w[i] = a.w[i] & b.w[i];
    return c;
  }
  bool contains(const Bits& sub) const {
    for (size_t i = 0; i < w.size(); ++i)
      if ((sub.w[i] & ~w[i]) != 0) return false;
    return true;
  }
};

struct Ray {
  RatVec v;
  Bits tight;
};

RatVec normalize_ray(const RatVec& v) { return to_rat_vec(primitive(v)); }

}  // namespace

ConeGenerators cone_from_halfspaces(const RatMat& eqs, const RatMat& ineqs, int n) {
  std::vector<RatVec> lin;
  if (eqs.empty()) {
    lin = rat_identity(n);
  } else {
    lin = nullspace(eqs);
  }
  std::vector<Ray> rays;
  size_t m = ineqs.size();
  for (size_t idx = 0; idx < m; ++idx) {
    const RatVec& a = ineqs[idx];
    require(static_cast<int>(a.size()) == n, "cone_from_halfspaces: bad constraint dimension");
    if (is_zero(a)) continue;  // trivially satisfied
    // If the constraint is nonzero on the lineality space, one lineality
    // direction becomes the unique new extreme ray and the rest is projected
    // onto the hyperplane a . x = 0.
    size_t piv = lin.size();
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        piv = i;
        break;
      }
    if (piv < lin.size()) {
      RatVec l0 = lin[piv];
      Rat s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = vscale(Rat(-1), l0);
        s0 = -s0;
      }
      std::vector<RatVec> new_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (i == piv) continue;
        Rat s = dot(a, lin[i]);
        new_lin.push_back(s == 0 ? lin[i] : vsub(lin[i], vscale(s / s0, l0)));
      }
      lin = std::move(new_lin);
      for (Ray& r : rays) {
        Rat s = dot(a, r.v);
        if (s != 0) r.v = vsub(r.v, vscale(s / s0, l0));
        r.tight.set(idx);
      }
      Ray fresh;
      fresh.v = l0;
      fresh.tight.resize(m);
      // A lineality vector satisfies every earlier constraint with equality.
      for (size_t j = 0; j < idx; ++j) fresh.tight.set(j);
      rays.push_back(std::move(fresh));
      continue;
    }
    // Constraint vanishes on the lineality space: classify rays by sign.
    std::vector<size_t> plus, minus;
    std::vector<Rat> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0)
        plus.push_back(i);
      else if (s < 0)
        minus.push_back(i);
      else
        rays[i].tight.set(idx);
    }
    if (minus.empty()) continue;
    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (sgn(val[i]) >= 0) next.push_back(rays[i]);
    for (size_t p : plus)
      for (size_t q : minus) {
        // Combinatorial adjacency: no third extreme ray is tight on every
        // constraint tight at both p and q.
        Bits common = rays[p].tight & rays[q].tight;
        bool adjacent = true;
        for (size_t k = 0; k < rays.size(); ++k) {
          if (k == p || k == q) continue;
          if (rays[k].tight.contains(common)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v = normalize_ray(vsub(vscale(val[p], rays[q].v), vscale(val[q], rays[p].v)));
        nr.tight = common;
        nr.tight.set(idx);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  ConeGenerators out;
  for (const Ray& r : rays) out.rays.push_back(normalize_ray(r.v));
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  if (!lin.empty()) {
    RatMat basis = lin;
    rref(basis);
    for (const RatVec& b : basis)
      if (!is_zero(b)) out.lineality.push_back(to_rat_vec(primitive(b)));
    std::sort(out.lineality.begin(), out.lineality.end(), lex_less);
  }
  return out;
}

ConeHalfspaces cone_to_halfspaces(const std::vector<RatVec>& rays,
                                  const std::vector<RatVec>& lineality, int n) {
  // Facets of the cone are the extreme rays of its dual cone, and the span
  // equations are the dual cone's lineality.
  RatMat eqs(lineality.begin(), lineality.end());
  RatMat ineqs(rays.begin(), rays.end());
  ConeGenerators dual = cone_from_halfspaces(eqs, ineqs, n);
  ConeHalfspaces out;
  out.eqs.assign(dual.lineality.begin(), dual.lineality.end());
  out.ineqs.assign(dual.rays.begin(), dual.rays.end());
  return out;
}

}  // namespace tropic
