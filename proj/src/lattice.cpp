#include "tropic/lattice.hpp"

namespace tropic {

namespace {

// Columns = primitive representatives of the generators.
IntMat generator_columns(const std::vector<RatVec>& gens, int ambient) {
  IntMat a(ambient, IntVec{});
  std::vector<IntVec> cols;
  for (const RatVec& g : gens) {
    require(static_cast<int>(g.size()) == ambient, "generator dimension != ambient rank");
    if (!is_zero(g)) cols.push_back(primitive(g));
  }
  for (int i = 0; i < ambient; ++i) {
    a[i].resize(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) a[i][j] = cols[j][i];
  }
  return a;
}

IntMat unimodular_inverse(const IntMat& u) {
  RatMat inv = inverse(to_rat_mat(u));
  return to_int_mat(inv);
}

}  // namespace

QuotientProjection quotient_projection(const std::vector<RatVec>& gens, int ambient) {
  QuotientProjection out;
  out.ambient = ambient;
  IntMat a = generator_columns(gens, ambient);
  if (a.empty() || a[0].empty()) {
    out.rank = 0;
    out.q = int_identity(ambient);
    out.lift = int_identity(ambient);
    out.basis = {};
    return out;
  }
  SmithResult s = smith_normal_form(a);
  int r = 0;
  for (size_t i = 0; i < s.d.size() && i < s.d[0].size(); ++i)
    if (s.d[i][i] != 0) ++r;
  out.rank = r;
  // x lies in sat(span gens) iff the last (ambient - r) coordinates of U x
  // vanish, so those rows of U are the projection.
  out.q.assign(s.u.begin() + r, s.u.end());
  IntMat uinv = unimodular_inverse(s.u);
  out.lift.assign(ambient, IntVec(ambient - r));
  for (int i = 0; i < ambient; ++i)
    for (int j = 0; j < ambient - r; ++j) out.lift[i][j] = uinv[i][r + j];
  out.basis.assign(r, IntVec(ambient));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < ambient; ++i) out.basis[k][i] = uinv[i][k];
  return out;
}

std::vector<IntVec> saturation_basis(const std::vector<RatVec>& gens, int ambient) {
  return quotient_projection(gens, ambient).basis;
}

Int lattice_index(const std::vector<IntVec>& vecs, int ambient) {
  if (vecs.empty()) return 1;
  IntMat a(ambient, IntVec(vecs.size()));
  for (int i = 0; i < ambient; ++i)
    for (size_t j = 0; j < vecs.size(); ++j) a[i][j] = vecs[j][i];
  SmithResult s = smith_normal_form(a);
  Int idx = 1;
  size_t r = 0;
  for (size_t i = 0; i < s.d.size() && i < s.d[0].size(); ++i)
    if (s.d[i][i] != 0) {
      idx *= s.d[i][i];
      ++r;
    }
  require(r == vecs.size(), "lattice_index: vectors are linearly dependent");
  return idx;
}

Int simplex_lattice_volume(const std::vector<RatVec>& verts) {
  require(!verts.empty(), "simplex_lattice_volume: empty vertex list");
  int ambient = static_cast<int>(verts[0].size());
  std::vector<IntVec> dirs;
  for (size_t i = 1; i < verts.size(); ++i) dirs.push_back(to_int_vec(vsub(verts[i], verts[0])));
  return lattice_index(dirs, ambient);
}

bool is_unimodular_simplex(const std::vector<RatVec>& verts) {
  return simplex_lattice_volume(verts) == 1;
}

}  // namespace tropic
