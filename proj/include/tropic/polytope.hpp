#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropic/dd.hpp"
#include "tropic/lattice.hpp"

namespace tropic {

struct Ineq {
  RatVec a;
  Rat b;  // a . x >= b
};

struct Eqn {
  RatVec a;
  Rat b;  // a . x = b
};

// Rational polyhedron carrying both representations. Construction always
// derives the missing side via double description and cross-checks the two
// against each other, so an inconsistent object cannot exist. Vertices, rays
// and facets are kept in canonical (lex-sorted, primitive-normal) form;
// instances are immutable after construction.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_points(const std::vector<RatVec>& pts, Lattice tag,
                                const std::vector<RatVec>& rays = {});
  static Polyhedron from_hrep(const std::vector<Ineq>& ineqs, const std::vector<Eqn>& eqs,
                              int rank, Lattice tag);

  int rank() const { return rank_; }
  Lattice lattice() const { return lattice_; }
  bool empty() const { return empty_; }
  bool bounded() const { return rays_.empty() && lineality_.empty(); }
  int dim() const { return dim_; }  // -1 for the empty polyhedron

  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<RatVec>& rays() const { return rays_; }
  const std::vector<RatVec>& lineality() const { return lineality_; }
  const std::vector<Ineq>& ineqs() const { return ineqs_; }
  const std::vector<Eqn>& eqs() const { return eqs_; }

  bool contains(const RatVec& x) const;
  // Relative interior membership (facet inequalities strict).
  bool contains_relint(const RatVec& x) const;
  // Vertex centroid plus the ray sum: a canonical relative interior point.
  RatVec relint_sample() const;

  bool is_lattice() const;  // all vertices integral
  bool operator==(const Polyhedron& o) const;

  // Canonical identity for dedup maps; encodes both generators and tag.
  std::string key() const;

 private:
  int rank_ = 0;
  int dim_ = -1;
  Lattice lattice_ = Lattice::M;
  bool empty_ = true;
  std::vector<RatVec> vertices_;
  std::vector<RatVec> rays_;
  std::vector<RatVec> lineality_;
  std::vector<Ineq> ineqs_;
  std::vector<Eqn> eqs_;
};

// The bounded case keeps its own name throughout the interfaces.
using Polytope = Polyhedron;

// Convex hull of finitely many rational points; errors on empty input.
Polytope hull(const std::vector<RatVec>& pts, Lattice tag);

// Polar dual {y : <x,y> >= -1 for all x in P}; requires the origin strictly
// interior and errors naming a violated facet otherwise. Swaps the lattice tag.
Polytope polar_dual(const Polytope& p);

bool is_reflexive(const Polytope& p);

// Minkowski sum; both summands must live on the same lattice side.
Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q);

// Intersection of two polyhedra in the same ambient space.
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

// Image under an affine map x -> mat x + off (dimensions from mat).
Polyhedron affine_image(const Polyhedron& p, const RatMat& mat, const RatVec& off, Lattice tag);

Polyhedron translate(const Polyhedron& p, const RatVec& off);
Polyhedron dilate(const Polyhedron& p, const Rat& c);

// Recession cone {x : p + t x in P for all t >= 0} as a cone at the origin.
ConeGenerators recession_cone(const Polyhedron& p);

struct Face {
  std::vector<int> verts;   // indices into p.vertices(), sorted
  std::vector<int> facets;  // indices of facets containing the face
  int dim = 0;
  std::vector<int> children;  // covered faces (one dim lower), indices into faces
  std::vector<int> parents;
};

// All nonempty faces of a bounded polytope (including the polytope itself,
// which is the last entry), ordered by (dim, vertex set).
struct FaceLattice {
  std::vector<Face> faces;
  int top = -1;  // index of the improper face (p itself)
  std::vector<int> f_vector;  // counts of proper nonempty faces per dimension
};

FaceLattice face_lattice(const Polytope& p);

// Vertex set of a face as coordinates.
std::vector<RatVec> face_points(const Polytope& p, const Face& f);

// All lattice points of a bounded polytope, lex-sorted.
std::vector<RatVec> lattice_points(const Polytope& p);

// True when q equals some face of p (proper or not).
bool is_face_of(const Polytope& q, const Polytope& p);

}  // namespace tropic
