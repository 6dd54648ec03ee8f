#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hda/cubeset.hpp"
#include "hda/rational.hpp"

namespace hda {

enum class Slot : std::uint8_t { Zero, Free, One };

// A partition [1:n] = J0 | J* | J1, stored as one slot per index.
// slots[i-1] describes index i.
struct FacePartition {
  std::vector<Slot> slots;

  int n() const { return static_cast<int>(slots.size()); }
  int dim() const;

  // The partition [ {} | [1:n] | {} ].
  static FacePartition identity(int n);
  // Every partition of [1:n]; 3^n of them, in a fixed order.
  static std::vector<FacePartition> all(int n);
  // Only the partitions with |J*| = k.
  static std::vector<FacePartition> with_dim(int n, int k);

  bool operator==(const FacePartition&) const = default;
  auto operator<=>(const FacePartition&) const = default;
};

// d_[J0|J*|J1] c. Throws DomainError on a size mismatch.
CubeIndex face(const CubeSet& x, CubeIndex c, const FacePartition& fp);

// All partitions fp of c with face(c, fp) == f and |J*| = dim f.
std::vector<FacePartition> face_embeddings(const CubeSet& x, CubeIndex f, CubeIndex c);

// Coordinates of a point of the face into the ambient cube: free slots take
// the values of y in order, Zero and One slots are pinned.
Coords embed(const FacePartition& fp, const Coords& y);

struct Point {
  CubeIndex cube = 0;
  Coords coords;

  bool operator==(const Point&) const = default;
};

// Strips every coordinate equal to 0 or 1, lowest index first, until the
// point sits in the interior of its carrier. Throws DomainError on a
// coordinate count mismatch or a value outside [0,1].
Point canonicalize(const CubeSet& x, Point p);

Point vertex_point(CubeIndex v);

// All coordinate vectors y with canonicalize((c, y)) == p. Empty when p
// does not lie in c. Sorted and free of duplicates.
std::vector<Coords> representatives(const CubeSet& x, const Point& p, CubeIndex c);

// Cubes whose closure contains p, i.e. the cubes having p.cube as a face.
std::vector<CubeIndex> carriers(const CubeSet& x, const Point& p);

// The per-cube collar [0,1/2[^J0 x I^J* x ]1/2,1]^J1 of c, tested on every
// representative of p in c.
bool in_collar(const CubeSet& x, const Point& p, CubeIndex c, const FacePartition& fp);

// C(d, X): the union over all cubes c and partitions with d_[J0|J*|J1] c a
// face of d. Equivalently, the minimal collar face of p is a face of d.
bool in_collar(const CubeSet& x, const Point& p, CubeIndex d);

// The smallest face whose collar (inside the carrier of p) contains p:
// coordinates below 1/2 go to J0, equal to 1/2 to J*, above to J1.
CubeIndex minimal_collar_face(const CubeSet& x, const Point& p);

// st(v) = C(v, X). Throws DomainError when v is not a vertex.
bool in_star(const CubeSet& x, const Point& p, CubeIndex v);

// Cubes containing both points, by increasing dimension then index.
std::vector<CubeIndex> common_cubes(const CubeSet& x, const Point& p, const Point& q);

// Distance and order are measured in a common cube, preferring
// representatives with p <= q. Throws DomainError without a common cube.
Rational l1_distance_in_cube(const CubeSet& x, const Point& p, const Point& q);
bool leq_in_cube(const CubeSet& x, const Point& p, const Point& q);

// The coordinate sum of the canonical point when it is an integer; vertices
// give 0. Integrality does not depend on the chosen carrier.
std::optional<long> hyperplane_level(const CubeSet& x, const Point& p);

}  // namespace hda
