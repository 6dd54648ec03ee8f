#pragma once

#include <optional>
#include <vector>

#include "hda/chains.hpp"
#include "hda/dpath.hpp"

namespace hda {

// Coordinates of p relative to a cube d of a chain, defined while p lies in
// the collar C(d, X). The largest face g of the carrier of p that is a face
// of d and whose collar contains p is used; the point is projected onto g
// and g is placed inside d.
std::optional<Coords> collar_coordinates(const CubeSet& x, const Point& p, CubeIndex d);

// For consecutive chain cubes c_j, c_{j+1} the surface value
// min(coordinates in c_j) + max(coordinates in c_{j+1}) reaches 1 on the
// interval [enter_j, leave_j]; the two agree unless the path rests on the
// chain vertex x_j.
struct CrossingProfile {
  std::vector<Rational> enter;
  std::vector<Rational> leave;
};

// Surface value of the pair (c_j, c_{j+1}) at a point, when defined.
std::optional<Rational> surface_value(const CubeSet& x, const Point& p, CubeIndex cj, CubeIndex cnext);

CrossingProfile crossing_times(const CubeSet& x, const PLPath& p, const CubeChain& c);

// Rescaling: on [a, b] the coordinates of p relative to d are mapped
// affinely so that p(a) goes to the bottom and p(b) to the top vertex of d.
// Throws DomainError on a vanishing denominator.
Segment tame_piece(const CubeSet& x, const PLPath& p, CubeIndex d, const Rational& a, const Rational& b);

// The tamed path in T_c. Needs p strict and subordinate to the collar of c.
PLPath tame(const CubeSet& x, const PLPath& p, const CubeChain& c);

// (1 - s) p + s tame(p, c), formed in a common cube on every interval.
PLPath taming_homotopy(const CubeSet& x, const PLPath& p, const CubeChain& c, const Rational& s);

}  // namespace hda
