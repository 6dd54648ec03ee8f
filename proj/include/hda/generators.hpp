#pragma once

#include <span>
#include <vector>

#include "hda/cubeset.hpp"
#include "hda/rational.hpp"

namespace hda {

// Axis-parallel box with 0 <= top[i] - bottom[i] <= 1.
struct BoxSpec {
  std::vector<long> bottom;
  std::vector<long> top;
};

// The standard n-cube I^n with all its faces. Vertices are named "v" + bits
// ("v010"), higher cubes "c" + a pattern over {0,1,*} ("c*1*"); coordinate
// i of a cube runs along its i-th '*'.
CubeSet full_cube(int n);

// I^n without its top cell; the boundary sphere.
CubeSet boundary_cube(int n);

// Union of elementary cubes. Cells are named by integer position: vertex
// "v0,2", cube "c0+,2" where "k+" marks a free coordinate over [k, k+1].
// Shared faces of adjacent boxes are identified.
CubeSet euclidean(std::span<const BoxSpec> boxes);

// Unit boxes of the grid [0,n1] x ... x [0,nd], minus the listed cells
// (given by their bottom corners).
CubeSet grid(std::span<const long> extent, std::span<const std::vector<long>> omitted = {});

// One cube c0..cn per dimension, every face of c_k equal to c_{k-1}.
CubeSet z_complex(int n);

// Cubes c{k}_{j} for 0 <= j <= n-k with d_i^alpha c{k}_{j} = c{k-1}_{j+alpha}.
CubeSet q_complex(int n);

// Two squares glued along their common boundary (a non-proper sphere).
CubeSet glued_squares();

}  // namespace hda
