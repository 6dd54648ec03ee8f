#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hda/cubeset.hpp"

namespace hda {

// PV programs: straight-line processes acting on binary semaphores.
//
//   # comment
//   sem a            (capacity 1; "sem a = 1" is the same)
//   A = P(a).V(a)
//   P(a).V(a)        (an unnamed process, called p<k>)
//
// Statements are separated by ';' or line breaks.

struct PVAction {
  enum class Kind { P, V };
  Kind kind = Kind::P;
  std::string semaphore;

  bool operator==(const PVAction&) const = default;
};

struct PVProcess {
  std::string name;
  std::vector<PVAction> actions;
};

struct PVProgram {
  std::map<std::string, int> semaphores;
  std::vector<PVProcess> processes;
};

// FormatError (with line and column) on bad syntax; DomainError on
// unmatched P/V, repeated process names or a capacity other than 1.
PVProgram parse_pv(std::string_view text);

// Open intervals (j_P - 1, j_V) over which a process holds the semaphore,
// j_P and j_V being the 1-based positions of matching P and V.
struct HoldInterval {
  long lower = 0;
  long upper = 0;
};

std::map<std::string, std::vector<HoldInterval>> hold_intervals(const PVProcess& process);

struct PVModel {
  CubeSet cubes;
  CubeIndex start = 0;
  CubeIndex end = 0;
};

// The elementary cubes of prod [0, k_i] whose relative interior avoids every
// product of two hold intervals of one semaphore in distinct processes.
// Cube names follow euclidean(). start is the origin, end the top corner.
PVModel pv_to_euclidean(const PVProgram& program);

}  // namespace hda
