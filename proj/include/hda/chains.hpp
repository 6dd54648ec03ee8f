#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hda/cubeset.hpp"
#include "hda/dpath.hpp"

namespace hda {

// A sequence of positive-dimensional cubes from `from` to `to`, each cube
// starting where the previous one ends. Empty only when from == to.
struct CubeChain {
  CubeIndex from = 0;
  CubeIndex to = 0;
  std::vector<CubeIndex> cubes;

  bool operator==(const CubeChain&) const = default;
};

// Throws DomainError when the cubes do not match up.
void validate_chain(const CubeSet& x, const CubeChain& c);

// Sum of the cube dimensions.
int chain_length(const CubeSet& x, const CubeChain& c);

// x_0 = from, x_i = top vertex of c_i.
std::vector<CubeIndex> vertex_sequence(const CubeSet& x, const CubeChain& c);

// "a|b|c" using cube ids; "()" for the empty chain.
std::string chain_label(const CubeSet& x, const CubeChain& c);

// Canonical order: lexicographic on the lists of cube ids.
bool chain_less(const CubeSet& x, const CubeChain& a, const CubeChain& b);

// One step: some c_i replaced by d_[J0|J*|{}] c_i followed by
// d_[{}|J0|J*] c_i for a proper non-empty J0. Duplicates removed.
std::vector<CubeChain> elementary_refinements(const CubeSet& x, const CubeChain& c);

// Every chain refining c, c included, in canonical order.
std::vector<CubeChain> refinements(const CubeSet& x, const CubeChain& c);

// Whether `fine` is obtained from `coarse` by refinements. Throws on an
// endpoint mismatch.
bool refines(const CubeSet& x, const CubeChain& fine, const CubeChain& coarse);

struct RefinementPoset {
  CubeIndex from = 0;
  CubeIndex to = 0;
  int max_length = 0;
  bool truncated = false;
  // False unless the set is proper and non-self-linked.
  bool nerve_guarantee = true;
  std::vector<CubeChain> chains;
  // (coarser, finer) pairs of indices into `chains`, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

RefinementPoset enumerate_chains(const CubeSet& x, CubeIndex from, CubeIndex to, int max_length);

// Chain of minimal collar faces at the times where some coordinate of the
// strict path p equals 1/2.
CubeChain finest_chain(const CubeSet& x, const PLPath& p);

// Whether p splits into pieces p_i inside C(c_i, X) cut at points of the
// stars st(x_i).
bool subordinate_to_collar(const CubeSet& x, const PLPath& p, const CubeChain& c);

struct CcrResult {
  enum class Kind { Chain, None, NoCoarsest };
  Kind kind = Kind::None;
  std::optional<CubeChain> chain;
};

// Head-splitting recursion; needs a proper non-self-linked set.
CcrResult ccr_recursive(const CubeSet& x, const CubeChain& a, const CubeChain& b);
// Intersection of the two refinement sets.
CcrResult ccr_brute_force(const CubeSet& x, const CubeChain& a, const CubeChain& b);
// Recursive when the set allows it, brute force otherwise.
CcrResult coarsest_common_refinement(const CubeSet& x, const CubeChain& a, const CubeChain& b);

bool common_refinement_exists(const CubeSet& x, const std::vector<CubeChain>& chains);

}  // namespace hda
