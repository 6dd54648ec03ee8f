#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hda/chains.hpp"
#include "hda/rational.hpp"

namespace hda {

using Simplex = std::vector<std::uint32_t>;

// A finite simplicial complex stored through its maximal simplices
// (each sorted, none contained in another). Vertices are 0..num_vertices-1;
// a vertex not covered by any maximal simplex is not part of the complex.
struct SimplicialComplex {
  std::size_t num_vertices = 0;
  std::vector<std::string> labels;
  std::vector<Simplex> maximal;
  // Built from a truncated poset: a lower approximation only.
  bool approximate = false;
  // False when the underlying set is not proper and non-self-linked.
  bool nerve_guarantee = true;
};

constexpr std::size_t kDefaultSimplexBudget = 1'000'000;

// Sorts, removes duplicates and simplices contained in others.
SimplicialComplex make_complex(std::size_t num_vertices, std::vector<Simplex> simplices);

int dimension(const SimplicialComplex& k);

// All simplices grouped by dimension, each group sorted. Throws DomainError
// when more than `budget` simplices would be produced.
std::vector<std::vector<Simplex>> all_simplices(const SimplicialComplex& k,
                                                std::size_t budget = kDefaultSimplexBudget);

bool contains(const SimplicialComplex& k, const Simplex& s);

using CoverList = std::vector<std::pair<std::size_t, std::size_t>>;

// Chains of the refinement order. The poset is given by its size and its
// (coarser, finer) cover pairs; the RefinementPoset overloads also carry
// over the truncation and guarantee flags.
SimplicialComplex order_complex(std::size_t n, const CoverList& covers);
SimplicialComplex order_complex(const RefinementPoset& poset);

// Sets of chains sharing a common refinement.
SimplicialComplex covering_nerve(std::size_t n, const CoverList& covers);
SimplicialComplex covering_nerve(const RefinementPoset& poset);

struct HomologyResult {
  std::vector<std::size_t> betti;
  // Invariant factors greater than one, per degree.
  std::vector<std::vector<Integer>> torsion;
};

// Invariant factors of an integer matrix (non-zero diagonal of its Smith
// normal form), in divisibility order.
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> matrix);

HomologyResult homology(const SimplicialComplex& k, std::size_t budget = kDefaultSimplexBudget);
std::vector<std::size_t> betti(const SimplicialComplex& k);
long euler(const SimplicialComplex& k);
std::size_t components(const SimplicialComplex& k);

}  // namespace hda
