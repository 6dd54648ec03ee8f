#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hda/chains.hpp"
#include "hda/cubeset.hpp"
#include "hda/dpath.hpp"
#include "hda/nerve.hpp"

namespace hda {

// JSON documents. Rationals are written as "p/q" strings; integers may also
// be given as plain JSON numbers on input. Every writer emits two-space
// indented JSON followed by a newline, so output is byte-for-byte stable.
//
// Syntax errors raise FormatError carrying the line and column, schema
// errors raise FormatError naming the offending field, and documents that
// parse but describe an invalid object raise DomainError.

// {"cubes":[{"id":..,"dim":..,"faces":{"d0_1":..,"d1_1":..}}], "start"?, "end"?}
struct CubeSetDocument {
  CubeSet cubes;
  std::optional<CubeIndex> start;
  std::optional<CubeIndex> end;
};

// With validate, pre-cubical violations are collected into one DomainError.
CubeSetDocument parse_cubeset(std::string_view text, bool validate = true);
std::string write_cubeset(const CubeSet& x, std::optional<CubeIndex> start = std::nullopt,
                          std::optional<CubeIndex> end = std::nullopt);

// {"start":id,"segments":[{"cube":id,"breakpoints":[["t",["x1",..]],..]}]}
// "start" must be the carrier of the starting point. The path is checked with
// validate_path, so a broken junction is reported by index.
PLPath parse_path(const CubeSet& x, std::string_view text);
std::string write_path(const CubeSet& x, const PLPath& p);

// {"from":id,"to":id,"cubes":[id,..]}
CubeChain parse_chain(const CubeSet& x, std::string_view text);
std::string write_chain(const CubeSet& x, const CubeChain& c);

// A refinement poset by cube ids, readable without the cube set.
struct PosetDocument {
  std::string from;
  std::string to;
  int max_length = 0;
  bool truncated = false;
  bool nerve_guarantee = true;
  std::vector<std::vector<std::string>> chains;
  CoverList covers;
};

PosetDocument to_document(const CubeSet& x, const RefinementPoset& poset);
RefinementPoset from_document(const CubeSet& x, const PosetDocument& doc);
PosetDocument parse_poset(std::string_view text);
std::string write_poset(const PosetDocument& doc);

// "a|b|c", "()" for the empty chain.
std::vector<std::string> poset_labels(const PosetDocument& doc);

// {"vertices":n,"labels":[..],"maximal_simplices":[[..]],"approximate":b,"nerve_guarantee":b}
SimplicialComplex parse_complex(std::string_view text);
std::string write_complex(const SimplicialComplex& k);

// {"betti":[..],"torsion":[["2"],..],"euler":e,"components":c,"approximate":b,"nerve_guarantee":b}
struct HomologyReport {
  HomologyResult homology;
  long euler = 0;
  std::size_t components = 0;
  bool approximate = false;
  bool nerve_guarantee = true;
};

HomologyReport homology_report(const SimplicialComplex& k, std::size_t budget = kDefaultSimplexBudget);
HomologyReport parse_homology(std::string_view text);
std::string write_homology(const HomologyReport& r);

// {"points":[{"cube":id,"coords":["x",..]},..]}
KinkSequence parse_kinks(const CubeSet& x, std::string_view text);
std::string write_kinks(const CubeSet& x, const KinkSequence& s);

}  // namespace hda
