#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hda {

using CubeIndex = std::uint32_t;

// One row of a face table as it appears in a document: faces[2*(i-1)+alpha]
// holds the id of d_i^alpha for 1 <= i <= dim.
struct CubeSpec {
  std::string id;
  int dim = 0;
  std::vector<std::string> faces;
};

// A finite pre-cubical set. Cubes are addressed by dense indices; the
// string ids are kept for documents and diagnostics. Immutable once built.
//
// The constructor only checks structure (unique ids, known face ids, a full
// face table for every positive-dimensional cube). Dimension mismatches and
// broken pre-cubical relations are reported by validate().
class CubeSet {
 public:
  CubeSet() = default;
  explicit CubeSet(std::vector<CubeSpec> specs);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(CubeIndex c) const { return ids_[c]; }
  int dim(CubeIndex c) const { return dims_[c]; }
  int max_dim() const { return max_dim_; }

  CubeIndex index(std::string_view id) const;  // throws DomainError
  std::optional<CubeIndex> find(std::string_view id) const;

  // d_i^alpha, i is 1-based.
  CubeIndex face(CubeIndex c, int i, int alpha) const { return faces_[c][2 * (i - 1) + alpha]; }
  std::span<const CubeIndex> face_table(CubeIndex c) const { return faces_[c]; }

  // Iterated d_1^0 / d_1^1 down to a vertex. Throws when the face tables
  // never reach dimension zero (only possible for invalid sets).
  CubeIndex source_vertex(CubeIndex c) const;
  CubeIndex target_vertex(CubeIndex c) const;

  // All iterated faces of c, c included, sorted by index.
  std::span<const CubeIndex> face_closure(CubeIndex c) const { return closure_[c]; }
  bool is_face_of(CubeIndex f, CubeIndex c) const;

  // Positive-dimensional cubes whose source vertex is v.
  std::span<const CubeIndex> cubes_from(CubeIndex v) const { return outgoing_[v]; }

  std::vector<CubeIndex> vertices() const;
  std::vector<CubeSpec> specs() const;

 private:
  static constexpr CubeIndex kNoVertex = static_cast<CubeIndex>(-1);

  std::vector<std::string> ids_;
  std::vector<int> dims_;
  std::vector<std::vector<CubeIndex>> faces_;
  std::unordered_map<std::string, CubeIndex> index_;
  std::vector<CubeIndex> source_;
  std::vector<CubeIndex> target_;
  std::vector<std::vector<CubeIndex>> closure_;
  std::vector<std::vector<CubeIndex>> outgoing_;
  int max_dim_ = -1;
};

struct Violation {
  enum class Kind { Dimension, Relation };
  Kind kind = Kind::Relation;
  CubeIndex cube = 0;
  // Relation: d_i^alpha d_j^beta != d_{j-1}^beta d_i^alpha.
  // Dimension: face d_i^alpha has the wrong dimension (j, beta unused).
  int i = 0;
  int j = 0;
  int alpha = 0;
  int beta = 0;
  std::string message;
};

std::vector<Violation> validate(const CubeSet& x);

struct PropernessReport {
  bool proper = true;
  std::optional<std::pair<CubeIndex, CubeIndex>> witness;
};

// Proper: no two cubes share both source and target vertex.
PropernessReport check_proper(const CubeSet& x);
inline bool is_proper(const CubeSet& x) { return check_proper(x).proper; }

struct SelfLinkReport {
  bool non_self_linked = true;
  std::optional<CubeIndex> cube;
  int k = -1;
  std::size_t distinct_faces = 0;
  std::size_t expected_faces = 0;
};

// Non-self-linked: every n-cube has C(n,k) 2^(n-k) distinct iterated k-faces.
SelfLinkReport check_non_self_linked(const CubeSet& x);
inline bool is_non_self_linked(const CubeSet& x) { return check_non_self_linked(x).non_self_linked; }

}  // namespace hda
