#include "hda/cubeset.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hda/carrier.hpp"
#include "hda/error.hpp"

namespace hda {

CubeSet::CubeSet(std::vector<CubeSpec> specs) {
  const auto n = specs.size();
  ids_.reserve(n);
  dims_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& s = specs[k];
    if (s.dim < 0) throw DomainError("cube '" + s.id + "' has negative dimension");
    if (!index_.emplace(s.id, static_cast<CubeIndex>(k)).second) {
      throw DomainError("duplicate cube id '" + s.id + "'");
    }
    ids_.push_back(s.id);
    dims_.push_back(s.dim);
    max_dim_ = std::max(max_dim_, s.dim);
  }
  faces_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = specs[k];
    if (s.faces.size() != static_cast<std::size_t>(2 * s.dim)) {
      throw DomainError("cube '" + s.id + "' needs " + std::to_string(2 * s.dim) +
                        " face entries, has " + std::to_string(s.faces.size()));
    }
    faces_[k].reserve(s.faces.size());
    for (const auto& f : s.faces) {
      auto it = index_.find(f);
      if (it == index_.end()) {
        throw DomainError("cube '" + s.id + "' refers to unknown face '" + f + "'");
      }
      faces_[k].push_back(it->second);
    }
  }

  auto descend = [&](CubeIndex c, int alpha) {
    for (std::size_t steps = 0; steps <= n; ++steps) {
      if (dims_[c] == 0) return c;
      c = faces_[c][alpha];
    }
    return kNoVertex;
  };
  source_.resize(n);
  target_.resize(n);
  for (CubeIndex c = 0; c < n; ++c) {
    source_[c] = descend(c, 0);
    target_[c] = descend(c, 1);
  }

  closure_.resize(n);
  for (CubeIndex c = 0; c < n; ++c) {
    std::vector<char> seen(n, 0);
    std::vector<CubeIndex> stack{c};
    seen[c] = 1;
    while (!stack.empty()) {
      CubeIndex top = stack.back();
      stack.pop_back();
      closure_[c].push_back(top);
      for (CubeIndex f : faces_[top]) {
        if (!seen[f]) {
          seen[f] = 1;
          stack.push_back(f);
        }
      }
    }
    std::sort(closure_[c].begin(), closure_[c].end());
  }

  outgoing_.resize(n);
  for (CubeIndex c = 0; c < n; ++c) {
    if (dims_[c] > 0 && source_[c] != kNoVertex) outgoing_[source_[c]].push_back(c);
  }
}

CubeIndex CubeSet::index(std::string_view id) const {
  auto found = find(id);
  if (!found) throw DomainError("unknown cube '" + std::string(id) + "'");
  return *found;
}

std::optional<CubeIndex> CubeSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CubeIndex CubeSet::source_vertex(CubeIndex c) const {
  if (source_[c] == kNoVertex) throw DomainError("cube '" + ids_[c] + "' has no source vertex");
  return source_[c];
}

CubeIndex CubeSet::target_vertex(CubeIndex c) const {
  if (target_[c] == kNoVertex) throw DomainError("cube '" + ids_[c] + "' has no target vertex");
  return target_[c];
}

bool CubeSet::is_face_of(CubeIndex f, CubeIndex c) const {
  return std::binary_search(closure_[c].begin(), closure_[c].end(), f);
}

std::vector<CubeIndex> CubeSet::vertices() const {
  std::vector<CubeIndex> out;
  for (CubeIndex c = 0; c < size(); ++c) {
    if (dims_[c] == 0) out.push_back(c);
  }
  return out;
}

std::vector<CubeSpec> CubeSet::specs() const {
  std::vector<CubeSpec> out;
  out.reserve(size());
  for (CubeIndex c = 0; c < size(); ++c) {
    CubeSpec s{ids_[c], dims_[c], {}};
    for (CubeIndex f : faces_[c]) s.faces.push_back(ids_[f]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Violation> validate(const CubeSet& x) {
  std::vector<Violation> out;
  std::vector<char> dims_ok(x.size(), 1);
  for (CubeIndex c = 0; c < x.size(); ++c) {
    const int n = x.dim(c);
    for (int i = 1; i <= n; ++i) {
      for (int a = 0; a <= 1; ++a) {
        CubeIndex f = x.face(c, i, a);
        if (x.dim(f) != n - 1) {
          dims_ok[c] = 0;
          Violation v;
          v.kind = Violation::Kind::Dimension;
          v.cube = c;
          v.i = i;
          v.alpha = a;
          v.message = "d_" + std::to_string(i) + "^" + std::to_string(a) + "(" + x.id(c) + ") = " +
                      x.id(f) + " has dimension " + std::to_string(x.dim(f)) + ", expected " +
                      std::to_string(n - 1);
          out.push_back(std::move(v));
        }
      }
    }
  }
  for (CubeIndex c = 0; c < x.size(); ++c) {
    const int n = x.dim(c);
    if (n < 2 || !dims_ok[c]) continue;
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) {
        for (int a = 0; a <= 1; ++a) {
          for (int b = 0; b <= 1; ++b) {
            CubeIndex fj = x.face(c, j, b);
            CubeIndex fi = x.face(c, i, a);
            if (!dims_ok[fj] || !dims_ok[fi]) continue;
            CubeIndex lhs = x.face(fj, i, a);
            CubeIndex rhs = x.face(fi, j - 1, b);
            if (lhs != rhs) {
              Violation v;
              v.cube = c;
              v.i = i;
              v.j = j;
              v.alpha = a;
              v.beta = b;
              v.message = "d_" + std::to_string(i) + "^" + std::to_string(a) + " d_" + std::to_string(j) +
                          "^" + std::to_string(b) + "(" + x.id(c) + ") = " + x.id(lhs) + " but d_" +
                          std::to_string(j - 1) + "^" + std::to_string(b) + " d_" + std::to_string(i) +
                          "^" + std::to_string(a) + "(" + x.id(c) + ") = " + x.id(rhs);
              out.push_back(std::move(v));
            }
          }
        }
      }
    }
  }
  return out;
}

PropernessReport check_proper(const CubeSet& x) {
  std::map<std::pair<CubeIndex, CubeIndex>, CubeIndex> seen;
  for (CubeIndex c = 0; c < x.size(); ++c) {
    auto key = std::make_pair(x.source_vertex(c), x.target_vertex(c));
    auto [it, inserted] = seen.emplace(key, c);
    if (!inserted) return {false, std::make_pair(it->second, c)};
  }
  return {};
}

namespace {

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

SelfLinkReport check_non_self_linked(const CubeSet& x) {
  for (CubeIndex c = 0; c < x.size(); ++c) {
    const int n = x.dim(c);
    std::vector<std::set<CubeIndex>> by_dim(static_cast<std::size_t>(n) + 1);
    for (const auto& fp : FacePartition::all(n)) {
      by_dim[static_cast<std::size_t>(fp.dim())].insert(face(x, c, fp));
    }
    for (int k = 0; k <= n; ++k) {
      const std::size_t expected = binomial(n, k) << (n - k);
      const std::size_t got = by_dim[static_cast<std::size_t>(k)].size();
      if (got != expected) {
        return {false, c, k, got, expected};
      }
    }
  }
  return {};
}

}  // namespace hda
