#include "hda/generators.hpp"

#include <map>
#include <string>

#include "hda/error.hpp"

namespace hda {

namespace {

// An elementary cube: per coordinate a lower integer and a free flag.
struct Cell {
  std::vector<long> low;
  std::vector<char> free;

  int dim() const {
    int d = 0;
    for (char f : free) d += f;
    return d;
  }
};

std::string cell_name(const Cell& cell) {
  std::string out = cell.dim() == 0 ? "v" : "c";
  for (std::size_t i = 0; i < cell.low.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(cell.low[i]);
    if (cell.free[i]) out += '+';
  }
  return out;
}

CubeSpec cell_spec(const Cell& cell) {
  CubeSpec spec{cell_name(cell), cell.dim(), {}};
  for (std::size_t i = 0; i < cell.free.size(); ++i) {
    if (!cell.free[i]) continue;
    for (int a = 0; a <= 1; ++a) {
      Cell f = cell;
      f.free[i] = 0;
      f.low[i] += a;
      spec.faces.push_back(cell_name(f));
    }
  }
  return spec;
}

using SpecMap = std::map<std::pair<int, std::string>, CubeSpec>;

void add_closure(const BoxSpec& box, SpecMap& out) {
  const std::size_t n = box.bottom.size();
  // Each free coordinate of the box contributes three choices.
  std::vector<int> choice(n, 0);
  while (true) {
    Cell cell{box.bottom, std::vector<char>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      if (choice[i] == 1) cell.low[i] += 1;
      if (choice[i] == 2) cell.free[i] = 1;
    }
    CubeSpec spec = cell_spec(cell);
    out.emplace(std::make_pair(spec.dim, spec.id), std::move(spec));
    std::size_t i = 0;
    for (; i < n; ++i) {
      const int limit = box.top[i] > box.bottom[i] ? 2 : 0;
      if (choice[i] < limit) {
        ++choice[i];
        break;
      }
      choice[i] = 0;
    }
    if (i == n) break;
  }
}

CubeSet from_map(SpecMap&& specs) {
  std::vector<CubeSpec> list;
  list.reserve(specs.size());
  for (auto& [key, spec] : specs) list.push_back(std::move(spec));
  return CubeSet(std::move(list));
}

std::string pattern_name(const std::string& pattern) {
  if (pattern.find('*') == std::string::npos) return "v" + pattern;
  return "c" + pattern;
}

CubeSet pattern_cube(int n, bool with_top) {
  if (n < 0) throw DomainError("cube dimension must be non-negative");
  SpecMap specs;
  std::string pattern(static_cast<std::size_t>(n), '0');
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  const char symbols[3] = {'0', '1', '*'};
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    int dim = 0;
    for (int i = 0; i < n; ++i) {
      pattern[static_cast<std::size_t>(i)] = symbols[rest % 3];
      dim += rest % 3 == 2;
      rest /= 3;
    }
    if (dim == n && n > 0 && !with_top) continue;
    CubeSpec spec{pattern_name(pattern), dim, {}};
    for (int i = 0; i < n; ++i) {
      if (pattern[static_cast<std::size_t>(i)] != '*') continue;
      for (char a : {'0', '1'}) {
        std::string f = pattern;
        f[static_cast<std::size_t>(i)] = a;
        spec.faces.push_back(pattern_name(f));
      }
    }
    specs.emplace(std::make_pair(dim, spec.id), std::move(spec));
  }
  return from_map(std::move(specs));
}

}  // namespace

CubeSet full_cube(int n) { return pattern_cube(n, true); }

CubeSet boundary_cube(int n) {
  if (n < 1) throw DomainError("boundary_cube needs n >= 1");
  return pattern_cube(n, false);
}

CubeSet euclidean(std::span<const BoxSpec> boxes) {
  SpecMap specs;
  std::size_t n = boxes.empty() ? 0 : boxes.front().bottom.size();
  for (const auto& box : boxes) {
    if (box.bottom.size() != n || box.top.size() != n) {
      throw DomainError("all boxes must have the same ambient dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const long d = box.top[i] - box.bottom[i];
      if (d < 0 || d > 1) throw DomainError("box extent must be 0 or 1 in every coordinate");
    }
    add_closure(box, specs);
  }
  return from_map(std::move(specs));
}

CubeSet grid(std::span<const long> extent, std::span<const std::vector<long>> omitted) {
  const std::size_t n = extent.size();
  std::vector<BoxSpec> boxes;
  std::vector<long> at(n, 0);
  for (long e : extent) {
    if (e < 0) throw DomainError("grid extent must be non-negative");
  }
  while (true) {
    bool skip = false;
    for (const auto& o : omitted) skip = skip || o == at;
    if (!skip) {
      BoxSpec box{at, at};
      for (std::size_t i = 0; i < n; ++i) {
        if (extent[i] > 0) box.top[i] += 1;
      }
      boxes.push_back(std::move(box));
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (at[i] + 1 < extent[i]) {
        ++at[i];
        break;
      }
      at[i] = 0;
    }
    if (i == n) break;
  }
  return euclidean(boxes);
}

CubeSet z_complex(int n) {
  if (n < 0) throw DomainError("z_complex needs n >= 0");
  std::vector<CubeSpec> specs;
  for (int k = 0; k <= n; ++k) {
    CubeSpec spec{"c" + std::to_string(k), k, {}};
    for (int i = 0; i < 2 * k; ++i) spec.faces.push_back("c" + std::to_string(k - 1));
    specs.push_back(std::move(spec));
  }
  return CubeSet(std::move(specs));
}

CubeSet q_complex(int n) {
  if (n < 0) throw DomainError("q_complex needs n >= 0");
  auto name = [](int k, int j) { return "c" + std::to_string(k) + "_" + std::to_string(j); };
  std::vector<CubeSpec> specs;
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n - k; ++j) {
      CubeSpec spec{name(k, j), k, {}};
      for (int i = 1; i <= k; ++i) {
        for (int a = 0; a <= 1; ++a) spec.faces.push_back(name(k - 1, j + a));
      }
      specs.push_back(std::move(spec));
    }
  }
  return CubeSet(std::move(specs));
}

CubeSet glued_squares() {
  // Boundary of a square: bottom edge b, right edge r, left edge l, top edge t.
  std::vector<CubeSpec> specs{
      {"v00", 0, {}},
      {"v01", 0, {}},
      {"v10", 0, {}},
      {"v11", 0, {}},
      {"b", 1, {"v00", "v10"}},
      {"r", 1, {"v10", "v11"}},
      {"l", 1, {"v00", "v01"}},
      {"t", 1, {"v01", "v11"}},
      {"s1", 2, {"l", "r", "b", "t"}},
      {"s2", 2, {"l", "r", "b", "t"}},
  };
  return CubeSet(std::move(specs));
}

}  // namespace hda
