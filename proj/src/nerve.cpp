#include "hda/nerve.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "hda/error.hpp"

namespace hda {

SimplicialComplex make_complex(std::size_t num_vertices, std::vector<Simplex> simplices) {
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto v : s) {
      if (v >= num_vertices) throw DomainError("simplex vertex " + std::to_string(v) + " out of range");
    }
  }
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  SimplicialComplex k;
  k.num_vertices = num_vertices;
  for (auto& s : simplices) {
    if (s.empty()) continue;
    const bool covered = std::any_of(k.maximal.begin(), k.maximal.end(), [&](const Simplex& m) {
      return std::includes(m.begin(), m.end(), s.begin(), s.end());
    });
    if (!covered) k.maximal.push_back(std::move(s));
  }
  std::sort(k.maximal.begin(), k.maximal.end());
  return k;
}

int dimension(const SimplicialComplex& k) {
  int d = -1;
  for (const auto& s : k.maximal) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::vector<std::vector<Simplex>> all_simplices(const SimplicialComplex& k, std::size_t budget) {
  const int top = dimension(k);
  std::vector<std::set<Simplex>> by_dim(static_cast<std::size_t>(top + 1));
  std::size_t total = 0;
  for (const auto& m : k.maximal) {
    if (m.size() >= 63 || (std::size_t{1} << m.size()) - 1 > budget) {
      throw DomainError("simplex budget of " + std::to_string(budget) + " exceeded");
    }
    const std::size_t subsets = std::size_t{1} << m.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (mask >> i & 1U) s.push_back(m[i]);
      }
      if (by_dim[s.size() - 1].insert(std::move(s)).second && ++total > budget) {
        throw DomainError("simplex budget of " + std::to_string(budget) + " exceeded");
      }
    }
  }
  std::vector<std::vector<Simplex>> out;
  for (auto& level : by_dim) out.emplace_back(level.begin(), level.end());
  return out;
}

bool contains(const SimplicialComplex& k, const Simplex& s) {
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  return std::any_of(k.maximal.begin(), k.maximal.end(), [&](const Simplex& m) {
    return std::includes(m.begin(), m.end(), sorted.begin(), sorted.end());
  });
}

namespace {

struct CoverGraph {
  std::vector<std::vector<std::uint32_t>> finer;
  std::vector<std::vector<std::uint32_t>> coarser;
};

CoverGraph cover_graph(std::size_t n, const CoverList& covers) {
  CoverGraph g;
  g.finer.resize(n);
  g.coarser.resize(n);
  for (const auto& [a, b] : covers) {
    if (a >= n || b >= n) throw DomainError("cover pair refers to a missing element");
    g.finer[a].push_back(static_cast<std::uint32_t>(b));
    g.coarser[b].push_back(static_cast<std::uint32_t>(a));
  }
  std::vector<std::size_t> indegree(n);
  for (const auto& [a, b] : covers) ++indegree[b];
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : g.finer[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (seen != n) throw DomainError("cover relation has a cycle");
  return g;
}

SimplicialComplex finish(SimplicialComplex k, const RefinementPoset& poset) {
  k.approximate = poset.truncated;
  k.nerve_guarantee = poset.nerve_guarantee;
  return k;
}

}  // namespace

SimplicialComplex order_complex(std::size_t n, const CoverList& covers) {
  const auto g = cover_graph(n, covers);
  std::vector<Simplex> chains;
  Simplex path;
  // Maximal chains of a finite poset are the maximal paths of its Hasse diagram.
  auto walk = [&](auto&& self, std::uint32_t v) -> void {
    path.push_back(v);
    if (g.finer[v].empty()) chains.push_back(path);
    for (auto w : g.finer[v]) self(self, w);
    path.pop_back();
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    if (g.coarser[v].empty()) walk(walk, v);
  }
  return make_complex(n, std::move(chains));
}

SimplicialComplex order_complex(const RefinementPoset& poset) {
  return finish(order_complex(poset.chains.size(), poset.covers), poset);
}

SimplicialComplex covering_nerve(std::size_t n, const CoverList& covers) {
  // A set of chains has a common refinement iff it lies in the up-set of a
  // finest chain, so these up-sets are the maximal simplices.
  const auto g = cover_graph(n, covers);
  std::vector<Simplex> upsets;
  for (std::uint32_t m = 0; m < n; ++m) {
    if (!g.finer[m].empty()) continue;
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack{m};
    seen[m] = 1;
    Simplex up;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      up.push_back(v);
      for (auto w : g.coarser[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    upsets.push_back(std::move(up));
  }
  return make_complex(n, std::move(upsets));
}

SimplicialComplex covering_nerve(const RefinementPoset& poset) {
  return finish(covering_nerve(poset.chains.size(), poset.covers), poset);
}

namespace {

using DenseMatrix = std::vector<std::vector<Integer>>;

void dense_smith(DenseMatrix& a, std::vector<Integer>& diag) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Bring the smallest non-zero entry of the remaining block to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) return;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
}

// Sparse matrix with unit-pivot elimination; what cannot be eliminated by
// unit pivots is handed to the dense routine.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void set(std::uint32_t r, std::uint32_t c, const Integer& v) {
    if (v == 0) return;
    rows_[r][c] = v;
    cols_[c].insert(r);
  }

  std::vector<Integer> invariants() {
    std::vector<Integer> diag;
    while (auto pivot = find_unit()) {
      eliminate(pivot->first, pivot->second);
      diag.emplace_back(1);
    }
    std::vector<std::uint32_t> live_rows, live_cols;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!rows_[r].empty()) live_rows.push_back(r);
    }
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      if (!cols_[c].empty()) live_cols.push_back(c);
    }
    if (!live_rows.empty()) {
      DenseMatrix dense(live_rows.size(), std::vector<Integer>(live_cols.size()));
      std::map<std::uint32_t, std::size_t> col_pos;
      for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
      for (std::size_t i = 0; i < live_rows.size(); ++i) {
        for (const auto& [c, v] : rows_[live_rows[i]]) dense[i][col_pos[c]] = v;
      }
      dense_smith(dense, diag);
    }
    return diag;
  }

 private:
  std::optional<std::pair<std::uint32_t, std::uint32_t>> find_unit() const {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
    std::size_t best_cost = 0;
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      for (auto r : cols_[c]) {
        if (abs(rows_[r].at(c)) != 1) continue;
        const std::size_t cost = rows_[r].size() * cols_[c].size();
        if (!best || cost < best_cost) {
          best = std::make_pair(r, c);
          best_cost = cost;
          if (cost == 1) return best;
        }
      }
      if (best) return best;
    }
    return best;
  }

  void eliminate(std::uint32_t r, std::uint32_t c) {
    const Integer unit = rows_[r].at(c);
    const auto pivot_row = rows_[r];
    const std::vector<std::uint32_t> others(cols_[c].begin(), cols_[c].end());
    for (auto i : others) {
      if (i == r) continue;
      const Integer factor = rows_[i].at(c) * unit;
      for (const auto& [j, v] : pivot_row) {
        Integer updated = -factor * v;
        if (auto it = rows_[i].find(j); it != rows_[i].end()) updated += it->second;
        if (updated == 0) {
          rows_[i].erase(j);
          cols_[j].erase(i);
        } else {
          rows_[i][j] = std::move(updated);
          cols_[j].insert(i);
        }
      }
    }
    for (const auto& [j, v] : pivot_row) cols_[j].erase(r);
    rows_[r].clear();
  }

  std::vector<std::map<std::uint32_t, Integer>> rows_;
  std::vector<std::set<std::uint32_t>> cols_;
};

void normalize_invariants(std::vector<Integer>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  }
}

}  // namespace

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> matrix) {
  std::vector<Integer> diag;
  dense_smith(matrix, diag);
  normalize_invariants(diag);
  return diag;
}

HomologyResult homology(const SimplicialComplex& k, std::size_t budget) {
  const auto simplices = all_simplices(k, budget);
  const std::size_t top = simplices.size();
  HomologyResult out;
  if (top == 0) return out;

  // rank[d] and torsion[d] describe the boundary map from degree d to d-1.
  std::vector<std::size_t> rank(top + 1, 0);
  std::vector<std::vector<Integer>> factors(top + 1);
  for (std::size_t d = 1; d < top; ++d) {
    const auto& faces = simplices[d - 1];
    const auto& cells = simplices[d];
    std::map<Simplex, std::uint32_t> index;
    for (std::uint32_t i = 0; i < faces.size(); ++i) index.emplace(faces[i], i);
    SparseMatrix m(faces.size(), cells.size());
    for (std::uint32_t j = 0; j < cells.size(); ++j) {
      for (std::size_t i = 0; i < cells[j].size(); ++i) {
        Simplex f = cells[j];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        m.set(index.at(f), j, Integer(i % 2 == 0 ? 1 : -1));
      }
    }
    auto inv = m.invariants();
    normalize_invariants(inv);
    rank[d] = inv.size();
    for (auto& v : inv) {
      if (v > 1) factors[d].push_back(v);
    }
  }
  for (std::size_t d = 0; d < top; ++d) {
    out.betti.push_back(simplices[d].size() - rank[d] - rank[d + 1]);
    out.torsion.push_back(factors[d + 1]);
  }
  return out;
}

std::vector<std::size_t> betti(const SimplicialComplex& k) { return homology(k).betti; }

long euler(const SimplicialComplex& k) {
  long chi = 0;
  const auto simplices = all_simplices(k);
  for (std::size_t d = 0; d < simplices.size(); ++d) {
    chi += (d % 2 == 0 ? 1L : -1L) * static_cast<long>(simplices[d].size());
  }
  return chi;
}

std::size_t components(const SimplicialComplex& k) {
  const auto b = betti(k);
  return b.empty() ? 0 : b.front();
}

}  // namespace hda
