#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hda/carrier.hpp"
#include "hda/chains.hpp"
#include "hda/dpath.hpp"
#include "hda/error.hpp"
#include "hda/generators.hpp"
#include "hda/rational.hpp"

namespace hda::test {

inline Rational q(const char* text) { return parse_rational(text); }

using Global = std::vector<Rational>;

inline Global G(std::initializer_list<const char*> xs) {
  Global out;
  for (const char* x : xs) out.push_back(q(x));
  return out;
}

// Name of an elementary cell of a euclidean complex.
inline std::string cell_id(const std::vector<long>& low, const std::vector<bool>& free) {
  bool any = std::find(free.begin(), free.end(), true) != free.end();
  std::string out = any ? "c" : "v";
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(low[i]);
    if (free[i]) out += '+';
  }
  return out;
}

inline long floor_of(const Rational& r) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f.get_si();
}

// A linear segment between global points a <= b of a euclidean complex, in
// the lowest-dimensional cell that contains both.
inline Segment grid_segment(const CubeSet& x, const Global& a, const Global& b, const Rational& ta,
                            const Rational& tb) {
  const std::size_t n = a.size();
  // Per coordinate the admissible (low, free) choices, degenerate first.
  std::vector<std::vector<std::pair<long, bool>>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i] && a[i].get_den() == 1) {
      const long k = a[i].get_num().get_si();
      options[i] = {{k, false}, {k, true}, {k - 1, true}};
    } else {
      const long k = a[i].get_den() == 1 ? a[i].get_num().get_si() : floor_of(a[i]);
      options[i] = {{k, true}};
    }
  }
  std::vector<std::size_t> pick(n, 0);
  std::optional<Segment> best;
  int best_dim = 1 << 20;
  while (true) {
    std::vector<long> low(n);
    std::vector<bool> free(n);
    int dim = 0;
    for (std::size_t i = 0; i < n; ++i) {
      low[i] = options[i][pick[i]].first;
      free[i] = options[i][pick[i]].second;
      dim += free[i];
    }
    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i) {
      if (free[i]) fits = low[i] <= a[i] && b[i] <= low[i] + 1;
    }
    if (fits && dim < best_dim) {
      if (auto c = x.find(cell_id(low, free))) {
        Coords ya, yb;
        for (std::size_t i = 0; i < n; ++i) {
          if (!free[i]) continue;
          ya.push_back(a[i] - low[i]);
          yb.push_back(b[i] - low[i]);
        }
        best = Segment{*c, {{ta, ya}, {tb, yb}}};
        best_dim = dim;
      }
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == n) break;
  }
  if (!best) throw DomainError("no cell contains the segment");
  return *best;
}

// The polygonal path through global points, point k at time times[k]
// (default k / (m - 1)), split into one segment per cell crossed.
inline PLPath grid_path(const CubeSet& x, const std::vector<Global>& pts, std::vector<Rational> times = {}) {
  if (times.empty()) {
    for (std::size_t k = 0; k < pts.size(); ++k) times.push_back(ratio(static_cast<long>(k), static_cast<long>(pts.size() - 1)));
  }
  PLPath p;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Global& a = pts[k];
    const Global& b = pts[k + 1];
    // Split where a coordinate passes an integer strictly inside the segment.
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      for (long n = floor_of(a[i]) + 1; n < b[i]; ++n) {
        if (n > a[i]) cuts.push_back((n - a[i]) / (b[i] - a[i]));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto point_at = [&](const Rational& l) {
      Global out;
      for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + l * (b[i] - a[i]));
      return out;
    };
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const Rational t0 = times[k] + cuts[j] * (times[k + 1] - times[k]);
      const Rational t1 = times[k] + cuts[j + 1] * (times[k + 1] - times[k]);
      p.segments.push_back(grid_segment(x, point_at(cuts[j]), point_at(cuts[j + 1]), t0, t1));
    }
  }
  validate_path(x, p);
  return p;
}

// Same for the pattern-named cubes of full_cube and boundary_cube.
inline Segment pattern_segment(const CubeSet& x, const Global& a, const Global& b, const Rational& ta,
                               const Rational& tb) {
  const std::size_t n = a.size();
  std::vector<std::string> patterns{std::string(n, '*')};
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] == b[k] && is_zero_or_one(a[k])) {
      std::string s(n, '*');
      s[k] = a[k] == 0 ? '0' : '1';
      patterns.push_back(s);
    }
  }
  for (const auto& pat : patterns) {
    auto c = x.find("c" + pat);
    if (!c) continue;
    Coords ya, yb;
    for (std::size_t i = 0; i < n; ++i) {
      if (pat[i] != '*') continue;
      ya.push_back(a[i]);
      yb.push_back(b[i]);
    }
    return Segment{*c, {{ta, ya}, {tb, yb}}};
  }
  throw DomainError("no cube contains the segment");
}

inline PLPath pattern_path(const CubeSet& x, const std::vector<Global>& pts, std::vector<Rational> times = {}) {
  if (times.empty()) {
    for (std::size_t k = 0; k < pts.size(); ++k) times.push_back(ratio(static_cast<long>(k), static_cast<long>(pts.size() - 1)));
  }
  PLPath p;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    p.segments.push_back(pattern_segment(x, pts[k], pts[k + 1], times[k], times[k + 1]));
  }
  validate_path(x, p);
  return p;
}

// The two stacked unit squares [0,1] x [0,2].
inline CubeSet two_squares() {
  std::vector<BoxSpec> boxes{{{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}};
  return euclidean(boxes);
}

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  // Uniform in (0,1) with denominator kDen.
  Rational open_unit() { return ratio(std::uniform_int_distribution<long>(1, kDen - 1)(gen_), kDen); }
  Rational between(const Rational& lo, const Rational& hi) { return lo + (hi - lo) * open_unit(); }
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
  bool coin() { return below(2) == 1; }

  // k sorted distinct values strictly between lo and hi.
  std::vector<Rational> sorted(std::size_t k, const Rational& lo, const Rational& hi) {
    std::vector<Rational> out;
    while (out.size() < k) {
      out.push_back(between(lo, hi));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }

  // Increasing breakpoint times 0 = t_0 < ... < t_{m-1} = 1.
  std::vector<Rational> times(std::size_t m) {
    auto inner = sorted(m - 2, Rational(0), Rational(1));
    std::vector<Rational> out{Rational(0)};
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back(Rational(1));
    return out;
  }

  std::mt19937& engine() { return gen_; }

 private:
  static constexpr long kDen = 97;
  std::mt19937 gen_;
};

// Strict path through the interior of a single n-cube from 0 to 1, with
// `inner` random breakpoints; sometimes one coordinate rests at 0 first.
inline std::vector<Global> random_cube_points(Random& r, std::size_t n, std::size_t inner) {
  std::vector<std::vector<Rational>> columns;
  for (std::size_t i = 0; i < n; ++i) columns.push_back(r.sorted(inner, Rational(0), Rational(1)));
  std::vector<Global> pts{Global(n, Rational(0))};
  for (std::size_t k = 0; k < inner; ++k) {
    Global p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(columns[i][k]);
    pts.push_back(p);
  }
  if (inner > 0 && r.below(3) == 0) pts[1][static_cast<std::size_t>(r.below(static_cast<int>(n)))] = 0;
  pts.push_back(Global(n, Rational(1)));
  return pts;
}

inline PLPath random_square_path(Random& r) {
  static const CubeSet sq = full_cube(2);
  const auto pts = random_cube_points(r, 2, 1 + static_cast<std::size_t>(r.below(3)));
  return pattern_path(sq, pts, r.times(pts.size()));
}

// On the boundary of I^3: through a facet x_a = 0 to the edge x_b = 1, then
// through the facet x_b = 1 to the top.
inline std::vector<Global> random_boundary3_points(Random& r) {
  const std::size_t a = static_cast<std::size_t>(r.below(3));
  std::size_t b = static_cast<std::size_t>(r.below(2));
  if (b >= a) ++b;
  const std::size_t m = 3 - a - b;
  const Rational mid = r.below(4) == 0 ? Rational(0) : r.open_unit();
  std::vector<Global> pts{Global(3, Rational(0))};
  const std::size_t k1 = static_cast<std::size_t>(r.below(3));
  auto xb = r.sorted(k1, Rational(0), Rational(1));
  auto xm = mid == 0 ? std::vector<Rational>(k1, Rational(0)) : r.sorted(k1, Rational(0), mid);
  for (std::size_t k = 0; k < k1; ++k) {
    Global p(3, Rational(0));
    p[b] = xb[k];
    p[m] = xm[k];
    pts.push_back(p);
  }
  Global turn(3, Rational(0));
  turn[b] = 1;
  turn[m] = mid;
  pts.push_back(turn);
  const std::size_t k2 = static_cast<std::size_t>(r.below(3));
  auto ya = r.sorted(k2, Rational(0), Rational(1));
  auto ym = r.sorted(k2, mid, Rational(1));
  for (std::size_t k = 0; k < k2; ++k) {
    Global p(3, Rational(1));
    p[a] = ya[k];
    p[m] = ym[k];
    pts.push_back(p);
  }
  pts.push_back(Global(3, Rational(1)));
  return pts;
}

inline PLPath random_boundary3_path(Random& r) {
  static const CubeSet b3 = boundary_cube(3);
  const auto pts = random_boundary3_points(r);
  return pattern_path(b3, pts, r.times(pts.size()));
}

// Strict staircase through the unit cells of an n x n grid from the origin
// to the far corner, crossing cell walls away from lower-dimensional cells.
inline std::vector<Global> random_grid_points(Random& r, long size) {
  std::vector<long> cell{0, 0};
  std::vector<Global> pts{G({"0", "0"})};
  Global at = pts.front();
  while (cell[0] < size - 1 || cell[1] < size - 1) {
    std::size_t dir = cell[0] == size - 1 ? 1 : cell[1] == size - 1 ? 0 : static_cast<std::size_t>(r.below(2));
    const std::size_t other = 1 - dir;
    Global next(2);
    next[dir] = cell[dir] + 1;
    const Rational lo = std::max(at[other], Rational(cell[other]));
    next[other] = r.between(lo, Rational(cell[other] + 1));
    if (r.coin()) pts.push_back({r.between(at[0], next[0]), r.between(at[1], next[1])});
    pts.push_back(next);
    at = next;
    ++cell[dir];
  }
  pts.push_back({Rational(size), Rational(size)});
  return pts;
}

inline PLPath random_grid_path(Random& r, const CubeSet& x, long size) {
  const auto pts = random_grid_points(r, size);
  return grid_path(x, pts, r.times(pts.size()));
}

// Strict path in the two stacked squares from (0,0) to (1,2).
inline PLPath random_stack_path(Random& r, const CubeSet& x) {
  const Rational cross = r.open_unit();
  std::vector<Global> pts{G({"0", "0"})};
  if (r.coin()) pts.push_back({r.between(0, cross), r.open_unit()});
  pts.push_back({cross, Rational(1)});
  if (r.coin()) pts.push_back({r.between(cross, 1), 1 + r.open_unit()});
  pts.push_back(G({"1", "2"}));
  return grid_path(x, pts, r.times(pts.size()));
}

inline CubeChain chain_of(const CubeSet& x, const std::string& from, const std::string& to,
                          std::initializer_list<const char*> ids) {
  CubeChain c{x.index(from), x.index(to), {}};
  for (const char* id : ids) c.cubes.push_back(x.index(id));
  return c;
}

}  // namespace hda::test
