#include <doctest.h>

#include <algorithm>

#include "hda/error.hpp"
#include "hda/generators.hpp"
#include "hda/taming.hpp"
#include "support.hpp"

using namespace hda;
using hda::test::chain_of;
using hda::test::G;
using hda::test::q;

namespace {

Point at(const CubeSet& x, const char* cube, std::initializer_list<const char*> coords) {
  Point p{x.index(cube), {}};
  for (const char* c : coords) p.coords.push_back(q(c));
  return canonicalize(x, p);
}

Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// A random strict path with all the chains it is subordinate to.
struct Sample {
  PLPath path;
  std::vector<CubeChain> chains;
};

std::vector<Sample> samples(const CubeSet& x, const RefinementPoset& poset, test::Random& r, int count,
                            PLPath (*make)(test::Random&)) {
  std::vector<Sample> out;
  for (int k = 0; k < count; ++k) {
    Sample s{make(r), {}};
    for (const auto& c : poset.chains) {
      if (subordinate_to_collar(x, s.path, c)) s.chains.push_back(c);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("taming a bent path in the square") {
  const auto sq = full_cube(2);
  const auto p = test::pattern_path(sq, {G({"0", "0"}), G({"4/5", "1/10"}), G({"1", "1"})});
  const auto c = chain_of(sq, "v00", "v11", {"c*0", "c1*"});
  const auto profile = crossing_times(sq, p, c);
  CHECK(profile.enter == std::vector<Rational>{q("6/11")});
  CHECK(profile.leave == std::vector<Rational>{q("6/11")});
  const auto crossing = evaluate(sq, p, q("6/11"));
  CHECK(crossing == at(sq, "c**", {"9/11", "2/11"}));
  CHECK(surface_value(sq, crossing, c.cubes[0], c.cubes[1]) == Rational(1));

  const auto t = tame(sq, p, c);
  CHECK(evaluate(sq, t, q("6/11")) == vertex_point(sq.index("v10")));
  // First leg: x scaled by 11/9, y pinned at 0.
  CHECK(evaluate(sq, t, half()) == at(sq, "c*0", {"44/45"}));
  CHECK(evaluate(sq, t, q("1/4")) == at(sq, "c*0", {"22/45"}));
  // Second leg: y rescaled from [2/11, 1] to [0, 1].
  const Rational y = q("11/20");
  CHECK(evaluate(sq, t, q("3/4")) == canonicalize(sq, Point{sq.index("c1*"), {(y - q("2/11")) / (1 - q("2/11"))}}));
  CHECK(is_in_chain(sq, t, c.cubes));

  const auto mid = taming_homotopy(sq, p, c, half());
  CHECK(evaluate(sq, mid, q("6/11")) == at(sq, "c**", {"10/11", "1/11"}));
  CHECK(same_trace(sq, taming_homotopy(sq, p, c, 0), p));
  CHECK(same_trace(sq, taming_homotopy(sq, p, c, 1), t));
  CHECK_THROWS_AS(taming_homotopy(sq, p, c, q("-1/2")), DomainError);
}

TEST_CASE("paths already in the chain stay put") {
  const auto sq = full_cube(2);
  const auto rim = test::pattern_path(sq, {G({"0", "0"}), G({"1", "0"}), G({"1", "1"})}, {0, q("2/5"), 1});
  const auto c = chain_of(sq, "v00", "v11", {"c*0", "c1*"});
  CHECK(same_trace(sq, tame(sq, rim, c), rim));
  CHECK(same_trace(sq, taming_homotopy(sq, rim, c, q("1/3")), rim));
  const auto diag = linear_path(sq.index("c**"), G({"0", "0"}), G({"1", "1"}));
  CHECK(same_trace(sq, tame(sq, diag, chain_of(sq, "v00", "v11", {"c**"})), diag));
  const auto profile = crossing_times(sq, diag, chain_of(sq, "v00", "v11", {"c**"}));
  CHECK(profile.enter.empty());
}

TEST_CASE("taming needs subordination") {
  const auto sq = full_cube(2);
  const auto diag = linear_path(sq.index("c**"), G({"0", "0"}), G({"1", "1"}));
  CHECK_THROWS_AS(tame(sq, diag, chain_of(sq, "v00", "v11", {"c*0", "c1*"})), DomainError);
}

TEST_CASE("tamed paths are strict, tame and in the chain") {
  test::Random r(61);
  const auto sq = full_cube(2);
  const auto b3 = boundary_cube(3);
  const auto sq_poset = enumerate_chains(sq, sq.index("v00"), sq.index("v11"), 2);
  const auto b3_poset = enumerate_chains(b3, b3.index("v000"), b3.index("v111"), 3);
  for (int which = 0; which < 2; ++which) {
    const CubeSet& x = which == 0 ? sq : b3;
    const auto& poset = which == 0 ? sq_poset : b3_poset;
    for (const auto& s : samples(x, poset, r, 25, which == 0 ? test::random_square_path : test::random_boundary3_path)) {
      REQUIRE_FALSE(s.chains.empty());
      for (const auto& c : s.chains) {
        const auto profile = crossing_times(x, s.path, c);
        REQUIRE(profile.enter.size() + 1 == c.cubes.size());
        const auto vertices = vertex_sequence(x, c);
        for (std::size_t j = 0; j < profile.enter.size(); ++j) {
          CHECK(profile.enter[j] <= profile.leave[j]);
          if (j + 1 < profile.enter.size()) CHECK(profile.leave[j] < profile.enter[j + 1]);
          CHECK(surface_value(x, evaluate(x, s.path, profile.enter[j]), c.cubes[j], c.cubes[j + 1]) == Rational(1));
        }
        const auto t = tame(x, s.path, c);
        CHECK(is_strict(x, t));
        CHECK(is_tame(x, t));
        CHECK(is_in_chain(x, t, c.cubes));
        CHECK(subordinate_to_collar(x, t, c));
        CHECK(start_point(x, t) == start_point(x, s.path));
        CHECK(end_point(x, t) == end_point(x, s.path));
        for (std::size_t j = 0; j < profile.enter.size(); ++j) {
          CHECK(evaluate(x, t, profile.enter[j]) == vertex_point(vertices[j + 1]));
        }
        CHECK(same_trace(x, tame(x, t, c), t));
        for (const auto& h : {q("1/4"), half(), q("3/4")}) {
          const auto mid = taming_homotopy(x, s.path, c, h);
          CHECK(is_strict(x, mid));
          CHECK(subordinate_to_collar(x, mid, c));
        }
      }
    }
  }
}

TEST_CASE("crossings of a coarser chain are crossings of the finer one") {
  test::Random r(67);
  const auto b3 = boundary_cube(3);
  const auto poset = enumerate_chains(b3, b3.index("v000"), b3.index("v111"), 3);
  for (const auto& s : samples(b3, poset, r, 30, test::random_boundary3_path)) {
    for (const auto& fine : s.chains) {
      // Crossing times are only compared for paths inside the finer chain.
      const auto inside = tame(b3, s.path, fine);
      const auto fine_times = crossing_times(b3, inside, fine).enter;
      for (const auto& coarse : s.chains) {
        if (!refines(b3, fine, coarse)) continue;
        for (const auto& t : crossing_times(b3, inside, coarse).enter) {
          CHECK(std::find(fine_times.begin(), fine_times.end(), t) != fine_times.end());
        }
      }
    }
  }
}

TEST_CASE("crossing times depend continuously on the path") {
  const auto sq = full_cube(2);
  const auto c = chain_of(sq, "v00", "v11", {"c*0", "c1*"});
  const auto base = crossing_times(sq, test::pattern_path(sq, {G({"0", "0"}), G({"4/5", "1/10"}), G({"1", "1"})}), c);
  Rational previous = 1;
  for (long k = 1; k <= 5; ++k) {
    Rational eps = 1;
    for (long i = 0; i < k; ++i) eps /= 10;
    const auto moved = test::pattern_path(sq, {G({"0", "0"}), {q("4/5") - eps, q("1/10") - eps / 2}, G({"1", "1"})});
    const auto deviation = abs_of(crossing_times(sq, moved, c).enter[0] - base.enter[0]);
    CHECK(deviation < previous);
    CHECK(deviation <= 2 * eps);
    previous = deviation;
  }
}

TEST_CASE("taming in a grid") {
  test::Random r(71);
  std::vector<long> extent{3, 3};
  const auto g = grid(extent);
  for (int k = 0; k < 10; ++k) {
    const auto p = test::random_grid_path(r, g, 3);
    const auto c = finest_chain(g, p);
    const auto t = tame(g, p, c);
    CHECK(is_in_chain(g, t, c.cubes));
    CHECK(is_strict(g, t));
  }
}
