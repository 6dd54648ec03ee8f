#include <doctest.h>

#include <cmath>

#include "hda/dpath.hpp"
#include "hda/error.hpp"
#include "hda/generators.hpp"
#include "support.hpp"

using namespace hda;
using hda::test::G;
using hda::test::q;

namespace {

Point at(const CubeSet& x, const char* cube, std::initializer_list<const char*> coords) {
  Point p{x.index(cube), {}};
  for (const char* c : coords) p.coords.push_back(q(c));
  return canonicalize(x, p);
}

PLPath square_path() {
  static const CubeSet sq = full_cube(2);
  return test::pattern_path(sq, {G({"0", "0"}), G({"4/5", "1/10"}), G({"1", "1"})});
}

// The four paths drawn in the two stacked squares.
struct StackedPaths {
  CubeSet x = test::two_squares();
  PLPath directed = test::grid_path(x, {G({"0", "0"}), G({"1/2", "1/2"}), G({"1/2", "3/2"}), G({"1", "2"})});
  PLPath strict = test::grid_path(x, {G({"0", "0"}), G({"2/5", "1/2"}), G({"3/5", "3/2"}), G({"1", "2"})});
  PLPath tame = test::grid_path(x, {G({"0", "0"}), G({"1/2", "1/2"}), G({"1/2", "3/4"}), G({"1", "1"}), G({"1", "2"})});
  PLPath both = test::grid_path(x, {G({"0", "0"}), G({"2/5", "1/2"}), G({"1", "1"}), G({"1", "2"})});
};

// Every carrier of a point of p at t also carries the strictified point.
void check_carriers_kept(const CubeSet& x, const PLPath& p, const PLPath& s) {
  for (const auto& t : breakpoint_times(p)) {
    const Point before = evaluate(x, p, t);
    const Point after = evaluate(x, s, t);
    for (CubeIndex c : carriers(x, before)) CHECK_FALSE(representatives(x, after, c).empty());
  }
}

}  // namespace

TEST_CASE("evaluation") {
  const auto sq = full_cube(2);
  const auto p = square_path();
  CHECK(evaluate(sq, p, q("6/11")) == at(sq, "c**", {"9/11", "2/11"}));
  CHECK(evaluate(sq, p, half()) == at(sq, "c**", {"4/5", "1/10"}));
  const auto diag = linear_path(sq.index("c**"), G({"0", "0"}), G({"1", "1"}));
  CHECK(evaluate(sq, diag, half()) == at(sq, "c**", {"1/2", "1/2"}));
  CHECK(evaluate(sq, diag, 0) == vertex_point(sq.index("v00")));
  CHECK_THROWS_AS(evaluate(sq, p, q("3/2")), DomainError);
}

TEST_CASE("junctions evaluate the same from both sides") {
  const auto b3 = boundary_cube(3);
  test::Random r(17);
  for (int k = 0; k < 30; ++k) {
    const auto p = test::random_boundary3_path(r);
    for (std::size_t s = 0; s + 1 < p.segments.size(); ++s) {
      const auto& end = p.segments[s].points.back();
      const auto& start = p.segments[s + 1].points.front();
      CHECK(canonicalize(b3, Point{p.segments[s].cube, end.x}) ==
            canonicalize(b3, Point{p.segments[s + 1].cube, start.x}));
      CHECK(evaluate(b3, p, end.t) == canonicalize(b3, Point{p.segments[s].cube, end.x}));
    }
  }
}

TEST_CASE("path validation") {
  const auto sq = full_cube(2);
  const auto c = sq.index("c**");
  PLPath broken = linear_path(c, G({"0", "0"}), G({"1/2", "1/2"}), 0, half());
  broken.segments.push_back(linear_path(c, G({"1/2", "1/4"}), G({"1", "1"}), half(), 1).segments[0]);
  CHECK_THROWS_WITH_AS(validate_path(sq, broken), doctest::Contains("junction 0"), DomainError);
  CHECK_THROWS_AS(validate_path(sq, linear_path(c, G({"1/2", "0"}), G({"1/4", "1"}))), DomainError);
  CHECK_THROWS_AS(validate_path(sq, linear_path(c, G({"0", "0"}), G({"1", "1"}), 1, 1)), DomainError);
  CHECK_THROWS_AS(validate_path(sq, linear_path(c, G({"0"}), G({"1", "1"}))), DomainError);
  CHECK_THROWS_AS(validate_path(sq, PLPath{}), DomainError);
  CHECK_NOTHROW(validate_path(sq, square_path()));
}

TEST_CASE("strict and tame paths in two stacked squares") {
  const StackedPaths f;
  CHECK_FALSE(is_strict(f.x, f.directed));
  CHECK_FALSE(is_tame(f.x, f.directed));
  CHECK(is_strict(f.x, f.strict));
  CHECK_FALSE(is_tame(f.x, f.strict));
  CHECK_FALSE(is_strict(f.x, f.tame));
  CHECK(is_tame(f.x, f.tame));
  CHECK(is_strict(f.x, f.both));
  const auto w = tame_witness(f.x, f.both);
  REQUIRE(w.tame);
  CHECK(w.vertex_times == std::vector<Rational>{0, q("2/3"), 1});
  REQUIRE(w.cubes.size() == 2);
  CHECK(f.x.id(w.cubes[0]) == "c0+,0+");
  CHECK(f.x.id(w.cubes[1]) == "c1,1+");
}

TEST_CASE("a tame path through the interior of a square is not in the chain of three edges") {
  const auto x = test::two_squares();
  const auto detour = test::grid_path(x, {G({"0", "0"}), G({"1/4", "3/4"}), G({"1", "1"}), G({"1", "2"})});
  CHECK(is_tame(x, detour));
  CHECK_FALSE(is_in_chain(x, detour, {x.index("c0,0+"), x.index("c0+,1"), x.index("c1,1+")}));
  CHECK(is_in_chain(x, detour, {x.index("c0+,0+"), x.index("c1,1+")}));
  const auto edges = test::grid_path(x, {G({"0", "0"}), G({"0", "1"}), G({"1", "1"}), G({"1", "2"})});
  CHECK(is_in_chain(x, edges, {x.index("c0,0+"), x.index("c0+,1"), x.index("c1,1+")}));
}

TEST_CASE("simple strictness and tameness") {
  const auto sq = full_cube(2);
  const auto diag = linear_path(sq.index("c**"), G({"0", "0"}), G({"1", "1"}));
  CHECK(is_strict(sq, diag));
  const auto w = tame_witness(sq, diag);
  CHECK(w.tame);
  CHECK(w.vertex_times == std::vector<Rational>{0, 1});
  const auto paused = test::pattern_path(sq, {G({"0", "0"}), G({"1/2", "1/2"}), G({"1/2", "1/2"}), G({"1", "1"})});
  CHECK_FALSE(is_strict(sq, paused));
  CHECK(is_tame(sq, paused));
}

TEST_CASE("flow laws") {
  CHECK(rational_flow(half(), half()) == q("5/8"));
  test::Random r(23);
  std::vector<Rational> grid{0, q("1/7"), q("1/3"), half(), q("5/6"), 1};
  for (int k = 0; k < 20; ++k) grid.push_back(r.open_unit());
  for (const auto& t : grid) {
    CHECK(rational_flow(0, t) == t);
    CHECK(rational_flow(t, 0) == 0);
    CHECK(rational_flow(t, 1) == 1);
    CHECK(std::abs(paper_flow(0.0, t.get_d()) - t.get_d()) < 1e-12);
    CHECK(std::abs(paper_flow(t.get_d(), 0.0)) < 1e-12);
    CHECK(std::abs(paper_flow(t.get_d(), 1.0) - 1.0) < 1e-12);
    for (const auto& x : grid) {
      if (x > 0 && x < 1) {
        CHECK(rational_flow(t, x) > 0);
        CHECK(rational_flow(t, x) < 1);
        CHECK(paper_flow(t.get_d(), x.get_d()) > 0.0);
        CHECK(paper_flow(t.get_d(), x.get_d()) < 1.0);
      }
      for (const auto& y : grid) {
        if (x < y) {
          CHECK(rational_flow(t, x) < rational_flow(t, y));
          CHECK(paper_flow(t.get_d(), x.get_d()) < paper_flow(t.get_d(), y.get_d()) + 1e-12);
        }
        if (t < y && x > 0 && x < 1) {
          CHECK(rational_flow(t, x) < rational_flow(y, x));
          CHECK(paper_flow(t.get_d(), x.get_d()) < paper_flow(y.get_d(), x.get_d()) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("strictify") {
  const StackedPaths f;
  for (const auto* p : {&f.directed, &f.tame, &f.both, &f.strict}) {
    for (auto kind : {FlowKind::Rational, FlowKind::Paper}) {
      const auto s = strictify(f.x, *p, kind, 8);
      CHECK(is_strict(f.x, s));
      CHECK(start_point(f.x, s) == start_point(f.x, *p));
      CHECK(end_point(f.x, s) == end_point(f.x, *p));
      CHECK(is_tame(f.x, s) == is_tame(f.x, *p));
      check_carriers_kept(f.x, *p, s);
    }
  }
  CHECK_THROWS_AS(strictify(f.x, f.tame, FlowKind::Rational, 0), DomainError);
}

TEST_CASE("strictify on random paths") {
  const auto b3 = boundary_cube(3);
  test::Random r(29);
  for (int k = 0; k < 25; ++k) {
    const auto p = test::random_boundary3_path(r);
    const auto s = strictify(b3, p);
    CHECK(is_strict(b3, s));
    CHECK(is_tame(b3, s) == is_tame(b3, p));
    check_carriers_kept(b3, p, s);
  }
}

TEST_CASE("strictification homotopy") {
  const auto sq = full_cube(2);
  const auto paused = test::pattern_path(sq, {G({"0", "0"}), G({"1/2", "1/4"}), G({"1/2", "1/4"}), G({"1", "1"})});
  const auto start = strictify_homotopy(sq, paused, 0, FlowKind::Rational, 4);
  CHECK(same_trace(sq, start, paused));
  CHECK(strictify_homotopy(sq, paused, 1, FlowKind::Rational, 4) == strictify(sq, paused, FlowKind::Rational, 4));
  CHECK_THROWS_AS(strictify_homotopy(sq, paused, q("3/2")), DomainError);
  // Interior coordinates grow with s at every fixed time.
  const std::vector<Rational> ss{0, q("1/4"), half(), q("3/4"), 1};
  for (const auto& t : {q("1/5"), q("2/5"), half(), q("3/5"), q("4/5")}) {
    Coords previous;
    for (const auto& s : ss) {
      const auto h = strictify_homotopy(sq, paused, s, FlowKind::Rational, 4);
      const auto reps = representatives(sq, evaluate(sq, h, t), sq.index("c**"));
      REQUIRE(reps.size() == 1);
      if (!previous.empty()) {
        for (std::size_t i = 0; i < 2; ++i) CHECK(previous[i] <= reps[0][i]);
      }
      previous = reps[0];
    }
  }
}

TEST_CASE("length and naturalization") {
  const auto sq = full_cube(2);
  const auto ell = test::pattern_path(sq, {G({"0", "0"}), G({"1", "0"}), G({"1", "1"})}, {0, q("1/3"), 1});
  CHECK(l1_length(sq, ell) == 2);
  const auto n = naturalize(sq, ell);
  CHECK(is_natural(sq, naturalize(sq, ell, false)));
  CHECK(breakpoint_times(n) == std::vector<Rational>{0, half(), 1});
  CHECK(evaluate(sq, n, half()) == vertex_point(sq.index("v10")));
  CHECK(naturalize(sq, n) == n);

  const auto paused = test::pattern_path(sq, {G({"0", "0"}), G({"1", "0"}), G({"1", "0"}), G({"1", "1"})});
  const auto np = naturalize(sq, paused, false);
  CHECK(np.t_end() == 2);
  CHECK(is_strict(sq, np));
  CHECK(breakpoint_times(np) == std::vector<Rational>{0, 1, 2});
}

TEST_CASE("naturalized paths have unit speed") {
  const auto b3 = boundary_cube(3);
  test::Random r(31);
  for (int k = 0; k < 25; ++k) {
    const auto p = test::random_boundary3_path(r);
    const auto n = naturalize(b3, p, false);
    CHECK(is_natural(b3, n));
    CHECK(n.t_end() == l1_length(b3, p));
    CHECK(l1_length(b3, n) == l1_length(b3, p));
    for (const auto& seg : n.segments) {
      for (std::size_t j = 0; j + 1 < seg.points.size(); ++j) {
        Rational step = 0;
        for (std::size_t i = 0; i < seg.points[j].x.size(); ++i) step += seg.points[j + 1].x[i] - seg.points[j].x[i];
        CHECK(step == seg.points[j + 1].t - seg.points[j].t);
      }
    }
    CHECK(naturalize(b3, naturalize(b3, p)) == naturalize(b3, p));
  }
}

TEST_CASE("concatenation and reparametrization") {
  std::vector<BoxSpec> corner{{{0, 0}, {1, 1}}, {{1, 1}, {2, 2}}};
  const auto x = euclidean(corner);
  const auto first = linear_path(x.index("c0+,0+"), G({"0", "0"}), G({"1", "1"}));
  const auto second = linear_path(x.index("c1+,1+"), G({"0", "0"}), G({"1", "1"}));
  const auto joined = concatenate(x, first, second);
  CHECK(joined.t_end() == 2);
  const auto halved = reparametrize(x, joined, PLMap{{{0, 0}, {1, 2}}});
  CHECK(evaluate(x, halved, half()) == vertex_point(x.index("v1,1")));
  CHECK(is_tame(x, halved));
  CHECK(tame_witness(x, halved).vertex_times == std::vector<Rational>{0, half(), 1});
  CHECK_THROWS_AS(concatenate(x, second, first), DomainError);

  const auto sq = full_cube(2);
  const auto p = square_path();
  CHECK(reparametrize(sq, p, PLMap{{{0, 0}, {1, 1}}}) == p);
  const auto tail = concatenate(sq, p, constant_path(end_point(sq, p)));
  for (const auto& t : {q("1/5"), half(), q("6/11"), Rational(1)}) CHECK(evaluate(sq, tail, t) == evaluate(sq, p, t));
  CHECK(evaluate(sq, tail, q("3/2")) == end_point(sq, p));
  CHECK(l1_length(sq, tail) == l1_length(sq, p));

  test::Random r(37);
  for (int k = 0; k < 20; ++k) {
    const auto path = test::random_square_path(r);
    const auto mid = r.open_unit();
    const PLMap phi{{{0, 0}, {half(), mid}, {1, 1}}};
    CHECK(l1_length(sq, reparametrize(sq, path, phi)) == l1_length(sq, path));
  }
}

TEST_CASE("kink sequences") {
  const auto c3 = full_cube(3);
  const auto top = c3.index("c***");
  KinkSequence diag{{vertex_point(c3.index("v000")), at(c3, "c***", {"1/3", "1/3", "1/3"}),
                     at(c3, "c***", {"2/3", "2/3", "2/3"}), vertex_point(c3.index("v111"))}};
  CHECK_FALSE(check_kinks(c3, diag));
  const KinkSequence jump{{vertex_point(c3.index("v000")), vertex_point(c3.index("v110"))}};
  CHECK(check_kinks(c3, jump));
  CHECK_THROWS_AS(kinks_to_path(c3, jump), DomainError);
  const KinkSequence back{{at(c3, "c***", {"2/3", "2/3", "2/3"}), at(c3, "c***", {"1/3", "1/3", "2/3"})}};
  CHECK(check_kinks(c3, back));

  const auto p = kinks_to_path(c3, diag);
  CHECK(l1_length(c3, p) == 3);
  CHECK(is_natural(c3, p));
  CHECK(path_to_kinks(c3, p) == diag);
  const auto straight = linear_path(top, G({"0", "0", "0"}), G({"1", "1", "1"}), 0, 3);
  CHECK(same_trace(c3, p, straight));

  const auto z = z_complex(2);
  CHECK_THROWS_AS(kinks_to_path(z, KinkSequence{{vertex_point(0), vertex_point(0)}}), DomainError);
}

TEST_CASE("kink round trips on tame paths") {
  const auto b3 = boundary_cube(3);
  test::Random r(41);
  int tame_paths = 0;
  for (int k = 0; k < 60; ++k) {
    const auto p = naturalize(b3, test::random_boundary3_path(r), false);
    if (!is_tame(b3, p)) {
      CHECK_THROWS_AS(path_to_kinks(b3, p), DomainError);
      continue;
    }
    ++tame_paths;
    const auto kinks = path_to_kinks(b3, p);
    CHECK(kinks.points.size() == 4);
    CHECK_FALSE(check_kinks(b3, kinks));
    const auto lin = kinks_to_path(b3, kinks);
    CHECK(path_to_kinks(b3, lin) == kinks);
    CHECK(lin == linearize(b3, p));
    CHECK(linearize(b3, lin) == lin);
  }
  CHECK(tame_paths > 5);
}

TEST_CASE("random kink sequences in the 3-cube survive a round trip") {
  const auto c3 = full_cube(3);
  const auto top = c3.index("c***");
  test::Random r(43);
  for (int k = 0; k < 40; ++k) {
    Coords w1{r.open_unit(), r.open_unit(), r.open_unit()};
    const Rational sum = w1[0] + w1[1] + w1[2];
    Coords p1, p2;
    for (const auto& w : w1) p1.push_back(w / sum);
    Coords w2;
    Rational norm = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      w2.push_back(r.between(half(), 1));
      norm += (1 - p1[i]) * w2[i];
    }
    for (std::size_t i = 0; i < 3; ++i) p2.push_back(p1[i] + (1 - p1[i]) * w2[i] / norm);
    const KinkSequence s{{vertex_point(c3.index("v000")), canonicalize(c3, Point{top, p1}),
                          canonicalize(c3, Point{top, p2}), vertex_point(c3.index("v111"))}};
    REQUIRE_FALSE(check_kinks(c3, s));
    const auto path = kinks_to_path(c3, s);
    CHECK(path_to_kinks(c3, path) == s);
    CHECK(linearize(c3, path) == path);
  }
}
