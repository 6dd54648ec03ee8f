#include <doctest.h>

#include <fstream>
#include <iterator>
#include <map>

#include "hda/chains.hpp"
#include "hda/error.hpp"
#include "hda/nerve.hpp"
#include "hda/pv.hpp"

using namespace hda;

namespace {

std::map<int, std::size_t> counts(const CubeSet& x) {
  std::map<int, std::size_t> out;
  for (CubeIndex c = 0; c < x.size(); ++c) ++out[x.dim(c)];
  return out;
}

}  // namespace

TEST_CASE("parsing") {
  const auto prog = parse_pv("# two users\nsem a\nA = P(a).V(a)\nB = P(a).V(a)\n");
  CHECK(prog.semaphores == std::map<std::string, int>{{"a", 1}});
  REQUIRE(prog.processes.size() == 2);
  CHECK(prog.processes[1].name == "B");
  CHECK(prog.processes[0].actions ==
        std::vector<PVAction>{{PVAction::Kind::P, "a"}, {PVAction::Kind::V, "a"}});
  const auto unnamed = parse_pv("P(a).V(a); P(b).V(b)");
  CHECK(unnamed.processes[0].name == "p0");
  CHECK(unnamed.processes[1].name == "p1");
  CHECK(parse_pv("sem a = 1; P(a).V(a)").semaphores.at("a") == 1);
}

TEST_CASE("parse errors") {
  try {
    parse_pv("A = P(a).V(a)\nB = P(a).(a)\n");
    FAIL("expected a syntax error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
  }
  CHECK_THROWS_AS(parse_pv("A = P(a"), FormatError);
  CHECK_THROWS_AS(parse_pv("A = P(a).P(a).V(a)"), DomainError);
  CHECK_THROWS_AS(parse_pv("A = V(a)"), DomainError);
  CHECK_THROWS_AS(parse_pv("A = P(a)"), DomainError);
  CHECK_THROWS_AS(parse_pv("A = P(a).V(a); A = P(a).V(a)"), DomainError);
  CHECK_THROWS_AS(parse_pv("sem a = 2; P(a).V(a)"), DomainError);
}

TEST_CASE("hold intervals") {
  const auto prog = parse_pv("P(a).P(b).V(a).V(b)");
  const auto holds = hold_intervals(prog.processes[0]);
  REQUIRE(holds.at("a").size() == 1);
  CHECK(holds.at("a")[0].lower == 0);
  CHECK(holds.at("a")[0].upper == 3);
  CHECK(holds.at("b")[0].lower == 1);
  CHECK(holds.at("b")[0].upper == 4);
}

TEST_CASE("the mutex leaves the boundary of a square") {
  std::ifstream in(std::string(HDA_TEST_DATA) + "/mutex.pv");
  REQUIRE(in);
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto m = pv_to_euclidean(parse_pv(text));
  CHECK(counts(m.cubes) == std::map<int, std::size_t>{{0, 8}, {1, 8}});
  CHECK_FALSE(m.cubes.find("v1,1"));
  CHECK(m.cubes.find("v1,0"));
  CHECK(m.cubes.id(m.start) == "v0,0");
  CHECK(m.cubes.id(m.end) == "v2,2");
  CHECK(validate(m.cubes).empty());
  const auto poset = enumerate_chains(m.cubes, m.start, m.end, 4);
  CHECK(poset.chains.size() == 2);
  CHECK(betti(order_complex(poset)) == std::vector<std::size_t>{2});
}

TEST_CASE("small programs") {
  const auto single = pv_to_euclidean(parse_pv("P(a).V(a)"));
  CHECK(counts(single.cubes) == std::map<int, std::size_t>{{0, 3}, {1, 2}});
  CHECK(single.cubes.id(single.end) == "v2");
  const auto empty = pv_to_euclidean(parse_pv(""));
  CHECK(empty.cubes.size() == 1);
  CHECK(empty.cubes.id(empty.start) == "v");
  CHECK(empty.start == empty.end);
  // Independent resources do not interfere.
  const auto free = pv_to_euclidean(parse_pv("P(a).V(a); P(b).V(b)"));
  CHECK(counts(free.cubes) == std::map<int, std::size_t>{{0, 9}, {1, 12}, {2, 4}});
}

TEST_CASE("models are proper and non-self-linked") {
  for (const char* text : {"P(a).V(a); P(a).V(a); P(a).V(a)", "P(a).P(b).V(b).V(a); P(b).P(a).V(a).V(b)",
                           "P(a).V(a).P(b).V(b); P(b).V(b).P(a).V(a)", "P(a).V(a)"}) {
    const auto m = pv_to_euclidean(parse_pv(text));
    CHECK(validate(m.cubes).empty());
    CHECK(is_proper(m.cubes));
    CHECK(is_non_self_linked(m.cubes));
  }
}

TEST_CASE("three processes sharing one mutex") {
  const auto m = pv_to_euclidean(parse_pv("P(a).V(a); P(a).V(a); P(a).V(a)"));
  // No open cell may keep two processes inside their critical sections.
  for (CubeIndex c = 0; c < m.cubes.size(); ++c) CHECK(m.cubes.dim(c) <= 1);
  CHECK_FALSE(m.cubes.find("v1,1,0"));
  CHECK(m.cubes.find("v1,0,0"));
}
