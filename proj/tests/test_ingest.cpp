#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "blocklab/chartab.hpp"
#include "blocklab/permgroup.hpp"
#include "blocklab/tableio.hpp"

using namespace blocklab;

namespace {
FixtureBundle fixtures() { return FixtureBundle(default_fixture_dir()); }
}

TEST_CASE("stabilizer chain orders") {
  auto fx = fixtures();
  auto s6 = fx.group("s6");
  CHECK(s6.order() == 720);
  auto p9 = fx.group("p9");
  CHECK(p9.order() == 9);
  CHECK(fx.group("q3").order() == 3);
  CHECK(fx.group("np").order() == 72);
  CHECK(fx.group("syl2").order() == 16);
  // membership
  CHECK(s6.contains(Perm::from_one_based({2, 1, 3, 4, 5, 6})));
  CHECK(p9.contains(Perm::from_one_based({2, 3, 1, 4, 5, 6})));
  CHECK_FALSE(p9.contains(Perm::from_one_based({2, 1, 3, 4, 5, 6})));
}

TEST_CASE("coset actions: degree, transitivity, stabilizer bookkeeping") {
  auto fx = fixtures();
  auto s6 = fx.group("s6");
  struct Case {
    const char* name;
    long degree;
  } cases[] = {{"p9", 80}, {"q3", 240}, {"r3", 240}, {"s5", 6}, {"np", 10}, {"s6", 1}};
  for (const auto& cs : cases) {
    auto h = fx.group(cs.name);
    auto action = s6.coset_action(h);
    REQUIRE(action.size() == s6.generators().size());
    long deg = action[0].degree();
    CHECK(deg == cs.degree);
    // index * |H| = |G|
    CHECK(h.order() * deg == s6.order());
    // transitivity: orbit of the trivial coset covers everything
    std::vector<char> seen(deg, 0);
    std::vector<int> frontier{0};
    seen[0] = 1;
    long count = 1;
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (const auto& a : action) {
        int y = a(x);
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          frontier.push_back(y);
        }
      }
    }
    CHECK(count == deg);
  }
}

TEST_CASE("coset action rejects non-subgroups") {
  auto fx = fixtures();
  auto p9 = fx.group("p9");
  auto s5 = fx.group("s5");  // s5 is not inside p9
  CHECK_THROWS_AS(p9.coset_action(s5), NotASubgroup);
}

TEST_CASE("minimal C2 table parses") {
  const char* text = R"({
    "name": "C2", "order": "2",
    "classes": [
      {"name": "1A", "size": "1", "order": 1, "inverse": 0, "powermaps": {"2": 0}},
      {"name": "2A", "size": "1", "order": 2, "inverse": 1, "powermaps": {"2": 0}}
    ],
    "irreducibles": {"names": ["triv", "sgn"], "values": [["1", "1"], ["1", "-1"]]},
    "fusions": {}
  })";
  auto t = parse_character_table(text);
  CHECK(t->classes.size() == 2);
  CHECK(t->irr_names.size() == 2);
  CHECK(t->classes[1].element_order == 2);
}

TEST_CASE("corrupted class size fails the size invariant") {
  const char* text = R"({
    "name": "C2", "order": "2",
    "classes": [
      {"name": "1A", "size": "1", "order": 1, "inverse": 0, "powermaps": {}},
      {"name": "2A", "size": "2", "order": 2, "inverse": 1, "powermaps": {}}
    ],
    "irreducibles": {"names": ["triv", "sgn"], "values": [["1", "1"], ["1", "-1"]]},
    "fusions": {}
  })";
  CHECK_THROWS_AS(parse_character_table(text), InvariantFailure);
}

TEST_CASE("S6 fixture table: 11 classes, 11 irreducibles, order 720") {
  auto fx = fixtures();
  auto t = fx.table("s6");
  CHECK(t->classes.size() == 11);
  CHECK(t->irr_names.size() == 11);
  CHECK(t->order == 720);
  // validation ran on load; orthogonality holds
}

TEST_CASE("classified group: fixture representatives match table data") {
  auto fx = fixtures();
  ClassifiedGroup cg(fx.group("s6"), fx.table("s6"));
  // spot checks
  CHECK(cg.class_of(Perm(6)) == 0);
  CHECK(cg.table()->classes[cg.class_of(Perm::from_one_based({2, 1, 3, 4, 5, 6}))].name == "2A");
  CHECK(cg.table()->classes[cg.class_of(Perm::from_one_based({2, 3, 1, 5, 6, 4}))].name == "3B");
}

TEST_CASE("serialize/parse round-trip is the identity on canonical files") {
  auto fx = fixtures();
  auto t = fx.table("s6");
  std::string once = serialize_character_table(*t);
  auto t2 = parse_character_table(once);
  CHECK(serialize_character_table(*t2) == once);
  auto t5 = fx.table("s5");
  std::string s5s = serialize_character_table(*t5);
  CHECK(serialize_character_table(*parse_character_table(s5s)) == s5s);
}
