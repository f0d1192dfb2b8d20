#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "blocklab/chartab.hpp"
#include "blocklab/tableio.hpp"

using namespace blocklab;

namespace {

FixtureBundle fixtures() { return FixtureBundle(default_fixture_dir()); }

ClassFunction irr_named(const TablePtr& t, const std::string& nm) {
  return irreducible(t, t->irr_index(nm));
}

VertexDictionary s6_vertex_dict() {
  return {{{"3A", "3B"}, "P"}, {{"3A"}, "Q"}, {{"3B"}, "R"}, {{}, "1"}};
}

}  // namespace

TEST_CASE("inner products: orthonormality and the 3-regular restriction") {
  auto t = fixtures().table("s6");
  auto triv = irr_named(t, "chi1");
  CHECK(inner_product(triv, triv, PairingMode::Full) == 1);
  CHECK(inner_product(irr_named(t, "chi5"), irr_named(t, "chi10"), PairingMode::Full) == 0);

  // independent summation oracle for the restricted pairing: walk the
  // 3-regular classes directly off the fixture data
  auto chi16 = irr_named(t, "chi16");
  Rat oracle(0);
  for (size_t c = 0; c < t->classes.size(); ++c) {
    if (t->classes[c].element_order % 3 == 0) continue;
    Rat term = Rat(t->classes[c].size) * chi16.at(c).rational_value() *
               chi16.at(t->classes[c].inverse).rational_value();
    oracle += term;
  }
  oracle /= Rat(t->order);
  CHECK(inner_product(chi16, chi16, PairingMode::PRegular, 3) == oracle);
  CHECK(oracle == Rat(5, 9));  // frozen from the oracle

  // seven 3-regular classes in the fixture
  long reg = 0;
  for (const auto& c : t->classes)
    if (c.element_order % 3 != 0) ++reg;
  CHECK(reg == 7);
}

TEST_CASE("full pairing splits into regular and singular parts") {
  auto t = fixtures().table("s6");
  for (const char* a : {"chi5", "chi16", "chi10m"}) {
    for (const char* b : {"chi1", "chi5p", "chi9a"}) {
      auto ca = irr_named(t, a), cb = irr_named(t, b);
      Rat full = inner_product(ca, cb, PairingMode::Full);
      Rat reg = inner_product(ca, cb, PairingMode::PRegular, 3);
      Rat sing(0);
      for (size_t c = 0; c < t->classes.size(); ++c) {
        if (t->classes[c].element_order % 3 != 0) continue;
        sing += Rat(t->classes[c].size) *
                (ca.at(c) * cb.at(t->classes[c].inverse)).rational_value();
      }
      sing /= Rat(t->order);
      CHECK(full == reg + sing);
    }
  }
}

TEST_CASE("block partition of S6 at p = 3") {
  auto t = fixtures().table("s6");
  auto blocks = block_partition(t, 3);
  REQUIRE(blocks.size() == 3);
  const Block* principal = nullptr;
  long defect0 = 0;
  for (const auto& b : blocks) {
    if (b.members.size() == 9) principal = &b;
    if (b.defect == 0) ++defect0;
  }
  REQUIRE(principal != nullptr);
  CHECK(principal->defect == 2);
  CHECK(defect0 == 2);
  std::set<std::string> names;
  for (int i : principal->members) names.insert(t->irr_names[i]);
  std::set<std::string> expected{"chi1", "chi1m", "chi5",  "chi5m", "chi5p",
                                 "chi5pm", "chi10", "chi10m", "chi16"};
  CHECK(names == expected);
  CHECK(defect_of_block(t, *principal) == 2);
}

TEST_CASE("coprime prime gives singleton defect-zero blocks") {
  auto t = fixtures().table("s6");
  auto b7 = block_partition(t, 7);
  CHECK(b7.size() == 11);
  for (const auto& b : b7) {
    CHECK(b.members.size() == 1);
    CHECK(b.defect == 0);
  }
}

TEST_CASE("block projection") {
  auto t = fixtures().table("s6");
  auto blocks = block_partition(t, 3);
  const Block* principal = nullptr;
  for (const auto& b : blocks)
    if (b.members.size() == 9) principal = &b;
  REQUIRE(principal);

  auto chi9a = irr_named(t, "chi9a");
  CHECK(block_projection(chi9a, *principal).is_zero());

  auto psi = irr_named(t, "chi1") + irr_named(t, "chi5");
  CHECK(block_projection(psi, *principal) == psi);

  // projections over all blocks sum back to the input
  auto mix = irr_named(t, "chi5").scaled(Rat(2)) - irr_named(t, "chi9b") +
             irr_named(t, "chi16");
  ClassFunction acc(t, std::vector<Cyclotomic>(t->classes.size(), Cyclotomic(0)));
  for (const auto& b : blocks) acc = acc + block_projection(mix, b);
  CHECK(acc == mix);
}

TEST_CASE("induction: S5 along the fixture fusion against the coset-action oracle") {
  auto fx = fixtures();
  auto t6 = fx.table("s6");
  auto t5 = fx.table("s5");
  auto fus = t5->fusions.at("S6");
  auto ind = induce_character(trivial_character(t5), fus, t6);
  CHECK(ind == irr_named(t6, "chi1") + irr_named(t6, "chi5"));

  // independent oracle: fixed points of the coset action computed in the
  // permutation groups, no fusion involved
  ClassifiedGroup cg(fx.group("s6"), t6);
  auto action = cg.group().coset_action(fx.group("s5"));
  CHECK(cg.permutation_character(action) == ind);
}

TEST_CASE("induction from the trivial subgroup gives the regular character") {
  auto fx = fixtures();
  auto t6 = fx.table("s6");
  auto t1 = parse_character_table(R"({
    "name": "1", "order": "1",
    "classes": [{"name": "1A", "size": "1", "order": 1, "inverse": 0, "powermaps": {}}],
    "irreducibles": {"names": ["triv"], "values": [["1"]]},
    "fusions": {"S6": [0]}
  })");
  auto reg = induce_character(trivial_character(t1), t1->fusions.at("S6"), t6);
  CHECK(reg.degree() == Cyclotomic(720));
  for (size_t c = 1; c < t6->classes.size(); ++c) CHECK(reg.at(c).is_zero());
}

TEST_CASE("inductions from 3'-subgroups pair non-negatively with restrictions") {
  auto fx = fixtures();
  auto t6 = fx.table("s6");
  ClassifiedGroup cg(fx.group("s6"), t6);
  for (const char* sub : {"syl2", "d8", "c4", "c5", "f20", "c2a", "c2b", "c2c"}) {
    auto h = fx.group(sub);
    CHECK(h.order() % 3 != 0);
    for (bool sgn : {false, true}) {
      auto psi = cg.induced_linear(h, sgn);
      for (size_t i = 0; i < t6->irr_names.size(); ++i) {
        Rat pr = inner_product(irreducible(t6, i), psi, PairingMode::PRegular, 3);
        CHECK(pr >= 0);
      }
    }
  }
}

TEST_CASE("tensor products") {
  auto t = fixtures().table("s6");
  auto chi5 = irr_named(t, "chi5");
  CHECK(tensor_character(chi5, irr_named(t, "chi1")) == chi5);
  CHECK(tensor_character(chi5, irr_named(t, "chi1m")) == irr_named(t, "chi5m"));

  // pointwise-product oracle
  auto a = irr_named(t, "chi10");
  auto b = irr_named(t, "chi5p");
  auto prod = tensor_character(a, b);
  for (size_t c = 0; c < t->classes.size(); ++c) CHECK(prod.at(c) == a.at(c) * b.at(c));

  // projective tensor anything stays non-negative against restrictions
  auto fx = fixtures();
  ClassifiedGroup cg(fx.group("s6"), t);
  auto proj = cg.induced_linear(fx.group("syl2"), false);
  auto twisted = tensor_character(proj, irr_named(t, "chi10m"));
  for (size_t i = 0; i < t->irr_names.size(); ++i)
    CHECK(inner_product(irreducible(t, i), twisted, PairingMode::PRegular, 3) >= 0);
}

TEST_CASE("vertex detection from character values") {
  auto t = fixtures().table("s6");
  auto dict = s6_vertex_dict();
  auto v1 = vertex_from_character_values(irr_named(t, "chi1"), 3, dict);
  CHECK(v1.label == "P");
  // chi1 + chi5: 3 on the 3-cycles, 0 on the fixed-point-free class
  auto v2 = vertex_from_character_values(irr_named(t, "chi1") + irr_named(t, "chi5"), 3, dict);
  CHECK(v2.label == "Q");
  CHECK_THROWS_AS(
      vertex_from_character_values(irr_named(t, "chi1") - irr_named(t, "chi5"), 3, dict),
      NotTrivialSourceEvidence);
}

TEST_CASE("lemma54 fixture: Conway block values on 3A/3B and the vertex of chi29") {
  auto fx = fixtures();
  auto j = nlohmann::json::parse(fx.text("lemma54.json"));
  std::vector<std::string> names;
  std::vector<long> orders;
  for (const auto& c : j["classes"]) {
    names.push_back(c["name"].get<std::string>());
    orders.push_back(c["order"].get<long>());
  }
  REQUIRE(names == std::vector<std::string>{"3A", "3B"});
  std::map<std::string, std::vector<long>> expected{
      {"chi29", {18954, 729}},    {"chi38", {-18954, 1458}}, {"chi51", {189540, 729}},
      {"chi55", {208494, -729}},  {"chi62", {18954, 729}},   {"chi80", {208494, -729}},
      {"chi85", {-189540, 1458}}, {"chi89", {189540, 729}},  {"chi91", {-208494, -1458}}};
  for (const auto& [nm, vals] : expected) {
    auto row = j["rows"][nm].get<std::vector<long>>();
    CHECK(row == vals);
  }
  VertexDictionary dict = s6_vertex_dict();
  auto row29 = j["rows"]["chi29"].get<std::vector<long>>();
  auto v = vertex_from_values(names, orders, {Int(row29[0]), Int(row29[1])}, 3, dict);
  CHECK(v.label == "P");
}

TEST_CASE("green correspondence dimension congruence") {
  CHECK(green_dimension_congruence(1, 100, {Int(1)}, 100, 81) == std::vector<Int>{Int(1)});
  // the Conway-block instance
  auto out = green_dimension_congruence(Int("17681664000"), 729, {Int(1), Int(2)},
                                        Int("2816856"), 6561);
  CHECK(out == std::vector<Int>{Int(1)});
  CHECK(Int("2816856") % 6561 == 2187);
  // the normalizer-index instance: index 10, unit 1, dim 1, modulus 3
  std::vector<Int> cands;
  for (long d = 1; d <= 12; ++d) cands.push_back(d);
  auto s6out = green_dimension_congruence(10, 1, cands, 1, 3);
  CHECK(s6out == std::vector<Int>{Int(1), Int(4), Int(7), Int(10)});
  CHECK_THROWS_AS(green_dimension_congruence(3, 3, {Int(1), Int(2)}, 1, 9), NoSurvivor);
}
