#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "blocklab/basicset.hpp"
#include "blocklab/script.hpp"
#include "blocklab/tableio.hpp"

using namespace blocklab;

namespace {

FixtureBundle fixtures() { return FixtureBundle(default_fixture_dir()); }

ReplayResult replay_co1(const EnumerationOptions& opts = {}) {
  auto fx = fixtures();
  auto plan = load_script(fx.text("co1_replay.bst"), fx);
  return run_abstract_script(plan, fx, opts);
}

const ProofStep& checkpoint_step(const BasicSetContext& ctx, const std::string& label) {
  for (const auto& s : ctx.log())
    if (s.checkpoint == label) return s;
  throw Error("no checkpoint " + label);
}

}  // namespace

TEST_CASE("conway fixture context loads with the printed pairing table") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto ctx = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                            afx.mhat);
  CHECK(ctx.U() == afx.u);
  CHECK(is_unimodular(ctx.U()));
  // unit rows/columns are flagged on load: phi1, phi3 rows and the Phi1 column
  CHECK(ctx.bs_flag_list() == std::vector<int>{0, 2});
  CHECK(ctx.ps_flag_list() == std::vector<int>{0});
}

TEST_CASE("a trivial one-element context") {
  auto ctx = BasicSetContext::make_abstract({"chi"}, {"b1"}, {"P1"}, IntMatrix::identity(1),
                                            IntMatrix::identity(1));
  CHECK(ctx.bs_irreducible(0));
  CHECK(ctx.ps_indecomposable(0));
  auto cands = ctx.enumerate_decomposition_matrices();
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].D == IntMatrix::identity(1));
}

TEST_CASE("non-unimodular or negative input is rejected") {
  auto bad = IntMatrix::from_rows({{2, 0}, {0, 3}});
  CHECK_THROWS_AS(BasicSetContext::make_abstract({"a", "b"}, {"b1", "b2"}, {"P1", "P2"}, bad,
                                                 IntMatrix(2, 2)),
                  NotABasicSet);
  auto neg = IntMatrix::from_rows({{1, 0}, {-1, 1}});
  CHECK_THROWS_AS(BasicSetContext::make_abstract({"a", "b"}, {"b1", "b2"}, {"P1", "P2"}, neg,
                                                 IntMatrix(2, 2)),
                  InvariantViolated);
}

TEST_CASE("unit certificates reject non-unit targets") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto ctx = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                            afx.mhat);
  CHECK_THROWS_AS(ctx.cert_unit_column_indecomposable(4), NotUnitColumn);
  CHECK_THROWS_AS(ctx.cert_unit_row_irreducible(3), NotUnitColumn);
  ctx.cert_unit_column_indecomposable(0);
  CHECK(ctx.ps_indecomposable(0));
}

TEST_CASE("elimination certificates: the printed witness products") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto ctx = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                            afx.mhat);
  ctx.cert_irreducible_by_elimination(1, {{Int(1), 0, 0, 0, 0}}, afx.witnesses.at("W1"));
  CHECK(ctx.bs_irreducible(1));
  ctx.cert_irreducible_by_elimination(
      3, {{0, Int(1), 0, 0, 0}, {Int(1), 0, 0, 0, 0}}, afx.witnesses.at("W2"));
  CHECK(ctx.bs_irreducible(3));
  auto ctx2 = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                             afx.mhat);
  Witness pos{"allpos", true, {Int(1), Int(1), Int(1), Int(1), Int(1)}};
  CHECK_THROWS_AS(
      ctx2.cert_irreducible_by_elimination(1, {{Int(1), 0, 0, 0, 0}}, pos),
      CaseNotEliminated);
}

TEST_CASE("identity substitution leaves the context unchanged") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto ctx = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                            afx.mhat);
  auto before = ctx.U();
  ctx.apply_basis_substitution(true, 2, {0, 0, 0, 0, 0});
  CHECK(ctx.U() == before);
}

TEST_CASE("invalid substitution rolls back") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto ctx = BasicSetContext::make_abstract(afx.irr_names, afx.bs_names, afx.ps_names, afx.u,
                                            afx.mhat);
  auto before = ctx.U();
  // subtracting Phi5 from Phi3 sends U negative
  CHECK_THROWS_AS(ctx.apply_basis_substitution(true, 2, {0, 0, 0, 0, Int(-1)}),
                  InvariantViolated);
  CHECK(ctx.U() == before);
  CHECK(ctx.Mhat() == afx.mhat);
}

TEST_CASE("conway replay reproduces the three printed tables and flags") {
  auto fx = fixtures();
  auto afx = load_abstract_fixture(fx, "co1_sec2");
  auto plan = load_script(fx.text("co1_replay.bst"), fx);
  CHECK(plan.engine_step_count() == 9);
  CHECK(plan.steps.back().op == "enumerate");

  auto result = replay_co1();
  for (const char* label : {"sec21", "sec23", "sec24"}) {
    const auto& exp = afx.expected.at(label);
    const auto& step = checkpoint_step(result.ctx, label);
    CHECK(step.u_after == exp.u);
    CHECK(step.bs_flags == exp.bs_flags);
    CHECK(step.ps_flags == exp.ps_flags);
  }
  REQUIRE(result.enumerated);
  REQUIRE(result.candidates.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(result.candidates[i].D == afx.expected_candidates[i]);
}

TEST_CASE("certificate soundness holds in every candidate; bound is stable") {
  auto result = replay_co1();
  check_certificate_soundness(result.ctx, result.candidates);

  Int def(0);
  for (long r = 0; r < result.ctx.Mhat().rows(); ++r)
    for (long j = 0; j < result.ctx.Mhat().cols(); ++j)
      def = std::max(def, result.ctx.Mhat().at(r, j));
  EnumerationOptions wide;
  wide.entry_bound = def + 3;
  auto more = result.ctx.enumerate_decomposition_matrices(wide);
  REQUIRE(more.size() == result.candidates.size());
  for (size_t i = 0; i < more.size(); ++i) CHECK(more[i].D == result.candidates[i].D);
}

TEST_CASE("enumeration respects the node budget") {
  auto result = replay_co1();
  EnumerationOptions tight;
  tight.node_budget = 1;
  CHECK_THROWS_AS(result.ctx.enumerate_decomposition_matrices(tight), SearchBudgetExceeded);
}

TEST_CASE("determinism: two replays give identical logs and candidates") {
  auto a = replay_co1();
  auto b = replay_co1();
  CHECK(a.ctx.emit_proof_log() == b.ctx.emit_proof_log());
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].D == b.candidates[i].D);
    CHECK(a.candidates[i].T == b.candidates[i].T);
  }
}

TEST_CASE("emitted script replays to the identical final state") {
  auto fx = fixtures();
  auto result = replay_co1();
  std::string body = "init co1_sec2\n" + result.ctx.emit_script();
  auto plan = load_script(body, fx);
  auto again = run_abstract_script(plan, fx);
  CHECK(again.ctx.U() == result.ctx.U());
  CHECK(again.ctx.Mhat() == result.ctx.Mhat());
  CHECK(again.ctx.bs_flag_list() == result.ctx.bs_flag_list());
  CHECK(again.ctx.ps_flag_list() == result.ctx.ps_flag_list());
}

TEST_CASE("script loader rejects malformed plans") {
  auto fx = fixtures();
  CHECK_THROWS_AS(load_script("frobnicate 1 2 3\n", fx), UnknownOp);
  CHECK_THROWS_AS(load_script("init co1_sec2\nsubstitute ps 6 coeffs 0,0,0,0,0\n", fx),
                  ShapeMismatch);
  CHECK_THROWS_AS(load_script("init co1_sec2\nforced ps 2 witness nosuch\n", fx), UnknownOp);
  auto empty = load_script("# nothing here\n\n", fx);
  CHECK(empty.steps.empty());
  CHECK(empty.engine_step_count() == 0);
}

TEST_CASE("lemma 2.7 candidates match the alpha parametrization") {
  auto fx = fixtures();
  auto result = replay_co1();
  auto j = nlohmann::json::parse(fx.text("lemma27.json"));
  REQUIRE(result.candidates.size() == 3);
  const char* keys[3] = {"alpha0", "alpha1", "alpha2"};
  for (int a = 0; a < 3; ++a) {
    std::vector<std::vector<Int>> rows;
    for (const auto& r : j[keys[a]]) {
      std::vector<Int> row;
      for (const auto& v : r) row.emplace_back(v.get<long>());
      rows.push_back(row);
    }
    CHECK(result.candidates[a].D == IntMatrix::from_rows(rows));
  }
}
