#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blocklab/basicset.hpp"
#include "blocklab/tableio.hpp"

namespace blocklab {

struct ScriptStep {
  std::string op;                  // init, table, bs, ps, witness, flag, eliminate,
                                   // substitute, forced, refine, checkpoint, enumerate
  std::vector<std::string> args;
  long line = 0;
  bool engine_step() const {
    return op == "flag" || op == "eliminate" || op == "substitute" || op == "forced" ||
           op == "refine" || op == "enumerate";
  }
};

struct ScriptPlan {
  std::vector<ScriptStep> steps;
  long engine_step_count() const;
};

// parse and shape-check a refinement script; when the script is abstract
// (starts with init <fixture>), indices are validated against the fixture
ScriptPlan load_script(const std::string& text, const FixtureBundle& fixtures);

// the abstract fixture behind an init line
struct AbstractFixture {
  std::vector<std::string> irr_names, bs_names, ps_names;
  std::vector<Int> degrees;
  IntMatrix u, mhat;
  std::map<std::string, Witness> witnesses;
  // expected checkpoints: label -> (U, bs flags, ps flags)
  struct Expected {
    IntMatrix u;
    std::vector<int> bs_flags, ps_flags;
  };
  std::map<std::string, Expected> expected;
  std::vector<IntMatrix> expected_candidates;
};

AbstractFixture load_abstract_fixture(const FixtureBundle& fixtures, const std::string& name);

struct ReplayResult {
  BasicSetContext ctx;
  std::vector<DecompositionCandidate> candidates;
  bool enumerated = false;
};

// execute an abstract script (init ... enumerate)
ReplayResult run_abstract_script(const ScriptPlan& plan, const FixtureBundle& fixtures,
                                 const EnumerationOptions& opt_overrides = {});

Witness parse_witness_spec(const std::string& spec, const std::map<std::string, Witness>& named,
                           long l);

std::vector<Int> parse_int_list(const std::string& csv);

}  // namespace blocklab
