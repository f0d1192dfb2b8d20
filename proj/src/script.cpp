#include "blocklab/script.hpp"

#include <sstream>

#include <json.hpp>

namespace blocklab {

using nlohmann::json;

long ScriptPlan::engine_step_count() const {
  long n = 0;
  for (const auto& s : steps)
    if (s.engine_step()) ++n;
  return n;
}

std::vector<Int> parse_int_list(const std::string& csv) {
  std::vector<Int> out;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (cur.empty()) throw ParseError("empty entry in integer list '" + csv + "'");
      out.emplace_back(cur);
      cur.clear();
    } else if (ch == '-' || (ch >= '0' && ch <= '9')) {
      cur.push_back(ch);
    } else {
      throw ParseError("bad character in integer list '" + csv + "'");
    }
  }
  return out;
}

Witness parse_witness_spec(const std::string& spec, const std::map<std::string, Witness>& named,
                           long l) {
  if (spec.rfind("inline:", 0) == 0) {
    std::string rest = spec.substr(7);
    bool ps;
    if (rest.rfind("ps:", 0) == 0)
      ps = true;
    else if (rest.rfind("bs:", 0) == 0)
      ps = false;
    else
      throw ParseError("inline witness must start with ps: or bs:");
    Witness w;
    w.name = "inline";
    w.projective = ps;
    w.coords = parse_int_list(rest.substr(3));
    if (static_cast<long>(w.coords.size()) != l)
      throw ShapeMismatch("inline witness length " + std::to_string(w.coords.size()) +
                          ", basic set has " + std::to_string(l));
    return w;
  }
  auto it = named.find(spec);
  if (it == named.end()) throw UnknownOp("unknown witness '" + spec + "'");
  return it->second;
}

namespace {

IntMatrix json_matrix(const json& j) {
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    std::vector<Int> row;
    for (const auto& v : r) row.emplace_back(v.get<long>());
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

}  // namespace

AbstractFixture load_abstract_fixture(const FixtureBundle& fixtures, const std::string& name) {
  json j;
  try {
    j = json::parse(fixtures.text(name + ".json"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("fixture json: ") + e.what());
  }
  AbstractFixture fx;
  fx.irr_names = j.at("irr").get<std::vector<std::string>>();
  fx.bs_names = j.at("bs").get<std::vector<std::string>>();
  fx.ps_names = j.at("ps").get<std::vector<std::string>>();
  if (j.contains("degrees"))
    for (const auto& d : j["degrees"]) fx.degrees.emplace_back(d.get<std::string>());
  fx.u = json_matrix(j.at("U"));
  fx.mhat = json_matrix(j.at("Mhat"));
  if (j.contains("witnesses")) {
    for (auto it = j["witnesses"].begin(); it != j["witnesses"].end(); ++it) {
      Witness w;
      w.name = it.key();
      w.projective = it.value().at("side").get<std::string>() == "ps";
      for (const auto& v : it.value().at("coords")) w.coords.emplace_back(v.get<long>());
      fx.witnesses[w.name] = w;
    }
  }
  if (j.contains("expected")) {
    const auto& e = j["expected"];
    for (auto it = e.begin(); it != e.end(); ++it) {
      if (it.key() == "candidates") {
        for (const auto& c : it.value()) fx.expected_candidates.push_back(json_matrix(c));
      } else {
        AbstractFixture::Expected exp;
        exp.u = json_matrix(it.value().at("U"));
        exp.bs_flags = it.value().at("bs_flags").get<std::vector<int>>();
        exp.ps_flags = it.value().at("ps_flags").get<std::vector<int>>();
        fx.expected[it.key()] = std::move(exp);
      }
    }
  }
  return fx;
}

ScriptPlan load_script(const std::string& text, const FixtureBundle& fixtures) {
  ScriptPlan plan;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    ScriptStep step;
    if (!(ls >> step.op)) continue;
    std::string tok;
    while (ls >> tok) step.args.push_back(tok);
    step.line = lineno;
    static const std::vector<std::string> ops{"init",   "table",      "bs",     "ps",
                                              "witness", "flag",       "eliminate",
                                              "substitute", "forced", "refine",
                                              "checkpoint", "enumerate"};
    if (std::find(ops.begin(), ops.end(), step.op) == ops.end())
      throw UnknownOp("line " + std::to_string(lineno) + ": '" + step.op + "'");
    plan.steps.push_back(std::move(step));
  }

  // shape validation for abstract plans
  long l = -1;
  std::map<std::string, Witness> named;
  for (const auto& s : plan.steps) {
    if (s.op == "init") {
      if (s.args.size() != 1) throw ShapeMismatch("init takes the fixture name");
      auto fx = load_abstract_fixture(fixtures, s.args[0]);
      l = fx.u.cols();
      named = fx.witnesses;
    }
    if (l < 0) continue;  // concrete scripts are validated by their pipeline
    auto need_index = [&](const std::string& a, const char* what) {
      long v = std::stol(a);
      if (v < 1 || v > l)
        throw ShapeMismatch(std::string(what) + " index " + a + " outside 1.." +
                            std::to_string(l));
      return v;
    };
    if (s.op == "flag") {
      if (s.args.size() != 2 || (s.args[0] != "row" && s.args[0] != "col"))
        throw ShapeMismatch("flag <row|col> <i>");
      need_index(s.args[1], "flag");
    } else if (s.op == "eliminate") {
      if (s.args.size() != 5 || s.args[1] != "witness" || s.args[3] != "cases")
        throw ShapeMismatch("eliminate <i> witness <spec> cases <c|c|...>");
      need_index(s.args[0], "eliminate");
      parse_witness_spec(s.args[2], named, l);
      std::istringstream cs(s.args[4]);
      std::string one;
      while (std::getline(cs, one, '|')) {
        auto v = parse_int_list(one);
        if (static_cast<long>(v.size()) != l) throw ShapeMismatch("case length");
      }
    } else if (s.op == "substitute") {
      if (s.args.size() != 4 || (s.args[0] != "ps" && s.args[0] != "bs") ||
          s.args[2] != "coeffs")
        throw ShapeMismatch("substitute <ps|bs> <j> coeffs <c,...>");
      need_index(s.args[1], "substitute");
      auto v = parse_int_list(s.args[3]);
      if (static_cast<long>(v.size()) != l) throw ShapeMismatch("coefficient length");
    } else if (s.op == "forced") {
      if (s.args.size() != 4 || (s.args[0] != "ps" && s.args[0] != "bs") ||
          s.args[2] != "witness")
        throw ShapeMismatch("forced <ps|bs> <t> witness <spec>");
      need_index(s.args[1], "forced");
      parse_witness_spec(s.args[3], named, l);
    }
  }
  return plan;
}

ReplayResult run_abstract_script(const ScriptPlan& plan, const FixtureBundle& fixtures,
                                 const EnumerationOptions& opt_overrides) {
  std::optional<BasicSetContext> ctx;
  std::map<std::string, Witness> named;
  std::vector<Int> degrees;
  ReplayResult result{BasicSetContext::make_abstract({"x"}, {"b"}, {"P"},
                                                     IntMatrix::identity(1),
                                                     IntMatrix::identity(1)),
                      {},
                      false};
  for (const auto& s : plan.steps) {
    if (s.op == "init") {
      auto fx = load_abstract_fixture(fixtures, s.args[0]);
      ctx = BasicSetContext::make_abstract(fx.irr_names, fx.bs_names, fx.ps_names, fx.u,
                                           fx.mhat);
      named = fx.witnesses;
      degrees = fx.degrees;
      continue;
    }
    if (!ctx) throw UnknownOp("script step before init");
    long l = ctx->l();
    if (s.op == "flag") {
      long idx = std::stol(s.args[1]) - 1;
      if (s.args[0] == "row")
        ctx->cert_unit_row_irreducible(idx);
      else
        ctx->cert_unit_column_indecomposable(idx);
    } else if (s.op == "eliminate") {
      long i = std::stol(s.args[0]) - 1;
      Witness w = parse_witness_spec(s.args[2], named, l);
      std::vector<std::vector<Int>> cases;
      std::istringstream cs(s.args[4]);
      std::string one;
      while (std::getline(cs, one, '|')) cases.push_back(parse_int_list(one));
      ctx->cert_irreducible_by_elimination(i, cases, w);
    } else if (s.op == "substitute") {
      long j = std::stol(s.args[1]) - 1;
      ctx->apply_basis_substitution(s.args[0] == "ps", j, parse_int_list(s.args[3]));
    } else if (s.op == "forced") {
      long t = std::stol(s.args[1]) - 1;
      Witness w = parse_witness_spec(s.args[3], named, l);
      ctx->cert_forced_content(s.args[0] == "ps", t, w);
    } else if (s.op == "checkpoint") {
      if (s.args.size() != 1) throw ShapeMismatch("checkpoint <label>");
      ctx->checkpoint(s.args[0]);
    } else if (s.op == "refine") {
      // abstract refinement: unit flags are automatic; nothing further
      // without witnesses, so this is a no-op here
    } else if (s.op == "enumerate") {
      EnumerationOptions opts = opt_overrides;
      for (size_t a = 0; a + 1 < s.args.size(); a += 2) {
        if (s.args[a] == "bound")
          opts.entry_bound = Int(s.args[a + 1]);
        else if (s.args[a] == "dims")
          opts.simple_dims = parse_int_list(s.args[a + 1]);
        else
          throw UnknownOp("enumerate option " + s.args[a]);
      }
      if (opts.simple_dims && opts.degrees.empty()) opts.degrees = degrees;
      result.candidates = ctx->enumerate_decomposition_matrices(opts);
      result.enumerated = true;
    } else {
      throw UnknownOp("'" + s.op + "' is not valid in an abstract script");
    }
  }
  if (!ctx) throw UnknownOp("script has no init");
  result.ctx = std::move(*ctx);
  return result;
}

}  // namespace blocklab
