#include "blocklab/tableio.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace blocklab {

using nlohmann::json;

TablePtr parse_character_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("character table json: ") + e.what());
  }
  auto t = std::make_shared<TableData>();
  try {
    t->name = j.at("name").get<std::string>();
    t->order = Int(j.at("order").get<std::string>());
    for (const auto& jc : j.at("classes")) {
      ClassInfo c;
      c.name = jc.at("name").get<std::string>();
      c.size = Int(jc.at("size").get<std::string>());
      c.element_order = jc.at("order").get<long>();
      c.inverse = jc.at("inverse").get<int>();
      if (jc.contains("powermaps"))
        for (auto it = jc["powermaps"].begin(); it != jc["powermaps"].end(); ++it)
          c.powermaps[std::stol(it.key())] = it.value().get<int>();
      if (jc.contains("rep") && !jc["rep"].is_null())
        c.rep = Perm::from_one_based(jc["rep"].get<std::vector<int>>());
      t->classes.push_back(std::move(c));
    }
    const auto& irr = j.at("irreducibles");
    t->irr_names = irr.at("names").get<std::vector<std::string>>();
    for (const auto& row : irr.at("values")) {
      std::vector<Cyclotomic> vals;
      for (const auto& cell : row) vals.push_back(Cyclotomic::parse(cell.get<std::string>()));
      t->irr_values.push_back(std::move(vals));
    }
    if (j.contains("fusions"))
      for (auto it = j["fusions"].begin(); it != j["fusions"].end(); ++it)
        t->fusions[it.key()] = it.value().get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("character table fields: ") + e.what());
  }
  validate_table(*t);
  return t;
}

TablePtr read_character_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_character_table(ss.str());
}

std::string serialize_character_table(const TableData& t) {
  json j;
  j["name"] = t.name;
  j["order"] = t.order.get_str();
  j["classes"] = json::array();
  for (const auto& c : t.classes) {
    json jc;
    jc["name"] = c.name;
    jc["size"] = c.size.get_str();
    jc["order"] = c.element_order;
    jc["inverse"] = c.inverse;
    json pm = json::object();
    for (const auto& [p, img] : c.powermaps) pm[std::to_string(p)] = img;
    jc["powermaps"] = pm;
    if (c.rep) {
      std::vector<int> one_based;
      for (int v : c.rep->images()) one_based.push_back(v + 1);
      jc["rep"] = one_based;
    } else {
      jc["rep"] = nullptr;
    }
    j["classes"].push_back(jc);
  }
  j["irreducibles"]["names"] = t.irr_names;
  json vals = json::array();
  for (const auto& row : t.irr_values) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(v.to_string());
    vals.push_back(jr);
  }
  j["irreducibles"]["values"] = vals;
  json fus = json::object();
  for (const auto& [nm, map] : t.fusions) fus[nm] = map;
  j["fusions"] = fus;
  return j.dump(1);
}

TablePtr FixtureBundle::table(const std::string& name) const {
  auto it = table_cache_.find(name);
  if (it != table_cache_.end()) return it->second;
  TablePtr t = read_character_table(dir_ + "/" + name + ".ct.json");
  table_cache_[name] = t;
  return t;
}

PermGroup FixtureBundle::group(const std::string& name) const {
  return PermGroup::read(dir_ + "/" + name + ".pg");
}

std::string FixtureBundle::text(const std::string& filename) const {
  std::ifstream in(dir_ + "/" + filename);
  if (!in) throw ParseError("cannot open fixture " + dir_ + "/" + filename);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_fixture_dir(const std::string& cli_arg) {
  if (!cli_arg.empty()) return cli_arg;
  if (const char* env = std::getenv("BLOCKLAB_FIXTURES")) return env;
  return "fixtures";
}

}  // namespace blocklab
