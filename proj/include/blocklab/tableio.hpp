#pragma once

#include <map>
#include <string>

#include "blocklab/chartab.hpp"
#include "blocklab/intmatrix.hpp"

namespace blocklab {

// textual JSON character-table format; see README for the schema
TablePtr parse_character_table(const std::string& json_text);
TablePtr read_character_table(const std::string& path);
std::string serialize_character_table(const TableData& t);

// read-only directory of fixture files
class FixtureBundle {
 public:
  explicit FixtureBundle(std::string dir) : dir_(std::move(dir)) {}
  const std::string& dir() const { return dir_; }

  TablePtr table(const std::string& name) const;       // <name>.ct.json
  PermGroup group(const std::string& name) const;      // <name>.pg
  std::string text(const std::string& filename) const;

 private:
  std::string dir_;
  mutable std::map<std::string, TablePtr> table_cache_;
};

// resolve the fixture directory: explicit argument, else $BLOCKLAB_FIXTURES,
// else ./fixtures
std::string default_fixture_dir(const std::string& cli_arg = "");

}  // namespace blocklab
