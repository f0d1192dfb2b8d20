#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blocklab/cyclotomic.hpp"
#include "blocklab/gfq.hpp"
#include "blocklab/permgroup.hpp"

namespace blocklab {

struct ClassInfo {
  std::string name;
  Int size;
  long element_order = 1;
  int inverse = 0;
  std::map<long, int> powermaps;
  std::optional<Perm> rep;  // explicit representative, when the fixture has one
};

struct TableData {
  std::string name;
  Int order;
  std::vector<ClassInfo> classes;
  std::vector<std::string> irr_names;
  std::vector<std::vector<Cyclotomic>> irr_values;
  std::map<std::string, std::vector<int>> fusions;  // target table name -> class map

  long identity_class() const;
  int irr_index(const std::string& name) const;
};

using TablePtr = std::shared_ptr<const TableData>;

// runs the table invariants; throws InvariantFailure naming the failed check
void validate_table(const TableData& t);

class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(TablePtr table, std::vector<Cyclotomic> values);

  const TablePtr& table() const { return table_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& at(long c) const { return values_[c]; }
  Cyclotomic degree() const;

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction scaled(const Rat& r) const;
  bool operator==(const ClassFunction& o) const;
  bool is_zero() const;

 private:
  TablePtr table_;
  std::vector<Cyclotomic> values_;
};

ClassFunction irreducible(const TablePtr& t, long i);
ClassFunction trivial_character(const TablePtr& t);

enum class PairingMode { Full, PRegular };

// (1/|G|) sum_C |C| a(C) b(C^-1); PRegular restricts to classes of order
// coprime to p; the result must be rational
Rat inner_product(const ClassFunction& a, const ClassFunction& b, PairingMode mode,
                  long p = 0);

// pointwise product
ClassFunction tensor_character(const ClassFunction& a, const ClassFunction& b);

struct Block {
  long p = 0;
  std::vector<int> members;  // indices into irr
  long defect = 0;
  std::string label;
};

// central-character congruence partition; defect via degree valuations
std::vector<Block> block_partition(const TablePtr& t, long p);

long defect_of_block(const TablePtr& t, const Block& b);

// sum over chi in the block of <psi, chi> chi
ClassFunction block_projection(const ClassFunction& psi, const Block& b);

// standard induction along an explicit fusion map (H-class -> G-class)
ClassFunction induce_character(const ClassFunction& psi, const std::vector<int>& fusion,
                               const TablePtr& target);

struct VertexDescriptor {
  std::vector<int> classes;  // p-element classes meeting the vertex
  std::string label;
};

using VertexDictionary = std::map<std::set<std::string>, std::string>;

// for the character of a trivial-source lift: the vertex meets exactly the
// p-element classes where the character does not vanish
VertexDescriptor vertex_from_character_values(const ClassFunction& chi, long p,
                                              const VertexDictionary& dict);

// raw variant for fixture data that carries no full table: (class name,
// element order, value) triples
VertexDescriptor vertex_from_values(const std::vector<std::string>& class_names,
                                    const std::vector<long>& element_orders,
                                    const std::vector<Int>& values, long p,
                                    const VertexDictionary& dict);

// survivors d of index * unit * d = dim_global (mod modulus)
std::vector<Int> green_dimension_congruence(const Int& index, const Int& dim_local_unit,
                                            const std::vector<Int>& d_candidates,
                                            const Int& dim_global, const Int& modulus);

// a permutation group tied to its character table through the explicit class
// representatives carried by the fixture; verifies sizes, orders and power
// maps against the group on construction
class ClassifiedGroup {
 public:
  ClassifiedGroup(PermGroup g, TablePtr t);

  const PermGroup& group() const { return group_; }
  const TablePtr& table() const { return table_; }

  int class_of(const Perm& g) const;

  // character of a coset-action permutation module: fixed points of each
  // class representative under the action generated by action_gens (one
  // image permutation per group generator)
  ClassFunction permutation_character(const std::vector<Perm>& action_gens) const;

  // induction of the trivial or sign character from a subgroup, summed
  // directly over the subgroup's elements
  ClassFunction induced_linear(const PermGroup& h, bool sign_character) const;

  // evaluate the action homomorphism at g (a word in the group generators)
  Perm action_image(const std::vector<Perm>& action_gens, const Perm& g) const;

 private:
  PermGroup group_;
  TablePtr table_;
  std::unordered_map<std::string, int> class_of_;
};

}  // namespace blocklab
