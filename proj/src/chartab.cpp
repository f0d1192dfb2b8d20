#include "blocklab/chartab.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace blocklab {

long TableData::identity_class() const {
  for (size_t c = 0; c < classes.size(); ++c)
    if (classes[c].element_order == 1) return static_cast<long>(c);
  throw InvariantFailure("table has no identity class");
}

int TableData::irr_index(const std::string& nm) const {
  for (size_t i = 0; i < irr_names.size(); ++i)
    if (irr_names[i] == nm) return static_cast<int>(i);
  throw Error("no irreducible named " + nm + " in table " + name);
}

void validate_table(const TableData& t) {
  Int total(0);
  for (const auto& c : t.classes) total += c.size;
  if (total != t.order)
    throw InvariantFailure("class sizes sum to " + total.get_str() + ", order is " +
                           t.order.get_str());
  if (t.irr_names.size() != t.irr_values.size())
    throw InvariantFailure("irreducible name/value count mismatch");
  long id = t.identity_class();
  Int degsq(0);
  for (const auto& v : t.irr_values) {
    if (v.size() != t.classes.size()) throw InvariantFailure("irreducible value length");
    if (!v[id].is_integer() || v[id].integer_value() <= 0)
      throw InvariantFailure("character degree is not a positive integer");
    degsq += v[id].integer_value() * v[id].integer_value();
  }
  if (degsq != t.order)
    throw InvariantFailure("degree squares sum to " + degsq.get_str() + ", order is " +
                           t.order.get_str());
  for (size_t ci = 0; ci < t.classes.size(); ++ci) {
    const auto& c = t.classes[ci];
    if (c.inverse < 0 || c.inverse >= static_cast<int>(t.classes.size()))
      throw InvariantFailure("inverse class index out of range");
    if (t.classes[c.inverse].element_order != c.element_order)
      throw InvariantFailure("inverse class order mismatch");
    if (t.classes[c.inverse].inverse != static_cast<int>(ci))
      throw InvariantFailure("inverse map is not an involution");
    for (const auto& [p, img] : c.powermaps) {
      if (img < 0 || img >= static_cast<int>(t.classes.size()))
        throw InvariantFailure("power map image out of range");
      long g = std::gcd(c.element_order, p);
      if (t.classes[img].element_order != c.element_order / g)
        throw InvariantFailure("power map order mismatch at class " + c.name);
    }
  }
  // row orthogonality
  auto self = std::make_shared<TableData>(t);
  for (size_t i = 0; i < t.irr_values.size(); ++i)
    for (size_t j = i; j < t.irr_values.size(); ++j) {
      Rat ip = inner_product(irreducible(self, i), irreducible(self, j), PairingMode::Full);
      if (ip != (i == j ? 1 : 0))
        throw InvariantFailure("row orthogonality fails at (" + t.irr_names[i] + ", " +
                               t.irr_names[j] + ") = " + ip.get_str());
    }
}

ClassFunction::ClassFunction(TablePtr table, std::vector<Cyclotomic> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (values_.size() != table_->classes.size()) throw ShapeMismatch("class function length");
}

Cyclotomic ClassFunction::degree() const { return values_[table_->identity_class()]; }

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  if (table_ != o.table_) throw TableMismatch("class function sum");
  std::vector<Cyclotomic> v(values_.size());
  for (size_t c = 0; c < values_.size(); ++c) v[c] = values_[c] + o.values_[c];
  return ClassFunction(table_, std::move(v));
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  if (table_ != o.table_) throw TableMismatch("class function difference");
  std::vector<Cyclotomic> v(values_.size());
  for (size_t c = 0; c < values_.size(); ++c) v[c] = values_[c] - o.values_[c];
  return ClassFunction(table_, std::move(v));
}

ClassFunction ClassFunction::scaled(const Rat& r) const {
  std::vector<Cyclotomic> v(values_.size());
  for (size_t c = 0; c < values_.size(); ++c) v[c] = values_[c] * Cyclotomic(r);
  return ClassFunction(table_, std::move(v));
}

bool ClassFunction::operator==(const ClassFunction& o) const {
  return table_ == o.table_ && values_ == o.values_;
}

bool ClassFunction::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

ClassFunction irreducible(const TablePtr& t, long i) {
  return ClassFunction(t, t->irr_values.at(i));
}

ClassFunction trivial_character(const TablePtr& t) {
  return ClassFunction(t, std::vector<Cyclotomic>(t->classes.size(), Cyclotomic(1)));
}

Rat inner_product(const ClassFunction& a, const ClassFunction& b, PairingMode mode, long p) {
  if (a.table() != b.table()) throw TableMismatch("inner product");
  const auto& t = *a.table();
  if (mode == PairingMode::PRegular && p < 2) throw Error("p-regular mode needs p");
  Cyclotomic acc(0);
  for (size_t c = 0; c < t.classes.size(); ++c) {
    if (mode == PairingMode::PRegular && t.classes[c].element_order % p == 0) continue;
    acc += Cyclotomic(Int(t.classes[c].size)) * a.at(c) * b.at(t.classes[c].inverse);
  }
  Cyclotomic result = acc / Rat(t.order);
  if (!result.is_rational())
    throw Error("inner product is not rational: " + result.to_string());
  return result.rational_value();
}

ClassFunction tensor_character(const ClassFunction& a, const ClassFunction& b) {
  if (a.table() != b.table()) throw TableMismatch("tensor product");
  std::vector<Cyclotomic> v(a.values().size());
  for (size_t c = 0; c < v.size(); ++c) v[c] = a.at(c) * b.at(c);
  return ClassFunction(a.table(), std::move(v));
}

std::vector<Block> block_partition(const TablePtr& t, long p) {
  long k = static_cast<long>(t->irr_values.size());
  std::vector<Block> blocks;
  if (!mpz_divisible_ui_p(t->order.get_mpz_t(), p)) {
    for (long i = 0; i < k; ++i) {
      Block b;
      b.p = p;
      b.members = {static_cast<int>(i)};
      b.defect = 0;
      blocks.push_back(b);
    }
  } else {
    // central characters |C| chi(C) / chi(1), reduced mod the prime ideal
    std::vector<long> conductors;
    for (const auto& row : t->irr_values)
      for (const auto& v : row)
        if (v.conductor() > 1) conductors.push_back(v.conductor());
    conductors.push_back(1);
    std::sort(conductors.begin(), conductors.end());
    conductors.erase(std::unique(conductors.begin(), conductors.end()), conductors.end());
    PrimeIdealEmbedding emb(p, conductors);
    long nc = static_cast<long>(t->classes.size());
    std::vector<std::vector<long>> omega(k, std::vector<long>(nc));
    for (long i = 0; i < k; ++i) {
      Rat deg(t->irr_values[i][t->identity_class()].rational_value());
      for (long c = 0; c < nc; ++c) {
        Cyclotomic x = t->irr_values[i][c] * Cyclotomic(Rat(t->classes[c].size)) /
                       deg;
        omega[i][c] = emb.reduce(x);
      }
    }
    std::vector<int> assigned(k, -1);
    for (long i = 0; i < k; ++i) {
      if (assigned[i] >= 0) continue;
      Block b;
      b.p = p;
      for (long j = i; j < k; ++j)
        if (assigned[j] < 0 && omega[j] == omega[i]) {
          assigned[j] = static_cast<int>(blocks.size());
          b.members.push_back(static_cast<int>(j));
        }
      blocks.push_back(b);
    }
    for (auto& b : blocks) b.defect = defect_of_block(t, b);
  }
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    std::ostringstream os;
    os << "B" << bi << "(p=" << p << ",d=" << blocks[bi].defect << ")";
    blocks[bi].label = os.str();
  }
  return blocks;
}

long defect_of_block(const TablePtr& t, const Block& b) {
  long a = valuation(t->order, b.p);
  long mind = a;
  for (int i : b.members) {
    Int deg = t->irr_values[i][t->identity_class()].integer_value();
    long v = valuation(deg, b.p);
    mind = std::min(mind, v);
  }
  return a - mind;
}

ClassFunction block_projection(const ClassFunction& psi, const Block& b) {
  const TablePtr& t = psi.table();
  ClassFunction acc(t, std::vector<Cyclotomic>(t->classes.size(), Cyclotomic(0)));
  for (int i : b.members) {
    ClassFunction chi = irreducible(t, i);
    Rat m = inner_product(psi, chi, PairingMode::Full);
    if (m != 0) acc = acc + chi.scaled(m);
  }
  return acc;
}

ClassFunction induce_character(const ClassFunction& psi, const std::vector<int>& fusion,
                               const TablePtr& target) {
  const auto& h = *psi.table();
  if (fusion.size() != h.classes.size()) throw FusionIncomplete("fusion length");
  for (int f : fusion)
    if (f < 0 || f >= static_cast<int>(target->classes.size()))
      throw FusionIncomplete("fusion index out of range");
  for (size_t c = 0; c < h.classes.size(); ++c)
    if (target->classes[fusion[c]].element_order != h.classes[c].element_order)
      throw FusionIncomplete("fusion does not preserve element order at " + h.classes[c].name);
  std::vector<Cyclotomic> v(target->classes.size(), Cyclotomic(0));
  for (size_t c = 0; c < h.classes.size(); ++c) {
    // |C_G(g)| / |C_H(h)| = (|G|/|gclass|) * (|hclass|/|H|)
    Rat weight = Rat(target->order * h.classes[c].size,
                     h.order * target->classes[fusion[c]].size);
    weight.canonicalize();
    v[fusion[c]] += psi.at(c) * Cyclotomic(weight);
  }
  return ClassFunction(target, std::move(v));
}

namespace {

VertexDescriptor resolve_vertex(const std::vector<int>& classes,
                                const std::vector<std::string>& names,
                                const VertexDictionary& dict) {
  VertexDescriptor v;
  v.classes = classes;
  std::set<std::string> key;
  for (int c : classes) key.insert(names[c]);
  auto it = dict.find(key);
  if (it != dict.end()) {
    v.label = it->second;
  } else {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& nm : key) {
      if (!first) os << ",";
      os << nm;
      first = false;
    }
    os << "}";
    v.label = os.str();
  }
  return v;
}

}  // namespace

VertexDescriptor vertex_from_character_values(const ClassFunction& chi, long p,
                                              const VertexDictionary& dict) {
  const auto& t = *chi.table();
  std::vector<int> hit;
  std::vector<std::string> names;
  for (size_t c = 0; c < t.classes.size(); ++c) names.push_back(t.classes[c].name);
  for (size_t c = 0; c < t.classes.size(); ++c) {
    long o = t.classes[c].element_order;
    if (o == 1) continue;
    bool ppower = true;
    while (o > 1) {
      if (o % p != 0) {
        ppower = false;
        break;
      }
      o /= p;
    }
    if (!ppower) continue;
    const Cyclotomic& val = chi.at(c);
    if (!val.is_integer() || val.integer_value() < 0)
      throw NotTrivialSourceEvidence("value at p-element class " + t.classes[c].name + " is " +
                                     val.to_string());
    if (!val.is_zero()) hit.push_back(static_cast<int>(c));
  }
  return resolve_vertex(hit, names, dict);
}

VertexDescriptor vertex_from_values(const std::vector<std::string>& class_names,
                                    const std::vector<long>& element_orders,
                                    const std::vector<Int>& values, long p,
                                    const VertexDictionary& dict) {
  if (class_names.size() != values.size() || element_orders.size() != values.size())
    throw ShapeMismatch("vertex value triples");
  std::vector<int> hit;
  for (size_t c = 0; c < values.size(); ++c) {
    long o = element_orders[c];
    bool ppower = o > 1;
    while (o > 1) {
      if (o % p != 0) {
        ppower = false;
        break;
      }
      o /= p;
    }
    if (!ppower) continue;
    if (values[c] < 0)
      throw NotTrivialSourceEvidence("negative value at " + class_names[c]);
    if (values[c] != 0) hit.push_back(static_cast<int>(c));
  }
  return resolve_vertex(hit, class_names, dict);
}

std::vector<Int> green_dimension_congruence(const Int& index, const Int& dim_local_unit,
                                            const std::vector<Int>& d_candidates,
                                            const Int& dim_global, const Int& modulus) {
  if (index <= 0 || dim_local_unit <= 0 || dim_global <= 0 || modulus <= 0)
    throw Error("green congruence: inputs must be positive");
  std::vector<Int> out;
  for (const Int& d : d_candidates) {
    Int lhs = index * dim_local_unit * d % modulus;
    Int rhs = dim_global % modulus;
    if (lhs == rhs) out.push_back(d);
  }
  if (out.empty()) throw NoSurvivor("no candidate satisfies the dimension congruence");
  return out;
}

ClassifiedGroup::ClassifiedGroup(PermGroup g, TablePtr t)
    : group_(std::move(g)), table_(std::move(t)) {
  if (group_.order() != table_->order)
    throw InvariantFailure("group order " + group_.order().get_str() + " vs table order " +
                           table_->order.get_str());
  Int covered(0);
  for (size_t c = 0; c < table_->classes.size(); ++c) {
    const auto& ci = table_->classes[c];
    if (!ci.rep) throw InvariantFailure("class " + ci.name + " has no representative");
    if (ci.rep->order() != ci.element_order)
      throw InvariantFailure("representative order mismatch at " + ci.name);
    auto orbit = group_.conjugacy_class(*ci.rep);
    if (Int(static_cast<long>(orbit.size())) != ci.size)
      throw InvariantFailure("class size mismatch at " + ci.name + ": orbit " +
                             std::to_string(orbit.size()));
    for (const auto& e : orbit) {
      auto [it, fresh] = class_of_.emplace(perm_key(e), static_cast<int>(c));
      if (!fresh) throw InvariantFailure("classes overlap at " + ci.name);
    }
    covered += static_cast<long>(orbit.size());
  }
  if (covered != group_.order()) throw InvariantFailure("classes do not cover the group");
  for (size_t c = 0; c < table_->classes.size(); ++c) {
    const auto& ci = table_->classes[c];
    Perm p = *ci.rep;
    if (class_of(p.inverse()) != ci.inverse)
      throw InvariantFailure("inverse class mismatch at " + ci.name);
    for (const auto& [prime, img] : ci.powermaps) {
      Perm q(group_.degree());
      for (long i = 0; i < prime; ++i) q = q * p;
      if (class_of(q) != img) throw InvariantFailure("power map mismatch at " + ci.name);
    }
  }
}

int ClassifiedGroup::class_of(const Perm& g) const {
  auto it = class_of_.find(perm_key(g));
  if (it == class_of_.end()) throw NotASubgroup("element is not in the classified group");
  return it->second;
}

Perm ClassifiedGroup::action_image(const std::vector<Perm>& action_gens, const Perm& g) const {
  if (action_gens.size() != group_.generators().size())
    throw ShapeMismatch("one action image per group generator required");
  long deg = action_gens.empty() ? 1 : action_gens[0].degree();
  Perm img(deg);
  for (int gi : group_.word_for(g)) img = img * action_gens[gi];
  return img;
}

ClassFunction ClassifiedGroup::permutation_character(const std::vector<Perm>& action_gens) const {
  std::vector<Cyclotomic> vals(table_->classes.size());
  for (size_t c = 0; c < table_->classes.size(); ++c) {
    Perm img = action_image(action_gens, *table_->classes[c].rep);
    long fixed = 0;
    for (int i = 0; i < img.degree(); ++i)
      if (img(i) == i) ++fixed;
    vals[c] = Cyclotomic(fixed);
  }
  return ClassFunction(table_, std::move(vals));
}

ClassFunction ClassifiedGroup::induced_linear(const PermGroup& h, bool sign_character) const {
  for (const auto& g : h.generators())
    if (!group_.contains(g)) throw NotASubgroup("induction subgroup");
  std::vector<Rat> sums(table_->classes.size(), Rat(0));
  for (const auto& e : h.elements()) {
    int c = class_of(e);
    sums[c] += sign_character ? Rat(e.sign()) : Rat(1);
  }
  std::vector<Cyclotomic> vals(table_->classes.size());
  const Int& horder = h.order();
  for (size_t c = 0; c < table_->classes.size(); ++c) {
    // |C_G(g_c)| * (class sum) / |H|
    Rat cent(table_->order, table_->classes[c].size);
    cent.canonicalize();
    Rat v = cent * sums[c] / Rat(horder);
    v.canonicalize();
    vals[c] = Cyclotomic(v);
  }
  return ClassFunction(table_, std::move(vals));
}

}  // namespace blocklab
