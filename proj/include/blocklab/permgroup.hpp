#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "blocklab/base.hpp"

namespace blocklab {

// permutation on 0..degree-1, stored as image list
class Perm {
 public:
  Perm() = default;
  explicit Perm(long degree) : img_(degree) {
    for (long i = 0; i < degree; ++i) img_[i] = static_cast<int>(i);
  }
  explicit Perm(std::vector<int> images);
  // 1-based image list, the fixture file convention
  static Perm from_one_based(const std::vector<int>& images);

  long degree() const { return static_cast<long>(img_.size()); }
  int operator()(int p) const { return img_[p]; }
  const std::vector<int>& images() const { return img_; }

  Perm operator*(const Perm& o) const;  // apply *this first, then o
  Perm inverse() const;
  bool is_identity() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  long order() const;
  int sign() const;
  std::vector<long> cycle_type() const;  // descending
  std::string to_cycle_string() const;

 private:
  std::vector<int> img_;
};

// permutation group with a deterministic stabilizer chain
// (base points are the smallest moved points)
class PermGroup {
 public:
  PermGroup(long degree, std::vector<Perm> generators);

  static PermGroup read(const std::string& path);
  static PermGroup parse(const std::string& text);

  long degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const Int& order() const { return order_; }
  bool contains(const Perm& g) const;

  // all elements, breadth-first over the generators; budget guards runaways
  const std::vector<Perm>& elements(long budget = 2000000) const;

  // word in the generators for g, breadth-first-shortest; empty for identity
  std::vector<int> word_for(const Perm& g) const;

  // conjugacy class of rep inside this group (orbit under conjugation)
  std::vector<Perm> conjugacy_class(const Perm& rep) const;

  // action of this group's generators on the right cosets of h;
  // returns one permutation of degree [G:H] per generator
  std::vector<Perm> coset_action(const PermGroup& h) const;

 private:
  struct Level {
    int base = -1;
    std::vector<Perm> gens;
    std::map<int, Perm> transversal;  // point -> u with base^u = point
  };
  void build_chain();
  bool strip(const Perm& g, size_t from, Perm* residue) const;

  long degree_;
  std::vector<Perm> gens_;
  std::vector<Level> chain_;
  Int order_;
  mutable std::vector<Perm> elements_;                    // lazy
  mutable std::unordered_map<std::string, int> elt_index_;  // lazy, keyed by image bytes
  mutable std::vector<std::vector<int>> words_;           // lazy, parallel to elements_
};

std::string perm_key(const Perm& g);

}  // namespace blocklab
