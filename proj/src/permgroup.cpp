#include "blocklab/permgroup.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace blocklab {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw ParseError("not a permutation");
    seen[v] = 1;
  }
}

Perm Perm::from_one_based(const std::vector<int>& images) {
  std::vector<int> zero(images.size());
  for (size_t i = 0; i < images.size(); ++i) zero[i] = images[i] - 1;
  return Perm(std::move(zero));
}

Perm Perm::operator*(const Perm& o) const {
  if (degree() != o.degree()) throw DegreeMismatch("permutation product");
  std::vector<int> r(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r[i] = o.img_[img_[i]];
  Perm p;
  p.img_ = std::move(r);
  return p;
}

Perm Perm::inverse() const {
  std::vector<int> r(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r[img_[i]] = static_cast<int>(i);
  Perm p;
  p.img_ = std::move(r);
  return p;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

long Perm::order() const {
  long o = 1;
  for (long c : cycle_type()) o = std::lcm(o, c);
  return o;
}

int Perm::sign() const {
  int s = 1;
  for (long c : cycle_type())
    if (c % 2 == 0) s = -s;
  return s;
}

std::vector<long> Perm::cycle_type() const {
  std::vector<char> seen(img_.size(), 0);
  std::vector<long> t;
  for (size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = img_[j];
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::string Perm::to_cycle_string() const {
  std::vector<char> seen(img_.size(), 0);
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == static_cast<int>(i)) continue;
    os << "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) os << ",";
      os << (j + 1);
      first = false;
      j = img_[j];
    }
    os << ")";
    any = true;
  }
  if (!any) os << "()";
  return os.str();
}

std::string perm_key(const Perm& g) {
  std::string k;
  k.reserve(g.degree() * 2);
  for (int v : g.images()) {
    k.push_back(static_cast<char>(v & 0xff));
    k.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return k;
}

PermGroup::PermGroup(long degree, std::vector<Perm> generators)
    : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DegreeMismatch("generator degree");
  build_chain();
}

PermGroup PermGroup::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open permutation file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

PermGroup PermGroup::parse(const std::string& text) {
  std::istringstream in(text);
  long degree = 0;
  if (!(in >> degree) || degree <= 0) throw ParseError("bad degree line");
  std::vector<Perm> gens;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> img;
    int v;
    while (ls >> v) img.push_back(v);
    if (img.empty()) continue;
    if (static_cast<long>(img.size()) != degree)
      throw ParseError("generator line has wrong length");
    gens.push_back(Perm::from_one_based(img));
  }
  return PermGroup(degree, std::move(gens));
}

void PermGroup::build_chain() {
  chain_.clear();
  // plain recursive Schreier: close the orbit of the smallest moved point,
  // collect the Schreier generators of the stabilizer, recurse; generator
  // lists are deduplicated at each level, which keeps the tower small for
  // the moderate degrees this artifact works at
  std::vector<Perm> gens;
  std::unordered_map<std::string, char> seen;
  for (const auto& g : gens_) {
    if (g.is_identity()) continue;
    std::string k = perm_key(g);
    if (!seen.count(k)) {
      seen[k] = 1;
      gens.push_back(g);
    }
  }
  while (!gens.empty()) {
    Level lvl;
    lvl.base = degree_;
    for (const auto& g : gens)
      for (int p = 0; p < lvl.base; ++p)
        if (g(p) != p) {
          lvl.base = std::min(lvl.base, p);
          break;
        }
    lvl.gens = gens;
    lvl.transversal[lvl.base] = Perm(degree_);
    std::vector<int> frontier{lvl.base};
    while (!frontier.empty()) {
      int pt = frontier.back();
      frontier.pop_back();
      Perm u = lvl.transversal.at(pt);
      for (const auto& s : lvl.gens) {
        int q = s(pt);
        if (!lvl.transversal.count(q)) {
          lvl.transversal[q] = u * s;
          frontier.push_back(q);
        }
      }
    }
    std::vector<Perm> next;
    std::unordered_map<std::string, char> nseen;
    for (const auto& [pt, u] : lvl.transversal) {
      for (const auto& s : lvl.gens) {
        Perm sg = (u * s) * lvl.transversal.at(s(pt)).inverse();
        if (sg.is_identity()) continue;
        std::string k = perm_key(sg);
        if (!nseen.count(k)) {
          nseen[k] = 1;
          next.push_back(sg);
        }
      }
    }
    chain_.push_back(std::move(lvl));
    gens = std::move(next);
  }
  order_ = 1;
  for (const auto& lvl : chain_) order_ *= static_cast<long>(lvl.transversal.size());
}

// returns true if g sifts to identity through levels [from, end)
bool PermGroup::strip(const Perm& g, size_t from, Perm* residue) const {
  Perm h = g;
  for (size_t l = from; l < chain_.size(); ++l) {
    const Level& lvl = chain_[l];
    int image = h(lvl.base);
    auto it = lvl.transversal.find(image);
    if (it == lvl.transversal.end()) {
      if (residue) *residue = h;
      return false;
    }
    h = h * it->second.inverse();
  }
  if (residue) *residue = h;
  return h.is_identity();
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return strip(g, 0, nullptr);
}

const std::vector<Perm>& PermGroup::elements(long budget) const {
  if (!elements_.empty()) return elements_;
  if (order_ > budget) throw Error("element enumeration over budget: order " + order_.get_str());
  Perm id(degree_);
  elements_.push_back(id);
  elt_index_[perm_key(id)] = 0;
  words_.push_back({});
  for (size_t head = 0; head < elements_.size(); ++head) {
    Perm cur = elements_[head];  // copy: the vector may reallocate
    std::vector<int> w = words_[head];
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
      Perm nxt = cur * gens_[gi];
      std::string key = perm_key(nxt);
      if (elt_index_.count(key)) continue;
      elt_index_[key] = static_cast<int>(elements_.size());
      elements_.push_back(nxt);
      std::vector<int> w2 = w;
      w2.push_back(static_cast<int>(gi));
      words_.push_back(std::move(w2));
    }
  }
  if (Int(static_cast<long>(elements_.size())) != order_)
    throw InvariantFailure("enumeration found " + std::to_string(elements_.size()) +
                           " elements, chain order " + order_.get_str());
  return elements_;
}

std::vector<int> PermGroup::word_for(const Perm& g) const {
  elements();
  auto it = elt_index_.find(perm_key(g));
  if (it == elt_index_.end()) throw NotASubgroup("element not in group");
  return words_[it->second];
}

std::vector<Perm> PermGroup::conjugacy_class(const Perm& rep) const {
  if (!contains(rep)) throw NotASubgroup("class representative not in group");
  std::vector<Perm> orbit{rep};
  std::unordered_map<std::string, char> seen;
  seen[perm_key(rep)] = 1;
  for (size_t head = 0; head < orbit.size(); ++head) {
    Perm cur = orbit[head];
    for (const auto& s : gens_) {
      Perm c = (s.inverse() * cur) * s;
      std::string key = perm_key(c);
      if (!seen.count(key)) {
        seen[key] = 1;
        orbit.push_back(c);
      }
    }
  }
  return orbit;
}

std::vector<Perm> PermGroup::coset_action(const PermGroup& h) const {
  if (h.degree() != degree_) throw DegreeMismatch("coset action degree");
  for (const auto& g : h.generators())
    if (!contains(g)) throw NotASubgroup("h is not a subgroup");
  const auto& hels = h.elements();
  // canonical label of the coset Hg: the lexicographically least member
  auto canon_key = [&](const Perm& g) {
    Perm best = hels[0] * g;
    for (size_t i = 1; i < hels.size(); ++i) {
      Perm cur = hels[i] * g;
      if (cur < best) best = cur;
    }
    return perm_key(best);
  };
  std::vector<Perm> reps{Perm(degree_)};
  std::unordered_map<std::string, int> index;
  index[canon_key(reps[0])] = 0;
  for (size_t head = 0; head < reps.size(); ++head) {
    Perm cur = reps[head];
    for (const auto& s : gens_) {
      Perm nxt = cur * s;
      std::string key = canon_key(nxt);
      if (!index.count(key)) {
        index[key] = static_cast<int>(reps.size());
        reps.push_back(nxt);
      }
    }
  }
  long n = static_cast<long>(reps.size());
  std::vector<Perm> action;
  for (const auto& s : gens_) {
    std::vector<int> img(n);
    for (long i = 0; i < n; ++i) {
      Perm nxt = reps[i] * s;
      img[i] = index.at(canon_key(nxt));
    }
    action.push_back(Perm(std::move(img)));
  }
  return action;
}

}  // namespace blocklab
