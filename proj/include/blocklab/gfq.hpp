#pragma once

#include <memory>
#include <vector>

#include "blocklab/base.hpp"
#include "blocklab/cyclotomic.hpp"

namespace blocklab {

// The field with q = p^m elements. Elements are encoded as integers in
// [0, q): the element sum c_i x^i has code sum c_i p^i, arithmetic modulo a
// fixed modulus polynomial. The modulus is the least monic irreducible of
// degree m under that same code order, so a (p, m) field is reproducible
// bit-for-bit across runs. exp/log tables are built on the least generator.
class Gfq {
 public:
  static std::shared_ptr<const Gfq> get(long p, long m);

  long p() const { return p_; }
  long m() const { return m_; }
  long q() const { return q_; }
  long generator() const { return generator_; }
  const std::vector<long>& modulus() const { return modulus_; }

  long add(long a, long b) const;
  long neg(long a) const;
  long sub(long a, long b) const { return add(a, neg(b)); }
  long mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  long inv(long a) const {
    if (a == 0) throw Error("gfq: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  long pow(long a, Int e) const;
  long exp(long k) const { return exp_[((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
  long log(long a) const {
    if (a == 0) throw Error("gfq: log of zero");
    return log_[a];
  }
  long multiplicative_order(long a) const;

  // image of the rational a/b, denominator coprime to p
  long from_rational(const Rat& r) const;

 private:
  Gfq(long p, long m);
  long p_, m_, q_;
  std::vector<long> modulus_;  // length m+1, monic
  std::vector<long> exp_, log_;
  long generator_;
};

// Fixed reduction map "mod rad(O)": cyclotomic values with conductor coprime
// to p land in the field with p^m elements, m minimal so that every declared
// conductor divides p^m - 1.
class PrimeIdealEmbedding {
 public:
  PrimeIdealEmbedding(long p, const std::vector<long>& conductors);

  long p() const { return p_; }
  long m() const { return field_->m(); }
  const std::shared_ptr<const Gfq>& field() const { return field_; }

  // g^((q-1)/n), the image of zeta_n
  long root_image(long n) const;

  long reduce(const Cyclotomic& x) const;

 private:
  long p_;
  std::shared_ptr<const Gfq> field_;
};

}  // namespace blocklab
