#pragma once

#include <map>
#include <string>
#include <vector>

#include "blocklab/base.hpp"

namespace blocklab {

// Element of a cyclotomic field Q(zeta_n), kept in canonical form:
// coefficients over the power basis 1, z, ..., z^(phi(n)-1) reduced by the
// n-th cyclotomic polynomial, with n the minimal conductor of the value.
// Rationals always have conductor 1.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, Rat(0)) {}
  Cyclotomic(const Rat& r) : conductor_(1), coeffs_(1, r) {  // NOLINT implicit
    coeffs_[0].canonicalize();
  }
  Cyclotomic(const Int& z) : conductor_(1), coeffs_(1, Rat(z)) {}
  Cyclotomic(long z) : conductor_(1), coeffs_(1, Rat(z)) {}
  Cyclotomic(int z) : conductor_(1), coeffs_(1, Rat(z)) {}

  // zeta_n^e
  static Cyclotomic root_of_unity(long n, long e = 1);

  // sparse exponent -> coefficient map over conductor n (canonicalized)
  static Cyclotomic from_terms(long n, const std::map<long, Rat>& terms);

  long conductor() const { return conductor_; }
  const std::vector<Rat>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  Rat rational_value() const;  // throws if not rational
  bool is_integer() const;
  Int integer_value() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  // complex conjugate (zeta -> zeta^-1)
  Cyclotomic conj() const;
  // Galois automorphism zeta_n -> zeta_n^j, gcd(j, n) = 1
  Cyclotomic galois(long j) const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // literal syntax: integers, fractions "a/b", terms "c*E(n)^e" joined by +/-
  std::string to_string() const;
  static Cyclotomic parse(const std::string& text);

  // division by a nonzero rational
  Cyclotomic operator/(const Rat& r) const;

 private:
  long conductor_;
  std::vector<Rat> coeffs_;  // size phi(conductor_)

  static Cyclotomic make_canonical(long n, std::vector<Rat> dense_mod_n);
  friend struct CycloOps;
};

// integer polynomial Phi_n, coefficients low-to-high (cached)
const std::vector<Int>& cyclotomic_polynomial(long n);

long euler_phi(long n);

}  // namespace blocklab
