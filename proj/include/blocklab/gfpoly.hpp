#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "blocklab/base.hpp"
#include "blocklab/gfq.hpp"

namespace blocklab {

// univariate polynomials over a small finite field, coefficients low-to-high
using GfPoly = std::vector<uint8_t>;

namespace gfpoly {

GfPoly trim(GfPoly f);
long degree(const GfPoly& f);  // -1 for zero
bool is_zero(const GfPoly& f);
GfPoly one();
GfPoly x();

GfPoly add(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly sub(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly mul(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly scale(const Gfq& f, const GfPoly& a, long c);
GfPoly monic(const Gfq& f, const GfPoly& a);
// division with remainder by a nonzero divisor
std::pair<GfPoly, GfPoly> divmod(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly mod(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly gcd(const Gfq& f, GfPoly a, GfPoly b);
GfPoly lcm(const Gfq& f, const GfPoly& a, const GfPoly& b);
GfPoly derivative(const Gfq& f, const GfPoly& a);
GfPoly powmod(const Gfq& f, GfPoly base, Int e, const GfPoly& m);
long eval(const Gfq& f, const GfPoly& a, long x);
// u with u*a = 1 mod m (extended euclid), gcd(a, m) = 1
GfPoly invmod(const Gfq& f, const GfPoly& a, const GfPoly& m);

// full factorization: squarefree + distinct degree + Cantor-Zassenhaus;
// deterministic given the rng seed, the returned factors are sorted
struct Factor {
  GfPoly poly;
  long multiplicity;
};
std::vector<Factor> factor(const std::shared_ptr<const Gfq>& f, const GfPoly& a, Rng& rng);

std::string to_string(const GfPoly& a);

}  // namespace gfpoly
}  // namespace blocklab
