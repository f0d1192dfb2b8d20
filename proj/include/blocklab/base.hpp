#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <gmpxx.h>

namespace blocklab {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BLOCKLAB_ERROR(Name)                                      \
  struct Name : Error {                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// exactnum
BLOCKLAB_ERROR(ConductorNotCoprime);
// chartab
BLOCKLAB_ERROR(TableMismatch);
BLOCKLAB_ERROR(EmbeddingFailure);
BLOCKLAB_ERROR(FusionIncomplete);
BLOCKLAB_ERROR(NotTrivialSourceEvidence);
BLOCKLAB_ERROR(NoSurvivor);
// basicset
BLOCKLAB_ERROR(NotABasicSet);
BLOCKLAB_ERROR(NotUnitColumn);
BLOCKLAB_ERROR(CaseNotEliminated);
BLOCKLAB_ERROR(Infeasible);
BLOCKLAB_ERROR(InvariantViolated);
BLOCKLAB_ERROR(SearchBudgetExceeded);
// modlin
BLOCKLAB_ERROR(DegreeMismatch);
BLOCKLAB_ERROR(SplitBudgetExceeded);
BLOCKLAB_ERROR(NotPRegular);
BLOCKLAB_ERROR(AmbiguousLift);
// ingest
BLOCKLAB_ERROR(NotASubgroup);
BLOCKLAB_ERROR(ParseError);
BLOCKLAB_ERROR(InvariantFailure);
BLOCKLAB_ERROR(UnknownOp);
BLOCKLAB_ERROR(ShapeMismatch);

#undef BLOCKLAB_ERROR

// p-adic valuation of a nonzero integer
inline long valuation(Int n, const Int& p) {
  if (n == 0) throw Error("valuation of zero");
  long v = 0;
  n = abs(n);
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Deterministic 64-bit generator used by every Las-Vegas search.
// splitmix64; period and quality are plenty for seeding searches.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

}  // namespace blocklab
