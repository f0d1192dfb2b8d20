#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blocklab/chartab.hpp"
#include "blocklab/intmatrix.hpp"

namespace blocklab {

// a witness character expressed in the coordinates of the current basic set
// (projective side: PS coordinates; Brauer side: BS coordinates)
struct Witness {
  std::string name;
  bool projective = true;
  std::vector<Int> coords;
};

struct ProofStep {
  std::string op;
  std::string detail;
  std::string script_line;  // machine-replayable form of this step, if any
  std::string checkpoint;  // label when this state was pinned by the script
  IntMatrix u_after;
  std::vector<int> bs_flags;
  std::vector<int> ps_flags;
};

struct DecompositionCandidate {
  IntMatrix D;  // k x l, columns in canonical order
  IntMatrix T;  // l x l unimodular, same column order as D
};

struct EnumerationOptions {
  std::optional<Int> entry_bound;         // default: max entry of Mhat
  long node_budget = 5000000;
  std::vector<std::vector<Int>> extra_projectives;  // PS coordinates
  // optional side constraint: candidate simple dimensions must equal this
  // multiset (requires degrees)
  std::optional<std::vector<Int>> simple_dims;
  std::vector<Int> degrees;  // degrees of the block's ordinary characters
};

struct ForcedContentResult {
  std::vector<long> positions;             // coordinates with nonzero witness weight
  std::vector<std::vector<Int>> solutions; // feasible content vectors on those positions
  std::vector<Int> forced;                 // componentwise minimum, full length
  bool applied = false;
};

// mutable refinement state: the pair (U, Mhat) plus flags and a proof log;
// optionally backed by concrete character value vectors
class BasicSetContext {
 public:
  static BasicSetContext make_abstract(std::vector<std::string> irr_names,
                                       std::vector<std::string> bs_names,
                                       std::vector<std::string> ps_names, IntMatrix u,
                                       IntMatrix mhat);

  static BasicSetContext make_concrete(TablePtr table, long p, Block block,
                                       std::vector<std::string> bs_names,
                                       std::vector<ClassFunction> bs_values,
                                       std::vector<std::string> ps_names,
                                       std::vector<ClassFunction> ps_values);

  long l() const { return u_.cols(); }
  long k() const { return mhat_.rows(); }
  const IntMatrix& U() const { return u_; }
  const IntMatrix& Mhat() const { return mhat_; }
  const std::vector<std::string>& irr_names() const { return irr_names_; }
  const std::vector<std::string>& bs_names() const { return bs_names_; }
  const std::vector<std::string>& ps_names() const { return ps_names_; }
  bool bs_irreducible(long i) const { return bs_flag_[i]; }
  bool ps_indecomposable(long j) const { return ps_flag_[j]; }
  std::vector<int> bs_flag_list() const;
  std::vector<int> ps_flag_list() const;
  const std::vector<ProofStep>& log() const { return log_; }
  bool concrete() const { return table_ != nullptr; }

  // unit-row / unit-column certificates (also run automatically after init
  // and after every mutation)
  void cert_unit_column_indecomposable(long j);
  void cert_unit_row_irreducible(long i);

  // case elimination: each drop is a non-negative combination of flagged
  // irreducible BS elements; a genuine projective witness must pair
  // negatively with BS[i] - drop in every case
  void cert_irreducible_by_elimination(long i, const std::vector<std::vector<Int>>& cases,
                                       const Witness& witness, bool auto_mode = false);

  // box-constraint forced content at a flagged position; applies the
  // componentwise minimum of the solution set when it is nonzero
  ForcedContentResult cert_forced_content(bool projective_side, long t, const Witness& witness);

  // explicit substitution: basis[j] += sum_i coeffs[i] * basis[i], validated
  // by the context invariants (rolled back on violation)
  void apply_basis_substitution(bool projective_side, long j, const std::vector<Int>& coeffs,
                                const std::string& note = "");

  void checkpoint(const std::string& label);

  std::vector<DecompositionCandidate> enumerate_decomposition_matrices(
      const EnumerationOptions& opts = {}) const;

  // PS / BS coordinates of a concrete class function (concrete mode only)
  std::vector<Int> ps_coordinates(const ClassFunction& projective) const;
  std::vector<Int> bs_coordinates(const ClassFunction& brauer_side) const;

  const TablePtr& table() const { return table_; }
  long prime() const { return p_; }
  const Block& block() const { return block_; }

  // deterministic text rendering of the full log
  std::string emit_proof_log(bool markdown = false) const;
  // replayable script body (the engine steps after init)
  std::string emit_script() const;

  const IntMatrix& initial_u() const { return initial_u_; }
  const IntMatrix& initial_mhat() const { return initial_mhat_; }

 private:
  BasicSetContext() = default;
  void validate_invariants(const char* where) const;
  void auto_flag(ProofStep& step);
  void push_step(ProofStep step);
  Rat pairing(const ClassFunction& a, const ClassFunction& b) const;
  void recompute_concrete(const char* where) const;
  std::vector<Int> content_bounds(bool projective_side, long t) const;

  std::vector<std::string> irr_names_, bs_names_, ps_names_;
  IntMatrix u_, mhat_;
  IntMatrix initial_u_, initial_mhat_;
  std::vector<char> bs_flag_, ps_flag_;
  std::vector<ProofStep> log_;

  TablePtr table_;
  long p_ = 0;
  Block block_;
  std::vector<ClassFunction> bs_values_, ps_values_;
};

// the master self-check: every certificate conclusion must hold in every
// enumerated candidate
void check_certificate_soundness(const BasicSetContext& ctx,
                                 const std::vector<DecompositionCandidate>& candidates);

// canonical column order: (first nonzero row, lexicographic)
IntMatrix canonical_column_order(const IntMatrix& m, IntMatrix* companion = nullptr);

// structural equality of two matrices up to independent row and column
// permutations
bool permutation_equivalent(const IntMatrix& a, const IntMatrix& b);

}  // namespace blocklab
