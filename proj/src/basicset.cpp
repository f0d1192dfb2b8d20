#include "blocklab/basicset.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace blocklab {

namespace {

std::vector<Rat> solve_square(const std::vector<std::vector<Rat>>& a0,
                              const std::vector<Rat>& b0) {
  auto a = a0;
  auto b = b0;
  size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("singular system");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    Rat inv = Rat(1) / a[c][c];
    for (size_t j = 0; j < n; ++j) a[c][j] *= inv;
    b[c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (size_t j = 0; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (auto& x : b) x.canonicalize();
  return b;
}

std::string plain_coeffs(const std::vector<Int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  return os.str();
}

std::string witness_spec(const Witness& w) {
  return "inline:" + std::string(w.projective ? "ps" : "bs") + ":" + plain_coeffs(w.coords);
}

std::string coeff_string(const std::vector<Int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

bool is_unit_vector(const std::vector<Int>& v, long* pos = nullptr) {
  long where = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1 || where >= 0) return false;
    where = static_cast<long>(i);
  }
  if (where < 0) return false;
  if (pos) *pos = where;
  return true;
}

}  // namespace

BasicSetContext BasicSetContext::make_abstract(std::vector<std::string> irr_names,
                                               std::vector<std::string> bs_names,
                                               std::vector<std::string> ps_names, IntMatrix u,
                                               IntMatrix mhat) {
  BasicSetContext ctx;
  ctx.irr_names_ = std::move(irr_names);
  ctx.bs_names_ = std::move(bs_names);
  ctx.ps_names_ = std::move(ps_names);
  ctx.u_ = std::move(u);
  ctx.mhat_ = std::move(mhat);
  if (ctx.u_.rows() != ctx.u_.cols() ||
      ctx.u_.rows() != static_cast<long>(ctx.bs_names_.size()) ||
      ctx.u_.cols() != static_cast<long>(ctx.ps_names_.size()) ||
      ctx.mhat_.rows() != static_cast<long>(ctx.irr_names_.size()) ||
      ctx.mhat_.cols() != ctx.u_.cols())
    throw ShapeMismatch("context dimensions");
  ctx.bs_flag_.assign(ctx.l(), 0);
  ctx.ps_flag_.assign(ctx.l(), 0);
  ctx.initial_u_ = ctx.u_;
  ctx.initial_mhat_ = ctx.mhat_;
  ctx.validate_invariants("init");
  ProofStep step;
  step.op = "init";
  step.detail = "loaded U (" + std::to_string(ctx.l()) + "x" + std::to_string(ctx.l()) +
                ") and Mhat (" + std::to_string(ctx.k()) + "x" + std::to_string(ctx.l()) + ")";
  ctx.auto_flag(step);
  ctx.push_step(std::move(step));
  return ctx;
}

BasicSetContext BasicSetContext::make_concrete(TablePtr table, long p, Block block,
                                               std::vector<std::string> bs_names,
                                               std::vector<ClassFunction> bs_values,
                                               std::vector<std::string> ps_names,
                                               std::vector<ClassFunction> ps_values) {
  BasicSetContext ctx;
  ctx.table_ = std::move(table);
  ctx.p_ = p;
  ctx.block_ = std::move(block);
  ctx.bs_names_ = std::move(bs_names);
  ctx.ps_names_ = std::move(ps_names);
  ctx.bs_values_ = std::move(bs_values);
  ctx.ps_values_ = std::move(ps_values);
  long l = static_cast<long>(ctx.bs_values_.size());
  if (static_cast<long>(ctx.ps_values_.size()) != l) throw ShapeMismatch("|BS| != |PS|");
  for (int m : ctx.block_.members) ctx.irr_names_.push_back(ctx.table_->irr_names[m]);
  ctx.u_ = IntMatrix(l, l);
  for (long i = 0; i < l; ++i)
    for (long j = 0; j < l; ++j) {
      Rat v = ctx.pairing(ctx.bs_values_[i], ctx.ps_values_[j]);
      if (v.get_den() != 1)
        throw NotABasicSet("pairing <" + ctx.bs_names_[i] + "," + ctx.ps_names_[j] +
                           "> is not integral: " + v.get_str());
      ctx.u_.at(i, j) = v.get_num();
    }
  long kk = static_cast<long>(ctx.block_.members.size());
  ctx.mhat_ = IntMatrix(kk, l);
  for (long r = 0; r < kk; ++r) {
    ClassFunction chi = irreducible(ctx.table_, ctx.block_.members[r]);
    for (long j = 0; j < l; ++j) {
      Rat v = ctx.pairing(chi, ctx.ps_values_[j]);
      if (v.get_den() != 1) throw NotABasicSet("restricted pairing not integral");
      ctx.mhat_.at(r, j) = v.get_num();
    }
  }
  ctx.bs_flag_.assign(l, 0);
  ctx.ps_flag_.assign(l, 0);
  ctx.initial_u_ = ctx.u_;
  ctx.initial_mhat_ = ctx.mhat_;
  ctx.validate_invariants("init");
  ProofStep step;
  step.op = "init";
  step.detail = "concrete context for block of " + std::to_string(kk) + " characters at p = " +
                std::to_string(p);
  ctx.auto_flag(step);
  ctx.push_step(std::move(step));
  return ctx;
}

Rat BasicSetContext::pairing(const ClassFunction& a, const ClassFunction& b) const {
  return inner_product(a, b, PairingMode::PRegular, p_);
}

std::vector<int> BasicSetContext::bs_flag_list() const {
  std::vector<int> out;
  for (size_t i = 0; i < bs_flag_.size(); ++i)
    if (bs_flag_[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> BasicSetContext::ps_flag_list() const {
  std::vector<int> out;
  for (size_t i = 0; i < ps_flag_.size(); ++i)
    if (ps_flag_[i]) out.push_back(static_cast<int>(i));
  return out;
}

void BasicSetContext::validate_invariants(const char* where) const {
  if (!u_.nonnegative())
    throw InvariantViolated(std::string(where) + ": U has a negative entry");
  if (!is_unimodular(u_))
    throw NotABasicSet(std::string(where) + ": U is not unimodular, det = " +
                       u_.det().get_str());
  if (!mhat_.nonnegative())
    throw InvariantViolated(std::string(where) + ": Mhat has a negative entry");
  if (concrete()) recompute_concrete(where);
}

void BasicSetContext::recompute_concrete(const char* where) const {
  for (long i = 0; i < l(); ++i)
    for (long j = 0; j < l(); ++j) {
      Rat v = pairing(bs_values_[i], ps_values_[j]);
      if (v != Rat(u_.at(i, j)))
        throw InvariantViolated(std::string(where) + ": U drifted from value vectors at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }
  for (long r = 0; r < k(); ++r) {
    ClassFunction chi = irreducible(table_, block_.members[r]);
    for (long j = 0; j < l(); ++j) {
      Rat v = pairing(chi, ps_values_[j]);
      if (v != Rat(mhat_.at(r, j)))
        throw InvariantViolated(std::string(where) + ": Mhat drifted from value vectors");
    }
  }
}

void BasicSetContext::auto_flag(ProofStep& step) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (long i = 0; i < l(); ++i) {
      if (bs_flag_[i]) continue;
      long pos;
      if (is_unit_vector(u_.row(i), &pos)) {
        bs_flag_[i] = 1;
        step.detail += "; unit row => " + bs_names_[i] + " irreducible";
        changed = true;
      }
    }
    for (long j = 0; j < l(); ++j) {
      if (ps_flag_[j]) continue;
      long pos;
      if (is_unit_vector(u_.col(j), &pos)) {
        ps_flag_[j] = 1;
        step.detail += "; unit column => " + ps_names_[j] + " indecomposable";
        changed = true;
      }
    }
  }
}

void BasicSetContext::push_step(ProofStep step) {
  step.u_after = u_;
  step.bs_flags = bs_flag_list();
  step.ps_flags = ps_flag_list();
  log_.push_back(std::move(step));
}

void BasicSetContext::cert_unit_column_indecomposable(long j) {
  if (j < 0 || j >= l()) throw ShapeMismatch("column index");
  long pos;
  if (!is_unit_vector(u_.col(j), &pos))
    throw NotUnitColumn("column of " + ps_names_[j] + " is not a standard unit vector");
  ProofStep step;
  step.op = "flag";
  step.detail = ps_names_[j] +
                " indecomposable: unit column; a projective summand pairs non-negatively "
                "with every genuine Brauer character and BS spans the Brauer lattice";
  step.script_line = "flag col " + std::to_string(j + 1);
  ps_flag_[j] = 1;
  auto_flag(step);
  push_step(std::move(step));
}

void BasicSetContext::cert_unit_row_irreducible(long i) {
  if (i < 0 || i >= l()) throw ShapeMismatch("row index");
  long pos;
  if (!is_unit_vector(u_.row(i), &pos))
    throw NotUnitColumn("row of " + bs_names_[i] + " is not a standard unit vector");
  ProofStep step;
  step.op = "flag";
  step.detail = bs_names_[i] + " irreducible: unit row against a spanning projective set";
  step.script_line = "flag row " + std::to_string(i + 1);
  bs_flag_[i] = 1;
  auto_flag(step);
  push_step(std::move(step));
}

void BasicSetContext::cert_irreducible_by_elimination(long i,
                                                      const std::vector<std::vector<Int>>& cases,
                                                      const Witness& witness, bool auto_mode) {
  if (i < 0 || i >= l()) throw ShapeMismatch("row index");
  if (!witness.projective) throw ShapeMismatch("elimination witness must be projective");
  if (static_cast<long>(witness.coords.size()) != l())
    throw ShapeMismatch("witness coordinate length");
  std::ostringstream record;
  record << bs_names_[i] << " irreducible by elimination (witness " << witness.name << " = "
         << coeff_string(witness.coords) << ", " << (auto_mode ? "auto" : "replay") << " mode)";
  for (const auto& drop : cases) {
    if (static_cast<long>(drop.size()) != l()) throw ShapeMismatch("case coordinate length");
    bool nonzero = false;
    for (long t = 0; t < l(); ++t) {
      if (drop[t] == 0) continue;
      if (drop[t] < 0) throw ShapeMismatch("case has a negative coordinate");
      if (!bs_flag_[t])
        throw ShapeMismatch("case uses unflagged element " + bs_names_[t]);
      nonzero = true;
    }
    if (!nonzero) throw ShapeMismatch("case is zero");
    // <BS_i - drop, witness>' = (row_i - sum drop_t row_t) . coords
    Int value(0);
    for (long j = 0; j < l(); ++j) {
      Int rowv = u_.at(i, j);
      for (long t = 0; t < l(); ++t) rowv -= drop[t] * u_.at(t, j);
      value += rowv * witness.coords[j];
    }
    record << "; case " << coeff_string(drop) << " -> " << value.get_str();
    if (value >= 0)
      throw CaseNotEliminated("case " + coeff_string(drop) + " pairs to " + value.get_str() +
                              " >= 0 against " + witness.name);
  }
  ProofStep step;
  step.op = "eliminate";
  step.detail = record.str();
  {
    std::ostringstream sl;
    sl << "eliminate " << (i + 1) << " witness " << witness_spec(witness) << " cases ";
    for (size_t ci = 0; ci < cases.size(); ++ci) {
      if (ci) sl << "|";
      sl << plain_coeffs(cases[ci]);
    }
    step.script_line = sl.str();
  }
  bs_flag_[i] = 1;
  auto_flag(step);
  push_step(std::move(step));
}

std::vector<Int> BasicSetContext::content_bounds(bool projective_side, long t) const {
  std::vector<Int> bounds(l(), Int(0));
  if (projective_side) {
    // content of the PIM PS_t inside PS_j, bounded through every BS row
    // that pairs positively with PS_t
    for (long j = 0; j < l(); ++j) {
      if (j == t) continue;
      if (ps_flag_[j]) continue;  // distinct indecomposables: content 0
      bool first = true;
      Int best(0);
      for (long i = 0; i < l(); ++i) {
        if (u_.at(i, t) <= 0) continue;
        Int b = u_.at(i, j) / u_.at(i, t);
        if (first || b < best) best = b;
        first = false;
      }
      if (first) throw Infeasible("no BS row pairs with " + ps_names_[t]);
      bounds[j] = best;
    }
  } else {
    for (long j = 0; j < l(); ++j) {
      if (j == t) continue;
      if (bs_flag_[j]) continue;
      bool first = true;
      Int best(0);
      for (long c = 0; c < l(); ++c) {
        if (u_.at(t, c) <= 0) continue;
        Int b = u_.at(j, c) / u_.at(t, c);
        if (first || b < best) best = b;
        first = false;
      }
      if (first) throw Infeasible("no PS column pairs with " + bs_names_[t]);
      bounds[j] = best;
    }
  }
  return bounds;
}

ForcedContentResult BasicSetContext::cert_forced_content(bool projective_side, long t,
                                                         const Witness& witness) {
  if (t < 0 || t >= l()) throw ShapeMismatch("target index");
  if (witness.projective != projective_side)
    throw ShapeMismatch("witness side does not match the certificate side");
  if (static_cast<long>(witness.coords.size()) != l())
    throw ShapeMismatch("witness coordinate length");
  bool flagged = projective_side ? ps_flag_[t] : bs_flag_[t];
  if (!flagged)
    throw ShapeMismatch("target " + (projective_side ? ps_names_[t] : bs_names_[t]) +
                        " is not flagged");
  Int c = witness.coords[t];
  if (c >= 0) throw ShapeMismatch("witness has no negative coefficient at the target");
  std::vector<Int> bounds = content_bounds(projective_side, t);

  // sum_j w_j gamma_j + c >= 0 over the box; coordinates with zero witness
  // weight never force anything and stay out of the search
  ForcedContentResult res;
  for (long j = 0; j < l(); ++j)
    if (j != t && witness.coords[j] != 0) res.positions.push_back(j);
  std::vector<Int> gamma(res.positions.size(), Int(0));
  std::function<void(size_t, Int)> walk = [&](size_t idx, Int acc) {
    if (idx == res.positions.size()) {
      if (acc + c >= 0) res.solutions.push_back(gamma);
      return;
    }
    long j = res.positions[idx];
    for (Int g(0); g <= bounds[j]; ++g) {
      gamma[idx] = g;
      walk(idx + 1, acc + witness.coords[j] * g);
    }
    gamma[idx] = 0;
  };
  walk(0, Int(0));
  if (res.solutions.empty())
    throw Infeasible("no content vector restores non-negativity against " + witness.name);
  res.forced.assign(l(), Int(0));
  for (size_t idx = 0; idx < res.positions.size(); ++idx) {
    Int m = res.solutions[0][idx];
    for (const auto& sol : res.solutions) m = std::min(m, sol[idx]);
    res.forced[res.positions[idx]] = m;
  }
  bool any = false;
  for (const auto& m : res.forced)
    if (m > 0) any = true;
  std::ostringstream record;
  record << (projective_side ? ps_names_[t] : bs_names_[t]) << " forced content (witness "
         << witness.name << " = " << coeff_string(witness.coords) << "): bounds "
         << coeff_string(bounds) << ", " << res.solutions.size() << " feasible, minimum "
         << coeff_string(res.forced);
  std::string script_line = std::string("forced ") + (projective_side ? "ps " : "bs ") +
                            std::to_string(t + 1) + " witness " + witness_spec(witness);
  if (!any) {
    ProofStep step;
    step.op = "forced";
    step.detail = record.str() + "; nothing forced, context unchanged";
    step.script_line = script_line;
    push_step(std::move(step));
    return res;
  }

  BasicSetContext saved = *this;
  try {
    for (long j = 0; j < l(); ++j) {
      if (res.forced[j] == 0) continue;
      if (projective_side) {
        for (long i = 0; i < l(); ++i) u_.at(i, j) -= res.forced[j] * u_.at(i, t);
        for (long r = 0; r < k(); ++r) mhat_.at(r, j) -= res.forced[j] * mhat_.at(r, t);
        if (concrete()) ps_values_[j] = ps_values_[j] - ps_values_[t].scaled(Rat(res.forced[j]));
      } else {
        for (long jj = 0; jj < l(); ++jj) u_.at(j, jj) -= res.forced[j] * u_.at(t, jj);
        if (concrete()) bs_values_[j] = bs_values_[j] - bs_values_[t].scaled(Rat(res.forced[j]));
      }
    }
    validate_invariants("forced content");
  } catch (const Error&) {
    *this = std::move(saved);
    throw;
  }
  res.applied = true;
  ProofStep step;
  step.op = "forced";
  step.detail = record.str() + "; applied";
  step.script_line = script_line;
  auto_flag(step);
  push_step(std::move(step));
  return res;
}

void BasicSetContext::apply_basis_substitution(bool projective_side, long j,
                                               const std::vector<Int>& coeffs,
                                               const std::string& note) {
  if (j < 0 || j >= l()) throw ShapeMismatch("substitution target");
  if (static_cast<long>(coeffs.size()) != l()) throw ShapeMismatch("substitution coefficients");
  if (coeffs[j] != 0) throw ShapeMismatch("substitution may not rescale the target");
  BasicSetContext saved = *this;
  try {
    if (projective_side) {
      for (long i = 0; i < l(); ++i) {
        Int acc(0);
        for (long c = 0; c < l(); ++c) acc += coeffs[c] * u_.at(i, c);
        u_.at(i, j) += acc;
      }
      for (long r = 0; r < k(); ++r) {
        Int acc(0);
        for (long c = 0; c < l(); ++c) acc += coeffs[c] * mhat_.at(r, c);
        mhat_.at(r, j) += acc;
      }
      if (concrete()) {
        ClassFunction acc = ps_values_[j];
        for (long c = 0; c < l(); ++c)
          if (coeffs[c] != 0) acc = acc + ps_values_[c].scaled(Rat(coeffs[c]));
        ps_values_[j] = acc;
      }
    } else {
      for (long c2 = 0; c2 < l(); ++c2) {
        Int acc(0);
        for (long r2 = 0; r2 < l(); ++r2) acc += coeffs[r2] * u_.at(r2, c2);
        u_.at(j, c2) += acc;
      }
      if (concrete()) {
        ClassFunction acc = bs_values_[j];
        for (long c = 0; c < l(); ++c)
          if (coeffs[c] != 0) acc = acc + bs_values_[c].scaled(Rat(coeffs[c]));
        bs_values_[j] = acc;
      }
    }
    validate_invariants("substitution");
  } catch (const Error&) {
    *this = std::move(saved);
    throw;
  }
  ProofStep step;
  step.op = "substitute";
  step.detail = std::string(projective_side ? "ps " : "bs ") + std::to_string(j + 1) +
                " += " + coeff_string(coeffs) + (note.empty() ? "" : " [" + note + "]");
  step.script_line = std::string("substitute ") + (projective_side ? "ps " : "bs ") +
                     std::to_string(j + 1) + " coeffs " + plain_coeffs(coeffs);
  auto_flag(step);
  push_step(std::move(step));
}

void BasicSetContext::checkpoint(const std::string& label) {
  if (log_.empty()) throw Error("checkpoint before init");
  log_.back().checkpoint = label;
}

std::vector<Int> BasicSetContext::ps_coordinates(const ClassFunction& projective) const {
  if (!concrete()) throw Error("coordinates need a concrete context");
  std::vector<std::vector<Rat>> a(l(), std::vector<Rat>(l()));
  std::vector<Rat> b(l());
  for (long i = 0; i < l(); ++i) {
    for (long j = 0; j < l(); ++j) a[i][j] = Rat(u_.at(i, j));
    b[i] = pairing(bs_values_[i], projective);
  }
  auto x = solve_square(a, b);
  std::vector<Int> out(l());
  for (long j = 0; j < l(); ++j) {
    if (x[j].get_den() != 1) throw NotABasicSet("projective does not lie in the PS lattice");
    out[j] = x[j].get_num();
  }
  return out;
}

std::vector<Int> BasicSetContext::bs_coordinates(const ClassFunction& brauer_side) const {
  if (!concrete()) throw Error("coordinates need a concrete context");
  // <beta, PS_j>' = (c^T U)_j
  std::vector<std::vector<Rat>> a(l(), std::vector<Rat>(l()));
  std::vector<Rat> b(l());
  for (long j = 0; j < l(); ++j) {
    for (long i = 0; i < l(); ++i) a[j][i] = Rat(u_.at(i, j));
    b[j] = pairing(brauer_side, ps_values_[j]);
  }
  auto x = solve_square(a, b);
  std::vector<Int> out(l());
  for (long i = 0; i < l(); ++i) {
    if (x[i].get_den() != 1) throw NotABasicSet("character does not lie in the BS lattice");
    out[i] = x[i].get_num();
  }
  return out;
}

namespace {

struct ColumnCandidate {
  std::vector<Int> s;  // U t
  std::vector<Int> t;
  std::vector<Int> c;  // Mhat t
};

}  // namespace

std::vector<DecompositionCandidate> BasicSetContext::enumerate_decomposition_matrices(
    const EnumerationOptions& opts) const {
  long ll = l(), kk = k();
  Int bound(0);
  if (opts.entry_bound) {
    bound = *opts.entry_bound;
  } else {
    for (long r = 0; r < kk; ++r)
      for (long j = 0; j < ll; ++j) bound = std::max(bound, mhat_.at(r, j));
  }
  long budget = opts.node_budget;
  long nodes = 0;
  auto tick = [&]() {
    if (++nodes > budget)
      throw SearchBudgetExceeded("enumeration exceeded " + std::to_string(budget) + " nodes");
  };

  IntMatrix uinv = u_.unimodular_inverse();
  IntMatrix w = mhat_ * uinv;  // coordinates of the restricted characters over BS

  // l independent rows of W, chosen greedily by row index
  std::vector<long> rowsel;
  {
    std::vector<std::vector<Rat>> basis;
    for (long r = 0; r < kk && static_cast<long>(rowsel.size()) < ll; ++r) {
      std::vector<Rat> cand(ll);
      for (long j = 0; j < ll; ++j) cand[j] = Rat(w.at(r, j));
      auto probe = basis;
      probe.push_back(cand);
      long rank = 0;
      for (long col = 0; col < ll && rank < static_cast<long>(probe.size()); ++col) {
        long piv = -1;
        for (long rr = rank; rr < static_cast<long>(probe.size()); ++rr)
          if (probe[rr][col] != 0) {
            piv = rr;
            break;
          }
        if (piv < 0) continue;
        std::swap(probe[piv], probe[rank]);
        for (long rr = 0; rr < static_cast<long>(probe.size()); ++rr) {
          if (rr == rank || probe[rr][col] == 0) continue;
          Rat f = probe[rr][col] / probe[rank][col];
          for (long cc = col; cc < ll; ++cc) probe[rr][cc] -= f * probe[rank][cc];
        }
        ++rank;
      }
      if (rank == static_cast<long>(probe.size())) {
        basis.push_back(cand);
        rowsel.push_back(r);
      }
    }
    if (static_cast<long>(rowsel.size()) != ll)
      throw NotABasicSet("restricted characters do not span the Brauer lattice");
  }
  std::vector<std::vector<Rat>> rmat(ll, std::vector<Rat>(ll));
  for (long i = 0; i < ll; ++i)
    for (long j = 0; j < ll; ++j) rmat[i][j] = Rat(w.at(rowsel[i], j));

  // phase 1: candidate PIM columns, searched over the entries of the
  // decomposition column on the selected independent rows
  std::vector<ColumnCandidate> pool;
  std::vector<Int> cbox(ll, Int(0));
  std::function<void(long)> boxwalk = [&](long idx) {
    tick();
    if (idx == ll) {
      std::vector<Rat> rhs(ll);
      for (long i = 0; i < ll; ++i) rhs[i] = Rat(cbox[i]);
      std::vector<Rat> s;
      try {
        s = solve_square(rmat, rhs);
      } catch (const Error&) {
        return;
      }
      ColumnCandidate cc;
      cc.s.resize(ll);
      for (long i = 0; i < ll; ++i) {
        if (s[i].get_den() != 1 || s[i] < 0) return;
        cc.s[i] = s[i].get_num();
      }
      cc.t.resize(ll);
      for (long i = 0; i < ll; ++i) {
        Int acc(0);
        for (long j = 0; j < ll; ++j) acc += uinv.at(i, j) * cc.s[j];
        cc.t[i] = acc;
      }
      cc.c.resize(kk);
      bool zero = true;
      for (long r = 0; r < kk; ++r) {
        Int acc(0);
        for (long j = 0; j < ll; ++j) acc += mhat_.at(r, j) * cc.t[j];
        if (acc < 0 || acc > bound) return;
        if (acc != 0) zero = false;
        cc.c[r] = acc;
      }
      if (zero) return;
      pool.push_back(std::move(cc));
      return;
    }
    for (Int v(0); v <= bound; ++v) {
      cbox[idx] = v;
      boxwalk(idx + 1);
    }
    cbox[idx] = 0;
  };
  boxwalk(0);
  std::sort(pool.begin(), pool.end(),
            [](const ColumnCandidate& a, const ColumnCandidate& b) { return a.s < b.s; });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const ColumnCandidate& a, const ColumnCandidate& b) {
                           return a.s == b.s;
                         }),
             pool.end());

  // flagged projectives must appear as candidate columns verbatim
  std::vector<long> required;
  for (long j = 0; j < ll; ++j) {
    if (!ps_flag_[j]) continue;
    std::vector<Int> sj = u_.col(j);
    long found = -1;
    for (size_t pi = 0; pi < pool.size(); ++pi)
      if (pool[pi].s == sj) {
        found = static_cast<long>(pi);
        break;
      }
    if (found < 0)
      throw Infeasible("flagged projective " + ps_names_[j] + " is not a feasible column");
    required.push_back(found);
  }
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());

  // phase 2: assemble column sets
  std::vector<DecompositionCandidate> out;
  std::vector<long> chosen = required;
  std::function<void(long)> assemble = [&](long next) {
    tick();
    if (static_cast<long>(chosen.size()) == ll) {
      for (long i = 0; i < ll; ++i) {
        if (!bs_flag_[i]) continue;
        long ones = 0;
        bool ok = true;
        for (long idx : chosen) {
          const Int& v = pool[idx].s[i];
          if (v == 1)
            ++ones;
          else if (v != 0)
            ok = false;
        }
        if (!ok || ones != 1) return;
      }
      IntMatrix t(ll, ll);
      for (long cidx = 0; cidx < ll; ++cidx)
        for (long i = 0; i < ll; ++i) t.at(i, cidx) = pool[chosen[cidx]].t[i];
      Int dt = t.det();
      if (dt != 1 && dt != -1) return;
      IntMatrix tinv = t.unimodular_inverse();
      // the current basic set is genuine, so it must decompose
      // non-negatively over the candidate set
      if (!tinv.nonnegative()) return;
      for (const auto& wproj : opts.extra_projectives) {
        for (long i = 0; i < ll; ++i) {
          Int acc(0);
          for (long j = 0; j < ll; ++j) acc += tinv.at(i, j) * wproj[j];
          if (acc < 0) return;
        }
      }
      IntMatrix d = mhat_ * t;
      for (long r = 0; r < kk; ++r) {
        bool nz = false;
        for (long j = 0; j < ll; ++j)
          if (d.at(r, j) != 0) nz = true;
        if (!nz) return;
      }
      if (opts.simple_dims) {
        if (static_cast<long>(opts.degrees.size()) != kk)
          throw ShapeMismatch("dims constraint requires the block character degrees");
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        for (long i = 0; i < ll; ++i) {
          std::vector<Rat> row(ll);
          for (long j = 0; j < ll; ++j) row[j] = Rat(d.at(rowsel[i], j));
          a.push_back(row);
          b.push_back(Rat(opts.degrees[rowsel[i]]));
        }
        std::vector<Rat> x;
        try {
          x = solve_square(a, b);
        } catch (const Error&) {
          return;
        }
        std::vector<Int> dims;
        for (long j = 0; j < ll; ++j) {
          if (x[j].get_den() != 1 || x[j] <= 0) return;
          dims.push_back(x[j].get_num());
        }
        for (long r = 0; r < kk; ++r) {
          Int acc(0);
          for (long j = 0; j < ll; ++j) acc += d.at(r, j) * dims[j];
          if (acc != opts.degrees[r]) return;
        }
        std::vector<Int> sorted = dims, want = *opts.simple_dims;
        std::sort(sorted.begin(), sorted.end());
        std::sort(want.begin(), want.end());
        if (sorted != want) return;
      }
      DecompositionCandidate cand;
      cand.T = t;
      cand.D = canonical_column_order(d, &cand.T);
      out.push_back(std::move(cand));
      return;
    }
    for (long pi = next; pi < static_cast<long>(pool.size()); ++pi) {
      if (std::find(chosen.begin(), chosen.end(), pi) != chosen.end()) continue;
      chosen.push_back(pi);
      assemble(pi + 1);
      chosen.pop_back();
    }
  };
  assemble(0);

  auto flat = [](const IntMatrix& m) {
    std::vector<Int> v;
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
  };
  std::sort(out.begin(), out.end(),
            [&](const DecompositionCandidate& a, const DecompositionCandidate& b) {
              return flat(a.D) < flat(b.D);
            });
  out.erase(std::unique(out.begin(), out.end(),
                        [&](const DecompositionCandidate& a, const DecompositionCandidate& b) {
                          return a.D == b.D;
                        }),
            out.end());
  return out;
}

IntMatrix canonical_column_order(const IntMatrix& m, IntMatrix* companion) {
  long rows = m.rows(), cols = m.cols();
  std::vector<long> order(cols);
  for (long j = 0; j < cols; ++j) order[j] = j;
  auto key = [&](long j) {
    long first = rows;
    for (long i = 0; i < rows; ++i)
      if (m.at(i, j) != 0) {
        first = i;
        break;
      }
    return std::make_pair(first, m.col(j));
  };
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) { return key(a) < key(b); });
  IntMatrix out(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) out.at(i, j) = m.at(i, order[j]);
  if (companion) {
    IntMatrix comp(companion->rows(), cols);
    for (long j = 0; j < cols; ++j)
      for (long i = 0; i < companion->rows(); ++i) comp.at(i, j) = companion->at(i, order[j]);
    *companion = comp;
  }
  return out;
}

bool permutation_equivalent(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  long cols = a.cols();
  std::vector<long> perm(cols);
  for (long j = 0; j < cols; ++j) perm[j] = j;
  auto sorted_rows = [&](const IntMatrix& m, const std::vector<long>& colperm) {
    std::vector<std::vector<Int>> rows;
    for (long i = 0; i < m.rows(); ++i) {
      std::vector<Int> r;
      for (long j : colperm) r.push_back(m.at(i, j));
      rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  std::vector<long> idperm = perm;
  auto target = sorted_rows(b, idperm);
  std::sort(perm.begin(), perm.end());
  do {
    if (sorted_rows(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void check_certificate_soundness(const BasicSetContext& ctx,
                                 const std::vector<DecompositionCandidate>& candidates) {
  long ll = ctx.l();
  for (const auto& cand : candidates) {
    IntMatrix ut = ctx.U() * cand.T;
    for (long i = 0; i < ll; ++i) {
      if (!ctx.bs_irreducible(i)) continue;
      long ones = 0;
      for (long j = 0; j < ll; ++j) {
        const Int& v = ut.at(i, j);
        if (v == 1)
          ++ones;
        else if (v != 0)
          throw InvariantViolated("flagged row " + ctx.bs_names()[i] +
                                  " is not a unit row in a candidate");
      }
      if (ones != 1)
        throw InvariantViolated("flagged row " + ctx.bs_names()[i] +
                                " is not a unit row in a candidate");
    }
    for (long j = 0; j < ll; ++j) {
      if (!ctx.ps_indecomposable(j)) continue;
      bool found = false;
      for (long col = 0; col < ll && !found; ++col) {
        bool eq = true;
        for (long i = 0; i < ll; ++i)
          if (cand.T.at(i, col) != (i == j ? 1 : 0)) eq = false;
        found = eq;
      }
      if (!found)
        throw InvariantViolated("flagged projective " + ctx.ps_names()[j] +
                                " is missing from a candidate");
    }
  }
}

std::string BasicSetContext::emit_script() const {
  std::ostringstream os;
  for (const auto& step : log_) {
    if (!step.script_line.empty()) os << step.script_line << "\n";
    if (!step.checkpoint.empty()) os << "checkpoint " << step.checkpoint << "\n";
  }
  return os.str();
}

std::string BasicSetContext::emit_proof_log(bool markdown) const {
  std::ostringstream os;
  auto print_matrix = [&](const IntMatrix& m, const std::vector<int>& bsf,
                          const std::vector<int>& psf) {
    auto flagged = [](const std::vector<int>& v, long x) {
      return std::find(v.begin(), v.end(), static_cast<int>(x)) != v.end();
    };
    if (markdown) {
      os << "| |";
      for (long j = 0; j < m.cols(); ++j)
        os << " " << (flagged(psf, j) ? "**" + ps_names_[j] + "**" : ps_names_[j]) << " |";
      os << "\n|---|";
      for (long j = 0; j < m.cols(); ++j) os << "---|";
      os << "\n";
      for (long i = 0; i < m.rows(); ++i) {
        os << "| " << (flagged(bsf, i) ? "**" + bs_names_[i] + "**" : bs_names_[i]) << " |";
        for (long j = 0; j < m.cols(); ++j) {
          if (m.at(i, j) == 0)
            os << " . |";
          else
            os << " " << m.at(i, j).get_str() << " |";
        }
        os << "\n";
      }
    } else {
      os << "        ";
      for (long j = 0; j < m.cols(); ++j)
        os << (flagged(psf, j) ? "*" : " ") << ps_names_[j] << " ";
      os << "\n";
      for (long i = 0; i < m.rows(); ++i) {
        os << (flagged(bsf, i) ? "*" : " ") << bs_names_[i] << " |";
        for (long j = 0; j < m.cols(); ++j) {
          std::string cell = m.at(i, j) == 0 ? "." : m.at(i, j).get_str();
          long pad = static_cast<long>(ps_names_[j].size()) + 1 - static_cast<long>(cell.size());
          os << std::string(pad > 0 ? pad : 1, ' ') << cell;
        }
        os << "\n";
      }
    }
  };
  long idx = 0;
  for (const auto& step : log_) {
    os << (markdown ? "### " : "== ") << "step " << idx++ << ": " << step.op;
    if (!step.checkpoint.empty()) os << " [checkpoint " << step.checkpoint << "]";
    os << "\n" << step.detail << "\n";
    print_matrix(step.u_after, step.bs_flags, step.ps_flags);
    os << "\n";
  }
  return os.str();
}

}  // namespace blocklab
