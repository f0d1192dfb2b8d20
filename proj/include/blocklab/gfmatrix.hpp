#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "blocklab/base.hpp"
#include "blocklab/gfq.hpp"
#include "blocklab/permgroup.hpp"

namespace blocklab {

// dense matrix over a small finite field; entries are field codes in bytes,
// with bit-sliced fast paths for the workhorse prime 3
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(std::shared_ptr<const Gfq> field, long rows, long cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static GfMatrix identity(std::shared_ptr<const Gfq> field, long n);
  static GfMatrix permutation(std::shared_ptr<const Gfq> field, const Perm& p);

  const std::shared_ptr<const Gfq>& field() const { return field_; }
  long rows() const { return rows_; }
  long cols() const { return cols_; }
  uint8_t at(long i, long j) const { return a_[i * cols_ + j]; }
  void set(long i, long j, long v) { a_[i * cols_ + j] = static_cast<uint8_t>(v); }
  const uint8_t* row_ptr(long i) const { return a_.data() + i * cols_; }
  uint8_t* row_ptr(long i) { return a_.data() + i * cols_; }

  bool operator==(const GfMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool is_zero() const;

  GfMatrix operator+(const GfMatrix& o) const;
  GfMatrix operator-(const GfMatrix& o) const;
  GfMatrix operator*(const GfMatrix& o) const;
  GfMatrix scaled(long c) const;
  GfMatrix transpose() const;

  // v * this for a row vector v
  std::vector<uint8_t> apply_row(const std::vector<uint8_t>& v) const;

  // in-place row echelon reduction (full reduced form);
  // returns rank, records pivot columns
  long echelonize(std::vector<long>* pivots = nullptr);
  long rank() const;
  // basis of { v : v * this = 0 } as rows
  GfMatrix left_kernel() const;
  // basis of the row space, reduced
  GfMatrix row_basis() const;
  GfMatrix inverse() const;  // throws if singular

  // monic minimal polynomial of the matrix (low-to-high coefficients)
  std::vector<uint8_t> min_poly() const;
  // characteristic polynomial via Hessenberg reduction
  std::vector<uint8_t> char_poly() const;
  // p(this) by Horner
  GfMatrix eval_poly(const std::vector<uint8_t>& p) const;

  uint64_t content_hash() const;

 private:
  std::shared_ptr<const Gfq> field_;
  long rows_ = 0, cols_ = 0;
  std::vector<uint8_t> a_;
};

// coordinate solver against a fixed row basis
class RowSolver {
 public:
  explicit RowSolver(const GfMatrix& basis);
  long dim() const { return basis_.rows(); }
  // coordinates x with x * basis = v; throws if v is outside the row space
  std::vector<uint8_t> solve(const std::vector<uint8_t>& v) const;
  // X with X * basis = m (solving each row)
  GfMatrix solve_rows(const GfMatrix& m) const;
  bool contains(const std::vector<uint8_t>& v) const;

 private:
  GfMatrix basis_;   // original rows
  GfMatrix ech_;     // reduced echelon form
  GfMatrix trans_;   // trans_ * basis_ = ech_
  std::vector<long> pivots_;
};

}  // namespace blocklab
