#pragma once

#include <vector>

#include "blocklab/base.hpp"

namespace blocklab {

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  static IntMatrix identity(long n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Int& at(long i, long j) { return a_[i * cols_ + j]; }
  const Int& at(long i, long j) const { return a_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool nonnegative() const;
  std::vector<Int> row(long i) const;
  std::vector<Int> col(long j) const;

  Int det() const;  // square only, fraction-free elimination
  // inverse of a matrix with det +-1; throws if not unimodular
  IntMatrix unimodular_inverse() const;

 private:
  long rows_, cols_;
  std::vector<Int> a_;
};

struct SmithResult {
  IntMatrix smith;                // the diagonal normal form
  std::vector<Int> invariants;    // nonzero invariant factors, divisibility chain
};

SmithResult smith_normal_form(const IntMatrix& m);

// square, invariant factors all 1
bool is_unimodular(const IntMatrix& m);

}  // namespace blocklab
