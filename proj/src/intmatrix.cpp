#include "blocklab/intmatrix.hpp"

namespace blocklab {

IntMatrix IntMatrix::identity(long n) {
  IntMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  long r = static_cast<long>(rows.size());
  long c = r ? static_cast<long>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[i].size()) != c) throw ShapeMismatch("ragged rows");
    for (long j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("matrix product shapes");
  IntMatrix r(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (long j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

bool IntMatrix::nonnegative() const {
  for (const auto& x : a_)
    if (x < 0) return false;
  return true;
}

std::vector<Int> IntMatrix::row(long i) const {
  std::vector<Int> r(cols_);
  for (long j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::vector<Int> IntMatrix::col(long j) const {
  std::vector<Int> c(rows_);
  for (long i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

Int IntMatrix::det() const {
  if (rows_ != cols_) throw ShapeMismatch("det of non-square matrix");
  long n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix m = *this;
  Int prev(1);
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      long piv = -1;
      for (long i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = v / prev;  // exact by Bareiss
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

IntMatrix IntMatrix::unimodular_inverse() const {
  if (rows_ != cols_) throw ShapeMismatch("inverse of non-square matrix");
  Int d = det();
  if (d != 1 && d != -1) throw InvariantViolated("matrix is not unimodular, det = " + d.get_str());
  long n = rows_;
  // rational-free: adjugate via cofactors would be O(n!); use integer
  // Gauss-Jordan over Q with exact rationals, entries land in Z
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) a[i][j] = Rat(at(i, j));
    a[i][n + i] = 1;
  }
  for (long c = 0; c < n; ++c) {
    long piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw InvariantViolated("singular matrix in inverse");
    std::swap(a[piv], a[c]);
    Rat inv = Rat(1) / a[c][c];
    for (long j = 0; j < 2 * n; ++j) a[c][j] *= inv;
    for (long i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (long j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Rat v = a[i][n + j];
      if (v.get_den() != 1) throw InvariantViolated("inverse is not integral");
      out.at(i, j) = v.get_num();
    }
  return out;
}

SmithResult smith_normal_form(const IntMatrix& input) {
  IntMatrix m = input;
  long rows = m.rows(), cols = m.cols();
  long n = std::min(rows, cols);
  for (long s = 0; s < n; ++s) {
    for (;;) {
      // find minimal nonzero |entry| in the trailing block
      long pi = -1, pj = -1;
      Int best(0);
      for (long i = s; i < rows; ++i)
        for (long j = s; j < cols; ++j) {
          if (m.at(i, j) == 0) continue;
          Int v = abs(m.at(i, j));
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        pi = pj = s;  // trailing block zero, done with this and later pivots
        break;
      }
      if (pi != s)
        for (long j = 0; j < cols; ++j) std::swap(m.at(s, j), m.at(pi, j));
      if (pj != s)
        for (long i = 0; i < rows; ++i) std::swap(m.at(i, s), m.at(i, pj));
      // clear column and row with floor-division reductions
      bool dirty = false;
      for (long i = s + 1; i < rows; ++i) {
        if (m.at(i, s) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, s).get_mpz_t(), m.at(s, s).get_mpz_t());
        for (long j = 0; j < cols; ++j) m.at(i, j) -= q * m.at(s, j);
        if (m.at(i, s) != 0) dirty = true;
      }
      for (long j = s + 1; j < cols; ++j) {
        if (m.at(s, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(s, j).get_mpz_t(), m.at(s, s).get_mpz_t());
        for (long i = 0; i < rows; ++i) m.at(i, j) -= q * m.at(i, s);
        if (m.at(s, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // pivot must divide every trailing entry; if not, mix the row in and redo
      bool divides = true;
      for (long i = s + 1; i < rows && divides; ++i)
        for (long j = s + 1; j < cols && divides; ++j)
          if (m.at(i, j) % m.at(s, s) != 0) {
            for (long jj = 0; jj < cols; ++jj) m.at(s, jj) += m.at(i, jj);
            divides = false;
          }
      if (divides) break;
    }
  }
  SmithResult res;
  res.smith = IntMatrix(rows, cols);
  for (long s = 0; s < n; ++s) {
    Int v = abs(m.at(s, s));
    res.smith.at(s, s) = v;
    if (v != 0) res.invariants.push_back(v);
  }
  return res;
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  auto d = m.det();
  return d == 1 || d == -1;
}

}  // namespace blocklab
