#include "blocklab/gfmatrix.hpp"

#include "blocklab/gfpoly.hpp"

#include <algorithm>
#include <cstring>

namespace blocklab {

namespace {

// bit-sliced GF(3) rows: value 1 sets the p-plane bit, value 2 the n-plane bit
inline void add3_rows(uint64_t* zp, uint64_t* zn, const uint64_t* yp, const uint64_t* yn,
                      long words) {
  for (long w = 0; w < words; ++w) {
    uint64_t xp = zp[w], xn = zn[w];
    uint64_t p1 = (xp & ~yp[w] & ~yn[w]) | (~xp & ~xn & yp[w]) | (xn & yn[w]);
    uint64_t n1 = (xn & ~yp[w] & ~yn[w]) | (~xp & ~xn & yn[w]) | (xp & yp[w]);
    zp[w] = p1;
    zn[w] = n1;
  }
}

inline void sub3_rows(uint64_t* zp, uint64_t* zn, const uint64_t* yp, const uint64_t* yn,
                      long words) {
  for (long w = 0; w < words; ++w) {
    uint64_t xp = zp[w], xn = zn[w];
    uint64_t p1 = (xp & ~yn[w] & ~yp[w]) | (~xp & ~xn & yn[w]) | (xn & yp[w]);
    uint64_t n1 = (xn & ~yn[w] & ~yp[w]) | (~xp & ~xn & yp[w]) | (xp & yn[w]);
    zp[w] = p1;
    zn[w] = n1;
  }
}

struct PackedMat3 {
  long rows, cols, words;
  std::vector<uint64_t> p, n;
  PackedMat3(long r, long c) : rows(r), cols(c), words((c + 63) / 64) {
    p.assign(rows * words, 0);
    n.assign(rows * words, 0);
  }
  uint64_t* prow(long i) { return p.data() + i * words; }
  uint64_t* nrow(long i) { return n.data() + i * words; }
  const uint64_t* prow(long i) const { return p.data() + i * words; }
  const uint64_t* nrow(long i) const { return n.data() + i * words; }
  uint8_t get(long i, long j) const {
    uint64_t bit = 1ULL << (j & 63);
    if (prow(i)[j >> 6] & bit) return 1;
    if (nrow(i)[j >> 6] & bit) return 2;
    return 0;
  }
  // row_dst += c * row_src
  void axpy(long dst, long src, uint8_t c) {
    if (c == 1)
      add3_rows(prow(dst), nrow(dst), prow(src), nrow(src), words);
    else if (c == 2)
      sub3_rows(prow(dst), nrow(dst), prow(src), nrow(src), words);
  }
  void scale(long i, uint8_t c) {
    if (c == 2) std::swap_ranges(prow(i), prow(i) + words, nrow(i));
  }
  void swap_rows(long a, long b) {
    std::swap_ranges(prow(a), prow(a) + words, prow(b));
    std::swap_ranges(nrow(a), nrow(a) + words, nrow(b));
  }
};

PackedMat3 pack3(const GfMatrix& m) {
  PackedMat3 pm(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i) {
    const uint8_t* r = m.row_ptr(i);
    for (long j = 0; j < m.cols(); ++j) {
      if (r[j] == 1)
        pm.prow(i)[j >> 6] |= 1ULL << (j & 63);
      else if (r[j] == 2)
        pm.nrow(i)[j >> 6] |= 1ULL << (j & 63);
    }
  }
  return pm;
}

void unpack3(const PackedMat3& pm, GfMatrix& m) {
  for (long i = 0; i < pm.rows; ++i)
    for (long j = 0; j < pm.cols; ++j) m.set(i, j, pm.get(i, j));
}

}  // namespace

GfMatrix GfMatrix::identity(std::shared_ptr<const Gfq> field, long n) {
  GfMatrix m(std::move(field), n, n);
  for (long i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

GfMatrix GfMatrix::permutation(std::shared_ptr<const Gfq> field, const Perm& p) {
  GfMatrix m(std::move(field), p.degree(), p.degree());
  for (long i = 0; i < p.degree(); ++i) m.set(i, p(static_cast<int>(i)), 1);
  return m;
}

bool GfMatrix::is_zero() const {
  for (uint8_t v : a_)
    if (v) return false;
  return true;
}

GfMatrix GfMatrix::operator+(const GfMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum");
  GfMatrix r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    r.a_[i] = static_cast<uint8_t>(field_->add(a_[i], o.a_[i]));
  return r;
}

GfMatrix GfMatrix::operator-(const GfMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix difference");
  GfMatrix r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    r.a_[i] = static_cast<uint8_t>(field_->sub(a_[i], o.a_[i]));
  return r;
}

GfMatrix GfMatrix::scaled(long c) const {
  GfMatrix r(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    r.a_[i] = static_cast<uint8_t>(field_->mul(a_[i], c));
  return r;
}

GfMatrix GfMatrix::operator*(const GfMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("matrix product");
  GfMatrix r(field_, rows_, o.cols_);
  if (field_->q() == 3) {
    PackedMat3 b = pack3(o);
    PackedMat3 c(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i) {
      const uint8_t* arow = row_ptr(i);
      uint64_t* cp = c.prow(i);
      uint64_t* cn = c.nrow(i);
      for (long k = 0; k < cols_; ++k) {
        uint8_t v = arow[k];
        if (!v) continue;
        if (v == 1)
          add3_rows(cp, cn, b.prow(k), b.nrow(k), c.words);
        else
          sub3_rows(cp, cn, b.prow(k), b.nrow(k), c.words);
      }
    }
    unpack3(c, r);
    return r;
  }
  for (long i = 0; i < rows_; ++i) {
    const uint8_t* arow = row_ptr(i);
    for (long k = 0; k < cols_; ++k) {
      uint8_t v = arow[k];
      if (!v) continue;
      const uint8_t* brow = o.row_ptr(k);
      uint8_t* crow = r.row_ptr(i);
      for (long j = 0; j < o.cols_; ++j)
        if (brow[j])
          crow[j] = static_cast<uint8_t>(field_->add(crow[j], field_->mul(v, brow[j])));
    }
  }
  return r;
}

GfMatrix GfMatrix::transpose() const {
  GfMatrix r(field_, cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

std::vector<uint8_t> GfMatrix::apply_row(const std::vector<uint8_t>& v) const {
  if (static_cast<long>(v.size()) != rows_) throw ShapeMismatch("row-vector apply");
  std::vector<uint8_t> out(cols_, 0);
  for (long i = 0; i < rows_; ++i) {
    if (!v[i]) continue;
    const uint8_t* r = row_ptr(i);
    for (long j = 0; j < cols_; ++j)
      if (r[j]) out[j] = static_cast<uint8_t>(field_->add(out[j], field_->mul(v[i], r[j])));
  }
  return out;
}

long GfMatrix::echelonize(std::vector<long>* pivots) {
  if (pivots) pivots->clear();
  if (field_ && field_->q() == 3 && rows_ > 0) {
    PackedMat3 m = pack3(*this);
    long rank = 0;
    for (long col = 0; col < cols_ && rank < rows_; ++col) {
      long piv = -1;
      for (long i = rank; i < rows_; ++i)
        if (m.get(i, col)) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      m.swap_rows(piv, rank);
      if (m.get(rank, col) == 2) m.scale(rank, 2);
      for (long i = 0; i < rows_; ++i) {
        if (i == rank) continue;
        uint8_t v = m.get(i, col);
        if (!v) continue;
        // row_i -= v * row_rank:  -1 = +2, -2 = +1
        m.axpy(i, rank, v == 1 ? 2 : 1);
      }
      if (pivots) pivots->push_back(col);
      ++rank;
    }
    unpack3(m, *this);
    return rank;
  }
  long rank = 0;
  for (long col = 0; col < cols_ && rank < rows_; ++col) {
    long piv = -1;
    for (long i = rank; i < rows_; ++i)
      if (at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (long j = 0; j < cols_; ++j) std::swap(row_ptr(piv)[j], row_ptr(rank)[j]);
    long inv = field_->inv(at(rank, col));
    for (long j = 0; j < cols_; ++j) set(rank, j, field_->mul(at(rank, j), inv));
    for (long i = 0; i < rows_; ++i) {
      if (i == rank) continue;
      uint8_t v = at(i, col);
      if (!v) continue;
      for (long j = 0; j < cols_; ++j)
        set(i, j, field_->sub(at(i, j), field_->mul(v, at(rank, j))));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

long GfMatrix::rank() const {
  GfMatrix copy = *this;
  return copy.echelonize();
}

GfMatrix GfMatrix::row_basis() const {
  GfMatrix copy = *this;
  long r = copy.echelonize();
  GfMatrix out(field_, r, cols_);
  for (long i = 0; i < r; ++i) std::memcpy(out.row_ptr(i), copy.row_ptr(i), cols_);
  return out;
}

GfMatrix GfMatrix::left_kernel() const {
  GfMatrix aug(field_, rows_, cols_ + rows_);
  for (long i = 0; i < rows_; ++i) {
    std::memcpy(aug.row_ptr(i), row_ptr(i), cols_);
    aug.set(i, cols_ + i, 1);
  }
  aug.echelonize();
  std::vector<std::vector<uint8_t>> ker;
  for (long i = 0; i < rows_; ++i) {
    bool zero = true;
    for (long j = 0; j < cols_; ++j)
      if (aug.at(i, j)) {
        zero = false;
        break;
      }
    if (!zero) continue;
    ker.emplace_back(aug.row_ptr(i) + cols_, aug.row_ptr(i) + cols_ + rows_);
  }
  GfMatrix k(field_, static_cast<long>(ker.size()), rows_);
  for (size_t i = 0; i < ker.size(); ++i) std::memcpy(k.row_ptr(i), ker[i].data(), rows_);
  return k;
}

GfMatrix GfMatrix::inverse() const {
  if (rows_ != cols_) throw ShapeMismatch("inverse of non-square");
  GfMatrix aug(field_, rows_, 2 * cols_);
  for (long i = 0; i < rows_; ++i) {
    std::memcpy(aug.row_ptr(i), row_ptr(i), cols_);
    aug.set(i, cols_ + i, 1);
  }
  long r = aug.echelonize();
  if (r != rows_) throw Error("matrix is singular");
  GfMatrix out(field_, rows_, cols_);
  for (long i = 0; i < rows_; ++i) std::memcpy(out.row_ptr(i), aug.row_ptr(i) + cols_, cols_);
  return out;
}

std::vector<uint8_t> GfMatrix::min_poly() const {
  if (rows_ != cols_) throw ShapeMismatch("min poly of non-square");
  long n = rows_;
  if (n == 0) return {1};
  // lcm of local minimal polynomials; seeds whose orbit already lies in the
  // span of processed chains are skipped
  auto f = field_;
  GfPoly mp{1};
  // reduced rows spanning the processed chains (A-invariant)
  std::vector<std::vector<uint8_t>> done;
  std::vector<long> done_piv;
  auto reduce_against = [&](std::vector<uint8_t>& v, const std::vector<std::vector<uint8_t>>& rows,
                            const std::vector<long>& piv, long width) {
    for (size_t r = 0; r < rows.size(); ++r) {
      uint8_t c = v[piv[r]];
      if (!c) continue;
      for (long j = 0; j < width; ++j)
        v[j] = static_cast<uint8_t>(f->sub(v[j], f->mul(c, rows[r][j])));
    }
  };
  auto insert_row = [&](std::vector<uint8_t> v, std::vector<std::vector<uint8_t>>& rows,
                        std::vector<long>& piv, long width) -> bool {
    reduce_against(v, rows, piv, width);
    long p = -1;
    for (long j = 0; j < width; ++j)
      if (v[j]) {
        p = j;
        break;
      }
    if (p < 0) return false;
    long inv = f->inv(v[p]);
    for (long j = 0; j < width; ++j) v[j] = static_cast<uint8_t>(f->mul(v[j], inv));
    rows.push_back(std::move(v));
    piv.push_back(p);
    return true;
  };
  for (long seed = 0; seed < n && static_cast<long>(done.size()) < n; ++seed) {
    std::vector<uint8_t> v(n, 0);
    v[seed] = 1;
    {
      std::vector<uint8_t> probe = v;
      reduce_against(probe, done, done_piv, n);
      bool inside = true;
      for (uint8_t x : probe)
        if (x) inside = false;
      if (inside) continue;
    }
    // local chain with augmented coordinates to read off the dependency
    long width = 2 * n + 2;
    std::vector<std::vector<uint8_t>> chainred;
    std::vector<long> chainpiv;
    std::vector<uint8_t> cur = v;
    GfPoly local;
    for (long step = 0; step <= n; ++step) {
      std::vector<uint8_t> aug(width, 0);
      std::copy(cur.begin(), cur.end(), aug.begin());
      aug[n + step] = 1;
      // reduce only by the leading n columns
      for (size_t r = 0; r < chainred.size(); ++r) {
        uint8_t c = aug[chainpiv[r]];
        if (!c) continue;
        for (long j = 0; j < width; ++j)
          aug[j] = static_cast<uint8_t>(f->sub(aug[j], f->mul(c, chainred[r][j])));
      }
      long p = -1;
      for (long j = 0; j < n; ++j)
        if (aug[j]) {
          p = j;
          break;
        }
      if (p < 0) {
        // dependency: aug tail holds the relation sum_k t_k A^k v = 0
        local.assign(step + 1, 0);
        for (long k = 0; k <= step; ++k) local[k] = aug[n + k];
        local = gfpoly::monic(*f, local);
        break;
      }
      long inv = f->inv(aug[p]);
      for (long j = 0; j < width; ++j) aug[j] = static_cast<uint8_t>(f->mul(aug[j], inv));
      chainred.push_back(std::move(aug));
      chainpiv.push_back(p);
      cur = apply_row(cur);
    }
    if (local.empty()) throw Error("min poly runaway");
    mp = gfpoly::lcm(*f, mp, local);
    // fold the chain into the processed span
    std::vector<uint8_t> w = v;
    for (size_t step = 0; step < chainred.size(); ++step) {
      std::vector<uint8_t> lead(chainred[step].begin(), chainred[step].begin() + n);
      insert_row(std::move(lead), done, done_piv, n);
    }
    (void)w;
  }
  return gfpoly::monic(*f, mp);
}

std::vector<uint8_t> GfMatrix::char_poly() const {
  if (rows_ != cols_) throw ShapeMismatch("char poly of non-square");
  long n = rows_;
  if (n == 0) return {1};
  GfMatrix h = *this;
  for (long col = 0; col < n - 2; ++col) {
    long piv = -1;
    for (long i = col + 1; i < n; ++i)
      if (h.at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != col + 1) {
      for (long j = 0; j < n; ++j) std::swap(h.row_ptr(piv)[j], h.row_ptr(col + 1)[j]);
      for (long i = 0; i < n; ++i) {
        uint8_t t = h.at(i, piv);
        h.set(i, piv, h.at(i, col + 1));
        h.set(i, col + 1, t);
      }
    }
    long inv = field_->inv(h.at(col + 1, col));
    for (long i = col + 2; i < n; ++i) {
      uint8_t f = static_cast<uint8_t>(field_->mul(h.at(i, col), inv));
      if (!f) continue;
      for (long j = 0; j < n; ++j)
        h.set(i, j, field_->sub(h.at(i, j), field_->mul(f, h.at(col + 1, j))));
      for (long r2 = 0; r2 < n; ++r2)
        h.set(r2, col + 1, field_->add(h.at(r2, col + 1), field_->mul(f, h.at(r2, i))));
    }
  }
  std::vector<std::vector<uint8_t>> p(n + 1);
  p[0] = {1};
  for (long m = 1; m <= n; ++m) {
    std::vector<uint8_t> pm(p[m - 1].size() + 1, 0);
    for (size_t d = 0; d < p[m - 1].size(); ++d) {
      pm[d + 1] = static_cast<uint8_t>(field_->add(pm[d + 1], p[m - 1][d]));
      pm[d] = static_cast<uint8_t>(
          field_->sub(pm[d], field_->mul(h.at(m - 1, m - 1), p[m - 1][d])));
    }
    long beta = 1;
    for (long i = 1; i < m; ++i) {
      beta = field_->mul(beta, h.at(m - i, m - i - 1));
      if (!beta) break;
      long coef = field_->mul(beta, h.at(m - 1 - i, m - 1));
      if (!coef) continue;
      for (size_t d = 0; d < p[m - 1 - i].size(); ++d)
        pm[d] = static_cast<uint8_t>(field_->sub(pm[d], field_->mul(coef, p[m - 1 - i][d])));
    }
    p[m] = std::move(pm);
  }
  return p[n];
}

GfMatrix GfMatrix::eval_poly(const std::vector<uint8_t>& poly) const {
  if (rows_ != cols_) throw ShapeMismatch("poly of non-square");
  GfMatrix acc(field_, rows_, cols_);
  for (long d = static_cast<long>(poly.size()) - 1; d >= 0; --d) {
    acc = acc * *this;
    if (poly[d])
      for (long i = 0; i < rows_; ++i) acc.set(i, i, field_->add(acc.at(i, i), poly[d]));
  }
  return acc;
}

uint64_t GfMatrix::content_hash() const {
  uint64_t h = 1469598103934665603ULL;
  for (uint8_t v : a_) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h ^ (static_cast<uint64_t>(rows_) << 32) ^ static_cast<uint64_t>(cols_);
}

RowSolver::RowSolver(const GfMatrix& basis) : basis_(basis) {
  long k = basis.rows(), n = basis.cols();
  GfMatrix aug(basis.field(), k, n + k);
  for (long i = 0; i < k; ++i) {
    std::memcpy(aug.row_ptr(i), basis.row_ptr(i), n);
    aug.set(i, n + i, 1);
  }
  // eliminate using only the leading n columns so the trailing block keeps
  // the transformation
  long rank = 0;
  auto f = basis.field();
  for (long col = 0; col < n && rank < k; ++col) {
    long piv = -1;
    for (long i = rank; i < k; ++i)
      if (aug.at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (long j = 0; j < n + k; ++j) std::swap(aug.row_ptr(piv)[j], aug.row_ptr(rank)[j]);
    long inv = f->inv(aug.at(rank, col));
    for (long j = 0; j < n + k; ++j) aug.set(rank, j, f->mul(aug.at(rank, j), inv));
    for (long i = 0; i < k; ++i) {
      if (i == rank) continue;
      uint8_t v = aug.at(i, col);
      if (!v) continue;
      for (long j = 0; j < n + k; ++j)
        aug.set(i, j, f->sub(aug.at(i, j), f->mul(v, aug.at(rank, j))));
    }
    pivots_.push_back(col);
    ++rank;
  }
  if (rank != k) throw ShapeMismatch("row solver basis is not independent");
  ech_ = GfMatrix(basis.field(), k, n);
  trans_ = GfMatrix(basis.field(), k, k);
  for (long i = 0; i < k; ++i) {
    std::memcpy(ech_.row_ptr(i), aug.row_ptr(i), n);
    std::memcpy(trans_.row_ptr(i), aug.row_ptr(i) + n, k);
  }
}

std::vector<uint8_t> RowSolver::solve(const std::vector<uint8_t>& v) const {
  auto f = basis_.field();
  long k = basis_.rows(), n = basis_.cols();
  if (static_cast<long>(v.size()) != n) throw ShapeMismatch("solve length");
  std::vector<uint8_t> residue = v;
  std::vector<uint8_t> ecoords(k, 0);
  for (long i = 0; i < k; ++i) {
    uint8_t c = residue[pivots_[i]];
    if (!c) continue;
    ecoords[i] = c;
    for (long j = 0; j < n; ++j)
      residue[j] = static_cast<uint8_t>(f->sub(residue[j], f->mul(c, ech_.at(i, j))));
  }
  for (uint8_t x : residue)
    if (x) throw ShapeMismatch("vector outside the row space");
  std::vector<uint8_t> x(k, 0);
  for (long i = 0; i < k; ++i) {
    if (!ecoords[i]) continue;
    for (long j = 0; j < k; ++j)
      x[j] = static_cast<uint8_t>(f->add(x[j], f->mul(ecoords[i], trans_.at(i, j))));
  }
  return x;
}

GfMatrix RowSolver::solve_rows(const GfMatrix& m) const {
  GfMatrix out(basis_.field(), m.rows(), basis_.rows());
  for (long i = 0; i < m.rows(); ++i) {
    std::vector<uint8_t> v(m.row_ptr(i), m.row_ptr(i) + m.cols());
    auto x = solve(v);
    std::memcpy(out.row_ptr(i), x.data(), x.size());
  }
  return out;
}

bool RowSolver::contains(const std::vector<uint8_t>& v) const {
  auto f = basis_.field();
  long k = basis_.rows(), n = basis_.cols();
  std::vector<uint8_t> residue = v;
  for (long i = 0; i < k; ++i) {
    uint8_t c = residue[pivots_[i]];
    if (!c) continue;
    for (long j = 0; j < n; ++j)
      residue[j] = static_cast<uint8_t>(f->sub(residue[j], f->mul(c, ech_.at(i, j))));
  }
  for (uint8_t x : residue)
    if (x) return false;
  return true;
}

}  // namespace blocklab
