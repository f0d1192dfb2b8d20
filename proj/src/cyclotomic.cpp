#include "blocklab/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace blocklab {

long euler_phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
    size_t shift = num.size() - den.size();
    Int c = num.back() / den.back();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    if (num.size() == 1 && num[0] == 0) break;
  }
  return q;
}

std::unordered_map<long, std::vector<Int>> g_phi_cache;
std::mutex g_phi_mutex;

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long n) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = g_phi_cache.find(n);
  if (it != g_phi_cache.end()) return it->second;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    // compute Phi_d without re-locking
    std::vector<Int> phid;
    auto jt = g_phi_cache.find(d);
    if (jt != g_phi_cache.end()) {
      phid = jt->second;
    } else {
      std::vector<Int> nd(d + 1, Int(0));
      nd[0] = -1;
      nd[d] = 1;
      for (long e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        nd = poly_divide_exact(nd, g_phi_cache.at(e));
      }
      g_phi_cache[d] = nd;
      phid = nd;
    }
    num = poly_divide_exact(num, phid);
  }
  return g_phi_cache[n] = num;
}

namespace {

struct ReductionTable {
  long n = 1;
  long deg = 1;  // phi(n)
  // x^m mod Phi_n for 0 <= m < n, as vectors of length deg (rational entries
  // never needed: Phi_n is monic integer, remainders are integer)
  std::vector<std::vector<Int>> pow;
};

std::unordered_map<long, ReductionTable> g_red_cache;
std::mutex g_red_mutex;

const ReductionTable& reduction_table(long n) {
  std::lock_guard<std::mutex> lock(g_red_mutex);
  auto it = g_red_cache.find(n);
  if (it != g_red_cache.end()) return it->second;
  ReductionTable t;
  t.n = n;
  const auto& phi = cyclotomic_polynomial(n);
  t.deg = static_cast<long>(phi.size()) - 1;
  t.pow.resize(n);
  for (long m = 0; m < n; ++m) {
    if (m < t.deg) {
      t.pow[m].assign(t.deg, Int(0));
      t.pow[m][m] = 1;
    } else {
      // x * pow[m-1] reduced
      std::vector<Int> v(t.deg + 1, Int(0));
      for (long i = 0; i < t.deg; ++i) v[i + 1] = t.pow[m - 1][i];
      if (v[t.deg] != 0) {
        Int c = v[t.deg];
        for (long i = 0; i <= t.deg; ++i) v[i] -= c * phi[i];
      }
      v.resize(t.deg);
      t.pow[m] = std::move(v);
    }
  }
  return g_red_cache[n] = std::move(t);
}

// dense exponent vector of length n -> power-basis coefficients (length phi(n))
std::vector<Rat> reduce_mod_phi(long n, const std::vector<Rat>& dense) {
  const auto& t = reduction_table(n);
  std::vector<Rat> out(t.deg, Rat(0));
  for (long e = 0; e < n; ++e) {
    if (dense[e] == 0) continue;
    const auto& row = t.pow[e];
    for (long i = 0; i < t.deg; ++i)
      if (row[i] != 0) out[i] += dense[e] * Rat(row[i]);
  }
  return out;
}

// apply sigma_j on power-basis coefficients, result reduced again
std::vector<Rat> galois_on_coeffs(long n, const std::vector<Rat>& coeffs, long j) {
  std::vector<Rat> dense(n, Rat(0));
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    dense[(static_cast<long>(k) * j) % n] += coeffs[k];
  }
  return reduce_mod_phi(n, dense);
}

// solve A c = x exactly; A is rows x cols with rows >= cols, full column rank.
// returns empty vector if inconsistent.
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> x) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col_of_row;
  size_t r = 0;
  std::vector<size_t> pivcols;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(x[piv], x[r]);
    Rat inv = Rat(1) / a[r][c];
    for (size_t cc = c; cc < cols; ++cc) a[r][cc] *= inv;
    x[r] *= inv;
    for (size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rat f = a[rr][c];
      for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
      x[rr] -= f * x[r];
    }
    pivcols.push_back(c);
    ++r;
  }
  if (r < cols) return {};  // rank deficient; callers always pass full rank
  for (size_t rr = r; rr < rows; ++rr)
    if (x[rr] != 0) return {};
  std::vector<Rat> c(cols, Rat(0));
  for (size_t i = 0; i < r; ++i) c[pivcols[i]] = x[i];
  return c;
}

}  // namespace

Cyclotomic Cyclotomic::make_canonical(long n, std::vector<Rat> dense_mod_n) {
  Cyclotomic out;
  std::vector<Rat> coeffs = reduce_mod_phi(n, dense_mod_n);
  // minimal conductor: smallest divisor d of n fixing the value under
  // Gal(Q(zeta_n)/Q(zeta_d)) = { sigma_j : j = 1 mod d, gcd(j, n) = 1 }
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool fixed = true;
    for (long j = 1 + d; j < n && fixed; j += d) {
      if (std::gcd(j, n) != 1) continue;
      if (galois_on_coeffs(n, coeffs, j) != coeffs) fixed = false;
    }
    if (!fixed) continue;
    if (d == n) {
      out.conductor_ = n;
      out.coeffs_ = std::move(coeffs);
      return out;
    }
    // rewrite over the basis zeta_d^k = zeta_n^(k n/d), k < phi(d)
    long degd = euler_phi(d);
    long degn = static_cast<long>(coeffs.size());
    std::vector<std::vector<Rat>> a(degn, std::vector<Rat>(degd, Rat(0)));
    const auto& t = reduction_table(n);
    for (long k = 0; k < degd; ++k) {
      const auto& col = t.pow[(k * (n / d)) % n];
      for (long i = 0; i < degn; ++i) a[i][k] = Rat(col[i]);
    }
    std::vector<Rat> c = solve_exact(std::move(a), coeffs);
    if (c.empty()) continue;  // not expressible: keep searching (cannot happen)
    for (auto& q : c) q.canonicalize();
    out.conductor_ = d;
    out.coeffs_ = std::move(c);
    return out;
  }
  throw Error("cyclotomic canonicalization failed");
}

Cyclotomic Cyclotomic::root_of_unity(long n, long e) {
  if (n <= 0) throw Error("root_of_unity: conductor must be positive");
  e %= n;
  if (e < 0) e += n;
  std::vector<Rat> dense(n, Rat(0));
  dense[e] = 1;
  return make_canonical(n, std::move(dense));
}

Cyclotomic Cyclotomic::from_terms(long n, const std::map<long, Rat>& terms) {
  if (n <= 0) throw Error("from_terms: conductor must be positive");
  std::vector<Rat> dense(n, Rat(0));
  for (const auto& [e, c] : terms) {
    long ee = e % n;
    if (ee < 0) ee += n;
    dense[ee] += c;
  }
  return make_canonical(n, std::move(dense));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

Rat Cyclotomic::rational_value() const {
  if (conductor_ != 1) throw Error("rational_value: value is irrational: " + to_string());
  return coeffs_[0];
}

bool Cyclotomic::is_integer() const {
  return conductor_ == 1 && coeffs_[0].get_den() == 1;
}

Int Cyclotomic::integer_value() const {
  if (!is_integer()) throw Error("integer_value: not an integer: " + to_string());
  return coeffs_[0].get_num();
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (conductor_ == 1 && o.conductor_ == 1) return Cyclotomic(coeffs_[0] + o.coeffs_[0]);
  long n = std::lcm(conductor_, o.conductor_);
  std::vector<Rat> dense(n, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) dense[(static_cast<long>(k) * (n / conductor_)) % n] += coeffs_[k];
  for (size_t k = 0; k < o.coeffs_.size(); ++k)
    if (o.coeffs_[k] != 0) dense[(static_cast<long>(k) * (n / o.conductor_)) % n] += o.coeffs_[k];
  return make_canonical(n, std::move(dense));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (conductor_ == 1 && o.conductor_ == 1) return Cyclotomic(coeffs_[0] * o.coeffs_[0]);
  if (conductor_ == 1) {
    // nonzero rational scaling preserves the minimal conductor
    if (coeffs_[0] == 0) return Cyclotomic();
    Cyclotomic r = o;
    for (auto& c : r.coeffs_) c *= coeffs_[0];
    return r;
  }
  if (o.conductor_ == 1) return o * *this;
  long n = std::lcm(conductor_, o.conductor_);
  std::vector<Rat> dense(n, Rat(0));
  long sa = n / conductor_, sb = n / o.conductor_;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j] == 0) continue;
      long e = (static_cast<long>(i) * sa + static_cast<long>(j) * sb) % n;
      dense[e] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return make_canonical(n, std::move(dense));
}

Cyclotomic Cyclotomic::conj() const {
  if (conductor_ == 1) return *this;
  return galois(conductor_ - 1);
}

Cyclotomic Cyclotomic::galois(long j) const {
  if (conductor_ == 1) return *this;
  long n = conductor_;
  j %= n;
  if (j < 0) j += n;
  if (std::gcd(j, n) != 1) throw Error("galois: exponent not coprime to conductor");
  std::vector<Rat> dense(n, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) dense[(static_cast<long>(k) * j) % n] += coeffs_[k];
  return make_canonical(n, std::move(dense));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
}

Cyclotomic Cyclotomic::operator/(const Rat& r) const {
  if (r == 0) throw Error("division by zero");
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c /= r;
  return out;
}

std::string Cyclotomic::to_string() const {
  if (conductor_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t e = 0; e < coeffs_.size(); ++e) {
    const Rat& c = coeffs_[e];
    if (c == 0) continue;
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "E(" << conductor_ << ")";
      if (e > 1) os << "^" << e;
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

struct Scanner {
  const std::string& s;
  size_t i = 0;
  explicit Scanner(const std::string& str) : s(str) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError("expected '" + std::string(1, c) + "' at position " + std::to_string(i) +
                       " in cyclotomic literal \"" + s + "\"");
  }
  Int integer() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start)
      throw ParseError("expected integer at position " + std::to_string(i) +
                       " in cyclotomic literal \"" + s + "\"");
    return Int(s.substr(start, i - start));
  }
};

}  // namespace

Cyclotomic Cyclotomic::parse(const std::string& text) {
  Scanner sc(text);
  Cyclotomic total(0);
  bool any = false;
  while (!sc.eof()) {
    int sign = 1;
    while (true) {
      if (sc.accept('+')) continue;
      if (sc.accept('-')) {
        sign = -sign;
        continue;
      }
      break;
    }
    if (sc.eof()) throw ParseError("dangling sign in cyclotomic literal \"" + text + "\"");
    Rat coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      Int num = sc.integer();
      Int den(1);
      if (sc.accept('/')) den = sc.integer();
      if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
      coeff = Rat(num, den);
      coeff.canonicalize();
      have_coeff = true;
    }
    long n = 0, e = 1;
    bool have_root = false;
    if ((have_coeff && sc.accept('*')) || (!have_coeff)) {
      if (sc.peek() == 'E') {
        sc.expect('E');
        sc.expect('(');
        n = sc.integer().get_si();
        sc.expect(')');
        if (sc.accept('^')) {
          bool eneg = sc.accept('-');
          e = sc.integer().get_si();
          if (eneg) e = -e;
        }
        have_root = true;
      } else if (!have_coeff) {
        throw ParseError("expected term at position " + std::to_string(sc.i) + " in \"" + text +
                         "\"");
      } else {
        throw ParseError("expected E(n) after '*' in \"" + text + "\"");
      }
    }
    Cyclotomic term = have_root ? root_of_unity(n, e) * Cyclotomic(coeff) : Cyclotomic(coeff);
    if (sign < 0) term = -term;
    total += term;
    any = true;
  }
  if (!any) throw ParseError("empty cyclotomic literal");
  return total;
}

}  // namespace blocklab
