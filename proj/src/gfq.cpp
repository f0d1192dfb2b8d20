#include "blocklab/gfq.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace blocklab {

namespace {

std::vector<long> factor_primes(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// dense polynomials over F_p, coefficients low-to-high, trimmed
using Poly = std::vector<long>;

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, long p) {
  Poly c(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  // reduce modulo monic mod
  long dm = static_cast<long>(mod.size()) - 1;
  for (long i = static_cast<long>(c.size()) - 1; i >= dm; --i) {
    long coef = c[i];
    if (!coef) continue;
    c[i] = 0;
    for (long j = 0; j < dm; ++j) c[i - dm + j] = ((c[i - dm + j] - coef * mod[j]) % p + p) % p;
  }
  c.resize(dm);
  return c;
}

Poly poly_powmod_xq(const Poly& base, long p, long times, const Poly& mod) {
  // base^(p^times) mod (mod), by repeated p-th power
  Poly r = base;
  for (long t = 0; t < times; ++t) {
    Poly acc = {1};
    Poly sq = r;
    long e = p;
    while (e) {
      if (e & 1) acc = poly_mul_mod(acc, sq, mod, p);
      sq = poly_mul_mod(sq, sq, mod, p);
      e >>= 1;
    }
    r = acc;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, long p) {
  a = trim(a);
  b = trim(b);
  auto inv_mod_p = [&](long x) {
    long r = 1, e = p - 2, base = ((x % p) + p) % p;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // a mod b
    long db = static_cast<long>(b.size()) - 1;
    long lead_inv = inv_mod_p(b.back());
    Poly r = a;
    for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
      long coef = r[i] * lead_inv % p;
      if (!coef) continue;
      for (long j = 0; j <= db; ++j) r[i - db + j] = ((r[i - db + j] - coef * b[j]) % p + p) % p;
    }
    a = b;
    b = trim(r);
  }
  return a;
}

bool is_irreducible(const Poly& f, long p) {
  long m = static_cast<long>(f.size()) - 1;
  if (m <= 0) return false;
  Poly x = {0, 1};
  // x^(p^m) = x mod f
  Poly xq = poly_powmod_xq(x, p, m, f);
  Poly diff(std::max(xq.size(), x.size()), 0);
  for (size_t i = 0; i < xq.size(); ++i) diff[i] = xq[i];
  diff[1] = ((diff[1] - 1) % p + p) % p;
  if (!trim(diff).empty()) return false;
  for (long ell : factor_primes(m)) {
    long d = m / ell;
    Poly xd = poly_powmod_xq(x, p, d, f);
    Poly g(std::max(xd.size(), x.size()), 0);
    for (size_t i = 0; i < xd.size(); ++i) g[i] = xd[i];
    g[1] = ((g[1] - 1) % p + p) % p;
    Poly gc = poly_gcd(f, trim(g), p);
    if (gc.size() != 1) return false;
  }
  return true;
}

std::map<std::pair<long, long>, std::shared_ptr<const Gfq>> g_field_cache;
std::mutex g_field_mutex;

}  // namespace

Gfq::Gfq(long p, long m) : p_(p), m_(m) {
  if (p < 2 || m < 1) throw Error("gfq: need prime p and m >= 1");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error("gfq: p not prime");
  q_ = 1;
  for (long i = 0; i < m; ++i) {
    if (q_ > (1L << 30) / p) throw Error("gfq: field too large");
    q_ *= p;
  }
  // least monic irreducible of degree m under the element code order
  if (m == 1) {
    modulus_ = {0, 1};  // x, unused
  } else {
    modulus_.clear();
    for (long code = 0; code < q_; ++code) {
      Poly f(m + 1, 0);
      long c = code;
      for (long i = 0; i < m; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[m] = 1;
      if (is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
    if (modulus_.empty()) throw Error("gfq: no irreducible found");
  }

  // multiplication by polynomial arithmetic, used to bootstrap the tables
  auto decode = [&](long code) {
    Poly f(m_, 0);
    for (long i = 0; i < m_; ++i) {
      f[i] = code % p_;
      code /= p_;
    }
    return f;
  };
  auto encode = [&](const Poly& f) {
    long code = 0;
    for (long i = m_ - 1; i >= 0; --i) code = code * p_ + (i < static_cast<long>(f.size()) ? f[i] : 0);
    return code;
  };
  auto raw_mul = [&](long a, long b) {
    if (m_ == 1) return a * b % p_;
    Poly f = poly_mul_mod(decode(a), decode(b), modulus_, p_);
    f.resize(m_, 0);
    return encode(f);
  };

  // least generator of the multiplicative group
  auto primes = factor_primes(q_ - 1);
  auto order_is_full = [&](long a) {
    for (long ell : primes) {
      long e = (q_ - 1) / ell;
      long r = 1, base = a;
      while (e) {
        if (e & 1) r = raw_mul(r, base);
        base = raw_mul(base, base);
        e >>= 1;
      }
      if (r == 1) return false;
    }
    return true;
  };
  generator_ = 0;
  for (long a = 1; a < q_; ++a) {
    if (order_is_full(a)) {
      generator_ = a;
      break;
    }
  }
  if (!generator_) throw Error("gfq: no generator found");

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, -1);
  long cur = 1;
  for (long k = 0; k < q_ - 1; ++k) {
    exp_[k] = cur;
    log_[cur] = k;
    cur = raw_mul(cur, generator_);
  }
  if (cur != 1) throw Error("gfq: generator order check failed");
}

std::shared_ptr<const Gfq> Gfq::get(long p, long m) {
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto key = std::make_pair(p, m);
  auto it = g_field_cache.find(key);
  if (it != g_field_cache.end()) return it->second;
  auto f = std::shared_ptr<const Gfq>(new Gfq(p, m));
  g_field_cache[key] = f;
  return f;
}

long Gfq::add(long a, long b) const {
  if (m_ == 1) return (a + b) % p_;
  long r = 0, mult = 1;
  for (long i = 0; i < m_; ++i) {
    r += ((a % p_) + (b % p_)) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

long Gfq::neg(long a) const {
  if (m_ == 1) return (p_ - a) % p_;
  long r = 0, mult = 1;
  for (long i = 0; i < m_; ++i) {
    r += (p_ - (a % p_)) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

long Gfq::pow(long a, Int e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error("gfq: inverse of zero");
    return 0;
  }
  Int k = e % (q_ - 1);
  if (k < 0) k += q_ - 1;
  Int idx = Int(log_[a]) * k % (q_ - 1);
  return exp_[idx.get_si()];
}

long Gfq::multiplicative_order(long a) const {
  if (a == 0) throw Error("gfq: order of zero");
  long k = log_[a];
  return (q_ - 1) / std::gcd(q_ - 1, k);
}

long Gfq::from_rational(const Rat& r) const {
  Int den = r.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), p_))
    throw EmbeddingFailure("denominator not coprime to p in " + r.get_str());
  Int num_mod = r.get_num() % p_;
  if (num_mod < 0) num_mod += p_;
  Int den_mod = den % p_;
  long a = num_mod.get_si();
  long b = den_mod.get_si();
  if (a == 0) return 0;
  // lift integers into F_p inside F_q: codes 0..p-1 are the prime field
  long binv_p = 1;
  {
    long e = p_ - 2, base = b % p_;
    while (e) {
      if (e & 1) binv_p = binv_p * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
  }
  return a * binv_p % p_;
}

PrimeIdealEmbedding::PrimeIdealEmbedding(long p, const std::vector<long>& conductors) : p_(p) {
  long m = 1;
  for (long n : conductors) {
    if (n <= 0) throw Error("embedding: conductor must be positive");
    if (n % p == 0 || std::gcd(n, p) != 1)
      throw ConductorNotCoprime("conductor " + std::to_string(n) + " vs p = " + std::to_string(p));
    // multiplicative order of p mod n
    long r = 1 % n, ord = 0;
    do {
      r = (r * (p % n)) % n;
      ++ord;
    } while (r != 1 % n);
    m = std::lcm(m, ord);
  }
  field_ = Gfq::get(p, m);
}

long PrimeIdealEmbedding::root_image(long n) const {
  if (n % p_ == 0)
    throw ConductorNotCoprime("conductor " + std::to_string(n) + " vs p = " + std::to_string(p_));
  long q = field_->q();
  if ((q - 1) % n != 0)
    throw EmbeddingFailure("conductor " + std::to_string(n) + " does not divide q-1 = " +
                           std::to_string(q - 1) + "; declare it at construction");
  return field_->exp((q - 1) / n);
}

long PrimeIdealEmbedding::reduce(const Cyclotomic& x) const {
  long n = x.conductor();
  if (n == 1) return field_->from_rational(x.rational_value());
  long zeta = root_image(n);
  long acc = 0;
  const auto& cs = x.coefficients();
  for (size_t e = 0; e < cs.size(); ++e) {
    if (cs[e] == 0) continue;
    long term = field_->mul(field_->from_rational(cs[e]), field_->pow(zeta, Int(e)));
    acc = field_->add(acc, term);
  }
  return acc;
}

}  // namespace blocklab
