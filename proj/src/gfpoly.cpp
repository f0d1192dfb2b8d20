#include "blocklab/gfpoly.hpp"

#include <algorithm>
#include <sstream>

namespace blocklab {
namespace gfpoly {

GfPoly trim(GfPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

long degree(const GfPoly& f) { return static_cast<long>(f.size()) - 1; }

bool is_zero(const GfPoly& f) {
  for (uint8_t c : f)
    if (c) return false;
  return true;
}

GfPoly one() { return {1}; }
GfPoly x() { return {0, 1}; }

GfPoly add(const Gfq& f, const GfPoly& a, const GfPoly& b) {
  GfPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long v = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    c[i] = static_cast<uint8_t>(v);
  }
  return trim(c);
}

GfPoly sub(const Gfq& f, const GfPoly& a, const GfPoly& b) {
  GfPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    long v = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    c[i] = static_cast<uint8_t>(v);
  }
  return trim(c);
}

GfPoly mul(const Gfq& f, const GfPoly& a, const GfPoly& b) {
  if (is_zero(a) || is_zero(b)) return {};
  GfPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) c[i + j] = static_cast<uint8_t>(f.add(c[i + j], f.mul(a[i], b[j])));
  }
  return trim(c);
}

GfPoly scale(const Gfq& f, const GfPoly& a, long c) {
  GfPoly r = a;
  for (auto& v : r) v = static_cast<uint8_t>(f.mul(v, c));
  return trim(r);
}

GfPoly monic(const Gfq& f, const GfPoly& a) {
  GfPoly t = trim(a);
  if (t.empty()) return t;
  return scale(f, t, f.inv(t.back()));
}

std::pair<GfPoly, GfPoly> divmod(const Gfq& f, const GfPoly& a0, const GfPoly& b0) {
  GfPoly a = trim(a0), b = trim(b0);
  if (b.empty()) throw Error("poly division by zero");
  if (a.size() < b.size()) return {GfPoly{}, a};
  GfPoly q(a.size() - b.size() + 1, 0);
  long lead_inv = f.inv(b.back());
  for (long i = static_cast<long>(a.size()) - 1; i >= static_cast<long>(b.size()) - 1; --i) {
    uint8_t c = static_cast<uint8_t>(f.mul(a[i], lead_inv));
    if (!c) continue;
    long shift = i - (static_cast<long>(b.size()) - 1);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[shift + j] = static_cast<uint8_t>(f.sub(a[shift + j], f.mul(c, b[j])));
  }
  return {trim(q), trim(a)};
}

GfPoly mod(const Gfq& f, const GfPoly& a, const GfPoly& b) { return divmod(f, a, b).second; }

GfPoly gcd(const Gfq& f, GfPoly a, GfPoly b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    GfPoly r = mod(f, a, b);
    a = b;
    b = r;
  }
  return monic(f, a);
}

GfPoly lcm(const Gfq& f, const GfPoly& a, const GfPoly& b) {
  if (is_zero(a) || is_zero(b)) return {};
  GfPoly g = gcd(f, a, b);
  return monic(f, divmod(f, mul(f, a, b), g).first);
}

GfPoly derivative(const Gfq& f, const GfPoly& a) {
  if (a.size() < 2) return {};
  GfPoly d(a.size() - 1, 0);
  for (size_t i = 1; i < a.size(); ++i) {
    long coef = 0;
    for (long rep = 0; rep < static_cast<long>(i % f.p()); ++rep) coef = f.add(coef, a[i]);
    // i * a_i in the prime field times the coefficient
    d[i - 1] = static_cast<uint8_t>(coef);
  }
  return trim(d);
}

GfPoly powmod(const Gfq& f, GfPoly base, Int e, const GfPoly& m) {
  base = mod(f, base, m);
  GfPoly acc{1};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = mod(f, mul(f, acc, base), m);
    base = mod(f, mul(f, base, base), m);
    e >>= 1;
  }
  return acc;
}

long eval(const Gfq& f, const GfPoly& a, long x) {
  long acc = 0;
  for (long i = static_cast<long>(a.size()) - 1; i >= 0; --i) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

GfPoly invmod(const Gfq& f, const GfPoly& a, const GfPoly& m) {
  // extended euclid on (a, m)
  GfPoly r0 = trim(m), r1 = mod(f, a, m);
  GfPoly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r2] = divmod(f, r0, r1);
    GfPoly s2 = sub(f, s0, mul(f, q, s1));
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (degree(r0) != 0) throw Error("poly invmod: not coprime");
  return scale(f, s0, f.inv(r0[0]));
}

namespace {

// p-th root of a polynomial in x^p (coefficientwise q/p power)
GfPoly pth_root(const Gfq& f, const GfPoly& a) {
  long p = f.p();
  GfPoly r(a.size() / p + 1, 0);
  Int root_exp = Int(f.q()) / p;  // a^(q/p) is the p-th root in F_q
  for (size_t i = 0; i < a.size(); i += p)
    r[i / p] = static_cast<uint8_t>(f.pow(a[i], root_exp));
  return trim(r);
}

void squarefree_decompose(const Gfq& f, const GfPoly& a, long mult,
                          std::vector<std::pair<GfPoly, long>>& out) {
  GfPoly g = monic(f, a);
  if (degree(g) <= 0) return;
  GfPoly d = derivative(f, g);
  if (is_zero(d)) {
    squarefree_decompose(f, pth_root(f, g), mult * f.p(), out);
    return;
  }
  GfPoly c = gcd(f, g, d);
  GfPoly w = divmod(f, g, c).first;  // squarefree part
  long i = 1;
  while (degree(w) > 0) {
    GfPoly y = gcd(f, w, c);
    GfPoly piece = divmod(f, w, y).first;
    if (degree(piece) > 0) out.emplace_back(monic(f, piece), mult * i);
    w = y;
    c = divmod(f, c, y).first;
    ++i;
  }
  if (degree(c) > 0) squarefree_decompose(f, c, mult, out);
}

// split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus)
void equal_degree_split(const std::shared_ptr<const Gfq>& fptr, const GfPoly& a, long d,
                        Rng& rng, std::vector<GfPoly>& out) {
  const Gfq& f = *fptr;
  if (degree(a) == d) {
    out.push_back(monic(f, a));
    return;
  }
  // random r, gcd(r^((q^d-1)/2) - 1, a) splits with probability about 1/2
  for (int tries = 0; tries < 256; ++tries) {
    GfPoly r(degree(a), 0);
    for (auto& c : r) c = static_cast<uint8_t>(rng.below(f.q()));
    r = trim(r);
    if (degree(r) < 1) continue;
    Int e = (int_pow(Int(f.q()), d) - 1) / 2;
    GfPoly pw = powmod(f, r, e, a);
    pw = sub(f, pw, one());
    GfPoly g = gcd(f, pw, a);
    if (degree(g) > 0 && degree(g) < degree(a)) {
      equal_degree_split(fptr, g, d, rng, out);
      equal_degree_split(fptr, divmod(f, a, g).first, d, rng, out);
      return;
    }
  }
  throw SplitBudgetExceeded("equal-degree splitting stalled");
}

}  // namespace

std::vector<Factor> factor(const std::shared_ptr<const Gfq>& fptr, const GfPoly& a, Rng& rng) {
  const Gfq& f = *fptr;
  GfPoly g = trim(a);
  if (degree(g) < 1) throw Error("factor: constant polynomial");
  std::vector<std::pair<GfPoly, long>> sqf;
  squarefree_decompose(f, g, 1, sqf);
  std::vector<Factor> out;
  for (const auto& [part, mult] : sqf) {
    // distinct-degree on the squarefree part
    GfPoly rem = part;
    GfPoly h = x();
    for (long d = 1; degree(rem) > 0 && d <= degree(rem); ++d) {
      // h = x^(q^d) mod rem
      h = powmod(f, h, Int(f.q()), rem);
      GfPoly hx = sub(f, h, x());
      GfPoly gd = gcd(f, hx, rem);
      if (degree(gd) > 0) {
        std::vector<GfPoly> pieces;
        equal_degree_split(fptr, gd, d, rng, pieces);
        for (auto& p : pieces) out.push_back({p, mult});
        rem = divmod(f, rem, gd).first;
        h = mod(f, h, rem);
      }
      if (degree(rem) > 0 && 2 * (d + 1) > degree(rem) + 1) {
        // what remains is irreducible
        out.push_back({monic(f, rem), mult});
        rem = one();
        break;
      }
    }
    if (degree(rem) > 0) out.push_back({monic(f, rem), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& u, const Factor& v) {
    if (u.poly.size() != v.poly.size()) return u.poly.size() < v.poly.size();
    if (u.poly != v.poly) return u.poly < v.poly;
    return u.multiplicity < v.multiplicity;
  });
  return out;
}

std::string to_string(const GfPoly& a) {
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(a.size()) - 1; i >= 0; --i) {
    if (!a[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || a[i] != 1) os << static_cast<int>(a[i]);
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace gfpoly
}  // namespace blocklab
