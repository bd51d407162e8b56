#include "shintani/qpoly.hpp"

#include <algorithm>
#include <cassert>

#include "shintani/errors.hpp"
#include "shintani/qmatrix.hpp"

namespace shintani {

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return QPoly(std::move(r));
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return QPoly(std::move(r));
}

QPoly qp_neg(const QPoly& a) {
  QPoly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

QPoly qp_scale(const QPoly& a, const Rat& s) {
  if (s == 0) return QPoly();
  QPoly r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return QPoly(std::move(r));
}

QPoly qp_derivative(const QPoly& a) {
  if (a.c.size() <= 1) return QPoly();
  std::vector<Rat> r(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * Rat(static_cast<long>(i));
  return QPoly(std::move(r));
}

Rat qp_eval(const QPoly& a, const Rat& x) {
  Rat acc(0);
  for (size_t i = a.c.size(); i-- > 0;) acc = acc * x + a.c[i];
  return acc;
}

std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
  assert(!b.is_zero());
  QPoly rem = a;
  if (a.degree() < b.degree()) return {QPoly(), rem};
  std::vector<Rat> quot(a.degree() - b.degree() + 1, Rat(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const int k = rem.degree() - b.degree();
    Rat f = rem.lc() / b.lc();
    quot[k] = f;
    for (int i = 0; i <= b.degree(); ++i) rem.c[k + i] -= f * b.c[i];
    rem.trim();
  }
  return {QPoly(std::move(quot)), rem};
}

static QPoly qp_monic(const QPoly& a) {
  if (a.is_zero()) return a;
  return qp_scale(a, Rat(1) / a.lc());
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = qp_divmod(x, y).second;
    x = y;
    y = r;
  }
  return qp_monic(x);
}

QPolyXgcd qp_xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0(std::vector<Rat>{Rat(1)}), s1;
  QPoly t0, t1(std::vector<Rat>{Rat(1)});
  while (!r1.is_zero()) {
    auto [q, r2] = qp_divmod(r0, r1);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    QPoly t2 = qp_sub(t0, qp_mul(q, t1));
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rat inv = Rat(1) / r0.lc();
  return {qp_scale(r0, inv), qp_scale(s0, inv), qp_scale(t0, inv)};
}

Rat qp_resultant(const QPoly& f, const QPoly& g) {
  const int m = f.degree(), n = g.degree();
  assert(m >= 0 && n >= 0);
  if (m == 0) {
    Rat r(1);
    for (int i = 0; i < n; ++i) r *= f.c[0];
    return r;
  }
  if (n == 0) {
    Rat r(1);
    for (int i = 0; i < m; ++i) r *= g.c[0];
    return r;
  }
  // Sylvester matrix: n rows of shifted f above m rows of shifted g.
  QMatrix s(m + n, m + n);
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) s.at(row, row + (m - i)) = f.c[i];
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) s.at(n + row, row + (n - i)) = g.c[i];
  return s.det();
}

Rat qp_discriminant(const QPoly& f) {
  const int n = f.degree();
  assert(n >= 1);
  Rat res = qp_resultant(f, qp_derivative(f));
  Rat d = res / f.lc();
  if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
  return d;
}

// ---- Sturm sequences.

// Chain members are rescaled to |lc| = 1; positive scaling keeps all the
// sign information the chain carries.
static std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain;
  QPoly a = f, b = qp_derivative(f);
  a = qp_scale(a, Rat(1) / abs(a.lc()));
  chain.push_back(a);
  while (!b.is_zero()) {
    b = qp_scale(b, Rat(1) / abs(b.lc()));
    chain.push_back(b);
    QPoly r = qp_neg(qp_divmod(a, b).second);
    a = b;
    b = r;
  }
  return chain;
}

static int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

static int variations_at(const std::vector<QPoly>& chain, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(sign_of(qp_eval(p, x)));
  return variations(signs);
}

static int variations_at_inf(const std::vector<QPoly>& chain, int dir) {
  // dir = +1 for +infinity, -1 for -infinity.
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    if (p.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sign_of(p.lc());
    if (dir < 0 && p.degree() % 2 != 0) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

int qp_count_real_roots(const QPoly& f) {
  if (f.degree() <= 0) return 0;
  auto chain = sturm_chain(f);
  return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

int qp_count_real_roots_in(const QPoly& f, const Rat& a, const Rat& b) {
  if (f.degree() <= 0) return 0;
  auto chain = sturm_chain(f);
  // Counts roots in (a, b]; subtract b if it is a root to get the open count.
  int n = variations_at(chain, a) - variations_at(chain, b);
  if (qp_eval(f, b) == 0) --n;
  return n;
}

// All real roots lie strictly inside (-B, B) for the Cauchy bound B.
static Rat cauchy_bound(const QPoly& f) {
  Rat m(0);
  for (int i = 0; i < f.degree(); ++i) {
    Rat a = abs(f.c[i] / f.lc());
    if (a > m) m = a;
  }
  return m + 1;
}

static void isolate_rec(const QPoly& f, const std::vector<QPoly>& chain,
                        const Rat& a, const Rat& b, int count,
                        std::vector<std::pair<Rat, Rat>>& out) {
  if (count <= 0) return;
  // Both endpoint checks matter: a previously split-out rational root can
  // reappear as the left endpoint of the next half-interval.
  if (count == 1 && qp_eval(f, a) != 0 && qp_eval(f, b) != 0) {
    out.emplace_back(a, b);
    return;
  }
  Rat mid = (a + b) / 2;
  bool mid_root = (qp_eval(f, mid) == 0);
  // Variation differences count roots in half-open (x, y] intervals.
  int va = variations_at(chain, a);
  int vm = variations_at(chain, mid);
  int left = va - vm - (mid_root ? 1 : 0);
  int right = count - left - (mid_root ? 1 : 0);
  isolate_rec(f, chain, a, mid, left, out);
  if (mid_root) out.emplace_back(mid, mid);
  isolate_rec(f, chain, mid, b, right, out);
}

std::vector<std::pair<Rat, Rat>> qp_isolate_real_roots(const QPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() <= 0) return out;
  auto chain = sturm_chain(f);
  Rat bound = cauchy_bound(f);
  int total = variations_at(chain, -bound) - variations_at(chain, bound);
  isolate_rec(f, chain, -bound, bound, total, out);
  return out;
}

// ---- GF(p) polynomial helpers for the modular screens. Coefficients are
// kept in uint64; p stays far below 2^31 so products never overflow.

namespace {

using GfPoly = std::vector<unsigned long>;

void gf_trim(GfPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

GfPoly gf_mod(GfPoly a, const GfPoly& m, unsigned long p) {
  // m must be monic.
  gf_trim(a);
  while (a.size() >= m.size()) {
    unsigned long f = a.back();
    size_t shift = a.size() - m.size();
    if (f != 0) {
      for (size_t i = 0; i < m.size(); ++i) {
        unsigned long sub = (m[i] * f) % p;
        size_t k = shift + i;
        a[k] = (a[k] + p - sub) % p;
      }
    }
    a.pop_back();
    gf_trim(a);
  }
  return a;
}

GfPoly gf_mulmod(const GfPoly& a, const GfPoly& b, const GfPoly& m,
                 unsigned long p) {
  if (a.empty() || b.empty()) return {};
  GfPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return gf_mod(std::move(r), m, p);
}

GfPoly gf_powmod(GfPoly base, unsigned long e, const GfPoly& m,
                 unsigned long p) {
  GfPoly result{1};
  base = gf_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = gf_mulmod(result, base, m, p);
    base = gf_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

GfPoly gf_gcd(GfPoly a, GfPoly b, unsigned long p) {
  gf_trim(a);
  gf_trim(b);
  while (!b.empty()) {
    // Make b monic before reducing so gf_mod applies.
    unsigned long lc = b.back();
    if (lc != 1) {
      // Modular inverse by Fermat.
      unsigned long inv = 1, x = lc, e = p - 2;
      while (e > 0) {
        if (e & 1) inv = (inv * x) % p;
        x = (x * x) % p;
        e >>= 1;
      }
      for (auto& ci : b) ci = (ci * inv) % p;
    }
    GfPoly r = gf_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

GfPoly gf_derivative(const GfPoly& a, unsigned long p) {
  if (a.size() <= 1) return {};
  GfPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * (i % p)) % p;
  gf_trim(r);
  return r;
}

GfPoly gf_divexact(const GfPoly& a, const GfPoly& b, unsigned long p) {
  // b monic divisor of a.
  GfPoly rem = a, quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  gf_trim(rem);
  while (rem.size() >= b.size()) {
    unsigned long f = rem.back();
    size_t shift = rem.size() - b.size();
    quot[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      unsigned long sub = (b[i] * f) % p;
      rem[shift + i] = (rem[shift + i] + p - sub) % p;
    }
    gf_trim(rem);
  }
  gf_trim(quot);
  return quot;
}

}  // namespace

std::optional<std::vector<int>> qp_factor_degrees_mod_p(
    const std::vector<Int>& coeffs, unsigned long p) {
  if (coeffs.empty()) return std::nullopt;
  GfPoly f(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    Int c = coeffs[i] % static_cast<long>(p);
    if (c < 0) c += static_cast<long>(p);
    f[i] = c.get_ui();
  }
  gf_trim(f);
  if (f.size() != coeffs.size()) return std::nullopt;  // leading coeff vanished
  // Make monic.
  if (f.back() != 1) {
    unsigned long inv = 1, x = f.back(), e = p - 2;
    while (e > 0) {
      if (e & 1) inv = (inv * x) % p;
      x = (x * x) % p;
      e >>= 1;
    }
    for (auto& ci : f) ci = (ci * inv) % p;
  }
  GfPoly g = gf_gcd(f, gf_derivative(f, p), p);
  if (g.size() != 1) return std::nullopt;  // not squarefree mod p

  // Distinct-degree factorization; only degrees are collected.
  std::vector<int> degrees;
  GfPoly v = f;
  GfPoly h{0, 1};  // x
  int d = 0;
  while (static_cast<int>(v.size()) - 1 > 0) {
    ++d;
    if (2 * d > static_cast<int>(v.size()) - 1) {
      degrees.push_back(static_cast<int>(v.size()) - 1);
      break;
    }
    h = gf_powmod(std::move(h), p, v, p);
    GfPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;  // h - x
    gf_trim(hx);
    GfPoly gd = gf_gcd(v, hx, p);
    if (gd.size() > 1) {
      int deg = static_cast<int>(gd.size()) - 1;
      for (int i = 0; i < deg / d; ++i) degrees.push_back(d);
      // Normalize gd monic (gf_gcd returns unnormalized leading coeff).
      unsigned long lc = gd.back();
      if (lc != 1) {
        unsigned long inv = 1, x = lc, e = p - 2;
        while (e > 0) {
          if (e & 1) inv = (inv * x) % p;
          x = (x * x) % p;
          e >>= 1;
        }
        for (auto& ci : gd) ci = (ci * inv) % p;
      }
      v = gf_divexact(v, gd, p);
      h = gf_mod(std::move(h), v, p);
    }
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::optional<bool> qp_irreducible_over_q(const std::vector<Int>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  assert(coeffs[n] == 1);  // callers pass monic polynomials
  if (coeffs[0] == 0) return false;  // divisible by x

  // Rational-root screen: a rational root of a monic integer polynomial is
  // an integer dividing the constant term.
  QPoly f;
  f.c.reserve(coeffs.size());
  for (const auto& c : coeffs) f.c.emplace_back(c);
  f.trim();
  Int a0 = abs(coeffs[0]);
  if (a0 <= 1000000) {
    for (Int d(1); d * d <= a0; ++d) {
      if (a0 % d != 0) continue;
      const Int cofactor = a0 / d;
      for (const Int& cand : {d, cofactor}) {
        if (qp_eval(f, Rat(cand)) == 0) return false;
        if (qp_eval(f, Rat(-cand)) == 0) return false;
      }
    }
  }

  static const unsigned long kPrimes[] = {
      2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
      47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
      109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

  // feasible[d] = true while a proper factor of degree d is still possible.
  std::vector<bool> feasible(n, true);
  feasible[0] = false;
  for (unsigned long p : kPrimes) {
    auto degrees = qp_factor_degrees_mod_p(coeffs, p);
    if (!degrees) continue;
    if (degrees->size() == 1) return true;  // irreducible mod p
    // Subset sums of the degree multiset are the only possible factor
    // degrees over Q.
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (int d : *degrees)
      for (int s = n; s >= d; --s)
        if (sums[s - d]) sums[s] = true;
    bool any = false;
    for (int d = 1; d < n; ++d) {
      if (!sums[d]) feasible[d] = false;
      if (feasible[d]) any = true;
    }
    if (!any) return true;  // no proper factor degree survives
  }
  return std::nullopt;  // screen inconclusive
}

}  // namespace shintani
