#include "shintani/number_field.hpp"

#include <cassert>
#include <utility>

#include "shintani/errors.hpp"

namespace shintani {

namespace {

// Ball covering an exact rational interval [lo, hi].
RealBall ball_from_rat_interval(const Rat& lo, const Rat& hi, long prec) {
  mpfr_t l, h;
  mpfr_init2(l, prec);
  mpfr_init2(h, prec);
  mpfr_set_q(l, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(h, hi.get_mpq_t(), MPFR_RNDU);
  RealBall b = RealBall::from_endpoints(l, h, prec);
  mpfr_clear(l);
  mpfr_clear(h);
  return b;
}

Rat pow2_inverse(long k) {  // 2^-k as an exact rational
  Int den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return Rat(Int(1), den);
}

// Exact bisection of a sign-change interval down to the requested width.
// The polynomial is irreducible of degree >= 3, so no midpoint is a root.
void bisect_to(const QPoly& f, Rat& lo, Rat& hi, const Rat& eps) {
  int slo = sign_of(qp_eval(f, lo));
  assert(slo != 0);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    int s = sign_of(qp_eval(f, mid));
    assert(s != 0);
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
}

// Newton refinement in floating point with an exact certificate at the end:
// the candidate enclosure is accepted only if it lies inside the current
// isolating interval and exhibits a sign change. Returns false (leaving the
// interval untouched) when anything about the attempt fails; the caller
// falls back to exact bisection, which cannot fail.
bool newton_attempt(const QPoly& f, const QPoly& df, Rat& lo, Rat& hi,
                    long target_bits) {
  const long work = target_bits + 64;
  mpfr_t x, num, den, step;
  mpfr_init2(x, work);
  mpfr_init2(num, work);
  mpfr_init2(den, work);
  mpfr_init2(step, work);

  Rat mid0 = (lo + hi) / 2;
  mpfr_set_q(x, mid0.get_mpq_t(), MPFR_RNDN);

  auto horner = [&](const QPoly& p, mpfr_t out) {
    mpfr_set_zero(out, 1);
    for (int i = p.degree(); i >= 0; --i) {
      mpfr_mul(out, out, x, MPFR_RNDN);
      mpfr_t cf;
      mpfr_init2(cf, work);
      mpfr_set_q(cf, p.c[static_cast<size_t>(i)].get_mpq_t(), MPFR_RNDN);
      mpfr_add(out, out, cf, MPFR_RNDN);
      mpfr_clear(cf);
    }
  };

  bool usable = true;
  for (int iter = 0; iter < 64 && usable; ++iter) {
    horner(f, num);
    horner(df, den);
    if (!mpfr_number_p(num) || !mpfr_number_p(den) || mpfr_zero_p(den)) {
      usable = false;
      break;
    }
    mpfr_div(step, num, den, MPFR_RNDN);
    mpfr_sub(x, x, step, MPFR_RNDN);
    if (!mpfr_number_p(x)) {
      usable = false;
      break;
    }
    if (mpfr_zero_p(step) ||
        (mpfr_get_exp(step) < mpfr_get_exp(x) - target_bits - 8))
      break;
  }

  bool ok = false;
  if (usable && mpfr_number_p(x)) {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), x);
    Rat d = pow2_inverse(target_bits + 2);
    Rat cand_lo = q - d, cand_hi = q + d;
    if (lo < cand_lo && cand_hi < hi) {
      int s1 = sign_of(qp_eval(f, cand_lo));
      int s2 = sign_of(qp_eval(f, cand_hi));
      if (s1 != 0 && s2 != 0 && s1 != s2) {
        lo = cand_lo;
        hi = cand_hi;
        ok = true;
      }
    }
  }
  mpfr_clear(x);
  mpfr_clear(num);
  mpfr_clear(den);
  mpfr_clear(step);
  return ok;
}

}  // namespace

NumberField::NumberField(std::vector<Int> min_poly, int tau1_im_sign)
    : tau1_im_sign_(tau1_im_sign), min_poly_(std::move(min_poly)) {
  if (tau1_im_sign_ != 1 && tau1_im_sign_ != -1)
    throw ValidationError("tau1_im_sign must be +1 or -1");
  if (min_poly_.size() < 4)
    throw ValidationError("defining polynomial must have degree at least 3");
  n_ = static_cast<int>(min_poly_.size()) - 1;
  r_ = n_ - 2;
  if (min_poly_.back() != 1)
    throw ValidationError("defining polynomial must be monic");

  auto irr = qp_irreducible_over_q(min_poly_);
  if (!irr.has_value())
    throw NotIrreducible(
        "irreducibility screen inconclusive for the defining polynomial; "
        "provide a polynomial the modular degree screen can settle");
  if (!*irr)
    throw NotIrreducible("defining polynomial is reducible over Q");

  std::vector<Rat> fc(min_poly_.size());
  for (size_t i = 0; i < min_poly_.size(); ++i) fc[i] = Rat(min_poly_[i]);
  f_ = QPoly(std::move(fc));
  disc_ = qp_discriminant(f_);

  const int real_roots = qp_count_real_roots(f_);
  if (real_roots != r_)
    throw WrongSignature("expected exactly one complex embedding pair: got " +
                         std::to_string(real_roots) + " real roots at degree " +
                         std::to_string(n_));
  root_iv_ = qp_isolate_real_roots(f_);
  assert(static_cast<int>(root_iv_.size()) == r_);
  for (const auto& iv : root_iv_) {
    (void)iv;
    // Degenerate intervals would mean a rational root; irreducibility of a
    // degree >= 3 polynomial rules that out.
    assert(iv.first < iv.second);
  }

  // Reduction table: gamma^n .. gamma^(2n-2) in power-basis coordinates.
  // gamma^n = -(a_0 + a_1 gamma + ... + a_{n-1} gamma^{n-1}).
  std::vector<Rat> cur(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) cur[static_cast<size_t>(i)] = -Rat(min_poly_[static_cast<size_t>(i)]);
  gamma_pow_.push_back(cur);
  for (int k = 1; k <= n_ - 2; ++k) {
    std::vector<Rat> next(static_cast<size_t>(n_), Rat(0));
    // multiply cur by gamma: shift, then reduce the overflow coordinate.
    Rat top = cur[static_cast<size_t>(n_ - 1)];
    for (int i = n_ - 1; i >= 1; --i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
    next[0] = Rat(0);
    for (int i = 0; i < n_; ++i)
      next[static_cast<size_t>(i)] += top * gamma_pow_[0][static_cast<size_t>(i)];
    gamma_pow_.push_back(next);
    cur = std::move(next);
  }
}

void NumberField::validate_element(const FieldElement& a) const {
  if (static_cast<int>(a.c.size()) != n_)
    throw ValidationError("field element has " + std::to_string(a.c.size()) +
                          " coordinates, expected " + std::to_string(n_));
}

FieldElement NumberField::zero() const {
  return FieldElement{std::vector<Rat>(static_cast<size_t>(n_), Rat(0))};
}

FieldElement NumberField::one() const { return from_rat(Rat(1)); }

FieldElement NumberField::gen() const {
  FieldElement g = zero();
  g.c[1] = Rat(1);
  return g;
}

FieldElement NumberField::from_rat(const Rat& q) const {
  FieldElement a = zero();
  a.c[0] = q;
  return a;
}

FieldElement NumberField::add(const FieldElement& a,
                              const FieldElement& b) const {
  validate_element(a);
  validate_element(b);
  FieldElement out = a;
  for (int i = 0; i < n_; ++i) out.c[static_cast<size_t>(i)] += b.c[static_cast<size_t>(i)];
  return out;
}

FieldElement NumberField::sub(const FieldElement& a,
                              const FieldElement& b) const {
  validate_element(a);
  validate_element(b);
  FieldElement out = a;
  for (int i = 0; i < n_; ++i) out.c[static_cast<size_t>(i)] -= b.c[static_cast<size_t>(i)];
  return out;
}

FieldElement NumberField::neg(const FieldElement& a) const {
  validate_element(a);
  FieldElement out = a;
  for (auto& x : out.c) x = -x;
  return out;
}

FieldElement NumberField::scale(const FieldElement& a, const Rat& s) const {
  validate_element(a);
  FieldElement out = a;
  for (auto& x : out.c) x *= s;
  return out;
}

FieldElement NumberField::mul(const FieldElement& a,
                              const FieldElement& b) const {
  validate_element(a);
  validate_element(b);
  // Schoolbook product, degree <= 2n-2, then fold the high part through the
  // precomputed gamma powers.
  std::vector<Rat> prod(static_cast<size_t>(2 * n_ - 1), Rat(0));
  for (int i = 0; i < n_; ++i) {
    if (a.c[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j)
      prod[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
  }
  FieldElement out = zero();
  for (int i = 0; i < n_; ++i) out.c[static_cast<size_t>(i)] = prod[static_cast<size_t>(i)];
  for (int d = n_; d <= 2 * n_ - 2; ++d) {
    const Rat& cf = prod[static_cast<size_t>(d)];
    if (cf == 0) continue;
    const auto& rep = gamma_pow_[static_cast<size_t>(d - n_)];
    for (int i = 0; i < n_; ++i) out.c[static_cast<size_t>(i)] += cf * rep[static_cast<size_t>(i)];
  }
  return out;
}

QPoly NumberField::to_poly(const FieldElement& a) const {
  return QPoly(a.c);
}

FieldElement NumberField::reduce(const QPoly& p) const {
  FieldElement out = zero();
  for (int i = 0; i <= p.degree() && i < n_; ++i) out.c[static_cast<size_t>(i)] = p.c[static_cast<size_t>(i)];
  for (int d = n_; d <= p.degree(); ++d) {
    const Rat& cf = p.c[static_cast<size_t>(d)];
    if (cf == 0) continue;
    if (d - n_ >= static_cast<int>(gamma_pow_.size()))
      throw ValidationError("reduce: degree out of supported range");
    const auto& rep = gamma_pow_[static_cast<size_t>(d - n_)];
    for (int i = 0; i < n_; ++i) out.c[static_cast<size_t>(i)] += cf * rep[static_cast<size_t>(i)];
  }
  return out;
}

FieldElement NumberField::inv(const FieldElement& a) const {
  validate_element(a);
  if (is_zero(a)) throw ValidationError("inverse of the zero element");
  QPolyXgcd x = qp_xgcd(to_poly(a), f_);
  // f irreducible and a nonzero of lower degree force gcd = 1.
  assert(x.g.degree() == 0 && x.g.c[0] == 1);
  return reduce(x.s);
}

FieldElement NumberField::pow(const FieldElement& a, long e) const {
  validate_element(a);
  if (e == 0) return one();
  FieldElement base = e < 0 ? inv(a) : a;
  unsigned long m = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL
                          : static_cast<unsigned long>(e);
  FieldElement acc = one();
  while (m > 0) {
    if (m & 1UL) acc = mul(acc, base);
    base = mul(base, base);
    m >>= 1;
  }
  return acc;
}

bool NumberField::is_zero(const FieldElement& a) const {
  validate_element(a);
  for (const auto& x : a.c)
    if (x != 0) return false;
  return true;
}

bool NumberField::equals(const FieldElement& a, const FieldElement& b) const {
  validate_element(a);
  validate_element(b);
  return a.c == b.c;
}

std::optional<Rat> NumberField::as_rational(const FieldElement& a) const {
  validate_element(a);
  for (int i = 1; i < n_; ++i)
    if (a.c[static_cast<size_t>(i)] != 0) return std::nullopt;
  return a.c[0];
}

Rat NumberField::norm(const FieldElement& a) const {
  validate_element(a);
  QMatrix m(static_cast<size_t>(n_), static_cast<size_t>(n_));
  FieldElement col = a;
  for (int j = 0; j < n_; ++j) {
    if (j > 0) col = mul(col, gen());
    for (int i = 0; i < n_; ++i) m.at(static_cast<size_t>(i), static_cast<size_t>(j)) = col.c[static_cast<size_t>(i)];
  }
  return m.det();
}

QPoly NumberField::minimal_polynomial(const FieldElement& a) const {
  validate_element(a);
  // Multiplication-by-a matrix in the power basis.
  QMatrix m(static_cast<size_t>(n_), static_cast<size_t>(n_));
  FieldElement col = a;
  for (int j = 0; j < n_; ++j) {
    if (j > 0) col = mul(col, gen());
    for (int i = 0; i < n_; ++i)
      m.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
          col.c[static_cast<size_t>(i)];
  }
  // Faddeev-LeVerrier: characteristic polynomial x^n + c_{n-1}x^{n-1}+...+c_0.
  std::vector<Rat> cp(static_cast<size_t>(n_) + 1, Rat(0));
  cp[static_cast<size_t>(n_)] = Rat(1);
  QMatrix mk = m;
  for (int kstep = 1; kstep <= n_; ++kstep) {
    if (kstep > 1) {
      QMatrix shifted = mk;
      const Rat& cprev = cp[static_cast<size_t>(n_ - kstep + 1)];
      for (int i = 0; i < n_; ++i)
        shifted.at(static_cast<size_t>(i), static_cast<size_t>(i)) += cprev;
      mk = m.mul(shifted);
    }
    Rat tr(0);
    for (int i = 0; i < n_; ++i)
      tr += mk.at(static_cast<size_t>(i), static_cast<size_t>(i));
    cp[static_cast<size_t>(n_ - kstep)] = -tr / kstep;
  }
  QPoly charpoly(std::move(cp));
  // For a field element the characteristic polynomial is minpoly^(n/d);
  // the squarefree part recovers the minimal polynomial.
  QPoly g = qp_gcd(charpoly, qp_derivative(charpoly));
  QPoly mp = qp_divmod(charpoly, g).first;
  // Normalize monic (gcd is monic, lc already 1, but keep it robust).
  return qp_scale(mp, Rat(1) / mp.lc());
}

Rat NumberField::trace(const FieldElement& a) const {
  validate_element(a);
  Rat t(0);
  FieldElement col = a;
  for (int j = 0; j < n_; ++j) {
    if (j > 0) col = mul(col, gen());
    t += col.c[static_cast<size_t>(j)];
  }
  return t;
}

std::optional<std::vector<Rat>> NumberField::solve_in_basis(
    const std::vector<FieldElement>& basis, const FieldElement& x) const {
  validate_element(x);
  if (static_cast<int>(basis.size()) != n_)
    throw ValidationError("basis must have exactly " + std::to_string(n_) +
                          " elements");
  std::vector<std::vector<Rat>> cols;
  cols.reserve(basis.size());
  for (const auto& b : basis) {
    validate_element(b);
    cols.push_back(b.c);
  }
  return QMatrix::from_columns(cols).solve(x.c);
}

int NumberField::rank_of_span(const std::vector<FieldElement>& elems) const {
  if (elems.empty()) return 0;
  std::vector<std::vector<Rat>> cols;
  cols.reserve(elems.size());
  for (const auto& e : elems) {
    validate_element(e);
    cols.push_back(e.c);
  }
  return static_cast<int>(QMatrix::from_columns(cols).rank());
}

void NumberField::ensure_roots(long prec) const {
  if (prec <= root_prec_) return;
  const long target = prec + 8;
  const Rat eps = pow2_inverse(target);
  QPoly df = qp_derivative(f_);
  for (auto& iv : root_iv_) {
    if (iv.second - iv.first <= eps) continue;
    // A short exact bisection run gets Newton a safe starting point.
    Rat coarse = pow2_inverse(24);
    if (iv.second - iv.first > coarse) bisect_to(f_, iv.first, iv.second, coarse);
    if (iv.second - iv.first <= eps) continue;
    if (!newton_attempt(f_, df, iv.first, iv.second, target))
      bisect_to(f_, iv.first, iv.second, eps);
  }
  root_prec_ = prec;
}

RealBall NumberField::real_root_ball(int j, long prec) const {
  assert(j >= 0 && j < r_);
  ensure_roots(prec);
  const auto& iv = root_iv_[static_cast<size_t>(j)];
  return ball_from_rat_interval(iv.first, iv.second, prec + 32);
}

ComplexBall NumberField::complex_root_ball(long prec) const {
  // Symmetric-function identities pin the conjugate pair from the real
  // roots: the root sum is -a_{n-1} and the root product is (-1)^n a_0.
  const long work = prec + 32;
  RealBall sum = RealBall::from_si(0, work);
  RealBall prod = RealBall::from_si(1, work);
  for (int j = 0; j < r_; ++j) {
    RealBall rho = real_root_ball(j, prec);
    sum = sum + rho;
    prod = prod * rho;
  }
  RealBall a_top = RealBall::from_rat(Rat(min_poly_[static_cast<size_t>(n_ - 1)]), work);
  RealBall re = (RealBall::from_si(0, work) - a_top - sum) *
                RealBall::from_rat(Rat(1, 2), work);
  Rat signed_a0 = Rat(min_poly_[0]);
  if (n_ % 2 != 0) signed_a0 = -signed_a0;
  // prod certified nonzero once the enclosures are tight enough; if it is
  // not, the division throws and the caller escalates.
  RealBall norm_sq = RealBall::from_rat(signed_a0, work) / prod;
  RealBall im_sq = norm_sq - re * re;
  RealBall im = sqrt_ball(im_sq);
  if (tau1_im_sign_ < 0) im = RealBall::from_si(0, work) - im;
  return ComplexBall(std::move(re), std::move(im));
}

ComplexBall NumberField::embed_complex(const FieldElement& a, long prec) const {
  validate_element(a);
  const long work = prec + 32;
  ComplexBall z = complex_root_ball(prec);
  ComplexBall acc(RealBall::from_rat(a.c[static_cast<size_t>(n_ - 1)], work),
                  RealBall::from_si(0, work));
  for (int i = n_ - 2; i >= 0; --i) {
    acc = acc * z;
    acc.re = acc.re + RealBall::from_rat(a.c[static_cast<size_t>(i)], work);
  }
  return acc;
}

RealBall NumberField::embed_real(const FieldElement& a, int j, long prec) const {
  validate_element(a);
  if (j < 0 || j >= r_) throw ValidationError("real embedding index out of range");
  const long work = prec + 32;
  RealBall x = real_root_ball(j, prec);
  RealBall acc = RealBall::from_rat(a.c[static_cast<size_t>(n_ - 1)], work);
  for (int i = n_ - 2; i >= 0; --i)
    acc = acc * x + RealBall::from_rat(a.c[static_cast<size_t>(i)], work);
  return acc;
}

EmbeddingPoint NumberField::embed(const FieldElement& a, long prec) const {
  EmbeddingPoint p{embed_complex(a, prec), {}};
  p.reals.reserve(static_cast<size_t>(r_));
  for (int j = 0; j < r_; ++j) p.reals.push_back(embed_real(a, j, prec));
  return p;
}

BallVec NumberField::minkowski(const FieldElement& a, long prec) const {
  EmbeddingPoint p = embed(a, prec);
  BallVec v;
  v.reserve(static_cast<size_t>(n_));
  v.push_back(p.z.re);
  v.push_back(p.z.im);
  for (auto& x : p.reals) v.push_back(std::move(x));
  return v;
}

BallVec NumberField::log_abs_first(const FieldElement& a, int count,
                                   long prec) const {
  if (count < 1 || count > r_ + 1)
    throw ValidationError("log_abs_first: embedding count out of range");
  BallVec v;
  v.reserve(static_cast<size_t>(count));
  v.push_back(log_ball(abs_ball(embed_complex(a, prec))));
  for (int j = 0; j + 1 < count; ++j)
    v.push_back(log_ball(abs_ball(embed_real(a, j, prec))));
  return v;
}

int NumberField::minkowski_basis_det_sign(const PrecisionPolicy& policy) const {
  if (basis_det_sign_ != 0) return basis_det_sign_;
  int s = with_escalating_precision(
      policy, "Minkowski power-basis determinant", [&](long prec) {
        BallMat m(static_cast<size_t>(n_), BallVec());
        std::vector<BallVec> cols;
        FieldElement g = one();
        for (int j = 0; j < n_; ++j) {
          if (j > 0) g = mul(g, gen());
          cols.push_back(minkowski(g, prec));
        }
        for (int i = 0; i < n_; ++i) {
          m[static_cast<size_t>(i)].clear();
          for (int j = 0; j < n_; ++j) m[static_cast<size_t>(i)].push_back(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        }
        RealBall d = ball_det(std::move(m));
        int sign = d.sign_certain();
        if (sign == 0)
          throw BallIndeterminate("basis determinant sign not separated");
        return sign;
      });
  basis_det_sign_ = s;
  return basis_det_sign_;
}

int NumberField::real_embedding_sign(const FieldElement& a, int j,
                                     const PrecisionPolicy& policy) const {
  validate_element(a);
  return certified_sign(
      policy, "real embedding " + std::to_string(j + 2),
      [&](long prec) { return embed_real(a, j, prec); },
      [&]() { return is_zero(a); });
}

bool NumberField::is_totally_positive(const FieldElement& a,
                                      const PrecisionPolicy& policy) const {
  validate_element(a);
  if (is_zero(a)) return false;
  if (auto q = as_rational(a)) return *q > 0;
  for (int j = 0; j < r_; ++j)
    if (real_embedding_sign(a, j, policy) <= 0) return false;
  return true;
}

}  // namespace shintani
