#include "shintani/ball.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "shintani/errors.hpp"

namespace shintani {

// Radius bookkeeping precision. 64 bits of radius is far more than needed;
// what matters is that every radius operation rounds up.
static constexpr mpfr_prec_t kRadPrec = 64;

RealBall::RealBall(mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  mpfr_set_zero(mid_, 1);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_swap(mid_, o.mid_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  if (this != &o) {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
  }
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void RealBall::bump_radius_ulp() {
  if (mpfr_zero_p(mid_)) {
    // A nonzero value rounded to zero would mean catastrophic underflow;
    // nothing in this project operates at such exponents.
    throw BallIndeterminate("rounding underflow in ball midpoint");
  }
  if (!mpfr_number_p(mid_))
    throw BallIndeterminate("non-finite ball midpoint");
  mpfr_t ulp;
  mpfr_init2(ulp, kRadPrec);
  // One full ulp of mid_ safely covers the half-ulp round-to-nearest error.
  mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_),
                   MPFR_RNDU);
  mpfr_add(rad_, rad_, ulp, MPFR_RNDU);
  mpfr_clear(ulp);
}

RealBall RealBall::from_rat(const Rat& q, mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_set_q(b.mid_, q.get_mpq_t(), MPFR_RNDN);
  if (t != 0) b.bump_radius_ulp();
  return b;
}

RealBall RealBall::from_si(long v, mpfr_prec_t prec) {
  RealBall b(prec);
  int t = mpfr_set_si(b.mid_, v, MPFR_RNDN);
  if (t != 0) b.bump_radius_ulp();
  return b;
}

RealBall RealBall::from_endpoints(const mpfr_t lo, const mpfr_t hi,
                                  mpfr_prec_t prec) {
  assert(mpfr_cmp(lo, hi) <= 0);
  RealBall b(prec);
  mpfr_add(b.mid_, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(b.mid_, b.mid_, 1, MPFR_RNDN);
  // rad >= max(mid - lo, hi - mid), with upward rounding at each step.
  mpfr_t d1, d2;
  mpfr_init2(d1, kRadPrec);
  mpfr_init2(d2, kRadPrec);
  mpfr_sub(d1, b.mid_, lo, MPFR_RNDU);
  mpfr_sub(d2, hi, b.mid_, MPFR_RNDU);
  if (mpfr_cmp(d1, d2) >= 0)
    mpfr_set(b.rad_, d1, MPFR_RNDU);
  else
    mpfr_set(b.rad_, d2, MPFR_RNDU);
  if (mpfr_sgn(b.rad_) < 0) mpfr_set_zero(b.rad_, 1);
  mpfr_clear(d1);
  mpfr_clear(d2);
  return b;
}

void RealBall::lower(mpfr_t rop) const { mpfr_sub(rop, mid_, rad_, MPFR_RNDD); }
void RealBall::upper(mpfr_t rop) const { mpfr_add(rop, mid_, rad_, MPFR_RNDU); }

double RealBall::lower_d() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  lower(t);
  double d = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return d;
}

double RealBall::upper_d() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  upper(t);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

int RealBall::sign_certain() const {
  // mid > rad  => positive; mid < -rad => negative.
  if (mpfr_zero_p(rad_)) return mpfr_sgn(mid_);
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  int s = 0;
  mpfr_sub(t, mid_, rad_, MPFR_RNDD);
  if (mpfr_sgn(t) > 0) {
    s = 1;
  } else {
    mpfr_add(t, mid_, rad_, MPFR_RNDU);
    if (mpfr_sgn(t) < 0) s = -1;
  }
  mpfr_clear(t);
  return s;
}

bool RealBall::contains_rat(const Rat& q) const {
  // Exact: dyadic midpoint/radius against an exact rational.
  Rat m, r;
  mpfr_get_q(m.get_mpq_t(), mid_);
  mpfr_get_q(r.get_mpq_t(), rad_);
  Rat d = q - m;
  if (d < 0) d = -d;
  return d <= r;
}

std::string RealBall::brief() const {
  std::ostringstream os;
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 20, mid_, MPFR_RNDN);
  os << "0." << s << "e" << e;
  mpfr_free_str(s);
  os << " +/- " << mpfr_get_d(rad_, MPFR_RNDU);
  return os.str();
}

static mpfr_prec_t join_prec(const RealBall& a, const RealBall& b) {
  return std::max(a.prec(), b.prec());
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall c(join_prec(a, b));
  int t = mpfr_add(c.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(c.rad_, a.rad_, b.rad_, MPFR_RNDU);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall c(join_prec(a, b));
  int t = mpfr_sub(c.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(c.rad_, a.rad_, b.rad_, MPFR_RNDU);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall operator-(const RealBall& a) {
  RealBall c = a;
  mpfr_neg(c.mid_, c.mid_, MPFR_RNDN);  // exact
  return c;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall c(join_prec(a, b));
  int t = mpfr_mul(c.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // rad = |ma| rb + |mb| ra + ra rb, all upward.
  mpfr_t am, bm, acc, term;
  mpfr_init2(am, kRadPrec);
  mpfr_init2(bm, kRadPrec);
  mpfr_init2(acc, kRadPrec);
  mpfr_init2(term, kRadPrec);
  mpfr_abs(am, a.mid_, MPFR_RNDU);
  mpfr_abs(bm, b.mid_, MPFR_RNDU);
  mpfr_mul(acc, am, b.rad_, MPFR_RNDU);
  mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
  mpfr_add(acc, acc, term, MPFR_RNDU);
  mpfr_mul(term, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(acc, acc, term, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, acc, MPFR_RNDU);
  mpfr_clear(am);
  mpfr_clear(bm);
  mpfr_clear(acc);
  mpfr_clear(term);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  if (b.sign_certain() == 0)
    throw BallIndeterminate("ball division by ball containing zero");
  RealBall c(join_prec(a, b));
  int t = mpfr_div(c.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |x/y - ma/mb| <= (ra |mb| + rb |ma|) / (|mb| (|mb| - rb)).
  mpfr_t am, bm, d, num, den;
  mpfr_init2(am, kRadPrec);
  mpfr_init2(bm, kRadPrec);
  mpfr_init2(d, kRadPrec);
  mpfr_init2(num, kRadPrec);
  mpfr_init2(den, kRadPrec);
  mpfr_abs(am, a.mid_, MPFR_RNDU);
  mpfr_abs(bm, b.mid_, MPFR_RNDD);  // lower bound of |mb| for denominator
  mpfr_sub(d, bm, b.rad_, MPFR_RNDD);
  if (mpfr_sgn(d) <= 0) {
    mpfr_clear(am); mpfr_clear(bm); mpfr_clear(d);
    mpfr_clear(num); mpfr_clear(den);
    throw BallIndeterminate("ball division denominator too wide");
  }
  mpfr_mul(den, bm, d, MPFR_RNDD);
  mpfr_abs(bm, b.mid_, MPFR_RNDU);  // |mb| upper for the numerator
  mpfr_mul(num, a.rad_, bm, MPFR_RNDU);
  mpfr_mul(d, b.rad_, am, MPFR_RNDU);
  mpfr_add(num, num, d, MPFR_RNDU);
  mpfr_div(num, num, den, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, num, MPFR_RNDU);
  mpfr_clear(am);
  mpfr_clear(bm);
  mpfr_clear(d);
  mpfr_clear(num);
  mpfr_clear(den);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall abs_ball(const RealBall& a) {
  int s = a.sign_certain();
  if (s > 0) return a;
  if (s < 0) return -a;
  // Straddles zero: enclose [0, |mid| + rad].
  mpfr_t zero, hi;
  mpfr_init2(zero, kRadPrec);
  mpfr_set_zero(zero, 1);
  mpfr_init2(hi, a.prec());
  mpfr_abs(hi, a.mid(), MPFR_RNDU);
  mpfr_add(hi, hi, a.rad(), MPFR_RNDU);
  RealBall r = RealBall::from_endpoints(zero, hi, a.prec());
  mpfr_clear(zero);
  mpfr_clear(hi);
  return r;
}

RealBall sqrt_ball(const RealBall& a) {
  mpfr_t lo, hi;
  mpfr_init2(lo, a.prec());
  mpfr_init2(hi, a.prec());
  a.lower(lo);
  a.upper(hi);
  if (mpfr_sgn(hi) < 0) {
    mpfr_clear(lo);
    mpfr_clear(hi);
    throw BallIndeterminate("sqrt of certainly negative ball");
  }
  if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
  mpfr_sqrt(lo, lo, MPFR_RNDD);
  mpfr_sqrt(hi, hi, MPFR_RNDU);
  RealBall r = RealBall::from_endpoints(lo, hi, a.prec());
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

RealBall log_ball(const RealBall& a) {
  if (a.sign_certain() <= 0)
    throw BallIndeterminate("log of ball not certified positive");
  mpfr_t lo, hi;
  mpfr_init2(lo, a.prec());
  mpfr_init2(hi, a.prec());
  a.lower(lo);
  a.upper(hi);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_log(hi, hi, MPFR_RNDU);
  RealBall r = RealBall::from_endpoints(lo, hi, a.prec());
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

// cos and sin are 1-Lipschitz, so the input radius carries over unchanged
// plus the rounding of the midpoint evaluation.
RealBall cos_ball(const RealBall& a) {
  RealBall c(a.prec());
  int t = mpfr_cos(c.mid_, a.mid_, MPFR_RNDN);
  mpfr_set(c.rad_, a.rad_, MPFR_RNDU);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall sin_ball(const RealBall& a) {
  RealBall c(a.prec());
  int t = mpfr_sin(c.mid_, a.mid_, MPFR_RNDN);
  mpfr_set(c.rad_, a.rad_, MPFR_RNDU);
  if (t != 0) c.bump_radius_ulp();
  return c;
}

RealBall pi_ball(mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
  if (t != 0) r.bump_radius_ulp();
  return r;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBall operator*(const ComplexBall& a, const RealBall& b) {
  return {a.re * b, a.im * b};
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  RealBall n = norm_sq_ball(b);
  // (a * conj(b)) / |b|^2
  RealBall re = a.re * b.re + a.im * b.im;
  RealBall im = a.im * b.re - a.re * b.im;
  return {re / n, im / n};
}

RealBall norm_sq_ball(const ComplexBall& z) {
  return z.re * z.re + z.im * z.im;
}

RealBall abs_ball(const ComplexBall& z) { return sqrt_ball(norm_sq_ball(z)); }

RealBall arg_ball(const ComplexBall& z) {
  const mpfr_prec_t prec = std::max(z.re.prec(), z.im.prec());
  // The rectangle must stay inside one of the half-planes on which the
  // principal argument is smooth: {x > 0}, {y > 0}, or {y < 0}.
  const int sx = z.re.sign_certain();
  const int sy = z.im.sign_certain();
  if (!(sx > 0 || sy != 0))
    throw BallIndeterminate("argument rectangle meets the branch cut");

  // Lower bound for |zeta| over the rectangle: distance from the origin to
  // the nearest rectangle point, one coordinate at a time.
  mpfr_t dx, dy, dmin;
  mpfr_init2(dx, kRadPrec);
  mpfr_init2(dy, kRadPrec);
  mpfr_init2(dmin, kRadPrec);
  if (z.re.sign_certain() > 0)
    z.re.lower(dx);
  else if (z.re.sign_certain() < 0) {
    z.re.upper(dx);
    mpfr_neg(dx, dx, MPFR_RNDD);
  } else {
    mpfr_set_zero(dx, 1);
  }
  if (sy > 0)
    z.im.lower(dy);
  else if (sy < 0) {
    z.im.upper(dy);
    mpfr_neg(dy, dy, MPFR_RNDD);
  } else {
    mpfr_set_zero(dy, 1);
  }
  mpfr_hypot(dmin, dx, dy, MPFR_RNDD);
  if (mpfr_sgn(dmin) <= 0) {
    mpfr_clear(dx); mpfr_clear(dy); mpfr_clear(dmin);
    throw BallIndeterminate("argument rectangle touches the origin");
  }

  RealBall r(prec);
  int t = mpfr_atan2(r.mid_, z.im.mid_, z.re.mid_, MPFR_RNDN);
  // |grad arg| = 1/|zeta|; segment length inside the rectangle is at most
  // rad_re + rad_im.
  mpfr_t err;
  mpfr_init2(err, kRadPrec);
  mpfr_add(err, z.re.rad_, z.im.rad_, MPFR_RNDU);
  mpfr_div(err, err, dmin, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, err, MPFR_RNDU);
  mpfr_clear(err);
  mpfr_clear(dx);
  mpfr_clear(dy);
  mpfr_clear(dmin);
  if (t != 0) r.bump_radius_ulp();
  return r;
}

bool certainly_less(const RealBall& a, const RealBall& b) {
  mpfr_t x, y;
  mpfr_init2(x, 128);
  mpfr_init2(y, 128);
  a.upper(x);
  b.lower(y);
  bool out = mpfr_cmp(x, y) < 0;
  mpfr_clear(x);
  mpfr_clear(y);
  return out;
}

RealBall ball_det(BallMat a) {
  const size_t n = a.size();
  for (const auto& row : a) {
    (void)row;
    assert(row.size() == n);
  }
  int swaps = 0;
  RealBall det = RealBall::from_si(1, n ? a[0][0].prec() : 64);
  for (size_t col = 0; col < n; ++col) {
    // Largest-midpoint pivot among certified-nonzero candidates.
    size_t piv = n;
    double best = -1;
    for (size_t i = col; i < n; ++i) {
      if (a[i][col].sign_certain() == 0) continue;
      double m = std::abs(a[i][col].mid_d());
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (piv == n)
      throw BallIndeterminate("no certified nonzero pivot in ball_det");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      ++swaps;
    }
    det = det * a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      RealBall f = a[i][col] / a[col][col];
      for (size_t j = col + 1; j < n; ++j)
        a[i][j] = a[i][j] - f * a[col][j];
    }
  }
  if (swaps % 2 != 0) det = -det;
  return det;
}

BallVec ball_solve(BallMat a, BallVec b) {
  const size_t n = a.size();
  assert(b.size() == n);
  for (const auto& row : a) {
    (void)row;
    assert(row.size() == n);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    double best = -1;
    for (size_t i = col; i < n; ++i) {
      if (a[i][col].sign_certain() == 0) continue;
      double m = std::abs(a[i][col].mid_d());
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (piv == n)
      throw BallIndeterminate("no certified nonzero pivot in ball_solve");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    for (size_t i = col + 1; i < n; ++i) {
      RealBall f = a[i][col] / a[col][col];
      for (size_t j = col + 1; j < n; ++j)
        a[i][j] = a[i][j] - f * a[col][j];
      b[i] = b[i] - f * b[col];
    }
  }
  BallVec x(n, RealBall(b.empty() ? 64 : b[0].prec()));
  for (size_t i = n; i-- > 0;) {
    RealBall acc = b[i];
    for (size_t j = i + 1; j < n; ++j) acc = acc - a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace shintani
