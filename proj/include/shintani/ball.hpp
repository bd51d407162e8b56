// Midpoint-radius ball arithmetic over MPFR, in the style of Arb: the
// midpoint carries the working precision, the radius is a low-precision
// upper bound maintained with upward rounding. Every operation returns a
// ball guaranteed to contain the exact result whenever the inputs contain
// their exact operands. Operations that cannot certify a decision at the
// current precision throw BallIndeterminate, which escalation loops catch.
//
// This layer exists because no ball-arithmetic library is available in the
// build environment; it implements only what the project needs and is
// property-tested against exact rational arithmetic.

#ifndef SHINTANI_BALL_HPP_
#define SHINTANI_BALL_HPP_

#include <mpfr.h>

#include <string>
#include <vector>

#include "shintani/rational.hpp"

namespace shintani {

class RealBall {
 public:
  explicit RealBall(mpfr_prec_t prec = 64);
  RealBall(const RealBall& o);
  RealBall(RealBall&& o) noexcept;
  RealBall& operator=(const RealBall& o);
  RealBall& operator=(RealBall&& o) noexcept;
  ~RealBall();

  static RealBall from_rat(const Rat& q, mpfr_prec_t prec);
  static RealBall from_si(long v, mpfr_prec_t prec);
  // Ball covering [lo, hi] (exact mpfr endpoints).
  static RealBall from_endpoints(const mpfr_t lo, const mpfr_t hi,
                                 mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
  const mpfr_t& mid() const { return mid_; }
  const mpfr_t& rad() const { return rad_; }
  bool is_exact() const { return mpfr_zero_p(rad_); }

  // Directed endpoint extraction: rop <= inf(ball) resp. rop >= sup(ball).
  void lower(mpfr_t rop) const;
  void upper(mpfr_t rop) const;
  double lower_d() const;
  double upper_d() const;
  double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }

  // +1 when the ball is certified positive, -1 certified negative,
  // 0 when the sign is not certified (ball meets zero).
  int sign_certain() const;
  bool contains_zero() const { return sign_certain() == 0; }
  // Exact test (midpoint and radius are dyadic rationals).
  bool contains_rat(const Rat& q) const;

  std::string brief() const;  // "mid +/- rad" for diagnostics

  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  // Throws BallIndeterminate when b is not certified nonzero.
  friend RealBall operator/(const RealBall& a, const RealBall& b);

  friend RealBall abs_ball(const RealBall& a);
  // Requires the enclosed value to be nonnegative (lower endpoint clamped).
  friend RealBall sqrt_ball(const RealBall& a);
  // Throws BallIndeterminate unless certified positive.
  friend RealBall log_ball(const RealBall& a);
  friend RealBall cos_ball(const RealBall& a);
  friend RealBall sin_ball(const RealBall& a);
  friend RealBall pi_ball(mpfr_prec_t prec);
  friend RealBall arg_ball(const struct ComplexBall& z);

 private:
  void bump_radius_ulp();  // account for one rounding of mid_
  mpfr_t mid_;
  mpfr_t rad_;
};

RealBall pi_ball(mpfr_prec_t prec);

struct ComplexBall {
  RealBall re, im;

  explicit ComplexBall(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const RealBall& b);
// Throws BallIndeterminate when |b| is not certified nonzero.
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);

RealBall norm_sq_ball(const ComplexBall& z);  // |z|^2
RealBall abs_ball(const ComplexBall& z);
// Principal argument with value in (-pi, pi); throws BallIndeterminate when
// the rectangle meets the branch cut (nonpositive real axis) or the origin,
// so an exactly-real input never resolves here and must go through an exact
// path instead.
RealBall arg_ball(const ComplexBall& z);

// Certified strict comparison: true only when sup(a) < inf(b).
bool certainly_less(const RealBall& a, const RealBall& b);

// Dense ball linear algebra for small certified determinants and solves.
using BallVec = std::vector<RealBall>;
using BallMat = std::vector<BallVec>;  // row-major, rectangular

// Determinant via Gaussian elimination with largest-midpoint pivoting.
// Throws BallIndeterminate when no certified-nonzero pivot is available.
RealBall ball_det(BallMat a);
// Solution of A x = b under the same pivoting/certification rules.
BallVec ball_solve(BallMat a, BallVec b);

}  // namespace shintani

#endif  // SHINTANI_BALL_HPP_
