// Dense univariate polynomials over Q, plus the exact machinery built on
// them: Sturm sequences (real-root counting and isolation), Sylvester
// resultants, and modular factor-degree screens for irreducibility testing.
// Degrees here are tiny (field degree <= 8 in practice), so clarity wins
// over asymptotics throughout.

#ifndef SHINTANI_QPOLY_HPP_
#define SHINTANI_QPOLY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "shintani/rational.hpp"

namespace shintani {

// Coefficients low to high; normalized means no trailing zero coefficients.
// The zero polynomial is the empty vector (degree -1).
struct QPoly {
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rat& lc() const { return c.back(); }  // undefined on zero poly
  void trim();
};

QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_neg(const QPoly& a);
QPoly qp_scale(const QPoly& a, const Rat& s);
QPoly qp_derivative(const QPoly& a);
Rat qp_eval(const QPoly& a, const Rat& x);

// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b);

// Monic gcd; gcd(0,0) = 0.
QPoly qp_gcd(const QPoly& a, const QPoly& b);

// Extended gcd: returns (g, s, t) monic g with s*a + t*b = g.
struct QPolyXgcd {
  QPoly g, s, t;
};
QPolyXgcd qp_xgcd(const QPoly& a, const QPoly& b);

// Resultant via Sylvester-matrix determinant. Res(f,g) with deg f = m,
// deg g = n is the determinant of the (m+n) x (m+n) Sylvester matrix; for
// monic f it equals the product of g over the roots of f.
Rat qp_resultant(const QPoly& f, const QPoly& g);

// disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f).
Rat qp_discriminant(const QPoly& f);

// ---- Sturm machinery (exact; polynomial must be squarefree for isolation).

// Number of distinct real roots in the open interval (a, b); pass the whole
// line with a = -inf, b = +inf via count_real_roots().
int qp_count_real_roots(const QPoly& f);
int qp_count_real_roots_in(const QPoly& f, const Rat& a, const Rat& b);

// Disjoint open rational intervals (a_i, b_i), each containing exactly one
// real root, with f(a_i), f(b_i) nonzero of opposite signs, returned in
// ascending order. Requires f squarefree with no rational roots at the
// chosen endpoints (endpoints are dyadic; an exact rational root is split
// out as a degenerate [r, r] interval).
std::vector<std::pair<Rat, Rat>> qp_isolate_real_roots(const QPoly& f);

// ---- Modular screens.

// Multiset of irreducible-factor degrees of f mod p (ascending), or nullopt
// when f mod p is not usable (leading coefficient vanishes or the reduction
// is not squarefree). Uses distinct-degree factorization; never performs
// equal-degree splitting since only the degree multiset is needed.
std::optional<std::vector<int>> qp_factor_degrees_mod_p(
    const std::vector<Int>& coeffs, unsigned long p);

// Irreducibility over Q for monic integer polynomials: rational-root screen
// plus intersection of feasible factor-degree sums across small primes.
// Returns true/false when the screen decides, nullopt when inconclusive
// (callers reject inconclusive inputs with a diagnostic).
std::optional<bool> qp_irreducible_over_q(const std::vector<Int>& coeffs);

}  // namespace shintani

#endif  // SHINTANI_QPOLY_HPP_
