// Construction of a signed fundamental domain for the action of a group of
// totally positive units on C* x R_+^r, for a number field with exactly one
// conjugate pair of complex embeddings.
//
// The construction enumerates labels mu = (sigma, q, n) over
// S_r x {1..r+1} x {0..N-1} and attaches to each a simplicial cone spanned
// by r+2 field elements, a weight in {-1, 0, +1}, and per-generator closure
// flags. The key scalar invariant is
//     m(z) = ceil(-N arg(z) / 2pi),   arg in [-pi, pi),
// computed on certified complex enclosures with an exact fallback for
// elements whose tau_1 image is provably real.

#ifndef SHINTANI_DOMAIN_HPP_
#define SHINTANI_DOMAIN_HPP_

#include <functional>
#include <string>
#include <vector>

#include "shintani/number_field.hpp"
#include "shintani/precision.hpp"

namespace shintani {

// Cone label: a permutation of {1..r} in one-line notation (sigma[i] is the
// image of i+1), an index q in {1..r+1}, and a shift n in {0..N-1}.
struct Mu {
  std::vector<int> sigma;
  int q = 1;
  int n = 0;
};

std::string mu_label(const Mu& mu);  // e.g. "sigma=(2,1) q=1 n=0"
int permutation_sign(const std::vector<int>& sigma);

struct UnitSystem {
  std::vector<FieldElement> eps;  // r independent totally positive units
  int regulator_sign = 0;         // sign of det(Log eps_1 ... Log eps_r)
};

// alpha[t] for t = 0..N-1, extended to all integer indices by period N.
struct AlphaTable {
  int N = 3;
  std::vector<FieldElement> alpha;

  const FieldElement& at(int idx) const {
    int m = idx % N;
    if (m < 0) m += N;
    return alpha[static_cast<size_t>(m)];
  }
};

struct SignedCone {
  Mu mu;
  std::vector<FieldElement> gens;  // f_{1,mu} .. f_{r+2,mu}
  int weight = 0;                  // -1, 0, +1
  // closed[i]: generator i gets the closed ray [0,inf); open means (0,inf).
  // Populated only when weight != 0.
  std::vector<int> closed;
};

struct SignedDomain {
  int N = 3;
  UnitSystem units;
  AlphaTable alphas;
  std::vector<SignedCone> cones;  // sigma lex, then q ascending, n ascending
};

// Per-sigma order data shared by all (q, n) cones of that sigma.
struct SigmaOrder {
  std::vector<int> sigma;
  std::vector<FieldElement> f;            // f_{t,sigma}, index t-1, t = 1..r+1
  std::vector<std::vector<int>> m_pair;   // m(xi_sigma(t,t')), indices t-1,t'-1
  std::vector<int> m_xi;                  // m(xi_sigma(t)) = m_pair[r][t-1]
  std::vector<std::vector<char>> prec;    // prec[t-1][t'-1]: t precedes t'
  std::vector<int> rho;                   // rho[q-1] = rho_sigma(q), q = 1..r+1
};

// m(z) = ceil(-N arg(z) / 2pi) for an explicit nonzero complex number.
// eval(prec) returns an enclosure of z at the requested precision. When
// enclosures keep straddling the real axis, exact_real_sign() is consulted:
// it must return the sign of z if z is provably real, else 0 to keep
// escalating. Public so the congruence laws the construction relies on can
// be property-tested on synthetic inputs.
int m_of_complex(const std::function<ComplexBall(long)>& eval, int N,
                 const PrecisionPolicy& policy,
                 const std::function<int()>& exact_real_sign);

// m(tau_1(x)) for nonzero x. Certified enclosure path with exact fallback
// when the minimal polynomial of x is totally real (tau_1(x) then being a
// real algebraic number of certifiable sign).
int m_of(const NumberField& k, const FieldElement& x, int N,
         const PrecisionPolicy& policy);

// Validates unit count, unit norms (+-1), total positivity, and certifies
// the regulator sign. Throws ValidationError / PrecisionExhausted.
UnitSystem make_unit_system(const NumberField& k,
                            std::vector<FieldElement> eps,
                            const PrecisionPolicy& policy);

// True when alpha is admissible for residue index t mod N: totally positive
// with arg(tau_1(alpha) exp(-2 pi i t / N)) in (-pi/2N, pi/2N).
bool alpha_window_ok(const NumberField& k, const FieldElement& alpha, int t,
                     int N, const PrecisionPolicy& policy);

// Validates a full table of N alphas (throws ValidationError), or selects
// one deterministically: coordinate vectors are scanned by increasing
// max-norm shell, lexicographically within a shell, first admissible wins.
AlphaTable make_alpha_table(const NumberField& k, int N,
                            std::vector<FieldElement> alphas,
                            const PrecisionPolicy& policy);
AlphaTable auto_select_alphas(const NumberField& k, int N, int search_bound,
                              const PrecisionPolicy& policy);

// Computes f_{t,sigma}, the m invariants, the order relation (validated
// exhaustively as a strict total order; OrderViolation otherwise), and rho.
SigmaOrder build_sigma_order(const NumberField& k, const UnitSystem& units,
                             const std::vector<int>& sigma, int N,
                             const PrecisionPolicy& policy);

// Generators f_{1,mu}..f_{r+2,mu} for one cone label.
std::vector<FieldElement> build_generators(const NumberField& k,
                                           const AlphaTable& alphas,
                                           const SigmaOrder& order,
                                           const Mu& mu);

// Weight of a cone: 0 when the generators are Q-linearly dependent, else
// sgn(sigma) * sign det(Psi generators) / sign det(Log units), with the
// embedding determinant factored exactly through the power basis.
int cone_weight(const NumberField& k, const UnitSystem& units,
                const std::vector<FieldElement>& gens,
                const std::vector<int>& sigma, const PrecisionPolicy& policy);

// Closure flags: closed[i] iff the coefficient of generator i in the
// expansion of e_{r+2} = (0,...,0,1) is positive. Requires full-rank
// generators (ZeroCoefficient otherwise); certifies every coefficient sign.
std::vector<int> closure_flags(const NumberField& k,
                               const std::vector<FieldElement>& gens,
                               const std::string& label,
                               const PrecisionPolicy& policy);

// Runs the full construction over every label.
SignedDomain build_signed_domain(const NumberField& k, const UnitSystem& units,
                                 const AlphaTable& alphas,
                                 const PrecisionPolicy& policy);

}  // namespace shintani

#endif  // SHINTANI_DOMAIN_HPP_
