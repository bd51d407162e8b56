#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shintani/domain.hpp"
#include "shintani/number_field.hpp"
#include "shintani/precision.hpp"

namespace shintani {

// Working precision of the series evaluator, fixed for determinism.
inline constexpr long kZetaSeriesPrecision = 128;

// Partial zeta machinery: residue enumeration inside each cone's half-open
// parallelepiped (exact rational arithmetic), Shintani zeta series summed
// shell by shell at fixed 128-bit precision, and the weighted assembly
//   Na^{-s} * sum_{w != 0} w * sum_{x in R} zeta(C, x, s).
//
// The per-term norm product runs over the complex embedding (squared
// modulus to the power -s) and the r real embeddings, which is the version
// consistent with Nb^{-s}. The lattice is caller-supplied as a Z-basis plus
// Na; correctness of that data is the caller's obligation, but rank and
// membership preconditions are checked exactly.

struct IdealLattice {
    std::vector<FieldElement> basis;  // n elements spanning a^{-1}f over Z
    Rat norm_a;                       // absolute norm of the representing ideal
};

struct Residue {
    FieldElement x;            // the point of 1 + a^{-1}f inside the box
    std::vector<Rat> y;        // its exact cone coordinates, y_t in I_t
};

// All x in 1 + lattice with cone coordinates in the half-open box given by
// the closure flags ([0,1) on closed rays, (0,1] on open ones). The result
// size is checked exactly against |det T|, T the generator coordinates in
// the lattice basis. Requires cone.weight != 0 and T integral.
std::vector<Residue> enumerate_residues(const NumberField& k,
                                        const SignedCone& cone,
                                        const IdealLattice& lattice);

struct SeriesValue {
    std::string value;       // decimal, 128-bit working precision
    double value_d = 0.0;
    double tail_estimate = 0.0;  // heuristic shell-ratio extrapolation
    long shells_used = 0;
    bool capped = false;     // shell cap hit before the stop rule fired
    std::uint64_t terms = 0;
};

// Sum over n in Z_{>=0}^{r+2} of
//   |x^(1) + sum n_t f_t^(1)|^{-2s} * prod_j (x^(j) + sum n_t f_t^(j))^{-s}
// by shells of constant sum(n). Stops once three consecutive shells fall
// below tol * total * (1 - rho) / 10 where rho is the fitted shell ratio,
// or at shell_cap (then capped = true). Deterministic: fixed 128-bit
// arithmetic, chunks of 4096 terms in lexicographic n order, pairwise
// reduction, thread-count independent.
SeriesValue shintani_zeta_series(const NumberField& k, const SignedCone& cone,
                                 const FieldElement& x, double s, double tol,
                                 long shell_cap);

struct ConeZetaBreakdown {
    std::size_t cone_index = 0;
    int weight = 0;
    std::size_t residue_count = 0;
    std::string sum;             // sum of the cone's residue series
    double sum_d = 0.0;
    double tail_estimate = 0.0;
    long shells_used = 0;        // max over the cone's residues
    bool capped = false;
};

struct ZetaOutcome {
    std::string value;           // Na^{-s} weighted total
    double value_d = 0.0;
    double error_estimate = 0.0; // Na^{-s} * sum of |w| * tails
    bool capped = false;
    std::uint64_t terms = 0;
    std::vector<ConeZetaBreakdown> cones;
};

// Checks (exactly) that the lattice basis has full rank, that every alpha
// of the domain's table lies in the lattice, and that every nonzero-weight
// cone's generators do as well; then enumerates residues and sums the
// series in the fixed enumeration order. Requires s > 1.
ZetaOutcome partial_zeta(const NumberField& k, const SignedDomain& dom,
                         const IdealLattice& lattice, double s, double tol,
                         long shell_cap);

}  // namespace shintani
