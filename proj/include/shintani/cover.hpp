#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shintani/domain.hpp"
#include "shintani/number_field.hpp"
#include "shintani/precision.hpp"
#include "shintani/rng.hpp"

namespace shintani {

// Verification of the signed-cover identity: for x totally positive, the
// orbit {u*x : u in the unit subgroup V} meets the cones with signed
// multiplicity exactly 1. Membership decisions are exact rational
// arithmetic; floating point only ever shrinks or widens the candidate
// search window, never the verdict.

struct ConeHit {
    std::size_t cone_index = 0;          // index into SignedDomain::cones
    std::vector<long> exponents;         // a with u = prod eps_j^{a_j}
    int weight = 0;
};

struct SampleResult {
    FieldElement point;
    long signed_count = 0;               // sum of weights over hits
    std::vector<ConeHit> hits;
    std::size_t candidates_tested = 0;
};

struct BatchSummary {
    std::size_t samples = 0;
    std::size_t passes = 0;              // samples with signed_count == 1
    std::size_t max_hits = 0;            // worst-case unsigned hit count
    std::uint64_t seed = 0;
    double margin = 0.0;
    std::vector<SampleResult> results;   // in sample order
};

// Precomputed data shared by every sample: the regulator-difference matrix
// R (columns LOG of eps_j relative to the last real embedding) and one
// certified bounding box per nonzero-weight cone for the LOG image of the
// closed cone. Boxes are outer enclosures; the margin widens them further.
struct CoverContext {
    long prec = 0;
    std::vector<RealBall> R;             // r*r, row-major
    struct Box {
        std::vector<RealBall> lo, hi;    // size r
    };
    std::vector<std::optional<Box>> boxes;  // per cone; engaged iff weight != 0
    double margin = 1e-6;
};

CoverContext prepare_cover_context(const NumberField& k, const SignedDomain& dom,
                                   double margin, const PrecisionPolicy& policy);

// Exact membership: solve y over the cone generators and test each
// coordinate against the cone's half-open flags. Requires weight != 0.
bool cone_contains_exact(const NumberField& k, const SignedCone& cone,
                         const FieldElement& y);

// Every exponent vector a such that (prod eps_j^{a_j}) * point can lie in
// the closed cone, plus possibly more (over-enumeration is harmless; each
// candidate is re-checked exactly). Throws ValidationError if the window
// exceeds the safety cap, which indicates mis-scaled input.
std::vector<std::vector<long>> candidate_units(const NumberField& k,
                                               const SignedDomain& dom,
                                               std::size_t cone_index,
                                               const FieldElement& point,
                                               const CoverContext& ctx);

SampleResult signed_coverage_count(const NumberField& k, const SignedDomain& dom,
                                   const FieldElement& point, const CoverContext& ctx);

// Draw a totally positive point with small rational coordinates. Throws
// SamplerStarved if rejection sampling fails to find one.
FieldElement sample_totally_positive(const NumberField& k, Rng& rng,
                                     const PrecisionPolicy& policy,
                                     long coeff_bound = 50, long den_bound = 20);

BatchSummary check_coverage_batch(const NumberField& k, const SignedDomain& dom,
                                  std::size_t sample_count, std::uint64_t seed,
                                  double margin, const PrecisionPolicy& policy,
                                  long coeff_bound = 50, long den_bound = 20);

// True iff no cone carries weight -1, in which case the union of the
// nonzero-weight cones is an honest fundamental domain.
bool is_true_domain(const SignedDomain& dom);

}  // namespace shintani
