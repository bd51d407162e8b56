// Error taxonomy shared by all modules. Every failure a caller can act on
// gets its own type; generic std::runtime_error is reserved for bugs.

#ifndef SHINTANI_ERRORS_HPP_
#define SHINTANI_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace shintani {

// Input polynomial failed (or could not pass) the irreducibility screen.
struct NotIrreducible : std::runtime_error {
  explicit NotIrreducible(const std::string& what) : std::runtime_error(what) {}
};

// Field does not have exactly one complex place (signature (n-2, 1)).
struct WrongSignature : std::runtime_error {
  explicit WrongSignature(const std::string& what) : std::runtime_error(what) {}
};

// A certified computation still straddled a decision boundary at the
// precision cap. Carries a human-readable diagnostic naming the quantity.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// The computed pairwise order failed strictness/totality validation.
// Indicates a certification bug, not bad input.
struct OrderViolation : std::runtime_error {
  explicit OrderViolation(const std::string& what) : std::runtime_error(what) {}
};

// A closure-flag coefficient came out exactly zero (rank-deficient input to
// the hyperplane-side test). Never fires for cones with nonzero weight.
struct ZeroCoefficient : std::runtime_error {
  explicit ZeroCoefficient(const std::string& what)
      : std::runtime_error(what) {}
};

// A bounded deterministic search ran out of room (alpha selection, or the
// unit-exponent cap in the coverage checker).
struct SearchExhausted : std::runtime_error {
  explicit SearchExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// The rejection sampler failed to produce a totally positive point within
// the retry budget.
struct SamplerStarved : std::runtime_error {
  explicit SamplerStarved(const std::string& what)
      : std::runtime_error(what) {}
};

// Configuration or document failed schema validation.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Internal signal: a ball-arithmetic step could not certify a decision at
// the current precision (division by a ball containing zero, sign straddling
// zero, argument touching the branch cut). Escalation loops catch this and
// retry at doubled precision; it must never escape to callers.
struct BallIndeterminate : std::runtime_error {
  explicit BallIndeterminate(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace shintani

#endif  // SHINTANI_ERRORS_HPP_
