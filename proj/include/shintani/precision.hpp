// Escalation helpers around the ball layer. Certified predicates start at a
// moderate precision and double until the balls separate, an exact test
// settles the question, or the cap is hit (PrecisionExhausted). The cap is a
// safety net: on well-posed inputs the loop exits long before it.

#ifndef SHINTANI_PRECISION_HPP_
#define SHINTANI_PRECISION_HPP_

#include <functional>
#include <string>

#include "shintani/ball.hpp"
#include "shintani/errors.hpp"

namespace shintani {

struct PrecisionPolicy {
  long start_bits = 192;
  long cap_bits = 8192;
};

// Runs fn(prec) at doubling precision until it returns without throwing
// BallIndeterminate. fn must be deterministic in prec.
template <typename F>
auto with_escalating_precision(const PrecisionPolicy& policy,
                               const std::string& what, F&& fn)
    -> decltype(fn(policy.start_bits)) {
  for (long prec = policy.start_bits;; prec *= 2) {
    if (prec > policy.cap_bits)
      throw PrecisionExhausted(what + ": undecided at cap of " +
                               std::to_string(policy.cap_bits) + " bits");
    try {
      return fn(prec);
    } catch (const BallIndeterminate&) {
      // retry wider
    }
  }
}

// Certified sign of a real quantity. eval(prec) must return an enclosure of
// the same fixed value at any precision. exact_zero, when non-null, decides
// zeroness exactly; it is consulted once, after the first indeterminate
// round, so the common nonzero case never pays for it.
inline int certified_sign(const PrecisionPolicy& policy,
                          const std::string& what,
                          const std::function<RealBall(long)>& eval,
                          const std::function<bool()>& exact_zero = nullptr) {
  bool zero_ruled_out = false;
  for (long prec = policy.start_bits;; prec *= 2) {
    if (prec > policy.cap_bits)
      throw PrecisionExhausted("sign of " + what + ": undecided at cap of " +
                               std::to_string(policy.cap_bits) + " bits");
    int s = 0;
    bool decided = false;
    try {
      s = eval(prec).sign_certain();
      decided = (s != 0);
    } catch (const BallIndeterminate&) {
      decided = false;
    }
    if (decided) return s;
    if (!zero_ruled_out && exact_zero) {
      if (exact_zero()) return 0;
      zero_ruled_out = true;
    }
  }
}

}  // namespace shintani

#endif  // SHINTANI_PRECISION_HPP_
