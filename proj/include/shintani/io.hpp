// Configuration and document plumbing for the CLI: strict JSON config
// parsing (unknown keys rejected at every level), normalized config echo,
// and the output documents for the domain / verify / zeta / slice
// subcommands. Every emitter has a fixed key order and fixed number
// formatting so that reruns with the same config produce byte-identical
// bytes. Documents carry no timestamps for the same reason; wall-clock
// stats belong on stderr.

#ifndef SHINTANI_IO_HPP_
#define SHINTANI_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shintani/cover.hpp"
#include "shintani/domain.hpp"
#include "shintani/errors.hpp"
#include "shintani/number_field.hpp"
#include "shintani/precision.hpp"
#include "shintani/rational.hpp"
#include "shintani/zeta.hpp"

namespace shintani {

inline constexpr const char* kToolName = "shintani";
inline constexpr const char* kToolVersion = "1.0.0";

// Config or document rejection with a stable machine-readable code such as
// "field.min_poly.monic" or "config.unknown_key".
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string code, const std::string& message)
      : ValidationError(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct VerifyConfig {
  std::uint64_t samples = 100;
  double margin = 1e-6;
  // Sampler draws coordinates p/q with |p| <= coeff_bound, 1 <= q <= den_bound.
  long coeff_bound = 50;
  long den_bound = 20;
};

struct ZetaConfig {
  double s = 2.0;
  double tol = 1e-6;
  long shell_cap = 400;
  Rat norm_a = Rat(1);
  // Z-basis of a^{-1}f as coordinate vectors in the power basis; empty
  // means the power basis itself (a = f = ring of integers Z[gamma]).
  std::vector<std::vector<Rat>> lattice_basis;
};

struct SliceConfig {
  double plane = 1.0;
  double clip = 0.0;  // 0 disables the vertex radius cap
};

struct RunConfig {
  std::vector<Int> min_poly;  // ascending degree, monic, degree >= 3
  int tau1_im_sign = -1;
  std::vector<std::vector<Rat>> units;  // power-basis coordinate vectors
  int N = 3;
  std::optional<std::vector<std::vector<Rat>>> alphas;  // absent: auto-select
  int alpha_search_bound = 8;
  long precision_bits = 192;
  std::uint64_t seed = 1;
  VerifyConfig verify;
  ZetaConfig zeta;
  SliceConfig slice;
};

// Strict parse: shape, types, and unknown-key rejection at every level,
// then validate_config. Throws ConfigError.
RunConfig parse_config(const std::string& text);

// Semantic checks on a (possibly flag-amended) config: monic irreducible-
// shaped min_poly, sign conventions, positive tolerances, bounds. Throws
// ConfigError. parse_config calls this; the CLI calls it again after
// applying flag overrides.
void validate_config(const RunConfig& cfg);

// Normalized echo, a fixed point of parse_config: every field materialized
// (including defaults and any resolved alpha table the caller has written
// back into cfg), fixed key order, rationals as "p/q" strings.
std::string emit_config(const RunConfig& cfg);

// --- documents -----------------------------------------------------------

std::string emit_domain_document(const NumberField& k, const SignedDomain& dom,
                                 const RunConfig& cfg);

struct ParsedDomainDocument {
  RunConfig config;
  SignedDomain domain;
};

// Inverse of emit_domain_document up to recomputed derived fields; the
// config echo inside the document is parsed with the same strict rules.
ParsedDomainDocument parse_domain_document(const std::string& text);

std::string emit_verify_document(const NumberField& k, const BatchSummary& batch,
                                 const RunConfig& cfg);

std::string emit_zeta_document(const NumberField& k, const ZetaOutcome& outcome,
                               const RunConfig& cfg);

// Cross-section of the active cones by the plane {second real embedding
// = plane} for fields with exactly one real embedding (r = 1). One row per
// active cone: label, weight, and the three vertices plane * f^(1) / f^(2)
// as re/im pairs. clip > 0 caps vertex radius. Throws ValidationError when
// r != 1 or a generator's real embedding cannot be certified positive.
std::string emit_slice_tsv(const NumberField& k, const SignedDomain& dom,
                           double plane, double clip,
                           const PrecisionPolicy& policy);

// Machine-readable error object, the only stdout content on failure.
std::string emit_error_document(const std::string& code,
                                const std::string& message);

}  // namespace shintani

#endif  // SHINTANI_IO_HPP_
