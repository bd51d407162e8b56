// A number field k = Q(gamma) of degree n with exactly one conjugate pair of
// complex embeddings, i.e. signature (n-2, 1). Elements are exact rational
// coordinate vectors in the power basis 1, gamma, ..., gamma^{n-1}.
//
// Embedding order is fixed throughout the project:
//   tau_1          the complex embedding, with sign(Im tau_1(gamma)) chosen
//                  at construction (default -1),
//   tau_2..tau_{r+1}  the real embeddings, by ascending root value,
//   tau_{r+2}      the conjugate of tau_1 (never materialized).
// r = n - 2 is both the number of real embeddings and the unit rank.
//
// All embedding data comes back as certified balls: enclosures are honest at
// every precision and refine on demand. Exact questions (zero tests, norms,
// basis solves) never touch floating point.

#ifndef SHINTANI_NUMBER_FIELD_HPP_
#define SHINTANI_NUMBER_FIELD_HPP_

#include <optional>
#include <string>
#include <vector>

#include "shintani/ball.hpp"
#include "shintani/precision.hpp"
#include "shintani/qmatrix.hpp"
#include "shintani/qpoly.hpp"
#include "shintani/rational.hpp"

namespace shintani {

// Power-basis coordinates, length = field degree. Plain data; all semantics
// live on NumberField.
struct FieldElement {
  std::vector<Rat> c;
};

// tau_1 value plus the r real embedding values of one element.
struct EmbeddingPoint {
  ComplexBall z;
  std::vector<RealBall> reals;
};

class NumberField {
 public:
  // min_poly holds ascending integer coefficients a_0..a_n of a monic
  // irreducible polynomial with exactly one pair of complex roots.
  // Throws ValidationError / NotIrreducible / WrongSignature.
  explicit NumberField(std::vector<Int> min_poly, int tau1_im_sign = -1);

  int degree() const { return n_; }
  int unit_rank() const { return r_; }
  int tau1_im_sign() const { return tau1_im_sign_; }
  const std::vector<Int>& min_poly() const { return min_poly_; }
  Rat discriminant() const { return disc_; }

  // ---- exact arithmetic ----
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement gen() const;  // gamma
  FieldElement from_rat(const Rat& q) const;
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement scale(const FieldElement& a, const Rat& s) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;  // throws on zero
  FieldElement pow(const FieldElement& a, long e) const;
  bool is_zero(const FieldElement& a) const;
  bool equals(const FieldElement& a, const FieldElement& b) const;
  // Coordinate 0 when all higher coordinates vanish.
  std::optional<Rat> as_rational(const FieldElement& a) const;

  Rat norm(const FieldElement& a) const;   // det of multiplication matrix
  Rat trace(const FieldElement& a) const;

  // Monic minimal polynomial of a over Q (degree divides n). Exact: the
  // squarefree part of the characteristic polynomial of multiplication by a.
  QPoly minimal_polynomial(const FieldElement& a) const;

  // Coordinates of x in the Q-basis formed by `basis` (must have n entries);
  // nullopt when the entries are linearly dependent.
  std::optional<std::vector<Rat>> solve_in_basis(
      const std::vector<FieldElement>& basis, const FieldElement& x) const;

  // Dimension of the Q-span of the given elements.
  int rank_of_span(const std::vector<FieldElement>& elems) const;

  // ---- certified embeddings ----
  ComplexBall embed_complex(const FieldElement& a, long prec) const;
  // j in [0, r): value under tau_{j+2}.
  RealBall embed_real(const FieldElement& a, int j, long prec) const;
  EmbeddingPoint embed(const FieldElement& a, long prec) const;

  // (Re tau_1(a), Im tau_1(a), tau_2(a), ..., tau_{r+1}(a)), length n.
  BallVec minkowski(const FieldElement& a, long prec) const;

  // (log|a^(1)|, ..., log|a^(r)|): absolute values under tau_1..tau_r in
  // embedding order (complex first). Throws BallIndeterminate when some
  // |a^(j)| is not certified positive at this precision.
  BallVec log_abs_first(const FieldElement& a, int count, long prec) const;

  // Sign of det [Psi(1) Psi(gamma) ... Psi(gamma^{n-1})], certified once and
  // cached. Never zero for a field of this signature.
  int minkowski_basis_det_sign(const PrecisionPolicy& policy) const;

  // All real embeddings strictly positive (exact for rationals, certified
  // escalation otherwise). Zero is not totally positive.
  bool is_totally_positive(const FieldElement& a,
                           const PrecisionPolicy& policy) const;

  // Certified sign of tau_{j+2}(a), j in [0, r); exact zero test included.
  int real_embedding_sign(const FieldElement& a, int j,
                          const PrecisionPolicy& policy) const;

 private:
  void validate_element(const FieldElement& a) const;
  QPoly to_poly(const FieldElement& a) const;
  FieldElement reduce(const QPoly& p) const;
  // Refine cached root enclosures so every root ball has radius <= 2^-prec.
  void ensure_roots(long prec) const;
  RealBall real_root_ball(int j, long prec) const;
  ComplexBall complex_root_ball(long prec) const;

  int n_ = 0;
  int r_ = 0;
  int tau1_im_sign_ = -1;
  std::vector<Int> min_poly_;
  QPoly f_;
  Rat disc_;
  // gamma^n .. gamma^{2n-2} reduced to power-basis coordinates.
  std::vector<std::vector<Rat>> gamma_pow_;
  // Exact isolating intervals for the real roots, ascending; refined in
  // place as precision demands grow.
  mutable std::vector<std::pair<Rat, Rat>> root_iv_;
  mutable long root_prec_ = 0;
  mutable int basis_det_sign_ = 0;  // 0 until computed
};

}  // namespace shintani

#endif  // SHINTANI_NUMBER_FIELD_HPP_
