#include "shintani/domain.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "shintani/errors.hpp"

namespace shintani {

namespace {

// mod-N congruence a == b
bool congruent(int a, int b, int N) { return ((a - b) % N + N) % N == 0; }

int ceil_half(int N) { return (N + 1) / 2; }  // ceil(N/2) for N >= 1

// Certified ceiling of the value enclosed by t, when the enclosure settles
// it: with kc = ceil(sup t), the answer is kc iff inf t > kc - 1.
std::optional<long> certified_ceil(const RealBall& t) {
  mpfr_t lo, hi, c;
  mpfr_init2(lo, 128);
  mpfr_init2(hi, 128);
  mpfr_init2(c, 128);
  std::optional<long> out;
  t.lower(lo);
  t.upper(hi);
  if (mpfr_number_p(lo) && mpfr_number_p(hi)) {
    mpfr_ceil(c, hi);
    if (mpfr_fits_slong_p(c, MPFR_RNDN)) {
      long kc = mpfr_get_si(c, MPFR_RNDN);
      if (mpfr_cmp_si(lo, kc - 1) > 0) out = kc;
    }
  }
  mpfr_clear(lo);
  mpfr_clear(hi);
  mpfr_clear(c);
  return out;
}

// Certified sign of tau_1(x) for an x whose tau_1 image is known to be real
// (and nonzero, x being nonzero).
int real_tau1_sign(const NumberField& k, const FieldElement& x,
                   const PrecisionPolicy& policy) {
  return certified_sign(
      policy, "real tau_1 value",
      [&](long prec) { return k.embed_complex(x, prec).re; });
}

bool tau1_is_real(const NumberField& k, const FieldElement& x) {
  QPoly mp = k.minimal_polynomial(x);
  // tau_1(x) real forces Q(x) totally real (all embeddings of the subfield
  // come from restrictions, and k has a single conjugate complex pair).
  return qp_count_real_roots(mp) == mp.degree();
}

}  // namespace

std::string mu_label(const Mu& mu) {
  std::ostringstream os;
  os << "sigma=(";
  for (size_t i = 0; i < mu.sigma.size(); ++i) {
    if (i) os << ",";
    os << mu.sigma[i];
  }
  os << ") q=" << mu.q << " n=" << mu.n;
  return os.str();
}

int permutation_sign(const std::vector<int>& sigma) {
  int inversions = 0;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

int m_of_complex(const std::function<ComplexBall(long)>& eval, int N,
                 const PrecisionPolicy& policy,
                 const std::function<int()>& exact_real_sign) {
  if (N < 3) throw ValidationError("m requires N >= 3");
  bool real_checked = false;
  for (long prec = policy.start_bits;; prec *= 2) {
    if (prec > policy.cap_bits)
      throw PrecisionExhausted("m(z): undecided at cap of " +
                               std::to_string(policy.cap_bits) + " bits");
    try {
      ComplexBall z = eval(prec);
      RealBall theta = arg_ball(z);
      RealBall t = theta * (RealBall::from_si(-N, prec) /
                            (RealBall::from_si(2, prec) * pi_ball(prec)));
      if (auto m = certified_ceil(t)) {
        assert(2 * *m > -N && *m <= ceil_half(N));
        return static_cast<int>(*m);
      }
    } catch (const BallIndeterminate&) {
      // fall through to the exact real check, then escalate
    }
    if (!real_checked) {
      real_checked = true;
      const int s = exact_real_sign();
      // arg is exactly 0 for positive reals and, by the [-pi, pi)
      // convention, -pi for negative ones.
      if (s > 0) return 0;
      if (s < 0) return ceil_half(N);
    }
  }
}

int m_of(const NumberField& k, const FieldElement& x, int N,
         const PrecisionPolicy& policy) {
  if (k.is_zero(x)) throw ValidationError("m is undefined at zero");
  return m_of_complex(
      [&](long prec) { return k.embed_complex(x, prec); }, N, policy, [&] {
        return tau1_is_real(k, x) ? real_tau1_sign(k, x, policy) : 0;
      });
}

UnitSystem make_unit_system(const NumberField& k,
                            std::vector<FieldElement> eps,
                            const PrecisionPolicy& policy) {
  const int r = k.unit_rank();
  if (static_cast<int>(eps.size()) != r)
    throw ValidationError("expected " + std::to_string(r) +
                          " units, got " + std::to_string(eps.size()));
  for (size_t i = 0; i < eps.size(); ++i) {
    Rat nm = k.norm(eps[i]);
    if (nm != 1 && nm != -1)
      throw ValidationError("unit " + std::to_string(i + 1) +
                            " has norm " + rat_to_string(nm) +
                            ", not a unit of the order");
    if (!k.is_totally_positive(eps[i], policy))
      throw ValidationError("unit " + std::to_string(i + 1) +
                            " is not totally positive");
  }
  UnitSystem us;
  us.eps = std::move(eps);
  us.regulator_sign = with_escalating_precision(
      policy, "regulator sign (units may be multiplicatively dependent)",
      [&](long prec) {
        BallMat m(static_cast<size_t>(r));
        std::vector<BallVec> cols;
        cols.reserve(us.eps.size());
        for (const auto& e : us.eps) cols.push_back(k.log_abs_first(e, r, prec));
        for (int i = 0; i < r; ++i) {
          m[static_cast<size_t>(i)].clear();
          for (int j = 0; j < r; ++j)
            m[static_cast<size_t>(i)].push_back(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        }
        int s = ball_det(std::move(m)).sign_certain();
        if (s == 0) throw BallIndeterminate("regulator sign not separated");
        return s;
      });
  return us;
}

bool alpha_window_ok(const NumberField& k, const FieldElement& alpha, int t,
                     int N, const PrecisionPolicy& policy) {
  if (N < 3) throw ValidationError("N must be at least 3");
  if (t < 0 || t >= N) throw ValidationError("alpha index out of range");
  if (k.is_zero(alpha)) return false;
  if (!k.is_totally_positive(alpha, policy)) return false;
  if (tau1_is_real(k, alpha)) {
    // arg(tau_1 alpha) is exactly 0 or -pi; the window around 2 pi t / N has
    // half-width pi/2N < 2 pi / N, so only exact matches qualify.
    if (real_tau1_sign(k, alpha, policy) > 0) return t == 0;
    return 2 * t == N;
  }
  return with_escalating_precision(
      policy, "alpha admissibility window", [&](long prec) {
        ComplexBall z = k.embed_complex(alpha, prec);
        RealBall theta = arg_ball(z);
        RealBall pi = pi_ball(prec);
        RealBall w = pi / RealBall::from_si(2 * N, prec);
        bool unresolved = false;
        for (int shift = 0; shift <= 1; ++shift) {
          // theta - 2 pi t / N + 2 pi shift; the true reduction to (-pi, pi]
          // is one of the two.
          RealBall delta =
              theta -
              pi * RealBall::from_si(2 * t, prec) / RealBall::from_si(N, prec) +
              pi * RealBall::from_si(2 * shift, prec);
          if (certainly_less(delta, w) && certainly_less(-w, delta))
            return true;
          bool outside =
              certainly_less(w, delta) || certainly_less(delta, -w);
          if (!outside) unresolved = true;
        }
        if (unresolved)
          throw BallIndeterminate("window membership unresolved");
        return false;
      });
}

AlphaTable make_alpha_table(const NumberField& k, int N,
                            std::vector<FieldElement> alphas,
                            const PrecisionPolicy& policy) {
  if (N < 3) throw ValidationError("N must be at least 3");
  if (static_cast<int>(alphas.size()) != N)
    throw ValidationError("alpha table must have exactly N = " +
                          std::to_string(N) + " entries");
  for (int t = 0; t < N; ++t)
    if (!alpha_window_ok(k, alphas[static_cast<size_t>(t)], t, N, policy))
      throw ValidationError(
          "alpha_" + std::to_string(t) +
          " is not admissible (needs total positivity and "
          "arg(tau_1(alpha) exp(-2 pi i t/N)) inside (-pi/2N, pi/2N))");
  AlphaTable table;
  table.N = N;
  table.alpha = std::move(alphas);
  return table;
}

AlphaTable auto_select_alphas(const NumberField& k, int N, int search_bound,
                              const PrecisionPolicy& policy) {
  if (N < 3) throw ValidationError("N must be at least 3");
  if (search_bound < 1) throw ValidationError("alpha search bound must be >= 1");
  const int n = k.degree();
  AlphaTable table;
  table.N = N;
  for (int t = 0; t < N; ++t) {
    bool found = false;
    for (int shell = 0; shell <= search_bound && !found; ++shell) {
      // Lexicographic odometer over {-shell..shell}^n, keeping max-norm
      // exactly shell so earlier shells are never rescanned.
      std::vector<int> c(static_cast<size_t>(n), -shell);
      while (true) {
        bool on_shell = false;
        for (int v : c)
          if (v == shell || v == -shell) on_shell = true;
        if (on_shell && shell > 0) {
          FieldElement cand = k.zero();
          for (int i = 0; i < n; ++i) cand.c[static_cast<size_t>(i)] = Rat(c[static_cast<size_t>(i)]);
          bool ok = false;
          try {
            ok = alpha_window_ok(k, cand, t, N, policy);
          } catch (const PrecisionExhausted&) {
            ok = false;  // deterministic skip of knife-edge candidates
          }
          if (ok) {
            table.alpha.push_back(std::move(cand));
            found = true;
            break;
          }
        }
        // odometer increment, last coordinate fastest
        int pos = n - 1;
        while (pos >= 0 && c[static_cast<size_t>(pos)] == shell) {
          c[static_cast<size_t>(pos)] = -shell;
          --pos;
        }
        if (pos < 0) break;
        ++c[static_cast<size_t>(pos)];
      }
    }
    if (!found)
      throw SearchExhausted("no admissible alpha for residue " +
                            std::to_string(t) + " within max-norm shells up to " +
                            std::to_string(search_bound));
  }
  return table;
}

SigmaOrder build_sigma_order(const NumberField& k, const UnitSystem& units,
                             const std::vector<int>& sigma, int N,
                             const PrecisionPolicy& policy) {
  const int r = k.unit_rank();
  if (static_cast<int>(sigma.size()) != r)
    throw ValidationError("permutation length must equal the unit rank");
  SigmaOrder od;
  od.sigma = sigma;
  od.f.resize(static_cast<size_t>(r + 1));
  od.f[0] = k.one();
  for (int t = 2; t <= r + 1; ++t)
    od.f[static_cast<size_t>(t - 1)] =
        k.mul(od.f[static_cast<size_t>(t - 2)],
              units.eps[static_cast<size_t>(sigma[static_cast<size_t>(t - 2)] - 1)]);

  std::vector<FieldElement> finv;
  finv.reserve(od.f.size());
  for (const auto& f : od.f) finv.push_back(k.inv(f));

  od.m_pair.assign(static_cast<size_t>(r + 1),
                   std::vector<int>(static_cast<size_t>(r + 1), 0));
  for (int t = 1; t <= r + 1; ++t)
    for (int tp = 1; tp <= r + 1; ++tp)
      od.m_pair[static_cast<size_t>(t - 1)][static_cast<size_t>(tp - 1)] =
          m_of(k, k.mul(finv[static_cast<size_t>(t - 1)], od.f[static_cast<size_t>(tp - 1)]), N,
               policy);
  od.m_xi = od.m_pair[static_cast<size_t>(r)];

  od.prec.assign(static_cast<size_t>(r + 1),
                 std::vector<char>(static_cast<size_t>(r + 1), 0));
  for (int t = 1; t <= r + 1; ++t)
    for (int tp = 1; tp <= r + 1; ++tp) {
      const int mtt = od.m_pair[static_cast<size_t>(t - 1)][static_cast<size_t>(tp - 1)];
      const int mtr = od.m_pair[static_cast<size_t>(tp - 1)][static_cast<size_t>(t - 1)];
      const bool o1 = congruent(
          mtt, od.m_xi[static_cast<size_t>(tp - 1)] - od.m_xi[static_cast<size_t>(t - 1)], N);
      const bool o2 = congruent(mtt + mtr, 1, N);
      const bool o3 = tp < t;
      od.prec[static_cast<size_t>(t - 1)][static_cast<size_t>(tp - 1)] =
          (o1 && (o2 || o3)) ? 1 : 0;
    }

  // The relation must be a strict total order; anything else indicates a
  // broken invariant upstream (the construction guarantees it).
  auto fail = [&](const std::string& what) {
    throw OrderViolation("order relation for permutation " +
                         mu_label(Mu{sigma, 1, 0}) + " " + what);
  };
  for (int t = 1; t <= r + 1; ++t)
    if (od.prec[static_cast<size_t>(t - 1)][static_cast<size_t>(t - 1)]) fail("is not irreflexive");
  for (int t = 1; t <= r + 1; ++t)
    for (int tp = t + 1; tp <= r + 1; ++tp) {
      int c = od.prec[static_cast<size_t>(t - 1)][static_cast<size_t>(tp - 1)] +
              od.prec[static_cast<size_t>(tp - 1)][static_cast<size_t>(t - 1)];
      if (c != 1) fail("fails trichotomy at (" + std::to_string(t) + "," + std::to_string(tp) + ")");
    }
  for (int a = 1; a <= r + 1; ++a)
    for (int b = 1; b <= r + 1; ++b)
      for (int c = 1; c <= r + 1; ++c)
        if (od.prec[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] &&
            od.prec[static_cast<size_t>(b - 1)][static_cast<size_t>(c - 1)] &&
            !od.prec[static_cast<size_t>(a - 1)][static_cast<size_t>(c - 1)])
          fail("fails transitivity at (" + std::to_string(a) + "," +
               std::to_string(b) + "," + std::to_string(c) + ")");

  std::vector<int> asc(static_cast<size_t>(r + 1));
  std::iota(asc.begin(), asc.end(), 1);
  std::sort(asc.begin(), asc.end(), [&](int a, int b) {
    return od.prec[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] != 0;
  });
  if (asc[0] != r + 1) fail("does not have r+1 as minimum");
  od.rho.resize(static_cast<size_t>(r + 1));
  for (int q = 1; q <= r + 1; ++q)
    od.rho[static_cast<size_t>(q - 1)] = asc[static_cast<size_t>(r + 1 - q)];
  return od;
}

std::vector<FieldElement> build_generators(const NumberField& k,
                                           const AlphaTable& alphas,
                                           const SigmaOrder& order,
                                           const Mu& mu) {
  const int r = k.unit_rank();
  if (mu.q < 1 || mu.q > r + 1 || mu.n < 0 || mu.n >= alphas.N)
    throw ValidationError("cone label out of range: " + mu_label(mu));
  const int rq = order.rho[static_cast<size_t>(mu.q - 1)];
  std::vector<FieldElement> gens(static_cast<size_t>(r + 2));
  for (int t = 1; t <= r + 1; ++t) {
    const bool before =
        order.prec[static_cast<size_t>(t - 1)][static_cast<size_t>(rq - 1)] != 0;
    const int idx = order.m_xi[static_cast<size_t>(t - 1)] + mu.n + (before ? 1 : 0);
    gens[static_cast<size_t>(t - 1)] =
        k.mul(order.f[static_cast<size_t>(t - 1)], alphas.at(idx));
  }
  gens[static_cast<size_t>(r + 1)] =
      k.mul(order.f[static_cast<size_t>(rq - 1)],
            alphas.at(order.m_xi[static_cast<size_t>(rq - 1)] + mu.n + 1));
  return gens;
}

int cone_weight(const NumberField& k, const UnitSystem& units,
                const std::vector<FieldElement>& gens,
                const std::vector<int>& sigma, const PrecisionPolicy& policy) {
  if (k.rank_of_span(gens) < k.degree()) return 0;
  // det(Psi g_1 .. g_n) = det(Psi of power basis) * det_Q(coordinates), so
  // the only non-exact factor is a per-field constant certified once.
  std::vector<std::vector<Rat>> cols;
  cols.reserve(gens.size());
  for (const auto& g : gens) cols.push_back(g.c);
  const int det_q_sign = sign_of(QMatrix::from_columns(cols).det());
  assert(det_q_sign != 0);
  const int w = permutation_sign(sigma) * k.minkowski_basis_det_sign(policy) *
                det_q_sign * units.regulator_sign;
  assert(w == 1 || w == -1);
  return w;
}

std::vector<int> closure_flags(const NumberField& k,
                               const std::vector<FieldElement>& gens,
                               const std::string& label,
                               const PrecisionPolicy& policy) {
  const int n = k.degree();
  if (k.rank_of_span(gens) < n)
    throw ZeroCoefficient("closure flags requested for rank-deficient cone " +
                          label);
  int bad_coeff = -1;
  try {
    return with_escalating_precision(
        policy, "closure flags of " + label, [&](long prec) {
          BallMat a(static_cast<size_t>(n));
          std::vector<BallVec> cols;
          cols.reserve(gens.size());
          for (const auto& g : gens) cols.push_back(k.minkowski(g, prec));
          for (int i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)].clear();
            for (int j = 0; j < n; ++j)
              a[static_cast<size_t>(i)].push_back(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
          }
          BallVec b;
          for (int i = 0; i < n; ++i)
            b.push_back(RealBall::from_si(i == n - 1 ? 1 : 0, prec));
          BallVec coeff = ball_solve(std::move(a), std::move(b));
          std::vector<int> flags(static_cast<size_t>(n), 0);
          for (int i = 0; i < n; ++i) {
            int s = coeff[static_cast<size_t>(i)].sign_certain();
            if (s == 0) {
              bad_coeff = i;
              throw BallIndeterminate("coefficient sign not separated");
            }
            flags[static_cast<size_t>(i)] = s > 0 ? 1 : 0;
          }
          return flags;
        });
  } catch (const PrecisionExhausted&) {
    if (bad_coeff >= 0)
      throw PrecisionExhausted(
          "sign of e_{r+2} coefficient " + std::to_string(bad_coeff + 1) +
          " for cone " + label + " undecided at cap of " +
          std::to_string(policy.cap_bits) + " bits");
    throw;
  }
}

SignedDomain build_signed_domain(const NumberField& k, const UnitSystem& units,
                                 const AlphaTable& alphas,
                                 const PrecisionPolicy& policy) {
  SignedDomain dom;
  dom.N = alphas.N;
  dom.units = units;
  dom.alphas = alphas;
  const int r = k.unit_rank();
  std::vector<int> sigma(static_cast<size_t>(r));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    SigmaOrder od = build_sigma_order(k, units, sigma, alphas.N, policy);
    for (int q = 1; q <= r + 1; ++q) {
      for (int n = 0; n < alphas.N; ++n) {
        Mu mu;
        mu.sigma = sigma;
        mu.q = q;
        mu.n = n;
        SignedCone cone;
        cone.mu = mu;
        cone.gens = build_generators(k, alphas, od, mu);
        cone.weight = cone_weight(k, units, cone.gens, sigma, policy);
        if (cone.weight != 0)
          cone.closed = closure_flags(k, cone.gens, mu_label(mu), policy);
        dom.cones.push_back(std::move(cone));
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return dom;
}

}  // namespace shintani
