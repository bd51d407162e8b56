#include "shintani/zeta.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "shintani/errors.hpp"
#include "shintani/qmatrix.hpp"

namespace shintani {

namespace {

constexpr long kSeriesPrec = kZetaSeriesPrecision;
constexpr std::size_t kChunk = 4096;
constexpr double kSafety = 10.0;

Int rat_floor(const Rat& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Int rat_ceil(const Rat& q) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Coordinates of the field element 1.
std::vector<Rat> one_coords(int n) {
    std::vector<Rat> e(static_cast<std::size_t>(n), Rat(0));
    e[0] = 1;
    return e;
}

std::vector<Rat> add_vec(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

// ---- fixed-precision numeric core ----

struct MpfrVal {
    mpfr_t v;
    MpfrVal() {
        mpfr_init2(v, kSeriesPrec);
        mpfr_set_zero(v, 1);
    }
    MpfrVal(MpfrVal&& o) noexcept {
        mpfr_init2(v, kSeriesPrec);
        mpfr_set_zero(v, 1);
        mpfr_swap(v, o.v);
    }
    ~MpfrVal() { mpfr_clear(v); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
    MpfrVal& operator=(MpfrVal&&) = delete;
};

// Embedding values of one element rounded to the working precision: the
// complex coordinate as (re, im) followed by the r real coordinates.
struct EmbedRow {
    MpfrVal re, im;
    std::vector<MpfrVal> reals;

    explicit EmbedRow(std::size_t r) : reals(r) {}
};

void load_embedding(const NumberField& k, const FieldElement& a, EmbedRow* row) {
    EmbeddingPoint e = k.embed(a, kSeriesPrec + 64);
    mpfr_set(row->re.v, e.z.re.mid(), MPFR_RNDN);
    mpfr_set(row->im.v, e.z.im.mid(), MPFR_RNDN);
    for (std::size_t j = 0; j < row->reals.size(); ++j)
        mpfr_set(row->reals[j].v, e.reals[j].mid(), MPFR_RNDN);
}

// All n-vectors with nonnegative entries summing to `total`, flattened, in
// lexicographic order (first coordinate varies slowest).
void compositions(int parts, int total, std::vector<int>* out) {
    out->clear();
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    const auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == parts - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out->insert(out->end(), cur.begin(), cur.end());
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
}

struct SeriesData {
    const EmbedRow* x;
    const std::vector<EmbedRow>* gens;
    int m = 0;                // r + 2 generators
    int r = 0;                // real embeddings
    mpfr_t s;                 // exponent, > 1
    long s_int = 0;           // fast path when s is a small integer
    bool s_is_int = false;
};

// Sum of the terms for compositions comps[first..last), sequentially, with
// pairwise reduction over the chunk's term values.
void eval_chunk(const SeriesData& d, const std::vector<int>& comps,
                std::size_t first, std::size_t last, mpfr_t out) {
    const std::size_t m = static_cast<std::size_t>(d.m);
    const std::size_t count = last - first;
    std::vector<MpfrVal> terms(count);
    mpfr_t zre, zim, val, prod;
    mpfr_init2(zre, kSeriesPrec);
    mpfr_init2(zim, kSeriesPrec);
    mpfr_init2(val, kSeriesPrec);
    mpfr_init2(prod, kSeriesPrec);

    for (std::size_t t = 0; t < count; ++t) {
        const int* n = comps.data() + (first + t) * m;

        mpfr_set(zre, d.x->re.v, MPFR_RNDN);
        mpfr_set(zim, d.x->im.v, MPFR_RNDN);
        for (std::size_t g = 0; g < m; ++g) {
            if (n[g] == 0) continue;
            const EmbedRow& e = (*d.gens)[g];
            mpfr_mul_si(val, e.re.v, n[g], MPFR_RNDN);
            mpfr_add(zre, zre, val, MPFR_RNDN);
            mpfr_mul_si(val, e.im.v, n[g], MPFR_RNDN);
            mpfr_add(zim, zim, val, MPFR_RNDN);
        }
        mpfr_sqr(prod, zre, MPFR_RNDN);
        mpfr_sqr(val, zim, MPFR_RNDN);
        mpfr_add(prod, prod, val, MPFR_RNDN);

        for (int j = 0; j < d.r; ++j) {
            mpfr_set(zre, d.x->reals[static_cast<std::size_t>(j)].v, MPFR_RNDN);
            for (std::size_t g = 0; g < m; ++g) {
                if (n[g] == 0) continue;
                mpfr_mul_si(val, (*d.gens)[g].reals[static_cast<std::size_t>(j)].v,
                            n[g], MPFR_RNDN);
                mpfr_add(zre, zre, val, MPFR_RNDN);
            }
            mpfr_mul(prod, prod, zre, MPFR_RNDN);
        }

        // term = prod^{-s}; the squared modulus already carries the -2s.
        if (d.s_is_int) {
            mpfr_set(val, prod, MPFR_RNDN);
            for (long e = 1; e < d.s_int; ++e) mpfr_mul(val, val, prod, MPFR_RNDN);
            mpfr_si_div(terms[t].v, 1, val, MPFR_RNDN);
        } else {
            mpfr_pow(val, prod, d.s, MPFR_RNDN);
            mpfr_si_div(terms[t].v, 1, val, MPFR_RNDN);
        }
    }

    if (count > 0) {
        for (std::size_t step = 1; step < count; step *= 2)
            for (std::size_t i = 0; i + step < count; i += 2 * step)
                mpfr_add(terms[i].v, terms[i].v, terms[i + step].v, MPFR_RNDN);
        mpfr_set(out, terms[0].v, MPFR_RNDN);
    } else {
        mpfr_set_zero(out, 1);
    }

    mpfr_clear(zre);
    mpfr_clear(zim);
    mpfr_clear(val);
    mpfr_clear(prod);
}

// One shell: all compositions of `shell` into m parts, chunked, optionally
// across threads, reduced in fixed chunk order.
void eval_shell(const SeriesData& d, int shell, std::uint64_t* terms, mpfr_t out) {
    std::vector<int> comps;
    compositions(d.m, shell, &comps);
    const std::size_t m = static_cast<std::size_t>(d.m);
    const std::size_t total = comps.size() / m;
    *terms += total;
    const std::size_t nchunks = (total + kChunk - 1) / kChunk;

    std::vector<MpfrVal> sums(nchunks);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (nchunks > 1 && hw > 1) {
        std::vector<std::future<void>> futs;
        futs.reserve(nchunks);
        for (std::size_t c = 0; c < nchunks; ++c) {
            const std::size_t lo = c * kChunk;
            const std::size_t hi = std::min(total, lo + kChunk);
            futs.push_back(std::async(std::launch::async, [&, c, lo, hi] {
                eval_chunk(d, comps, lo, hi, sums[c].v);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t c = 0; c < nchunks; ++c) {
            const std::size_t lo = c * kChunk;
            const std::size_t hi = std::min(total, lo + kChunk);
            eval_chunk(d, comps, lo, hi, sums[c].v);
        }
    }

    if (nchunks == 0) {
        mpfr_set_zero(out, 1);
        return;
    }
    for (std::size_t step = 1; step < nchunks; step *= 2)
        for (std::size_t i = 0; i + step < nchunks; i += 2 * step)
            mpfr_add(sums[i].v, sums[i].v, sums[i + step].v, MPFR_RNDN);
    mpfr_set(out, sums[0].v, MPFR_RNDN);
}

std::string mpfr_decimal(const mpfr_t v) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.36Re", v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace

std::vector<Residue> enumerate_residues(const NumberField& k,
                                        const SignedCone& cone,
                                        const IdealLattice& lattice) {
    if (cone.weight == 0)
        throw ValidationError("residue enumeration requested for a zero-weight cone");
    const int n = k.degree();
    if (static_cast<int>(lattice.basis.size()) != n)
        throw ValidationError("lattice basis must have exactly degree-many elements");

    std::vector<std::vector<Rat>> bcols, fcols;
    for (const FieldElement& b : lattice.basis) bcols.push_back(b.c);
    for (const FieldElement& f : cone.gens) fcols.push_back(f.c);
    QMatrix B = QMatrix::from_columns(bcols);
    QMatrix F = QMatrix::from_columns(fcols);

    auto binv = B.inverse();
    if (!binv) throw ValidationError("lattice basis is linearly dependent");
    QMatrix T = binv->mul(F);
    for (std::size_t i = 0; i < T.rows(); ++i)
        for (std::size_t j = 0; j < T.cols(); ++j)
            if (!is_integer(T.at(i, j)))
                throw ValidationError("cone generators do not lie in the lattice (" +
                                      mu_label(cone.mu) + ")");

    auto tinv = T.inverse();
    if (!tinv)
        throw std::logic_error("generator matrix singular despite nonzero weight");
    std::vector<Rat> d = binv->mul_vec(one_coords(n));

    // Window of integer z with T y - d = z for some y in [0,1]^n.
    std::vector<Rat> zmin(static_cast<std::size_t>(n)), zmax(static_cast<std::size_t>(n));
    const std::size_t corners = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        std::vector<Rat> y(static_cast<std::size_t>(n), Rat(0));
        for (int t = 0; t < n; ++t)
            if ((mask >> t) & 1) y[static_cast<std::size_t>(t)] = 1;
        std::vector<Rat> z = T.mul_vec(y);
        for (int i = 0; i < n; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            z[ii] -= d[ii];
            if (mask == 0 || z[ii] < zmin[ii]) zmin[ii] = z[ii];
            if (mask == 0 || z[ii] > zmax[ii]) zmax[ii] = z[ii];
        }
    }

    std::vector<Int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        lo[static_cast<std::size_t>(i)] = rat_ceil(zmin[static_cast<std::size_t>(i)]);
        hi[static_cast<std::size_t>(i)] = rat_floor(zmax[static_cast<std::size_t>(i)]);
    }

    std::vector<Residue> out;
    std::vector<Int> z = lo;
    bool live = true;
    for (int i = 0; i < n; ++i)
        if (lo[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)]) live = false;
    while (live) {
        // y = T^{-1} (z + d), then the exact half-open box test.
        std::vector<Rat> zd(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            zd[static_cast<std::size_t>(i)] = Rat(z[static_cast<std::size_t>(i)]) +
                                              d[static_cast<std::size_t>(i)];
        std::vector<Rat> y = tinv->mul_vec(zd);
        bool inside = true;
        for (int t = 0; t < n && inside; ++t) {
            const Rat& yt = y[static_cast<std::size_t>(t)];
            if (cone.closed[static_cast<std::size_t>(t)])
                inside = sign_of(yt) >= 0 && yt < 1;
            else
                inside = sign_of(yt) > 0 && yt <= 1;
        }
        if (inside) {
            std::vector<Rat> zr(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                zr[static_cast<std::size_t>(i)] = Rat(z[static_cast<std::size_t>(i)]);
            FieldElement x{add_vec(one_coords(n), B.mul_vec(zr))};
            out.push_back(Residue{std::move(x), std::move(y)});
        }
        // odometer
        int i = 0;
        for (; i < n; ++i) {
            std::size_t ii = static_cast<std::size_t>(i);
            if (z[ii] < hi[ii]) {
                ++z[ii];
                for (int j = 0; j < i; ++j)
                    z[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
                break;
            }
        }
        if (i == n) live = false;
    }

    // The half-open box tiles under the integer lattice, so the count is
    // forced to the index |det T| exactly.
    Rat dt = T.det();
    Int expect = abs(dt.get_num());
    if (Int(static_cast<unsigned long>(out.size())) != expect) {
        std::ostringstream os;
        os << "residue count " << out.size() << " != |det T| = " << expect.get_str()
           << " for " << mu_label(cone.mu);
        throw std::logic_error(os.str());
    }
    return out;
}

SeriesValue shintani_zeta_series(const NumberField& k, const SignedCone& cone,
                                 const FieldElement& x, double s, double tol,
                                 long shell_cap) {
    if (!(s > 1.0)) throw ValidationError("series exponent must satisfy s > 1");
    if (shell_cap < 3) throw ValidationError("shell cap must be at least 3");
    const int r = k.unit_rank();
    const int m = k.degree();

    EmbedRow xrow(static_cast<std::size_t>(r));
    load_embedding(k, x, &xrow);
    std::vector<EmbedRow> grows;
    grows.reserve(static_cast<std::size_t>(m));
    for (const FieldElement& g : cone.gens) {
        grows.emplace_back(static_cast<std::size_t>(r));
        load_embedding(k, g, &grows.back());
    }

    SeriesData d;
    d.x = &xrow;
    d.gens = &grows;
    d.m = m;
    d.r = r;
    mpfr_init2(d.s, kSeriesPrec);
    mpfr_set_d(d.s, s, MPFR_RNDN);
    d.s_is_int = s == std::floor(s) && s <= 8.0;
    d.s_int = static_cast<long>(s);

    mpfr_t total, shell, prev_shell;
    mpfr_init2(total, kSeriesPrec);
    mpfr_init2(shell, kSeriesPrec);
    mpfr_init2(prev_shell, kSeriesPrec);
    mpfr_set_zero(total, 1);
    mpfr_set_zero(prev_shell, 1);

    SeriesValue out;
    int streak = 0;
    double rho = 0.5;
    for (long M = 0; M <= shell_cap; ++M) {
        eval_shell(d, static_cast<int>(M), &out.terms, shell);
        mpfr_add(total, total, shell, MPFR_RNDN);
        out.shells_used = M + 1;

        const double sh = mpfr_get_d(shell, MPFR_RNDN);
        const double pv = mpfr_get_d(prev_shell, MPFR_RNDN);
        if (M >= 2 && pv > 0.0) rho = std::min(0.999999, std::max(0.0, sh / pv));
        if (M >= 2) {
            const double tot = mpfr_get_d(total, MPFR_RNDN);
            if (sh < tol * tot * (1.0 - rho) / kSafety)
                ++streak;
            else
                streak = 0;
            if (streak >= 3) {
                out.tail_estimate = sh * rho / (1.0 - rho);
                break;
            }
        }
        if (M == shell_cap) {
            out.capped = true;
            out.tail_estimate = sh * rho / (1.0 - rho);
        }
        mpfr_set(prev_shell, shell, MPFR_RNDN);
    }

    out.value = mpfr_decimal(total);
    out.value_d = mpfr_get_d(total, MPFR_RNDN);
    mpfr_clear(total);
    mpfr_clear(shell);
    mpfr_clear(prev_shell);
    mpfr_clear(d.s);
    return out;
}

ZetaOutcome partial_zeta(const NumberField& k, const SignedDomain& dom,
                         const IdealLattice& lattice, double s, double tol,
                         long shell_cap) {
    if (!(s > 1.0)) throw ValidationError("zeta exponent must satisfy s > 1");
    const int n = k.degree();
    if (static_cast<int>(lattice.basis.size()) != n)
        throw ValidationError("lattice basis must have exactly degree-many elements");
    if (sign_of(lattice.norm_a) <= 0)
        throw ValidationError("norm_a must be positive");
    if (k.rank_of_span(lattice.basis) != n)
        throw ValidationError("lattice basis is linearly dependent");

    // Alpha table must lie in the lattice (exact integral coordinates).
    for (const FieldElement& a : dom.alphas.alpha) {
        auto c = k.solve_in_basis(lattice.basis, a);
        if (!c) throw std::logic_error("lattice solve failed after rank check");
        for (const Rat& q : *c)
            if (!is_integer(q))
                throw ValidationError(
                    "alpha table entry does not lie in the supplied lattice");
    }

    mpfr_t total, val, na;
    mpfr_init2(total, kSeriesPrec);
    mpfr_init2(val, kSeriesPrec);
    mpfr_init2(na, kSeriesPrec);
    mpfr_set_zero(total, 1);

    ZetaOutcome out;
    double tail_sum = 0.0;
    for (std::size_t c = 0; c < dom.cones.size(); ++c) {
        const SignedCone& cone = dom.cones[c];
        if (cone.weight == 0) continue;
        std::vector<Residue> res = enumerate_residues(k, cone, lattice);

        ConeZetaBreakdown br;
        br.cone_index = c;
        br.weight = cone.weight;
        br.residue_count = res.size();

        mpfr_t cone_sum;
        mpfr_init2(cone_sum, kSeriesPrec);
        mpfr_set_zero(cone_sum, 1);
        for (const Residue& rx : res) {
            SeriesValue sv = shintani_zeta_series(k, cone, rx.x, s, tol, shell_cap);
            mpfr_set_str(val, sv.value.c_str(), 10, MPFR_RNDN);
            mpfr_add(cone_sum, cone_sum, val, MPFR_RNDN);
            br.tail_estimate += sv.tail_estimate;
            br.shells_used = std::max(br.shells_used, sv.shells_used);
            br.capped = br.capped || sv.capped;
            out.terms += sv.terms;
        }
        br.sum = mpfr_decimal(cone_sum);
        br.sum_d = mpfr_get_d(cone_sum, MPFR_RNDN);

        if (cone.weight > 0)
            mpfr_add(total, total, cone_sum, MPFR_RNDN);
        else
            mpfr_sub(total, total, cone_sum, MPFR_RNDN);
        tail_sum += br.tail_estimate;
        out.capped = out.capped || br.capped;
        mpfr_clear(cone_sum);
        out.cones.push_back(std::move(br));
    }

    // Scale by Na^{-s}.
    mpfr_set_q(na, lattice.norm_a.get_mpq_t(), MPFR_RNDN);
    mpfr_set_d(val, -s, MPFR_RNDN);
    mpfr_pow(na, na, val, MPFR_RNDN);
    mpfr_mul(total, total, na, MPFR_RNDN);

    out.value = mpfr_decimal(total);
    out.value_d = mpfr_get_d(total, MPFR_RNDN);
    out.error_estimate = tail_sum * mpfr_get_d(na, MPFR_RNDN);

    mpfr_clear(total);
    mpfr_clear(val);
    mpfr_clear(na);
    return out;
}

}  // namespace shintani
