#include "shintani/cover.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shintani/errors.hpp"

namespace shintani {

namespace {

// Enclosure of min(a, b): endpoint-wise minimum.
RealBall min_enclosure(const RealBall& a, const RealBall& b, long prec) {
    mpfr_t lo_a, lo_b, hi_a, hi_b;
    mpfr_init2(lo_a, prec);
    mpfr_init2(lo_b, prec);
    mpfr_init2(hi_a, prec);
    mpfr_init2(hi_b, prec);
    a.lower(lo_a);
    b.lower(lo_b);
    a.upper(hi_a);
    b.upper(hi_b);
    if (mpfr_cmp(lo_b, lo_a) < 0) mpfr_set(lo_a, lo_b, MPFR_RNDD);
    if (mpfr_cmp(hi_b, hi_a) < 0) mpfr_set(hi_a, hi_b, MPFR_RNDU);
    RealBall out = RealBall::from_endpoints(lo_a, hi_a, prec);
    mpfr_clear(lo_a);
    mpfr_clear(lo_b);
    mpfr_clear(hi_a);
    mpfr_clear(hi_b);
    return out;
}

RealBall max_enclosure(const RealBall& a, const RealBall& b, long prec) {
    return -min_enclosure(-a, -b, prec);
}

// Certified lower bound on the distance from the origin to the segment
// [a, b] in C. The three case values (|a|, |b|, distance to the through
// line) are narrowed by certified sign tests; when a case cannot be
// decided, the endpoint-wise minimum of all three is still a valid bound.
RealBall segment_distance(const ComplexBall& a, const ComplexBall& b, long prec) {
    ComplexBall d(b.re - a.re, b.im - a.im);
    RealBall len2 = norm_sq_ball(d);
    RealBall abs_a = abs_ball(a);
    RealBall abs_b = abs_ball(b);

    if (len2.sign_certain() <= 0) {
        // Endpoints not certifiably distinct; every segment point is within
        // the segment length of a.
        return abs_a - sqrt_ball(len2);
    }

    // Projection parameter of the origin onto the line is dot1 / len2.
    RealBall dot1 = -(a.re * d.re + a.im * d.im);
    RealBall cross = a.re * b.im - a.im * b.re;
    RealBall line = abs_ball(cross) / sqrt_ball(len2);

    const int s_neg = dot1.sign_certain();
    const int s_past = (dot1 - len2).sign_certain();
    if (s_neg < 0) return abs_a;   // projection before a
    if (s_past > 0) return abs_b;  // projection past b
    if (s_neg > 0 && s_past < 0) return line;
    return min_enclosure(min_enclosure(abs_a, abs_b, prec), line, prec);
}

// Certified argument interval of z as plain real endpoints, unwrapped so
// that values near the negative real axis come back around +pi instead of
// hitting the branch cut.
RealBall arg_interval(const ComplexBall& z, long prec) {
    try {
        return arg_ball(z);
    } catch (const BallIndeterminate&) {
        ComplexBall w(-z.re, -z.im);
        return arg_ball(w) + pi_ball(prec);  // may exceed pi; circle math below
    }
}

// Certified positive lower bound on the distance from the origin to the
// convex hull of the given points. Strategy: certify a separating
// half-plane through the origin (direction from the joint argument
// interval), then take the best of the directional bound and the minimum
// over all pairwise segments (for origin outside the hull, the hull
// distance is attained on a vertex-to-vertex segment).
RealBall hull_origin_distance(const std::vector<ComplexBall>& pts, long prec) {
    RealBall two_pi = pi_ball(prec) + pi_ball(prec);

    std::vector<RealBall> args;
    args.reserve(pts.size());
    for (const ComplexBall& p : pts) args.push_back(arg_interval(p, prec));

    // Bring every interval into the winding of the first one.
    const double anchor = args[0].mid_d();
    for (std::size_t i = 1; i < args.size(); ++i) {
        const double gap = anchor - args[i].mid_d();
        const long k = std::lround(gap / 6.283185307179586);
        if (k != 0) args[i] = args[i] + two_pi * RealBall::from_si(k, prec);
    }

    mpfr_t lo, hi, tmp;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_init2(tmp, prec);
    args[0].lower(lo);
    args[0].upper(hi);
    for (std::size_t i = 1; i < args.size(); ++i) {
        args[i].lower(tmp);
        if (mpfr_cmp(tmp, lo) < 0) mpfr_set(lo, tmp, MPFR_RNDD);
        args[i].upper(tmp);
        if (mpfr_cmp(tmp, hi) > 0) mpfr_set(hi, tmp, MPFR_RNDU);
    }

    // The arguments must span less than a half turn, otherwise no
    // separating direction exists at this precision.
    mpfr_sub(tmp, hi, lo, MPFR_RNDU);
    mpfr_t pi_lo;
    mpfr_init2(pi_lo, prec);
    pi_ball(prec).lower(pi_lo);
    const bool narrow = mpfr_cmp(tmp, pi_lo) < 0;
    mpfr_clear(pi_lo);
    if (!narrow) {
        mpfr_clear(lo);
        mpfr_clear(hi);
        mpfr_clear(tmp);
        throw BallIndeterminate(
            "cone projection arguments span a half turn or more");
    }

    mpfr_add(tmp, lo, hi, MPFR_RNDN);
    mpfr_div_2si(tmp, tmp, 1, MPFR_RNDN);
    RealBall theta = RealBall::from_endpoints(tmp, tmp, prec);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(tmp);

    RealBall cu = cos_ball(theta);
    RealBall su = sin_ball(theta);

    // Directional bound: dist >= min_i <u, p_i> with |u| = 1.
    RealBall dir_bound(prec);
    bool first = true;
    for (const ComplexBall& p : pts) {
        RealBall dot = cu * p.re + su * p.im;
        if (dot.sign_certain() <= 0)
            throw BallIndeterminate("separating direction not certified");
        dir_bound = first ? dot : min_enclosure(dir_bound, dot, prec);
        first = false;
    }

    // Pairwise-segment bound, valid because the origin is now certified
    // outside the hull.
    RealBall seg_bound(prec);
    first = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            RealBall d = segment_distance(pts[i], pts[j], prec);
            seg_bound = first ? d : min_enclosure(seg_bound, d, prec);
            first = false;
        }
    }
    if (pts.size() < 2) seg_bound = dir_bound;

    // Both are lower bounds; keep whichever endpoint is better.
    mpfr_t b1, b2;
    mpfr_init2(b1, prec);
    mpfr_init2(b2, prec);
    dir_bound.lower(b1);
    seg_bound.lower(b2);
    if (mpfr_cmp(b2, b1) > 0) mpfr_set(b1, b2, MPFR_RNDD);
    RealBall out = RealBall::from_endpoints(b1, b1, prec);
    mpfr_clear(b1);
    mpfr_clear(b2);
    return out;
}

// LOG coordinates of x relative to the last real embedding:
// (log|x^(1)| - log|x^(r+1)|, ..., log|x^(r)| - log|x^(r+1)|).
BallVec log_ratio(const NumberField& k, const FieldElement& x, long prec) {
    const int r = k.unit_rank();
    BallVec v = k.log_abs_first(x, r + 1, prec);
    BallVec out;
    out.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) out.push_back(v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(r)]);
    return out;
}

BallMat unit_log_matrix(const NumberField& k, const UnitSystem& units, long prec) {
    const int r = k.unit_rank();
    BallMat m(static_cast<std::size_t>(r));
    std::vector<BallVec> cols;
    cols.reserve(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) cols.push_back(log_ratio(k, units.eps[static_cast<std::size_t>(j)], prec));
    for (int i = 0; i < r; ++i) {
        m[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(r));
        for (int j = 0; j < r; ++j) m[static_cast<std::size_t>(i)].push_back(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    }
    return m;
}

CoverContext::Box cone_log_box(const NumberField& k, const SignedCone& cone,
                               double margin, long prec) {
    const int r = k.unit_rank();
    const std::size_t m = cone.gens.size();

    // Vertices of the projected simplex: embeddings divided by the last
    // real coordinate (positive for totally positive generators).
    std::vector<ComplexBall> vc;
    std::vector<std::vector<RealBall>> vr(static_cast<std::size_t>(r > 1 ? r - 1 : 0));
    vc.reserve(m);
    for (const FieldElement& g : cone.gens) {
        EmbeddingPoint e = k.embed(g, prec);
        const RealBall& den = e.reals[static_cast<std::size_t>(r - 1)];
        if (den.sign_certain() <= 0)
            throw BallIndeterminate("projection denominator not certified positive");
        vc.emplace_back(e.z.re / den, e.z.im / den);
        for (int j = 1; j < r; ++j)
            vr[static_cast<std::size_t>(j - 1)].push_back(
                e.reals[static_cast<std::size_t>(j - 1)] / den);
    }

    CoverContext::Box box;
    box.lo.reserve(static_cast<std::size_t>(r));
    box.hi.reserve(static_cast<std::size_t>(r));

    // Complex coordinate: [log dist(0, hull), log max |vertex|].
    RealBall dist = hull_origin_distance(vc, prec);
    RealBall lo0 = log_ball(dist);
    RealBall hi0(prec);
    bool first = true;
    for (const ComplexBall& p : vc) {
        RealBall a = log_ball(abs_ball(p));
        hi0 = first ? a : max_enclosure(hi0, a, prec);
        first = false;
    }
    box.lo.push_back(lo0);
    box.hi.push_back(hi0);

    // Real coordinates: plain vertex extrema.
    for (int j = 1; j < r; ++j) {
        RealBall lo(prec), hi(prec);
        bool f2 = true;
        for (const RealBall& v : vr[static_cast<std::size_t>(j - 1)]) {
            RealBall lv = log_ball(v);
            if (f2) {
                lo = lv;
                hi = lv;
                f2 = false;
            } else {
                lo = min_enclosure(lo, lv, prec);
                hi = max_enclosure(hi, lv, prec);
            }
        }
        box.lo.push_back(lo);
        box.hi.push_back(hi);
    }

    // Widen by the margin, relative to the box extent with an absolute
    // floor so degenerate boxes still get slack.
    RealBall mball = RealBall::from_rat(Rat(margin), prec);
    for (int i = 0; i < r; ++i) {
        RealBall width = box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)];
        RealBall pad = mball * (abs_ball(width) + RealBall::from_si(1, prec));
        box.lo[static_cast<std::size_t>(i)] = box.lo[static_cast<std::size_t>(i)] - pad;
        box.hi[static_cast<std::size_t>(i)] = box.hi[static_cast<std::size_t>(i)] + pad;
    }
    return box;
}

// Integer window [first, last] per coordinate covering every solution of
// R a = corner - lx over the 2^r box corners.
struct Window {
    std::vector<long> first, last;
    bool empty = false;
};

Window exponent_window(const CoverContext& ctx, const CoverContext::Box& box,
                       const BallVec& lx, const std::string& label) {
    const std::size_t r = lx.size();
    const long prec = ctx.prec;

    BallMat rmat(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            rmat[i].push_back(ctx.R[i * r + j]);

    std::vector<mpfr_t> wlo(r), whi(r);
    for (std::size_t i = 0; i < r; ++i) {
        mpfr_init2(wlo[i], prec);
        mpfr_init2(whi[i], prec);
        mpfr_set_inf(wlo[i], +1);
        mpfr_set_inf(whi[i], -1);
    }

    mpfr_t tmp;
    mpfr_init2(tmp, prec);
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        BallVec rhs;
        rhs.reserve(r);
        for (std::size_t i = 0; i < r; ++i) {
            const RealBall& end = (mask >> i) & 1 ? box.hi[i] : box.lo[i];
            rhs.push_back(end - lx[i]);
        }
        BallVec a = ball_solve(rmat, rhs);
        for (std::size_t i = 0; i < r; ++i) {
            a[i].lower(tmp);
            if (mpfr_cmp(tmp, wlo[i]) < 0) mpfr_set(wlo[i], tmp, MPFR_RNDD);
            a[i].upper(tmp);
            if (mpfr_cmp(tmp, whi[i]) > 0) mpfr_set(whi[i], tmp, MPFR_RNDU);
        }
    }
    mpfr_clear(tmp);

    Window w;
    w.first.resize(r);
    w.last.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        mpfr_t c;
        mpfr_init2(c, prec);
        mpfr_ceil(c, wlo[i]);
        bool fits = mpfr_fits_slong_p(c, MPFR_RNDN) != 0;
        const long first = fits ? mpfr_get_si(c, MPFR_RNDN) : 0;
        mpfr_floor(c, whi[i]);
        fits = fits && mpfr_fits_slong_p(c, MPFR_RNDN) != 0;
        const long last = fits ? mpfr_get_si(c, MPFR_RNDN) : 0;
        mpfr_clear(c);
        if (!fits) {
            for (std::size_t t = 0; t < r; ++t) {
                mpfr_clear(wlo[t]);
                mpfr_clear(whi[t]);
            }
            throw ValidationError("unit exponent window overflows for " + label +
                                  "; input scaling looks wrong");
        }
        if (first > last) w.empty = true;
        if (std::max(std::labs(first), std::labs(last)) > 64 && first <= last) {
            for (std::size_t t = 0; t < r; ++t) {
                mpfr_clear(wlo[t]);
                mpfr_clear(whi[t]);
            }
            std::ostringstream os;
            os << "unit exponent window [" << first << ", " << last
               << "] at coordinate " << i << " exceeds the safety cap 64 for "
               << label << "; input scaling looks wrong";
            throw ValidationError(os.str());
        }
        w.first[i] = first;
        w.last[i] = last;
    }
    for (std::size_t t = 0; t < r; ++t) {
        mpfr_clear(wlo[t]);
        mpfr_clear(whi[t]);
    }
    return w;
}

std::vector<std::vector<long>> window_vectors(const Window& w) {
    std::vector<std::vector<long>> out;
    if (w.empty) return out;
    std::vector<long> cur = w.first;
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < w.last[i]) {
                ++cur[i];
                for (std::size_t j = 0; j < i; ++j) cur[j] = w.first[j];
                break;
            }
        }
        if (i == cur.size()) break;
    }
    return out;
}

BallVec point_log_ratio(const NumberField& k, const FieldElement& x,
                        long start_prec) {
    PrecisionPolicy local;
    local.start_bits = start_prec;
    local.cap_bits = std::max(start_prec * 16, 8192L);
    return with_escalating_precision(local, "log coordinates of sample point",
                                     [&](long p) { return log_ratio(k, x, p); });
}

}  // namespace

CoverContext prepare_cover_context(const NumberField& k, const SignedDomain& dom,
                                   double margin, const PrecisionPolicy& policy) {
    return with_escalating_precision(policy, "verifier search boxes", [&](long p) {
        CoverContext ctx;
        ctx.prec = p;
        ctx.margin = margin;
        const std::size_t r = static_cast<std::size_t>(k.unit_rank());
        BallMat rm = unit_log_matrix(k, dom.units, p);
        ctx.R.clear();
        ctx.R.reserve(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) ctx.R.push_back(rm[i][j]);
        // Fail now, not per sample, if the matrix cannot be solved.
        ball_solve(rm, BallVec(r, RealBall::from_si(0, p)));
        ctx.boxes.assign(dom.cones.size(), std::nullopt);
        for (std::size_t c = 0; c < dom.cones.size(); ++c) {
            if (dom.cones[c].weight == 0) continue;
            ctx.boxes[c] = cone_log_box(k, dom.cones[c], margin, p);
        }
        return ctx;
    });
}

bool cone_contains_exact(const NumberField& k, const SignedCone& cone,
                         const FieldElement& y) {
    auto coords = k.solve_in_basis(cone.gens, y);
    if (!coords)
        throw std::logic_error("cone generators singular despite nonzero weight");
    for (std::size_t i = 0; i < coords->size(); ++i) {
        const int s = sign_of((*coords)[i]);
        if (cone.closed[i] ? s < 0 : s <= 0) return false;
    }
    return true;
}

std::vector<std::vector<long>> candidate_units(const NumberField& k,
                                               const SignedDomain& dom,
                                               std::size_t cone_index,
                                               const FieldElement& point,
                                               const CoverContext& ctx) {
    const SignedCone& cone = dom.cones[cone_index];
    if (cone.weight == 0 || !ctx.boxes[cone_index])
        throw ValidationError("candidate enumeration requested for a zero-weight cone");
    BallVec lx = point_log_ratio(k, point, ctx.prec);
    Window w = exponent_window(ctx, *ctx.boxes[cone_index], lx, mu_label(cone.mu));
    return window_vectors(w);
}

SampleResult signed_coverage_count(const NumberField& k, const SignedDomain& dom,
                                   const FieldElement& point,
                                   const CoverContext& ctx) {
    SampleResult res;
    res.point = point;
    BallVec lx = point_log_ratio(k, point, ctx.prec);

    std::map<std::vector<long>, FieldElement> ucache;
    const auto unit_for = [&](const std::vector<long>& a) -> const FieldElement& {
        auto it = ucache.find(a);
        if (it != ucache.end()) return it->second;
        FieldElement u = k.one();
        for (std::size_t j = 0; j < a.size(); ++j)
            u = k.mul(u, k.pow(dom.units.eps[j], a[j]));
        return ucache.emplace(a, std::move(u)).first->second;
    };

    for (std::size_t c = 0; c < dom.cones.size(); ++c) {
        const SignedCone& cone = dom.cones[c];
        if (cone.weight == 0) continue;
        Window w = exponent_window(ctx, *ctx.boxes[c], lx, mu_label(cone.mu));
        for (const std::vector<long>& a : window_vectors(w)) {
            ++res.candidates_tested;
            FieldElement y = k.mul(unit_for(a), point);
            if (cone_contains_exact(k, cone, y)) {
                res.hits.push_back(ConeHit{c, a, cone.weight});
                res.signed_count += cone.weight;
            }
        }
    }
    return res;
}

FieldElement sample_totally_positive(const NumberField& k, Rng& rng,
                                     const PrecisionPolicy& policy,
                                     long coeff_bound, long den_bound) {
    if (coeff_bound < 1 || den_bound < 1)
        throw ValidationError("sampler bounds must be positive");
    const int n = k.degree();
    for (int attempt = 0; attempt < 50000; ++attempt) {
        FieldElement x;
        x.c.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const long p = rng.range(-coeff_bound, coeff_bound);
            const long q = rng.range(1, den_bound);
            x.c.emplace_back(p, q);
            x.c.back().canonicalize();
        }
        if (k.is_zero(x)) continue;
        if (k.is_totally_positive(x, policy)) return x;
    }
    throw SamplerStarved(
        "failed to draw a totally positive point in 50000 attempts");
}

BatchSummary check_coverage_batch(const NumberField& k, const SignedDomain& dom,
                                  std::size_t sample_count, std::uint64_t seed,
                                  double margin, const PrecisionPolicy& policy,
                                  long coeff_bound, long den_bound) {
    CoverContext ctx = prepare_cover_context(k, dom, margin, policy);
    Rng rng(seed);
    BatchSummary sum;
    sum.samples = sample_count;
    sum.seed = seed;
    sum.margin = margin;
    sum.results.reserve(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        FieldElement x = sample_totally_positive(k, rng, policy,
                                                 coeff_bound, den_bound);
        SampleResult res = signed_coverage_count(k, dom, x, ctx);
        if (res.signed_count == 1) ++sum.passes;
        sum.max_hits = std::max(sum.max_hits, res.hits.size());
        sum.results.push_back(std::move(res));
    }
    return sum;
}

bool is_true_domain(const SignedDomain& dom) {
    for (const SignedCone& c : dom.cones)
        if (c.weight == -1) return false;
    return true;
}

}  // namespace shintani
