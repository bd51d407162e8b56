#include <doctest.h>

#include <cmath>
#include <vector>

#include "shintani/errors.hpp"
#include "shintani/number_field.hpp"
#include "shintani/qpoly.hpp"
#include "shintani/rng.hpp"
#include "test_support.hpp"

using namespace shintani;
using testsupport::el;

namespace {

constexpr long kPrec = 128;

FieldElement random_element(const NumberField& k, Rng& rng) {
    FieldElement x;
    for (int i = 0; i < k.degree(); ++i) {
        Rat q(rng.range(-9, 9), rng.range(1, 4));
        q.canonicalize();
        x.c.push_back(q);
    }
    return x;
}

}  // namespace

TEST_CASE("field invariants of the two worked fields") {
    const NumberField& k3 = testsupport::cubic();
    CHECK(k3.degree() == 3);
    CHECK(k3.unit_rank() == 1);
    CHECK(k3.tau1_im_sign() == -1);
    CHECK(k3.discriminant() == Rat(-23));

    const NumberField& k4 = testsupport::quartic();
    CHECK(k4.degree() == 4);
    CHECK(k4.unit_rank() == 2);
    CHECK(k4.discriminant() == Rat(-283));
}

TEST_CASE("construction rejects wrong signature and reducible polynomials") {
    // x^3 - 3x + 1 is totally real
    CHECK_THROWS_AS(NumberField({Int(1), Int(-3), Int(0), Int(1)}),
                    WrongSignature);
    // x^4 + x^3 + x^2 + x + 1 has two complex pairs
    CHECK_THROWS_AS(NumberField({Int(1), Int(1), Int(1), Int(1), Int(1)}),
                    WrongSignature);
    // x^4 + 1 is irreducible but factors mod every prime, so the modular
    // degree screen cannot settle it and construction refuses the input
    CHECK_THROWS_AS(NumberField({Int(1), Int(0), Int(0), Int(0), Int(1)}),
                    NotIrreducible);
    // x^3 + x^2 - 2 = (x - 1)(x^2 + 2x + 2)
    CHECK_THROWS_AS(NumberField({Int(-2), Int(0), Int(1), Int(1)}),
                    NotIrreducible);
    // not monic
    CHECK_THROWS_AS(NumberField({Int(-1), Int(0), Int(0), Int(2)}),
                    ValidationError);
    // degree too small
    CHECK_THROWS_AS(NumberField({Int(1), Int(1), Int(1)}), ValidationError);
}

TEST_CASE("exact arithmetic: inverses, powers, rational detection") {
    const NumberField& k = testsupport::cubic();
    FieldElement g = k.gen();
    CHECK(k.equals(k.mul(g, k.inv(g)), k.one()));
    CHECK(k.equals(k.pow(g, 3), k.mul(k.mul(g, g), g)));
    CHECK(k.equals(k.pow(g, -2), k.inv(k.mul(g, g))));
    CHECK(k.is_zero(k.sub(g, g)));
    CHECK_THROWS(k.inv(k.zero()));

    CHECK(k.as_rational(k.from_rat(Rat(7, 3))) == std::optional<Rat>(Rat(7, 3)));
    CHECK_FALSE(k.as_rational(g).has_value());

    // gamma^3 = 1 - gamma^2 in this field
    CHECK(k.equals(k.pow(g, 3), el(k, {1, 0, -1})));

    Rng rng(111);
    for (int trial = 0; trial < 30; ++trial) {
        FieldElement a = random_element(k, rng);
        if (k.is_zero(a)) continue;
        CHECK(k.equals(k.mul(a, k.inv(a)), k.one()));
        FieldElement b = random_element(k, rng);
        CHECK(k.equals(k.mul(a, b), k.mul(b, a)));
        CHECK(k.equals(k.add(a, k.neg(a)), k.zero()));
    }
}

TEST_CASE("norm and trace of the generator") {
    const NumberField& k = testsupport::cubic();
    // For monic x^3 + x^2 - 1: N(gamma) = 1, Tr(gamma) = -1.
    CHECK(k.norm(k.gen()) == Rat(1));
    CHECK(k.trace(k.gen()) == Rat(-1));
    CHECK(k.norm(k.from_rat(Rat(2))) == Rat(8));
    CHECK(k.trace(k.from_rat(Rat(2))) == Rat(6));
    CHECK(k.norm(k.zero()) == Rat(0));

    const NumberField& k4 = testsupport::quartic();
    CHECK(k4.norm(k4.gen()) == Rat(-1));
    CHECK(k4.trace(k4.gen()) == Rat(0));
}

TEST_CASE("norm agrees with the resultant oracle and is multiplicative") {
    const NumberField& k = testsupport::cubic();
    QPoly f(std::vector<Rat>{Rat(-1), Rat(0), Rat(1), Rat(1)});
    Rng rng(222);
    for (int trial = 0; trial < 25; ++trial) {
        FieldElement a = random_element(k, rng);
        // N(a) = Res(f, A)/lc(f)^deg A for a represented by A(gamma)
        QPoly ap(std::vector<Rat>(a.c));
        if (!ap.is_zero()) {
            CHECK(k.norm(a) == qp_resultant(f, ap));
        }
        FieldElement b = random_element(k, rng);
        CHECK(k.norm(k.mul(a, b)) == k.norm(a) * k.norm(b));
        CHECK(k.trace(k.add(a, b)) == k.trace(a) + k.trace(b));
    }
}

TEST_CASE("minimal polynomials of generator and subfield elements") {
    const NumberField& k = testsupport::cubic();
    QPoly mg = k.minimal_polynomial(k.gen());
    CHECK(mg.c == std::vector<Rat>{Rat(-1), Rat(0), Rat(1), Rat(1)});
    QPoly mr = k.minimal_polynomial(k.from_rat(Rat(5, 2)));
    CHECK(mr.c == std::vector<Rat>{Rat(-5, 2), Rat(1)});
    // gamma^2 also generates; its minimal polynomial annihilates it exactly
    FieldElement g2 = el(k, {0, 0, 1});
    QPoly m2 = k.minimal_polynomial(g2);
    CHECK(m2.degree() == 3);
    // evaluate m2 at g2 inside the field
    FieldElement acc = k.zero();
    FieldElement p = k.one();
    for (const Rat& c : m2.c) {
        acc = k.add(acc, k.scale(p, c));
        p = k.mul(p, g2);
    }
    CHECK(k.is_zero(acc));
}

TEST_CASE("solve_in_basis and rank_of_span") {
    const NumberField& k = testsupport::cubic();
    std::vector<FieldElement> basis{el(k, {1, 0, 0}), el(k, {1, 1, 0}),
                                    el(k, {1, 1, 1})};
    auto coords = k.solve_in_basis(basis, el(k, {3, 2, 1}));
    REQUIRE(coords.has_value());
    CHECK(*coords == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    CHECK(k.rank_of_span(basis) == 3);

    std::vector<FieldElement> dep{el(k, {1, 0, 0}), el(k, {2, 0, 0}),
                                  el(k, {0, 1, 0})};
    CHECK(k.rank_of_span(dep) == 2);
    CHECK_FALSE(k.solve_in_basis(dep, k.gen()).has_value());
}

TEST_CASE("embeddings of gamma match the printed values") {
    const NumberField& k = testsupport::cubic();
    ComplexBall z = k.embed_complex(k.gen(), kPrec);
    CHECK(std::abs(z.re.mid_d() - (-0.877438833123)) < 1e-10);
    CHECK(std::abs(z.im.mid_d() - (-0.744861766619)) < 1e-10);
    RealBall t2 = k.embed_real(k.gen(), 0, kPrec);
    CHECK(std::abs(t2.mid_d() - 0.754877666247) < 1e-10);

    const NumberField& k4 = testsupport::quartic();
    ComplexBall z4 = k4.embed_complex(k4.gen(), kPrec);
    CHECK(std::abs(z4.re.mid_d() - 0.2481) < 1e-4);
    CHECK(std::abs(z4.im.mid_d() - (-1.0339)) < 1e-4);
    CHECK(std::abs(k4.embed_real(k4.gen(), 0, kPrec).mid_d() - (-1.2207)) <
          1e-4);
    CHECK(std::abs(k4.embed_real(k4.gen(), 1, kPrec).mid_d() - 0.7244) < 1e-4);
    // real embeddings come back in ascending root order
    CHECK(k4.embed_real(k4.gen(), 0, kPrec).mid_d() <
          k4.embed_real(k4.gen(), 1, kPrec).mid_d());
}

TEST_CASE("tau1_im_sign selects the conjugate") {
    NumberField up({Int(-1), Int(0), Int(1), Int(1)}, +1);
    CHECK(up.tau1_im_sign() == 1);
    ComplexBall z = up.embed_complex(up.gen(), kPrec);
    CHECK(z.im.sign_certain() == 1);
    CHECK(std::abs(z.im.mid_d() - 0.744861766619) < 1e-10);
}

TEST_CASE("embedding is a ring homomorphism within ball tolerance") {
    const NumberField& k = testsupport::cubic();
    Rng rng(333);
    for (int trial = 0; trial < 20; ++trial) {
        FieldElement a = random_element(k, rng);
        FieldElement b = random_element(k, rng);
        ComplexBall za = k.embed_complex(a, kPrec);
        ComplexBall zb = k.embed_complex(b, kPrec);
        ComplexBall zab = k.embed_complex(k.mul(a, b), kPrec);
        ComplexBall prod = za * zb;
        // enclosures of the same exact value must overlap
        CHECK(prod.re.lower_d() <= zab.re.upper_d());
        CHECK(zab.re.lower_d() <= prod.re.upper_d());
        CHECK(prod.im.lower_d() <= zab.im.upper_d());
        CHECK(zab.im.lower_d() <= prod.im.upper_d());
    }
}

TEST_CASE("norm factors through the embeddings") {
    const NumberField& k = testsupport::cubic();
    FieldElement a = el(k, {1, 2, 2});
    // |tau1(a)|^2 * tau2(a) = N(a)
    RealBall prod = norm_sq_ball(k.embed_complex(a, kPrec)) *
                    k.embed_real(a, 0, kPrec);
    CHECK(prod.contains_rat(k.norm(a)));
}

TEST_CASE("minkowski vector layout") {
    const NumberField& k4 = testsupport::quartic();
    FieldElement a = el(k4, {1, 2, 0, 1});
    BallVec v = k4.minkowski(a, kPrec);
    REQUIRE(v.size() == 4);
    ComplexBall z = k4.embed_complex(a, kPrec);
    CHECK(std::abs(v[0].mid_d() - z.re.mid_d()) < 1e-20);
    CHECK(std::abs(v[1].mid_d() - z.im.mid_d()) < 1e-20);
    CHECK(std::abs(v[2].mid_d() - k4.embed_real(a, 0, kPrec).mid_d()) < 1e-20);
    CHECK(std::abs(v[3].mid_d() - k4.embed_real(a, 1, kPrec).mid_d()) < 1e-20);
}

TEST_CASE("log_abs_first of the fundamental unit") {
    const NumberField& k = testsupport::cubic();
    FieldElement g = k.gen();
    BallVec lv = k.log_abs_first(g, 2, kPrec);
    REQUIRE(lv.size() == 2);
    // log|tau1(gamma)| = 0.1406, log tau2(gamma) = -0.2812
    CHECK(std::abs(lv[0].mid_d() - 0.140599787) < 1e-8);
    CHECK(std::abs(lv[1].mid_d() - (-0.281199574)) < 1e-8);
    // gamma is a norm-one unit: 2 log|tau1| + log|tau2| = 0
    RealBall sum = lv[0] + lv[0] + lv[1];
    CHECK(sum.contains_rat(Rat(0)));
    CHECK_THROWS_AS(k.log_abs_first(k.zero(), 2, kPrec), BallIndeterminate);
}

TEST_CASE("minkowski basis determinant sign and magnitude") {
    const NumberField& k = testsupport::cubic();
    CHECK(k.minkowski_basis_det_sign(testsupport::pol()) == -1);

    BallMat m(3, BallVec());
    FieldElement p = k.one();
    for (int j = 0; j < 3; ++j) {
        BallVec col = k.minkowski(p, kPrec);
        for (int i = 0; i < 3; ++i) m[i].push_back(col[i]);
        p = k.mul(p, k.gen());
    }
    RealBall d = ball_det(m);
    // |det| = sqrt(23)/2 for this field
    CHECK(std::abs(d.mid_d() - (-2.397915761656)) < 1e-10);
}

TEST_CASE("total positivity and real embedding signs") {
    const NumberField& k = testsupport::cubic();
    const PrecisionPolicy& pol = testsupport::pol();
    CHECK(k.is_totally_positive(k.one(), pol));
    CHECK(k.is_totally_positive(el(k, {0, 0, 1}), pol));  // gamma^2
    CHECK(k.is_totally_positive(k.gen(), pol));           // tau2 > 0
    CHECK_FALSE(k.is_totally_positive(k.neg(k.gen()), pol));
    CHECK_FALSE(k.is_totally_positive(k.zero(), pol));
    CHECK_FALSE(k.is_totally_positive(k.from_rat(Rat(-2)), pol));

    CHECK(k.real_embedding_sign(k.gen(), 0, pol) == 1);
    CHECK(k.real_embedding_sign(k.neg(k.gen()), 0, pol) == -1);
    CHECK(k.real_embedding_sign(k.zero(), 0, pol) == 0);

    const NumberField& k4 = testsupport::quartic();
    // gamma has one negative real embedding
    CHECK_FALSE(k4.is_totally_positive(k4.gen(), pol));
    CHECK(k4.real_embedding_sign(k4.gen(), 0, pol) == -1);
    CHECK(k4.real_embedding_sign(k4.gen(), 1, pol) == 1);
    // both unit generators are totally positive
    CHECK(k4.is_totally_positive(el(k4, {0, 0, 1, 0}), pol));
    CHECK(k4.is_totally_positive(el(k4, {1, 0, 1, 0}), pol));
}
