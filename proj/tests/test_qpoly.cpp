#include <doctest.h>

#include <algorithm>
#include <vector>

#include "shintani/qpoly.hpp"
#include "shintani/rng.hpp"

using namespace shintani;

namespace {

QPoly poly(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    return QPoly(std::move(v));
}

QPoly random_poly(Rng& rng, int max_deg) {
    std::vector<Rat> v;
    const int deg = static_cast<int>(rng.below(max_deg + 1));
    for (int i = 0; i <= deg; ++i) {
        v.emplace_back(rng.range(-9, 9), rng.range(1, 4));
        v.back().canonicalize();
    }
    return QPoly(std::move(v));
}

}  // namespace

TEST_CASE("arithmetic basics and normalization") {
    QPoly f = poly({1, 2, 1});   // (x+1)^2
    QPoly g = poly({-1, 0, 1});  // x^2 - 1
    CHECK(qp_add(f, qp_neg(f)).is_zero());
    CHECK(qp_sub(f, g).degree() == 1);  // 2x + 2
    CHECK(qp_mul(f, g).degree() == 4);
    CHECK(qp_eval(qp_mul(f, g), Rat(2)) == Rat(27));
    CHECK(qp_derivative(f).c == poly({2, 2}).c);
    CHECK(qp_scale(g, Rat(0)).is_zero());
}

TEST_CASE("divmod satisfies a = q*b + r with deg r < deg b") {
    Rng rng(101);
    int checked = 0;
    while (checked < 200) {
        QPoly a = random_poly(rng, 6);
        QPoly b = random_poly(rng, 3);
        if (b.is_zero()) continue;
        auto [q, r] = qp_divmod(a, b);
        CHECK(qp_add(qp_mul(q, b), r).c == a.c);
        CHECK(r.degree() < b.degree());
        ++checked;
    }
}

TEST_CASE("gcd is monic and divides both inputs") {
    QPoly f = qp_mul(poly({1, 1}), poly({-2, 0, 1}));  // (x+1)(x^2-2)
    QPoly g = qp_mul(poly({1, 1}), poly({3, 1}));      // (x+1)(x+3)
    QPoly d = qp_gcd(f, g);
    CHECK(d.c == poly({1, 1}).c);
    CHECK(qp_gcd(poly({}), poly({})).is_zero());
    CHECK(qp_gcd(f, poly({})).lc() == Rat(1));

    auto x = qp_xgcd(f, g);
    CHECK(x.g.c == d.c);
    QPoly combo = qp_add(qp_mul(x.s, f), qp_mul(x.t, g));
    CHECK(combo.c == x.g.c);
}

TEST_CASE("resultant and discriminant against known values") {
    // Res(x^2-2, x^2-3) = (2-3)^2 = 1
    CHECK(qp_resultant(poly({-2, 0, 1}), poly({-3, 0, 1})) == Rat(1));
    // Res(f, g) = 0 iff common root
    CHECK(qp_resultant(poly({-2, 0, 1}), poly({-4, 0, 2})) == Rat(0));
    // disc(x^2 + bx + c) = b^2 - 4c
    CHECK(qp_discriminant(poly({3, 5, 1})) == Rat(13));
    // the two worked fields
    CHECK(qp_discriminant(poly({-1, 0, 1, 1})) == Rat(-23));
    CHECK(qp_discriminant(poly({-1, 1, 0, 0, 1})) == Rat(-283));
}

TEST_CASE("Sturm root counting") {
    QPoly f = poly({-1, 0, 1, 1});  // one real root near 0.7549
    CHECK(qp_count_real_roots(f) == 1);
    CHECK(qp_count_real_roots_in(f, Rat(0), Rat(1)) == 1);
    CHECK(qp_count_real_roots_in(f, Rat(1), Rat(2)) == 0);

    QPoly g = poly({0, -1, 0, 1});  // x^3 - x: roots -1, 0, 1
    CHECK(qp_count_real_roots(g) == 3);
    CHECK(qp_count_real_roots_in(g, Rat(-1, 2), Rat(1, 2)) == 1);

    CHECK(qp_count_real_roots(poly({1, 0, 1})) == 0);  // x^2 + 1
}

TEST_CASE("root isolation brackets each real root once") {
    QPoly g = poly({0, -1, 0, 1});  // roots -1, 0, 1
    auto ivs = qp_isolate_real_roots(g);
    REQUIRE(ivs.size() == 3);
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
        CHECK(ivs[i].second <= ivs[i + 1].first);
    }
    for (const auto& [a, b] : ivs) {
        if (a == b) {
            CHECK(qp_eval(g, a) == Rat(0));
        } else {
            CHECK(qp_eval(g, a) * qp_eval(g, b) < 0);
            CHECK(qp_count_real_roots_in(g, a, b) == 1);
        }
    }

    auto one = qp_isolate_real_roots(poly({-1, 0, 1, 1}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].first < Rat(76, 100));
    CHECK(one[0].second > Rat(75, 100));
}

TEST_CASE("factor degrees mod p for x^3 + x^2 - 1") {
    const std::vector<Int> f{Int(-1), Int(0), Int(1), Int(1)};
    auto d2 = qp_factor_degrees_mod_p(f, 2);
    REQUIRE(d2.has_value());
    CHECK(*d2 == std::vector<int>{3});  // 2 is inert
    auto d5 = qp_factor_degrees_mod_p(f, 5);
    REQUIRE(d5.has_value());
    CHECK(*d5 == std::vector<int>{1, 2});
    auto d7 = qp_factor_degrees_mod_p(f, 7);
    REQUIRE(d7.has_value());
    CHECK(*d7 == std::vector<int>{1, 2});
    // 23 divides the discriminant, so the reduction is not squarefree
    CHECK_FALSE(qp_factor_degrees_mod_p(f, 23).has_value());
}

TEST_CASE("factor degree multisets multiply out to the full degree") {
    Rng rng(202);
    int checked = 0;
    while (checked < 60) {
        std::vector<Int> f;
        for (int i = 0; i < 4; ++i) f.emplace_back(rng.range(-6, 6));
        f.emplace_back(1);
        auto degs = qp_factor_degrees_mod_p(f, 11);
        if (!degs.has_value()) continue;
        int total = 0;
        for (int d : *degs) total += d;
        CHECK(total == 4);
        CHECK(std::is_sorted(degs->begin(), degs->end()));
        ++checked;
    }
}

TEST_CASE("irreducibility screen on known cases") {
    auto irr = [](std::initializer_list<long> cs) {
        std::vector<Int> v;
        for (long c : cs) v.emplace_back(c);
        return qp_irreducible_over_q(v);
    };
    CHECK(irr({-1, 0, 1, 1}) == std::optional<bool>(true));
    CHECK(irr({-1, 1, 0, 0, 1}) == std::optional<bool>(true));
    CHECK(irr({-2, 0, 0, 1}) == std::optional<bool>(true));  // x^3 - 2
    // x^3 + x^2 - 2 = (x - 1)(x^2 + 2x + 2)
    CHECK(irr({-2, 0, 1, 1}) == std::optional<bool>(false));
    // x^4 - 1 has the rational root 1
    CHECK(irr({-1, 0, 0, 0, 1}) == std::optional<bool>(false));
}
