#include <doctest.h>

#include "shintani/errors.hpp"
#include "shintani/rational.hpp"

using namespace shintani;

TEST_CASE("rat_to_string always writes a denominator") {
    CHECK(rat_to_string(Rat(3)) == "3/1");
    CHECK(rat_to_string(Rat(0)) == "0/1");
    CHECK(rat_to_string(Rat(-2, 5)) == "-2/5");
    Rat r(4, 6);
    r.canonicalize();
    CHECK(rat_to_string(r) == "2/3");
}

TEST_CASE("parse_rat round trips and canonicalizes") {
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-6/8") == Rat(-3, 4));
    CHECK(parse_rat("6/-8") == Rat(-3, 4));
    for (const char* s : {"1/2", "-9/7", "0/1", "123456789123456789/2"}) {
        CHECK(rat_to_string(parse_rat(s)) == s);
    }
}

TEST_CASE("parse_rat rejects malformed input") {
    for (const char* s : {"", "a", "1/0", "1/", "/2", "1.5", "1/2/3", "2 "}) {
        CHECK_THROWS_AS(parse_rat(s), ValidationError);
    }
}

TEST_CASE("sign_of matches comparison with zero") {
    CHECK(sign_of(Rat(5, 3)) == 1);
    CHECK(sign_of(Rat(-1, 9)) == -1);
    CHECK(sign_of(Rat(0)) == 0);
}

TEST_CASE("rat_height is the max of |num| and den") {
    CHECK(rat_height(Rat(0)) == 1);
    CHECK(rat_height(Rat(-7, 3)) == 7);
    CHECK(rat_height(Rat(2, 11)) == 11);
}
