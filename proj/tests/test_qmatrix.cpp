#include <doctest.h>

#include <vector>

#include "shintani/qmatrix.hpp"
#include "shintani/rng.hpp"

using namespace shintani;

namespace {

QMatrix random_matrix(Rng& rng, size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            m.at(i, j) = Rat(rng.range(-9, 9), rng.range(1, 3));
            m.at(i, j).canonicalize();
        }
    }
    return m;
}

}  // namespace

TEST_CASE("determinant of known matrices") {
    QMatrix m(2, 2);
    m.at(0, 0) = Rat(1);
    m.at(0, 1) = Rat(2);
    m.at(1, 0) = Rat(3);
    m.at(1, 1) = Rat(4);
    CHECK(m.det() == Rat(-2));
    CHECK(QMatrix::identity(5).det() == Rat(1));
    CHECK(QMatrix(3, 3).det() == Rat(0));

    // swapping two rows flips the sign
    QMatrix s(2, 2);
    s.at(0, 0) = Rat(3);
    s.at(0, 1) = Rat(4);
    s.at(1, 0) = Rat(1);
    s.at(1, 1) = Rat(2);
    CHECK(s.det() == Rat(2));
}

TEST_CASE("det is multiplicative and inverse satisfies A*Ainv = I") {
    Rng rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        QMatrix a = random_matrix(rng, 3);
        QMatrix b = random_matrix(rng, 3);
        CHECK(a.mul(b).det() == a.det() * b.det());
        auto inv = a.inverse();
        if (a.det() == 0) {
            CHECK_FALSE(inv.has_value());
            continue;
        }
        REQUIRE(inv.has_value());
        QMatrix prod = a.mul(*inv);
        for (size_t i = 0; i < 3; ++i) {
            for (size_t j = 0; j < 3; ++j) {
                CHECK(prod.at(i, j) == (i == j ? Rat(1) : Rat(0)));
            }
        }
    }
}

TEST_CASE("solve returns the unique solution or nullopt") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        QMatrix a = random_matrix(rng, 4);
        std::vector<Rat> x_true;
        for (int i = 0; i < 4; ++i) x_true.emplace_back(rng.range(-5, 5));
        std::vector<Rat> b = a.mul_vec(x_true);
        auto x = a.solve(b);
        if (a.det() == 0) {
            CHECK_FALSE(x.has_value());
            continue;
        }
        REQUIRE(x.has_value());
        CHECK(*x == x_true);
    }
}

TEST_CASE("rank detects dependent columns") {
    QMatrix m = QMatrix::from_columns({{Rat(1), Rat(0), Rat(2)},
                                       {Rat(0), Rat(1), Rat(1)},
                                       {Rat(2), Rat(1), Rat(6)}});
    // from_columns places each list as a column
    CHECK(m.at(0, 0) == Rat(1));
    CHECK(m.at(2, 0) == Rat(2));
    CHECK(m.at(0, 1) == Rat(0));
    CHECK(m.rank() == 3);

    // 2 c1 + c2 swallows the third column
    QMatrix dep = QMatrix::from_columns({{Rat(1), Rat(0), Rat(2)},
                                         {Rat(0), Rat(1), Rat(1)},
                                         {Rat(2), Rat(1), Rat(5)}});
    CHECK(dep.rank() == 2);

    QMatrix d = QMatrix::from_columns({{Rat(1), Rat(2)},
                                       {Rat(2), Rat(4)}});
    CHECK(d.rank() == 1);
    CHECK(QMatrix(3, 3).rank() == 0);
    CHECK(QMatrix::identity(4).rank() == 4);

    // wide matrix: rank bounded by row count
    QMatrix w(2, 3);
    w.at(0, 0) = Rat(1);
    w.at(1, 1) = Rat(1);
    w.at(0, 2) = Rat(7);
    CHECK(w.rank() == 2);
}
