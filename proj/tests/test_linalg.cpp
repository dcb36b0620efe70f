#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "repdimlab/matrix.hpp"
#include "repdimlab/poly.hpp"

using namespace rdl;

TEST_CASE("rref on identity and degenerate matrices") {
    RatField Q;
    auto id = Matrix<RatField>::identity(Q, 2);
    auto rr = rref(id);
    CHECK(rr.rank == 2);
    CHECK(rr.pivots == std::vector<int>{0, 1});
    CHECK(rr.reduced == id);

    Matrix<RatField> prop(Q, 2, 2);
    prop.at(0, 0) = 1;
    prop.at(0, 1) = 2;
    prop.at(1, 0) = 2;
    prop.at(1, 1) = 4;
    auto rp = rref(prop);
    CHECK(rp.rank == 1);
    CHECK(rp.pivots == std::vector<int>{0});

    FpField F7(7);
    Matrix<FpField> z(F7, 3, 4);
    auto rz = rref(z);
    CHECK(rz.rank == 0);
    CHECK(rz.pivots.empty());

    Matrix<RatField> empty(Q, 0, 0);
    CHECK(rref(empty).rank == 0);
}

TEST_CASE("kernel bases") {
    RatField Q;
    auto id = Matrix<RatField>::identity(Q, 2);
    CHECK(kernel_basis(id).basis.cols == 0);

    Matrix<RatField> m(Q, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    auto kb = kernel_basis(m);
    REQUIRE(kb.basis.cols == 1);
    CHECK(m.mul(kb.basis).is_zero());
    // span of (-2, 1)
    CHECK(kb.basis.at(0, 0) == mpq_class(-2));
    CHECK(kb.basis.at(1, 0) == mpq_class(1));

    Matrix<RatField> z(Q, 2, 3);
    auto kz = kernel_basis(z);
    CHECK(kz.basis == Matrix<RatField>::identity(Q, 3));
}

TEST_CASE("solve_linear") {
    RatField Q;
    auto id = Matrix<RatField>::identity(Q, 2);
    Matrix<RatField> b(Q, 2, 1);
    b.at(0, 0) = 5;
    b.at(1, 0) = -3;
    auto x = solve_linear(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix<RatField> a(Q, 2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 0) = 2;
    a.at(1, 1) = 4;
    Matrix<RatField> bad(Q, 2, 1);
    bad.at(0, 0) = 1;
    bad.at(1, 0) = 3;
    CHECK(!solve_linear(a, bad).has_value());

    Matrix<RatField> good(Q, 2, 1);
    good.at(0, 0) = 1;
    good.at(1, 0) = 2;
    auto sol = solve_linear(a, good);
    REQUIRE(sol.has_value());
    CHECK(a.mul(*sol) == good);

    Matrix<RatField> wrong(Q, 3, 1);
    CHECK_THROWS_AS((void)solve_linear(a, wrong), input_error);
}

TEST_CASE("rank-nullity and rref idempotence over F_p, 120 random cases") {
    FpField F(1000003);
    std::mt19937_64 rng(42);
    for (int t = 0; t < 120; ++t) {
        const int r = 1 + static_cast<int>(rng() % 8);
        const int c = 1 + static_cast<int>(rng() % 8);
        auto m = random_matrix(F, r, c, rng, -20, 20);
        auto rr = rref(m);
        auto kb = kernel_basis(m);
        CHECK(rr.rank + kb.basis.cols == c);
        CHECK(m.mul(kb.basis).is_zero());
        auto rr2 = rref(rr.reduced);
        CHECK(rr2.reduced == rr.reduced);
        // solve feasibility iff rank([a|b]) == rank(a)
        auto b = random_matrix(F, r, 1, rng, -20, 20);
        const bool feasible = solve_linear(m, b).has_value();
        CHECK(feasible == (rank(m.hstack(b)) == rr.rank));
    }
}

TEST_CASE("RowSpan coordinates") {
    RatField Q;
    RowSpan<RatField> span(Q, 3);
    CHECK(span.add({mpq_class(1), mpq_class(2), mpq_class(0)}));
    CHECK(span.add({mpq_class(0), mpq_class(1), mpq_class(1)}));
    CHECK(!span.add({mpq_class(1), mpq_class(3), mpq_class(1)}));
    auto c = span.coords({mpq_class(2), mpq_class(5), mpq_class(1)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == mpq_class(2));
    CHECK((*c)[1] == mpq_class(1));
    CHECK(!span.coords({mpq_class(0), mpq_class(0), mpq_class(1)}).has_value());
}

TEST_CASE("polynomial factorization over F_p") {
    FpField F(1000003);
    std::mt19937_64 rng(7);
    // (x-1)^2 (x^2+1) over F_p with p = 3 mod 4 so x^2+1 is irreducible
    FpField F3(1000003);
    REQUIRE(F3.p % 4 == 3);
    Poly<FpField> xm1(F3, {F3.neg(1), 1});
    Poly<FpField> x2p1(F3, {1, 0, 1});
    auto f = xm1.mul(xm1).mul(x2p1);
    auto factors = factor_fp(f, rng);
    REQUIRE(factors.size() == 2);
    Poly<FpField> rebuilt = Poly<FpField>::one(F3);
    for (auto& [q, m] : factors)
        for (int i = 0; i < m; ++i) rebuilt = rebuilt.mul(q);
    CHECK(rebuilt == f.monic());
    bool saw_quadratic = false;
    for (auto& [q, m] : factors)
        if (q.degree() == 2) {
            saw_quadratic = true;
            CHECK(m == 1);
        }
    CHECK(saw_quadratic);
}

TEST_CASE("matrix minimal polynomial") {
    FpField F(1000003);
    std::mt19937_64 rng(3);
    // nilpotent Jordan block of size 3: minpoly x^3
    Matrix<FpField> n(F, 3, 3);
    n.at(0, 1) = 1;
    n.at(1, 2) = 1;
    auto mp = matrix_minpoly(n, rng);
    CHECK(mp.degree() == 3);
    CHECK(F.is_zero(mp.c[0]));
    CHECK(F.is_zero(mp.c[1]));
    CHECK(F.is_zero(mp.c[2]));

    // diag(1, 2) has squarefree minpoly (x-1)(x-2)
    Matrix<FpField> d(F, 2, 2);
    d.at(0, 0) = 1;
    d.at(1, 1) = 2;
    auto mpd = matrix_minpoly(d, rng);
    CHECK(mpd.degree() == 2);
}
