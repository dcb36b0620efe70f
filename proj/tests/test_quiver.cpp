#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "repdimlab/quiver.hpp"

using namespace rdl;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// independent monomial-count oracle: at gap distance d there are C(d+n, n)
// commutative monomials of degree d in n+1 variables, over n+1-d start vertices
long long beilinson_dim_oracle(int n) {
    long long total = 0;
    for (int d = 0; d <= n; ++d) total += (n + 1 - d) * binom(d + n, n);
    return total;
}

}  // namespace

TEST_CASE("beilinson builder shape") {
    RatField Q;
    auto b1 = build_beilinson(1, Q);
    CHECK(b1.quiver.vertex_count == 2);
    CHECK(b1.quiver.arrows.size() == 2);
    CHECK(b1.relations.empty());

    auto b2 = build_beilinson(2, Q);
    CHECK(b2.quiver.vertex_count == 3);
    CHECK(b2.quiver.arrows.size() == 6);
    CHECK(b2.relations.size() == 3);

    auto b3 = build_beilinson(3, Q);
    CHECK(b3.quiver.vertex_count == 4);
    CHECK(b3.quiver.arrows.size() == 12);
    CHECK(b3.relations.size() == 12);

    CHECK_THROWS_AS(build_beilinson(0, Q), input_error);
}

TEST_CASE("exterior builder shape") {
    RatField Q;
    auto e1 = build_exterior(1, Q);
    CHECK(e1.quiver.vertex_count == 1);
    CHECK(e1.quiver.arrows.size() == 1);
    CHECK(e1.relations.size() == 1);
    CHECK(e1.nilpotency_bound == 2);

    auto e2 = build_exterior(2, Q);
    CHECK(e2.quiver.arrows.size() == 2);
    CHECK(e2.relations.size() == 3);
    CHECK(e2.nilpotency_bound == 3);

    CHECK_THROWS_AS(build_exterior(0, Q), input_error);
}

TEST_CASE("algebra dimensions match the monomial-count oracle") {
    RatField Q;
    CHECK(algebra_basis(build_beilinson(1, Q)).total_dim == 4);
    CHECK(algebra_basis(build_beilinson(2, Q)).total_dim == 15);
    CHECK(algebra_basis(build_beilinson(3, Q)).total_dim == 56);
    for (int n = 1; n <= 3; ++n)
        CHECK(algebra_basis(build_beilinson(n, Q)).total_dim == beilinson_dim_oracle(n));

    CHECK(algebra_basis(build_exterior(1, Q)).total_dim == 2);
    CHECK(algebra_basis(build_exterior(2, Q)).total_dim == 4);
    CHECK(algebra_basis(build_exterior(3, Q)).total_dim == 8);

    FpField F(1000003);
    CHECK(algebra_basis(build_beilinson(2, F)).total_dim == 15);
    CHECK(algebra_basis(build_exterior(3, F)).total_dim == 8);
}

TEST_CASE("graded piece dimensions: dim e_i L e_j = C(j-i+n, n)") {
    RatField Q;
    for (int n = 1; n <= 3; ++n) {
        auto basis = algebra_basis(build_beilinson(n, Q));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                int d = 0;
                for (int len = 0; len <= basis.max_length; ++len) d += basis.dim_of(i, j, len);
                if (i <= j)
                    CHECK(d == binom(j - i + n, n));
                else
                    CHECK(d == 0);
            }
    }
}

TEST_CASE("relations vanish in the quotient") {
    RatField Q;
    for (int n = 2; n <= 3; ++n) {
        auto pres = build_beilinson(n, Q);
        auto basis = algebra_basis(pres);
        for (const auto& rel : pres.relations)
            for (const auto& c : reduce_relation(basis, rel)) CHECK(Q.is_zero(c));
    }
    auto e = build_exterior(3, Q);
    auto eb = algebra_basis(e);
    for (const auto& rel : e.relations)
        for (const auto& c : reduce_relation(eb, rel)) CHECK(Q.is_zero(c));
}

TEST_CASE("structure constants of beilinson(1)") {
    RatField Q;
    auto pres = build_beilinson(1, Q);
    auto basis = algebra_basis(pres);
    auto alg = structure_constants(pres, basis);
    REQUIRE(alg.dim == 4);
    alg.verify();

    auto find = [&](const std::string& lbl) {
        for (int i = 0; i < alg.dim; ++i)
            if (alg.basis_labels[i] == lbl) return i;
        FAIL("missing basis label ", lbl);
        return -1;
    };
    const int e0 = find("e0"), e1 = find("e1"), x0 = find("x0@0");
    auto prod = alg.mult(alg.basis_vector(e0), alg.basis_vector(x0));
    CHECK(prod == alg.basis_vector(x0));
    prod = alg.mult(alg.basis_vector(x0), alg.basis_vector(e1));
    CHECK(prod == alg.basis_vector(x0));
    prod = alg.mult(alg.basis_vector(e1), alg.basis_vector(x0));
    for (const auto& c : prod) CHECK(Q.is_zero(c));
}

TEST_CASE("commutativity holds in normal form over beilinson(2)") {
    RatField Q;
    auto pres = build_beilinson(2, Q);
    auto basis = algebra_basis(pres);
    auto alg = structure_constants(pres, basis);
    alg.verify();
    auto find = [&](const std::string& lbl) {
        for (int i = 0; i < alg.dim; ++i)
            if (alg.basis_labels[i] == lbl) return i;
        FAIL("missing basis label ", lbl);
        return -1;
    };
    // x_0 at gap 0 then x_1 at gap 1, and vice versa
    auto ab = alg.mult(alg.basis_vector(find("x0@0")), alg.basis_vector(find("x1@1")));
    auto ba = alg.mult(alg.basis_vector(find("x1@0")), alg.basis_vector(find("x0@1")));
    CHECK(ab == ba);
    bool nonzero = false;
    for (const auto& c : ab)
        if (!Q.is_zero(c)) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("exterior(2) structure constants verify") {
    FpField F(1000003);
    auto pres = build_exterior(2, F);
    auto basis = algebra_basis(pres);
    auto alg = structure_constants(pres, basis);
    CHECK(alg.dim == 4);
    alg.verify();
}

TEST_CASE("presentation validation errors") {
    RatField Q;
    // cyclic quiver without bound
    AlgebraPresentation<RatField> pres;
    pres.field = Q;
    pres.quiver.vertex_count = 1;
    pres.quiver.arrows.push_back({0, 0, "a"});
    CHECK_THROWS_AS(pres.validate(), input_error);
    pres.nilpotency_bound = 3;
    CHECK_NOTHROW(pres.validate());

    // non-homogeneous relation
    AlgebraPresentation<RatField> bad;
    bad.field = Q;
    bad.quiver.vertex_count = 1;
    bad.quiver.arrows.push_back({0, 0, "a"});
    bad.nilpotency_bound = 4;
    Relation<RatField> rel;
    rel.source = rel.target = 0;
    rel.terms.push_back({Q.one(), Path{0, 0, {0, 0}}});
    rel.terms.push_back({Q.one(), Path{0, 0, {0, 0, 0}}});
    bad.relations.push_back(rel);
    CHECK_THROWS_AS(bad.validate(), input_error);
}
