#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "repdimlab/fdalg.hpp"

using namespace rdl;

namespace {

// k x k as structure constants
template <class F>
FDAlgebra<F> product_field(F f) {
    FDAlgebra<F> a;
    a.field = f;
    a.dim = 2;
    a.basis_labels = {"u", "v"};
    a.sc.assign(8, f.zero());
    a.c(0, 0, 0) = f.one();
    a.c(1, 1, 1) = f.one();
    a.unit = {f.one(), f.one()};
    a.idempotents = {{f.one(), f.zero()}, {f.zero(), f.one()}};
    return a;
}

// upper triangular 2x2 matrices, basis e11, e12, e22
template <class F>
FDAlgebra<F> upper_triangular(F f) {
    FDAlgebra<F> a;
    a.field = f;
    a.dim = 3;
    a.basis_labels = {"e11", "e12", "e22"};
    a.sc.assign(27, f.zero());
    a.c(0, 0, 0) = f.one();  // e11 e11 = e11
    a.c(0, 1, 1) = f.one();  // e11 e12 = e12
    a.c(1, 2, 1) = f.one();  // e12 e22 = e12
    a.c(2, 2, 2) = f.one();  // e22 e22 = e22
    a.unit = {f.one(), f.zero(), f.one()};
    a.idempotents = {{f.one(), f.zero(), f.zero()}, {f.zero(), f.zero(), f.one()}};
    return a;
}

// full 2x2 matrix algebra, basis e11, e12, e21, e22
template <class F>
FDAlgebra<F> mat2(F f) {
    FDAlgebra<F> a;
    a.field = f;
    a.dim = 4;
    a.basis_labels = {"e11", "e12", "e21", "e22"};
    a.sc.assign(64, f.zero());
    auto idx = [](int r, int c) { return 2 * r + c; };
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                for (int u = 0; u < 2; ++u)
                    if (s == t) a.c(idx(r, s), idx(t, u), idx(r, u)) = f.one();
    a.unit.assign(4, f.zero());
    a.unit[idx(0, 0)] = f.one();
    a.unit[idx(1, 1)] = f.one();
    a.idempotents = {a.unit};
    return a;
}

template <class F>
FDAlgebraPtr<F> beilinson_fdalgebra(int n, F f) {
    auto pres = build_beilinson(n, f);
    auto basis = algebra_basis(pres);
    return std::make_shared<const FDAlgebra<F>>(structure_constants(pres, basis));
}

}  // namespace

TEST_CASE("radical of a product field is zero") {
    RatField Q;
    auto a = product_field(Q);
    a.verify();
    auto rad = jacobson_radical(a);
    CHECK(rad.basis.empty());
    CHECK(rad.nilpotency_index == 1);
}

TEST_CASE("radical of upper triangular matrices") {
    FpField F(1000003);
    auto a = upper_triangular(F);
    a.verify();
    auto rad = jacobson_radical(a);
    REQUIRE(rad.basis.size() == 1);
    // spanned by e12
    CHECK(!F.is_zero(rad.basis[0][1]));
    CHECK(F.is_zero(rad.basis[0][0]));
    CHECK(F.is_zero(rad.basis[0][2]));
    CHECK(rad.nilpotency_index == 2);
}

TEST_CASE("radical of beilinson(1) is the arrow span") {
    FpField F(1000003);
    auto pres = build_beilinson(1, F);
    auto basis = algebra_basis(pres);
    auto a = structure_constants(pres, basis);
    a.verify();
    auto rad = jacobson_radical(a);
    CHECK(rad.basis.size() == 2);
    CHECK(rad.nilpotency_index == 2);
}

TEST_CASE("radical characteristic guard") {
    FpField tiny(3);
    auto a = mat2(tiny);  // dim 4 > p = 3
    CHECK_THROWS_AS((void)jacobson_radical(a), input_error);
}

TEST_CASE("primitive idempotents: beilinson(1), M_2 and a product field") {
    FpField F(1000003);
    {
        auto pres = build_beilinson(1, F);
        auto basis = algebra_basis(pres);
        auto a = structure_constants(pres, basis);
        auto rad = jacobson_radical(a);
        auto prim = primitive_idempotents(a, rad, 11);
        CHECK(prim.size() == 2);
    }
    {
        auto a = mat2(F);
        a.verify();
        auto rad = jacobson_radical(a);
        CHECK(rad.basis.empty());
        auto prim = primitive_idempotents(a, rad, 5);
        CHECK(prim.size() == 2);
        // rank-one idempotents: left multiplication has rank 2 (two columns of a 2x2 matrix)
        for (const auto& e : prim) CHECK(rank(a.left_mult_matrix(e)) == 2);
    }
    {
        RatField Q;
        auto a = product_field(Q);
        auto rad = jacobson_radical(a);
        auto prim = primitive_idempotents(a, rad, 3);
        CHECK(prim.size() == 2);
    }
}

TEST_CASE("analyze beilinson(1): projectives of dims 3 and 1, gl.dim 1") {
    FpField F(1000003);
    auto alg = beilinson_fdalgebra(1, F);
    auto A = analyze_algebra(alg, 17);
    REQUIRE(A.prim.size() == 2);
    std::vector<int> pdims = {A.proj_dim(0), A.proj_dim(1)};
    std::sort(pdims.begin(), pdims.end());
    CHECK(pdims == std::vector<int>{1, 3});
    CHECK(A.blocks() == 2);
    for (int rep : A.block_reps) CHECK(A.simples[rep].dim == 1);
    CHECK(fd_global_dimension_analyzed(A, 32) == PdValue::exact(1));
}

TEST_CASE("gl.dim of semisimple and hereditary examples") {
    FpField F(1000003);
    {
        auto a = std::make_shared<const FDAlgebra<FpField>>(mat2(F));
        auto A = analyze_algebra(a, 23);
        CHECK(A.blocks() == 1);
        CHECK(A.simples[A.block_reps[0]].dim == 2);
        CHECK(fd_global_dimension_analyzed(A, 32) == PdValue::exact(0));
    }
    {
        auto a = std::make_shared<const FDAlgebra<FpField>>(upper_triangular(F));
        auto A = analyze_algebra(a, 29);
        CHECK(A.blocks() == 2);
        CHECK(fd_global_dimension_analyzed(A, 32) == PdValue::exact(1));
    }
}

TEST_CASE("gl.dim beilinson(2) structure-constant algebra is 2") {
    FpField F(1000003);
    auto alg = beilinson_fdalgebra(2, F);
    auto A = analyze_algebra(alg, 31);
    CHECK(A.prim.size() == 3);
    CHECK(fd_global_dimension_analyzed(A, 32) == PdValue::exact(2));
}

TEST_CASE("cutoff semantics: exterior algebra has infinite global dimension") {
    FpField F(1000003);
    auto pres = build_exterior(2, F);
    auto basis = algebra_basis(pres);
    auto a = std::make_shared<const FDAlgebra<FpField>>(structure_constants(pres, basis));
    auto A = analyze_algebra(a, 37);
    CHECK(fd_global_dimension_analyzed(A, 6) == PdValue::at_least(6));
}

TEST_CASE("regular module verifies") {
    FpField F(1000003);
    auto alg = beilinson_fdalgebra(2, F);
    auto reg = regular_module(alg);
    reg.verify();
    CHECK(reg.dim == 15);
}

TEST_CASE("analyze over the rationals with split corners") {
    RatField Q;
    auto alg = beilinson_fdalgebra(1, Q);
    auto A = analyze_algebra(alg, 41);
    CHECK(A.prim.size() == 2);
    CHECK(fd_global_dimension_analyzed(A, 32) == PdValue::exact(1));
}
