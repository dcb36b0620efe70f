#pragma once

#include <memory>
#include <random>

#include "repdimlab/pd.hpp"
#include "repdimlab/poly.hpp"
#include "repdimlab/quiver.hpp"

namespace rdl {

template <class F>
using FDAlgebraPtr = std::shared_ptr<const FDAlgebra<F>>;

/// Basis of the Jacobson radical plus its nilpotency index.
template <class F>
struct RadicalData {
    std::vector<std::vector<typename F::Elem>> basis;
    int nilpotency_index = 1;  // least t with rad^t = 0
};

namespace detail {

template <class F>
Matrix<F> trace_form(const FDAlgebra<F>& a) {
    const F& f = a.field;
    // t_m = trace of left multiplication by basis_m
    std::vector<typename F::Elem> t(a.dim, f.zero());
    for (int m = 0; m < a.dim; ++m)
        for (int j = 0; j < a.dim; ++j) t[m] = f.add(t[m], a.c(m, j, j));
    Matrix<F> T(f, a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            auto& out = T.at(i, j);
            for (int m = 0; m < a.dim; ++m)
                if (!f.is_zero(a.c(i, j, m)) && !f.is_zero(t[m]))
                    out = f.add(out, f.mul(a.c(i, j, m), t[m]));
        }
    return T;
}

template <class F>
void enforce_dickson(const FDAlgebra<F>& a) {
    if constexpr (F::is_prime) {
        if (a.field.p <= static_cast<std::uint64_t>(a.dim))
            throw input_error("radical via the trace form needs characteristic 0 or a prime > dim = " +
                              std::to_string(a.dim) + "; rerun with a larger prime");
    }
}

// radical as the kernel of the trace form, without the verification layer
template <class F>
std::vector<std::vector<typename F::Elem>> trace_radical_rows(const FDAlgebra<F>& a) {
    auto T = trace_form(a);
    auto kb = kernel_basis(T);
    std::vector<std::vector<typename F::Elem>> rows;
    for (int c = 0; c < kb.basis.cols; ++c) rows.push_back(kb.basis.col(c));
    return rows;
}

}  // namespace detail

/// Quotient algebra A/I for a two-sided ideal given by spanning rows, with
/// the projection and a linear section.
template <class F>
struct QuotientAlgebra {
    FDAlgebra<F> alg;
    Matrix<F> projection;  // dim_bar x dim
    Matrix<F> section;     // dim x dim_bar, projection * section = id
};

template <class F>
QuotientAlgebra<F> quotient_by_ideal(const FDAlgebra<F>& a,
                                     const std::vector<std::vector<typename F::Elem>>& ideal_rows) {
    const F& f = a.field;
    auto rr = rref(Matrix<F>::from_rows(f, a.dim, ideal_rows));
    std::vector<bool> is_pivot(a.dim, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> kept;
    for (int c = 0; c < a.dim; ++c)
        if (!is_pivot[c]) kept.push_back(c);
    const int dbar = static_cast<int>(kept.size());

    QuotientAlgebra<F> out;
    out.section = Matrix<F>(f, a.dim, dbar);
    for (int j = 0; j < dbar; ++j) out.section.at(kept[j], j) = f.one();
    auto project_vec = [&](std::vector<typename F::Elem> w) {
        for (int r = 0; r < rr.rank; ++r) {
            const auto c = w[rr.pivots[r]];
            if (f.is_zero(c)) continue;
            for (int j = 0; j < a.dim; ++j) w[j] = f.sub(w[j], f.mul(c, rr.reduced.at(r, j)));
        }
        std::vector<typename F::Elem> res(dbar, f.zero());
        for (int j = 0; j < dbar; ++j) res[j] = w[kept[j]];
        return res;
    };
    out.projection = Matrix<F>(f, dbar, a.dim);
    for (int c = 0; c < a.dim; ++c) {
        std::vector<typename F::Elem> unit(a.dim, f.zero());
        unit[c] = f.one();
        auto pv = project_vec(unit);
        for (int r = 0; r < dbar; ++r) out.projection.at(r, c) = pv[r];
    }

    FDAlgebra<F>& q = out.alg;
    q.field = f;
    q.dim = dbar;
    q.sc.assign(static_cast<size_t>(dbar) * dbar * dbar, f.zero());
    q.basis_labels.resize(dbar);
    for (int j = 0; j < dbar; ++j)
        q.basis_labels[j] = (static_cast<size_t>(kept[j]) < a.basis_labels.size())
                                ? a.basis_labels[kept[j]] + "~"
                                : "q" + std::to_string(j);
    for (int i = 0; i < dbar; ++i)
        for (int j = 0; j < dbar; ++j) {
            auto prod = a.mult(out.section.col(i), out.section.col(j));
            auto pv = project_vec(prod);
            for (int m = 0; m < dbar; ++m) q.c(i, j, m) = pv[m];
        }
    q.unit = project_vec(a.unit);
    q.idempotents = {q.unit};
    return out;
}

/// Kernel of the trace bilinear form (x,y) -> tr(L_xy), verified to be a
/// nilpotent two-sided ideal with semisimple quotient. Valid in
/// characteristic 0 or p > dim (enforced).
template <class F>
RadicalData<F> jacobson_radical(const FDAlgebra<F>& a) {
    detail::enforce_dickson(a);
    const F& f = a.field;
    RadicalData<F> rad;
    rad.basis = detail::trace_radical_rows(a);

    // two-sided ideal check
    RowSpan<F> span(f, a.dim);
    for (const auto& r : rad.basis) span.add(r);
    for (const auto& r : rad.basis)
        for (int k = 0; k < a.dim; ++k) {
            RDL_CHECK(span.contains(a.mult(r, a.basis_vector(k))), "radical candidate not a right ideal");
            RDL_CHECK(span.contains(a.mult(a.basis_vector(k), r)), "radical candidate not a left ideal");
        }

    // nilpotency index by iterated products
    std::vector<std::vector<typename F::Elem>> power = rad.basis;
    int index = 1;
    while (!power.empty()) {
        RDL_CHECK(index <= a.dim + 1, "radical power chain failed to vanish");
        RowSpan<F> next(f, a.dim);
        for (const auto& x : power)
            for (const auto& r : rad.basis) next.add(a.mult(x, r));
        power.clear();
        for (const auto& row : next.basis_rows()) power.push_back(row);
        ++index;
        if (power.empty()) break;
    }
    rad.nilpotency_index = index;

    // semisimple quotient check: the quotient's own trace radical vanishes
    auto quot = quotient_by_ideal(a, rad.basis);
    RDL_CHECK(detail::trace_radical_rows(quot.alg).empty(), "quotient by radical is not semisimple");
    return rad;
}

/// Corner algebra eAe for an idempotent e, with its basis inside A.
template <class F>
struct CornerAlgebra {
    FDAlgebra<F> alg;
    Matrix<F> basis_rows;  // corner basis vectors as rows in A coordinates
};

template <class F>
CornerAlgebra<F> corner_algebra(const FDAlgebra<F>& a, const std::vector<typename F::Elem>& e) {
    const F& f = a.field;
    RowSpan<F> span(f, a.dim);
    for (int k = 0; k < a.dim; ++k) span.add(a.mult(a.mult(e, a.basis_vector(k)), e));
    const int d = span.dim();
    CornerAlgebra<F> out;
    out.basis_rows = span.basis_matrix();
    out.alg.field = f;
    out.alg.dim = d;
    out.alg.sc.assign(static_cast<size_t>(d) * d * d, f.zero());
    out.alg.basis_labels.resize(d);
    for (int i = 0; i < d; ++i) out.alg.basis_labels[i] = "c" + std::to_string(i);
    const auto& rows = span.basis_rows();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto prod = a.mult(rows[i], rows[j]);
            auto coords = span.coords(prod);
            RDL_CHECK(coords.has_value(), "corner not multiplicatively closed");
            for (int m = 0; m < d; ++m) out.alg.c(i, j, m) = (*coords)[m];
        }
    auto ecoords = span.coords(e);
    RDL_CHECK(ecoords.has_value(), "corner idempotent missing from corner");
    out.alg.unit = *ecoords;
    out.alg.idempotents = {out.alg.unit};
    return out;
}

namespace detail {

template <class F>
bool algebra_commutative(const FDAlgebra<F>& a) {
    for (int i = 0; i < a.dim; ++i)
        for (int j = i + 1; j < a.dim; ++j)
            if (!(a.mult(a.basis_vector(i), a.basis_vector(j)) ==
                  a.mult(a.basis_vector(j), a.basis_vector(i))))
                return false;
    return true;
}

template <class F>
std::vector<typename F::Elem> random_element(const FDAlgebra<F>& a, std::mt19937_64& rng) {
    std::vector<typename F::Elem> v(a.dim);
    for (auto& x : v) x = a.field.from_int(static_cast<long long>(rng() % 4096) - 2048);
    return v;
}

/// Evaluates a polynomial at an algebra element.
template <class F>
std::vector<typename F::Elem> eval_poly_at(const FDAlgebra<F>& a, const Poly<F>& g,
                                           const std::vector<typename F::Elem>& x) {
    const F& f = a.field;
    std::vector<typename F::Elem> acc(a.dim, f.zero());
    for (int i = g.degree(); i >= 0; --i) {
        acc = a.mult(acc, x);
        for (int j = 0; j < a.dim; ++j) acc[j] = f.add(acc[j], f.mul(g.c[i], a.unit[j]));
    }
    return acc;
}

inline std::pair<Poly<FpField>, Poly<FpField>> poly_ext_gcd_bezout(const Poly<FpField>& a,
                                                                   const Poly<FpField>& b) {
    // returns (s, t) with s*a + t*b = gcd(a, b) (monic)
    using P = Poly<FpField>;
    const FpField f = a.field;
    P r0 = a, r1 = b;
    P s0 = P::one(f), s1 = P::zero(f);
    P t0 = P::zero(f), t1 = P::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        P s2 = s0.sub(q.mul(s1));
        P t2 = t0.sub(q.mul(t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    const auto lead_inv = f.inv(r0.lead());
    P sl = s0, tl = t0;
    for (auto& c : sl.c) c = f.mul(c, lead_inv);
    for (auto& c : tl.c) c = f.mul(c, lead_inv);
    return {sl, tl};
}

/// Tries to produce a nontrivial idempotent of a (unital, typically
/// semisimple) algebra from the minimal polynomial of a random element.
/// Exact verification gates the result; returns nullopt when the sampled
/// element gives no split.
inline std::optional<std::vector<FpField::Elem>> idempotent_from_random_element(
    const FDAlgebra<FpField>& a, std::mt19937_64& rng) {
    const FpField f = a.field;
    auto x = random_element(a, rng);
    auto R = a.right_mult_matrix(x);
    auto mp = matrix_minpoly(R, rng);
    if (mp.degree() < 1) return std::nullopt;
    auto factors = factor_fp(mp, rng);
    if (factors.size() < 2) return std::nullopt;
    // CRT idempotent for the first primary component
    Poly<FpField> m1 = Poly<FpField>::one(f);
    for (int i = 0; i < factors[0].second; ++i) m1 = m1.mul(factors[0].first);
    Poly<FpField> mrest = mp.divmod(m1).first;
    auto [s, t] = poly_ext_gcd_bezout(m1, mrest);
    // u = (t * mrest)(x) satisfies u^2 = u when mp was the true minimal polynomial
    Poly<FpField> upoly = t.mul(mrest).mod(mp);
    auto u = eval_poly_at(a, upoly, x);
    if (!(a.mult(u, u) == u)) return std::nullopt;  // Monte Carlo minpoly failed; retry
    bool zero = true, unit = true;
    for (int i = 0; i < a.dim; ++i) {
        if (!f.is_zero(u[i])) zero = false;
        if (!f.eq(u[i], a.unit[i])) unit = false;
    }
    if (zero || unit) return std::nullopt;
    return u;
}

enum class Tri { yes, no, unknown };

/// Is this (assumed semisimple) algebra a division algebra?  Sound in both
/// directions over F_p; over Q only the one-dimensional case is certified.
template <class F>
Tri is_division_algebra(const FDAlgebra<F>& a, std::mt19937_64& rng) {
    if (a.dim == 1) return Tri::yes;
    if constexpr (!F::is_prime) {
        (void)rng;
        return Tri::unknown;
    } else {
        if (!algebra_commutative(a)) return Tri::no;  // finite division rings are fields
        for (int attempt = 0; attempt < 8; ++attempt) {
            auto x = random_element(a, rng);
            auto R = a.right_mult_matrix(x);
            auto mp = matrix_minpoly(R, rng);
            if (mp.degree() == a.dim) {
                auto factors = factor_fp(mp, rng);
                if (factors.size() == 1 && factors[0].second == 1) return Tri::yes;  // primitive element
                return Tri::no;  // full-degree minpoly with a split certifies zero divisors
            }
        }
        return Tri::unknown;
    }
}

}  // namespace detail

/// Newton iteration e <- 3e^2 - 2e^3 starting from an element idempotent
/// modulo a nilpotent ideal; converges to an exact idempotent.
template <class F>
std::vector<typename F::Elem> lift_idempotent(const FDAlgebra<F>& a,
                                              std::vector<typename F::Elem> y) {
    const F& f = a.field;
    for (int it = 0; it < 64; ++it) {
        auto y2 = a.mult(y, y);
        if (y2 == y) return y;
        auto y3 = a.mult(y2, y);
        std::vector<typename F::Elem> next(a.dim);
        const auto three = f.from_int(3), two = f.from_int(2);
        for (int i = 0; i < a.dim; ++i)
            next[i] = f.sub(f.mul(three, y2[i]), f.mul(two, y3[i]));
        y = std::move(next);
    }
    throw inconclusive_error("idempotent lifting did not converge");
}

/// A complete orthogonal set of primitive idempotents summing to 1. Starts
/// from the algebra's listed idempotent system and refines each corner by
/// randomized splitting in the semisimple quotient, lifting along the
/// radical. Randomized over F_p; over Q only corners that are already split
/// (one-dimensional semisimple quotients) are decided.
template <class F>
std::vector<std::vector<typename F::Elem>> primitive_idempotents(const FDAlgebra<F>& a,
                                                                 const RadicalData<F>& rad,
                                                                 std::uint64_t seed) {
    const F& f = a.field;
    std::mt19937_64 rng(seed);
    RowSpan<F> radspan(f, a.dim);
    for (const auto& r : rad.basis) radspan.add(r);

    std::vector<std::vector<typename F::Elem>> work = a.idempotents;
    if (work.empty()) work.push_back(a.unit);
    std::vector<std::vector<typename F::Elem>> done;

    int guard = 0;
    while (!work.empty()) {
        RDL_CHECK(++guard <= 16 * a.dim + 16, "idempotent refinement loop overran");
        auto e = work.back();
        work.pop_back();
        auto corner = corner_algebra(a, e);
        // the corner radical is e rad e, expressed in corner coordinates
        std::vector<std::vector<typename F::Elem>> crad_rows;
        {
            RowSpan<F> cb(f, a.dim);
            for (int i = 0; i < corner.basis_rows.rows; ++i) cb.add(corner.basis_rows.row(i));
            for (const auto& r : rad.basis) {
                auto ere = a.mult(a.mult(e, r), e);
                auto coords = cb.coords(ere);
                RDL_CHECK(coords.has_value(), "corner radical escaped the corner");
                crad_rows.push_back(*coords);
            }
        }
        auto cq = quotient_by_ideal(corner.alg, crad_rows);
        auto verdict = detail::is_division_algebra(cq.alg, rng);
        if (verdict == detail::Tri::yes) {
            done.push_back(e);
            continue;
        }
        if (verdict == detail::Tri::unknown && !F::is_prime)
            throw inconclusive_error(
                "primitive idempotent refinement over the rationals needs split corners; use a prime field");

        // hunt a nontrivial idempotent in the corner quotient and lift it
        bool split_found = false;
        if constexpr (F::is_prime) {
            for (int attempt = 0; attempt < 20 && !split_found; ++attempt) {
                auto ubar = detail::idempotent_from_random_element(cq.alg, rng);
                if (!ubar) continue;
                // pull back to the corner and lift along the nilpotent corner radical
                std::vector<typename F::Elem> y_corner = mat_vec(cq.section, *ubar);
                auto y = vec_mat(y_corner, corner.basis_rows);
                auto u = lift_idempotent(a, std::move(y));
                // keep the split inside the corner: u = e u e by construction of the lift seed
                auto eue = a.mult(a.mult(e, u), e);
                if (!(eue == u)) continue;
                std::vector<typename F::Elem> comp(a.dim);
                for (int i = 0; i < a.dim; ++i) comp[i] = f.sub(e[i], u[i]);
                RDL_CHECK(a.mult(u, comp) == std::vector<typename F::Elem>(a.dim, f.zero()),
                          "split idempotents not orthogonal");
                work.push_back(u);
                work.push_back(comp);
                split_found = true;
            }
        }
        if (!split_found)
            throw inconclusive_error("primitive idempotent splitting exhausted its retry budget");
    }

    // exact completeness checks
    std::vector<typename F::Elem> sum(a.dim, f.zero());
    for (const auto& e : done) {
        RDL_CHECK(a.mult(e, e) == e, "refined idempotent is not idempotent");
        for (int i = 0; i < a.dim; ++i) sum[i] = f.add(sum[i], e[i]);
    }
    RDL_CHECK(sum == a.unit, "refined idempotents do not sum to 1");
    for (size_t i = 0; i < done.size(); ++i)
        for (size_t j = 0; j < done.size(); ++j) {
            if (i == j) continue;
            auto prod = a.mult(done[i], done[j]);
            for (const auto& x : prod) RDL_CHECK(f.is_zero(x), "refined idempotents not orthogonal");
        }
    return done;
}

/// A right module over an FDAlgebra in the row convention: elements are
/// coordinate rows v and v.b = v * action[b].
template <class F>
struct FDModule {
    FDAlgebraPtr<F> alg;
    int dim = 0;
    std::vector<Matrix<F>> action;  // one dim x dim matrix per algebra basis element

    std::vector<typename F::Elem> act(const std::vector<typename F::Elem>& v,
                                      const std::vector<typename F::Elem>& element) const {
        const F& f = alg->field;
        std::vector<typename F::Elem> out(dim, f.zero());
        for (int k = 0; k < alg->dim; ++k) {
            if (f.is_zero(element[k])) continue;
            auto w = vec_mat(v, action[k]);
            for (int i = 0; i < dim; ++i) out[i] = f.add(out[i], f.mul(element[k], w[i]));
        }
        return out;
    }

    /// Row-convention matrix of the action of an arbitrary algebra element.
    Matrix<F> element_action(const std::vector<typename F::Elem>& element) const {
        const F& f = alg->field;
        Matrix<F> out(f, dim, dim);
        for (int k = 0; k < alg->dim; ++k) {
            if (f.is_zero(element[k])) continue;
            const auto& m = action[k];
            for (size_t idx = 0; idx < out.e.size(); ++idx)
                if (!f.is_zero(m.e[idx])) out.e[idx] = f.add(out.e[idx], f.mul(element[k], m.e[idx]));
        }
        return out;
    }

    /// Unit acts as identity; structure constants respected (exhaustive for
    /// small sizes, sampled otherwise).
    void verify(std::mt19937_64* rng = nullptr, int samples = 200) const {
        const F& f = alg->field;
        Matrix<F> unit_action(f, dim, dim);
        for (int k = 0; k < alg->dim; ++k)
            if (!f.is_zero(alg->unit[k]))
                unit_action = unit_action.add(action[k].scale(alg->unit[k]));
        RDL_CHECK(unit_action == Matrix<F>::identity(f, dim), "unit does not act as identity");
        auto check_pair = [&](int i, int j) {
            auto lhs = action[i].mul(action[j]);
            Matrix<F> rhs(f, dim, dim);
            for (int m = 0; m < alg->dim; ++m)
                if (!f.is_zero(alg->c(i, j, m))) rhs = rhs.add(action[m].scale(alg->c(i, j, m)));
            RDL_CHECK(lhs == rhs, "module action violates structure constants");
        };
        const long long total = static_cast<long long>(alg->dim) * alg->dim;
        if (rng == nullptr || total * dim <= 200000) {
            for (int i = 0; i < alg->dim; ++i)
                for (int j = 0; j < alg->dim; ++j) check_pair(i, j);
        } else {
            for (int s = 0; s < samples; ++s)
                check_pair(static_cast<int>((*rng)() % alg->dim), static_cast<int>((*rng)() % alg->dim));
        }
    }
};

/// The right regular module A_A.
template <class F>
FDModule<F> regular_module(FDAlgebraPtr<F> a) {
    FDModule<F> m;
    m.alg = a;
    m.dim = a->dim;
    m.action.reserve(a->dim);
    for (int k = 0; k < a->dim; ++k) m.action.push_back(a->right_mult_matrix(a->basis_vector(k)));
    return m;
}

/// Submodule spanned by the given rows (must be action-invariant), with the
/// inclusion matrix back into the ambient module.
template <class F>
struct FDSubmodule {
    FDModule<F> module;
    Matrix<F> inclusion;  // sub-dim x ambient-dim rows
};

template <class F>
FDSubmodule<F> fd_submodule(const FDModule<F>& amb, const std::vector<std::vector<typename F::Elem>>& rows) {
    const F& f = amb.alg->field;
    RowSpan<F> span(f, amb.dim);
    for (const auto& r : rows) span.add(r);
    const int d = span.dim();
    FDSubmodule<F> out;
    out.module.alg = amb.alg;
    out.module.dim = d;
    out.inclusion = span.basis_matrix();
    out.module.action.reserve(amb.alg->dim);
    const auto& basis = span.basis_rows();
    for (int k = 0; k < amb.alg->dim; ++k) {
        Matrix<F> act(f, d, d);
        for (int i = 0; i < d; ++i) {
            auto img = vec_mat(basis[i], amb.action[k]);
            auto coords = span.coords(img);
            RDL_CHECK(coords.has_value(), "rows do not span a submodule");
            for (int j = 0; j < d; ++j) act.at(i, j) = (*coords)[j];
        }
        out.module.action.push_back(std::move(act));
    }
    return out;
}

/// Quotient by an invariant row span, with the projection matrix.
template <class F>
struct FDQuotient {
    FDModule<F> module;
    Matrix<F> projection;  // quot-dim x ambient-dim: v -> coordinates of v + W
};

template <class F>
FDQuotient<F> fd_quotient(const FDModule<F>& amb, const std::vector<std::vector<typename F::Elem>>& sub_rows) {
    const F& f = amb.alg->field;
    Matrix<F> W = Matrix<F>::from_rows(f, amb.dim, sub_rows);
    auto rr = rref(W);
    std::vector<bool> is_pivot(amb.dim, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> kept;
    for (int c = 0; c < amb.dim; ++c)
        if (!is_pivot[c]) kept.push_back(c);
    const int d = static_cast<int>(kept.size());

    FDQuotient<F> out;
    out.module.alg = amb.alg;
    out.module.dim = d;
    out.projection = Matrix<F>(f, d, amb.dim);
    auto reduce_vec = [&](std::vector<typename F::Elem> v) {
        for (int r = 0; r < rr.rank; ++r) {
            const auto c = v[rr.pivots[r]];
            if (f.is_zero(c)) continue;
            for (int j = 0; j < amb.dim; ++j) v[j] = f.sub(v[j], f.mul(c, rr.reduced.at(r, j)));
        }
        std::vector<typename F::Elem> res(d, f.zero());
        for (int j = 0; j < d; ++j) res[j] = v[kept[j]];
        return res;
    };
    for (int c = 0; c < amb.dim; ++c) {
        std::vector<typename F::Elem> unit(amb.dim, f.zero());
        unit[c] = f.one();
        auto pv = reduce_vec(std::move(unit));
        for (int r = 0; r < d; ++r) out.projection.at(r, c) = pv[r];
    }
    for (int k = 0; k < amb.alg->dim; ++k) {
        Matrix<F> act(f, d, d);
        for (int j = 0; j < d; ++j) {
            // section basis vector = unit at kept[j]
            auto img = amb.action[k].row(kept[j]);
            auto pv = reduce_vec(std::move(img));
            for (int m = 0; m < d; ++m) act.at(j, m) = pv[m];
        }
        out.module.action.push_back(std::move(act));
    }
    return out;
}

template <class F>
FDModule<F> fd_direct_sum(const std::vector<const FDModule<F>*>& parts, FDAlgebraPtr<F> alg) {
    const F& f = alg->field;
    FDModule<F> out;
    out.alg = alg;
    for (const auto* p : parts) out.dim += p->dim;
    for (int k = 0; k < alg->dim; ++k) {
        Matrix<F> act(f, out.dim, out.dim);
        int off = 0;
        for (const auto* p : parts) {
            for (int i = 0; i < p->dim; ++i)
                for (int j = 0; j < p->dim; ++j) act.at(off + i, off + j) = p->action[k].at(i, j);
            off += p->dim;
        }
        out.action.push_back(std::move(act));
    }
    return out;
}

/// Cached structural data for one algebra: radical, a complete primitive
/// idempotent system, the indecomposable projectives e_i A with their tops,
/// block equivalence classes, and the block-local multiplication tables the
/// resolution engine runs on.
template <class F>
struct AnalyzedAlgebra {
    FDAlgebraPtr<F> alg;
    RadicalData<F> rad;
    QuotientAlgebra<F> semisimple;                       // A / rad
    std::vector<std::vector<typename F::Elem>> prim;     // primitive idempotents
    std::vector<FDSubmodule<F>> projectives;             // e_i A inside the regular module
    std::vector<FDModule<F>> simples;                    // top(e_i A)
    std::vector<int> corner_dim;                         // dim_k of the division algebra e_i Abar e_i
    std::vector<int> block_of;                           // block class per idempotent
    std::vector<int> block_reps;                         // one idempotent index per block

    // local right multiplication inside each e_i A (d_i x d_i matrices):
    // by every algebra basis element, by every radical basis element, and by
    // every primitive idempotent
    std::vector<std::vector<Matrix<F>>> local_basis;
    std::vector<std::vector<Matrix<F>>> local_rad;
    std::vector<std::vector<Matrix<F>>> local_prim;

    int blocks() const { return static_cast<int>(block_reps.size()); }
    int proj_dim(int i) const { return projectives[i].inclusion.rows; }
};

template <class F>
AnalyzedAlgebra<F> analyze_algebra(FDAlgebraPtr<F> alg, std::uint64_t seed) {
    const F& f = alg->field;
    AnalyzedAlgebra<F> out;
    out.alg = alg;
    out.rad = jacobson_radical(*alg);
    out.semisimple = quotient_by_ideal(*alg, out.rad.basis);
    out.prim = primitive_idempotents(*alg, out.rad, seed);

    auto reg = regular_module(alg);
    for (const auto& e : out.prim) {
        // e A = row space of e * basis elements
        std::vector<std::vector<typename F::Elem>> rows;
        for (int k = 0; k < alg->dim; ++k) rows.push_back(alg->mult(e, alg->basis_vector(k)));
        auto proj = fd_submodule(reg, rows);
        // its radical e rad = span of e * r
        std::vector<std::vector<typename F::Elem>> rad_rows_in_sub;
        {
            RowSpan<F> sub_span(f, alg->dim);
            for (int i = 0; i < proj.inclusion.rows; ++i) sub_span.add(proj.inclusion.row(i));
            for (const auto& r : out.rad.basis) {
                auto er = alg->mult(e, r);
                auto coords = sub_span.coords(er);
                RDL_CHECK(coords.has_value(), "e*rad escaped eA");
                rad_rows_in_sub.push_back(*coords);
            }
        }
        out.simples.push_back(fd_quotient(proj.module, rad_rows_in_sub).module);
        out.projectives.push_back(std::move(proj));
    }

    // corner division dims and block equivalence in the semisimple quotient
    const auto& bar = out.semisimple.alg;
    auto project = [&](const std::vector<typename F::Elem>& v) { return mat_vec(out.semisimple.projection, v); };
    std::vector<std::vector<typename F::Elem>> ebar;
    for (const auto& e : out.prim) ebar.push_back(project(e));
    for (size_t i = 0; i < out.prim.size(); ++i) {
        RowSpan<F> corner_span(f, bar.dim);
        for (int k = 0; k < bar.dim; ++k)
            corner_span.add(bar.mult(bar.mult(ebar[i], bar.basis_vector(k)), ebar[i]));
        out.corner_dim.push_back(corner_span.dim());
    }
    out.block_of.assign(out.prim.size(), -1);
    for (size_t i = 0; i < out.prim.size(); ++i) {
        if (out.block_of[i] >= 0) continue;
        const int cls = static_cast<int>(out.block_reps.size());
        out.block_of[i] = cls;
        out.block_reps.push_back(static_cast<int>(i));
        for (size_t j = i + 1; j < out.prim.size(); ++j) {
            if (out.block_of[j] >= 0) continue;
            // e_i A  and e_j A are isomorphic iff ebar_i Abar ebar_j != 0
            bool nonzero = false;
            for (int k = 0; k < bar.dim && !nonzero; ++k) {
                auto v = bar.mult(bar.mult(ebar[i], bar.basis_vector(k)), ebar[j]);
                for (const auto& x : v)
                    if (!f.is_zero(x)) {
                        nonzero = true;
                        break;
                    }
            }
            if (nonzero) out.block_of[j] = cls;
        }
    }

    // block-local multiplication tables
    const int nprim = static_cast<int>(out.prim.size());
    out.local_basis.resize(nprim);
    out.local_rad.resize(nprim);
    out.local_prim.resize(nprim);
    for (int i = 0; i < nprim; ++i) {
        const auto& E = out.projectives[i].inclusion;  // d_i x dimA
        RowSpan<F> span(f, alg->dim);
        for (int r = 0; r < E.rows; ++r) span.add(E.row(r));
        auto local_of = [&](const Matrix<F>& images) {
            Matrix<F> loc(f, E.rows, E.rows);
            for (int r = 0; r < images.rows; ++r) {
                auto coords = span.coords(images.row(r));
                RDL_CHECK(coords.has_value(), "local image escaped e_iA");
                for (int c = 0; c < E.rows; ++c) loc.at(r, c) = (*coords)[c];
            }
            return loc;
        };
        out.local_basis[i].reserve(alg->dim);
        for (int k = 0; k < alg->dim; ++k) {
            // images: rows (E row) * b_k via the flat structure constants
            Matrix<F> img(f, E.rows, alg->dim);
            for (int r = 0; r < E.rows; ++r)
                for (int j = 0; j < alg->dim; ++j) {
                    const auto& vj = E.at(r, j);
                    if (f.is_zero(vj)) continue;
                    for (int m = 0; m < alg->dim; ++m)
                        if (!f.is_zero(alg->c(j, k, m)))
                            img.at(r, m) = f.add(img.at(r, m), f.mul(vj, alg->c(j, k, m)));
                }
            out.local_basis[i].push_back(local_of(img));
        }
        auto element_local = [&](const std::vector<typename F::Elem>& a) {
            Matrix<F> loc(f, E.rows, E.rows);
            for (int k = 0; k < alg->dim; ++k) {
                if (f.is_zero(a[k])) continue;
                const auto& m = out.local_basis[i][k];
                for (size_t idx = 0; idx < loc.e.size(); ++idx)
                    if (!f.is_zero(m.e[idx])) loc.e[idx] = f.add(loc.e[idx], f.mul(a[k], m.e[idx]));
            }
            return loc;
        };
        for (const auto& r : out.rad.basis) out.local_rad[i].push_back(element_local(r));
        for (const auto& e : out.prim) out.local_prim[i].push_back(element_local(e));
    }
    return out;
}

/// A direct sum of indecomposable projectives, presented blockwise: ambient
/// coordinates are the concatenated e_iA bases.
struct BlockShape {
    std::vector<int> idem;
    std::vector<int> offs;  // offs.size() == idem.size() + 1
    int dim = 0;

    static BlockShape of(const std::vector<int>& idems, const std::vector<int>& sizes) {
        BlockShape s;
        s.idem = idems;
        s.offs.push_back(0);
        for (size_t t = 0; t < idems.size(); ++t) s.offs.push_back(s.offs.back() + sizes[t]);
        s.dim = s.offs.back();
        return s;
    }
};

namespace detail {

/// u * (local matrices chosen per block): one row through a block-diagonal.
template <class F>
std::vector<typename F::Elem> blocked_row_mul(const AnalyzedAlgebra<F>& A, const BlockShape& shape,
                                              const std::vector<typename F::Elem>& u,
                                              const std::vector<std::vector<Matrix<F>>>& table,
                                              int table_index) {
    const F& f = A.alg->field;
    std::vector<typename F::Elem> out(shape.dim, f.zero());
    for (size_t t = 0; t < shape.idem.size(); ++t) {
        const auto& loc = table[shape.idem[t]][table_index];
        const int o = shape.offs[t];
        for (int r = 0; r < loc.rows; ++r) {
            const auto& x = u[o + r];
            if (f.is_zero(x)) continue;
            for (int c = 0; c < loc.cols; ++c)
                if (!f.is_zero(loc.at(r, c))) out[o + c] = f.add(out[o + c], f.mul(x, loc.at(r, c)));
        }
    }
    return out;
}

}  // namespace detail

/// Minimal cover of the row space V inside a block free module, returned as
/// a new block shape plus the epi matrix (cover-dim x ambient-dim, rows map
/// into the ambient where V lives).
template <class F>
struct BlockedCover {
    BlockShape shape;
    std::vector<int> gen_idem;
    Matrix<F> map;
};

template <class F>
BlockedCover<F> blocked_cover(const AnalyzedAlgebra<F>& A, const BlockShape& amb,
                              const std::vector<std::vector<typename F::Elem>>& v_rows) {
    const F& f = A.alg->field;
    RowSpan<F> vspan(f, amb.dim);
    for (const auto& r : v_rows) vspan.add(r);
    const int vdim = vspan.dim();

    RowSpan<F> W(f, amb.dim);
    for (const auto& u : vspan.basis_rows())
        for (size_t t = 0; t < A.rad.basis.size(); ++t)
            W.add(detail::blocked_row_mul(A, amb, u, A.local_rad, static_cast<int>(t)));

    std::vector<std::pair<int, std::vector<typename F::Elem>>> gens;
    for (size_t j = 0; j < A.prim.size(); ++j) {
        for (const auto& u : vspan.basis_rows()) {
            auto cand = detail::blocked_row_mul(A, amb, u, A.local_prim, static_cast<int>(j));
            if (W.contains(cand)) continue;
            gens.emplace_back(static_cast<int>(j), cand);
            for (int k = 0; k < A.alg->dim; ++k)
                W.add(detail::blocked_row_mul(A, amb, cand, A.local_basis, k));
        }
    }
    RDL_CHECK(W.dim() == vdim, "blocked cover generators fail to generate");

    BlockedCover<F> out;
    std::vector<int> idems, sizes;
    for (const auto& [j, v] : gens) {
        idems.push_back(j);
        sizes.push_back(A.proj_dim(j));
        out.gen_idem.push_back(j);
    }
    out.shape = BlockShape::of(idems, sizes);
    out.map = Matrix<F>(f, out.shape.dim, amb.dim);
    int off = 0;
    for (const auto& [j, v] : gens) {
        // M_v: row k = v . b_k; then rows of the block are E_j * M_v
        Matrix<F> Mv(f, A.alg->dim, amb.dim);
        for (int k = 0; k < A.alg->dim; ++k) {
            auto w = detail::blocked_row_mul(A, amb, v, A.local_basis, k);
            for (int c = 0; c < amb.dim; ++c) Mv.at(k, c) = w[c];
        }
        auto block = A.projectives[j].inclusion.mul(Mv);  // d_j x amb.dim
        for (int r = 0; r < block.rows; ++r)
            for (int c = 0; c < amb.dim; ++c) out.map.at(off + r, c) = block.at(r, c);
        off += block.rows;
    }
    RDL_CHECK(rank(out.map) == vdim, "blocked cover map is not surjective");
    return out;
}

namespace detail {

/// pd of a module whose first syzygy (inside a block free cover) is given;
/// counts further covers until a kernel vanishes.
template <class F>
PdValue pd_from_first_syzygy(const AnalyzedAlgebra<F>& A, BlockShape shape,
                             std::vector<std::vector<typename F::Elem>> rows, int cutoff) {
    int s = 1;
    while (true) {
        bool empty = true;
        for (const auto& r : rows)
            for (const auto& x : r)
                if (!A.alg->field.is_zero(x)) {
                    empty = false;
                    break;
                }
        if (empty) return PdValue::exact(s - 1);
        if (s >= cutoff) return PdValue::at_least(cutoff);
        auto cov = blocked_cover(A, shape, rows);
        auto ker = left_kernel_rows(cov.map);
        rows.clear();
        for (int i = 0; i < ker.rows; ++i) rows.push_back(ker.row(i));
        shape = cov.shape;
        ++s;
    }
}

}  // namespace detail

/// Projective dimension of an abstract FDModule by iterated minimal covers.
template <class F>
PdValue fd_pd(const AnalyzedAlgebra<F>& A, const FDModule<F>& V, int cutoff) {
    if (cutoff < 1) throw input_error("cutoff must be >= 1");
    const F& f = A.alg->field;
    if (V.dim == 0) return PdValue::exact(0);

    RowSpan<F> W(f, V.dim);
    for (const auto& r : A.rad.basis) {
        auto Mr = V.element_action(r);
        for (int i = 0; i < V.dim; ++i) W.add(Mr.row(i));
    }
    std::vector<std::pair<int, std::vector<typename F::Elem>>> gens;
    for (size_t j = 0; j < A.prim.size(); ++j) {
        auto Me = V.element_action(A.prim[j]);
        for (int i = 0; i < V.dim; ++i) {
            auto cand = Me.row(i);
            if (W.contains(cand)) continue;
            gens.emplace_back(static_cast<int>(j), cand);
            for (int k = 0; k < A.alg->dim; ++k) W.add(vec_mat(cand, V.action[k]));
        }
    }
    RDL_CHECK(W.dim() == V.dim, "cover generators fail to generate");

    std::vector<int> idems, sizes;
    for (const auto& [j, v] : gens) {
        idems.push_back(j);
        sizes.push_back(A.proj_dim(j));
    }
    auto shape = BlockShape::of(idems, sizes);
    Matrix<F> map(f, shape.dim, V.dim);
    int off = 0;
    for (const auto& [j, v] : gens) {
        Matrix<F> Mv(f, A.alg->dim, V.dim);
        for (int k = 0; k < A.alg->dim; ++k) {
            auto w = vec_mat(v, V.action[k]);
            for (int c = 0; c < V.dim; ++c) Mv.at(k, c) = w[c];
        }
        auto block = A.projectives[j].inclusion.mul(Mv);
        for (int r = 0; r < block.rows; ++r)
            for (int c = 0; c < V.dim; ++c) map.at(off + r, c) = block.at(r, c);
        off += block.rows;
    }
    RDL_CHECK(rank(map) == V.dim, "projective cover map is not surjective");

    auto ker = left_kernel_rows(map);
    if (ker.rows == 0) return PdValue::exact(0);
    std::vector<std::vector<typename F::Elem>> rows;
    for (int i = 0; i < ker.rows; ++i) rows.push_back(ker.row(i));
    return detail::pd_from_first_syzygy(A, shape, std::move(rows), cutoff);
}

/// pd of the simple top(e_iA), seeding the chain with e_i rad directly.
template <class F>
PdValue fd_pd_simple(const AnalyzedAlgebra<F>& A, int idem_index, int cutoff) {
    if (cutoff < 1) throw input_error("cutoff must be >= 1");
    const F& f = A.alg->field;
    const auto& E = A.projectives[idem_index].inclusion;
    RowSpan<F> span(f, A.alg->dim);
    for (int r = 0; r < E.rows; ++r) span.add(E.row(r));
    std::vector<std::vector<typename F::Elem>> rows;
    for (const auto& r : A.rad.basis) {
        auto er = A.alg->mult(A.prim[idem_index], r);
        auto coords = span.coords(er);
        RDL_CHECK(coords.has_value(), "e*rad escaped eA");
        rows.push_back(*coords);
    }
    auto shape = BlockShape::of({idem_index}, {E.rows});
    return detail::pd_from_first_syzygy(A, shape, std::move(rows), cutoff);
}

/// Global dimension = max pd over the distinct simples.
template <class F>
PdValue fd_global_dimension_analyzed(const AnalyzedAlgebra<F>& A, int cutoff) {
    PdValue out = PdValue::exact(0);
    for (int rep : A.block_reps) out = pd_max(out, fd_pd_simple(A, rep, cutoff));
    return out;
}


}  // namespace rdl
