#pragma once

#include <random>
#include <vector>

#include "repdimlab/matrix.hpp"

namespace rdl {

/// Dense univariate polynomial, coefficients in ascending degree order.
template <class F>
struct Poly {
    using Elem = typename F::Elem;

    F field;
    std::vector<Elem> c;

    explicit Poly(F f) : field(f) {}
    Poly(F f, std::vector<Elem> coeffs) : field(f), c(std::move(coeffs)) { normalize(); }

    static Poly zero(F f) { return Poly(f); }
    static Poly one(F f) { return Poly(f, {f.one()}); }
    static Poly x(F f) { return Poly(f, {f.zero(), f.one()}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    void normalize() {
        while (!c.empty() && field.is_zero(c.back())) c.pop_back();
    }

    const Elem& lead() const { return c.back(); }

    Poly monic() const {
        RDL_CHECK(!is_zero(), "monic of zero polynomial");
        Poly r = *this;
        const Elem inv = field.inv(lead());
        for (auto& x : r.c) x = field.mul(x, inv);
        return r;
    }

    Poly add(const Poly& o) const {
        Poly r(field);
        r.c.resize(std::max(c.size(), o.c.size()), field.zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = field.add(r.c[i], o.c[i]);
        r.normalize();
        return r;
    }

    Poly sub(const Poly& o) const {
        Poly r(field);
        r.c.resize(std::max(c.size(), o.c.size()), field.zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = field.sub(r.c[i], o.c[i]);
        r.normalize();
        return r;
    }

    Poly mul(const Poly& o) const {
        if (is_zero() || o.is_zero()) return zero(field);
        Poly r(field);
        r.c.assign(c.size() + o.c.size() - 1, field.zero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (field.is_zero(c[i])) continue;
            for (size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = field.add(r.c[i + j], field.mul(c[i], o.c[j]));
        }
        r.normalize();
        return r;
    }

    /// Returns (quotient, remainder) of *this by o.
    std::pair<Poly, Poly> divmod(const Poly& o) const {
        RDL_CHECK(!o.is_zero(), "polynomial division by zero");
        Poly q(field), r = *this;
        if (r.degree() >= o.degree()) q.c.assign(r.degree() - o.degree() + 1, field.zero());
        const Elem lead_inv = field.inv(o.lead());
        while (!r.is_zero() && r.degree() >= o.degree()) {
            const int shift = r.degree() - o.degree();
            const Elem coef = field.mul(r.lead(), lead_inv);
            q.c[shift] = field.add(q.c[shift], coef);
            for (int i = 0; i <= o.degree(); ++i)
                r.c[shift + i] = field.sub(r.c[shift + i], field.mul(coef, o.c[i]));
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }

    Poly mod(const Poly& o) const { return divmod(o).second; }

    Poly derivative() const {
        Poly r(field);
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(field.mul(c[i], field.from_int(static_cast<long long>(i))));
        r.normalize();
        return r;
    }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!field.eq(c[i], o.c[i])) return false;
        return true;
    }
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = a.mod(b);
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

template <class F>
Poly<F> poly_lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>::zero(a.field);
    return a.mul(b).divmod(poly_gcd(a, b)).first.monic();
}

/// a^e mod m by square-and-multiply.
template <class F>
Poly<F> poly_powmod(Poly<F> a, unsigned long long e, const Poly<F>& m) {
    Poly<F> r = Poly<F>::one(a.field);
    a = a.mod(m);
    while (e) {
        if (e & 1ULL) r = r.mul(a).mod(m);
        a = a.mul(a).mod(m);
        e >>= 1ULL;
    }
    return r;
}

inline Poly<FpField> random_poly(FpField f, int deg_bound, std::mt19937_64& rng) {
    std::vector<FpField::Elem> c(static_cast<size_t>(deg_bound) + 1);
    for (auto& x : c) x = rng() % f.p;
    return Poly<FpField>(f, std::move(c));
}

namespace detail {

// equal-degree splitting (Cantor-Zassenhaus) of a squarefree product of
// irreducibles all of degree d
inline void equal_degree_split(const Poly<FpField>& f, int d, std::mt19937_64& rng,
                               std::vector<Poly<FpField>>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const FpField k = f.field;
    RDL_CHECK(k.p > 2, "equal-degree splitting requires odd p");
    // (p^d - 1) / 2 as a 128-bit quantity; p^d can exceed 64 bits for the
    // degrees arising here only when d is large, so exponentiate carefully.
    unsigned __int128 pd = 1;
    for (int i = 0; i < d; ++i) pd *= k.p;
    unsigned __int128 e = (pd - 1) / 2;
    for (int attempt = 0; attempt < 256; ++attempt) {
        Poly<FpField> a = random_poly(k, f.degree() - 1, rng);
        if (a.is_zero()) continue;
        Poly<FpField> g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.divmod(g).first, d, rng, out);
            return;
        }
        // b = a^e - 1 mod f, computed with 128-bit exponent
        Poly<FpField> b = Poly<FpField>::one(k);
        Poly<FpField> base = a.mod(f);
        unsigned __int128 ee = e;
        while (ee) {
            if (ee & 1) b = b.mul(base).mod(f);
            base = base.mul(base).mod(f);
            ee >>= 1;
        }
        b = b.sub(Poly<FpField>::one(k));
        g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.divmod(g).first, d, rng, out);
            return;
        }
    }
    throw inconclusive_error("equal-degree splitting exhausted its retry budget");
}

}  // namespace detail

/// Full factorization over F_p into monic irreducibles with multiplicities.
/// Requires p > deg(f) so the squarefree step never meets a vanishing
/// derivative.
inline std::vector<std::pair<Poly<FpField>, int>> factor_fp(const Poly<FpField>& poly,
                                                            std::mt19937_64& rng) {
    const FpField k = poly.field;
    RDL_CHECK(!poly.is_zero(), "factoring the zero polynomial");
    RDL_CHECK(k.p > static_cast<std::uint64_t>(poly.degree()), "factor_fp requires p > deg f");
    std::vector<std::pair<Poly<FpField>, int>> result;
    Poly<FpField> f = poly.monic();
    if (f.degree() == 0) return result;

    // the squarefree part carries each distinct irreducible factor exactly once
    Poly<FpField> g = poly_gcd(f, f.derivative());
    Poly<FpField> sqfree = f.divmod(g).first;

    // distinct-degree stage, splitting each degree block with Cantor-Zassenhaus
    std::vector<Poly<FpField>> irreducibles;
    Poly<FpField> h = Poly<FpField>::x(k);
    Poly<FpField> rem = sqfree.monic();
    int d = 0;
    while (rem.degree() > 0) {
        ++d;
        if (2 * d > rem.degree()) {
            irreducibles.push_back(rem.monic());
            break;
        }
        h = poly_powmod(h, k.p, rem);
        Poly<FpField> gd = poly_gcd(h.sub(Poly<FpField>::x(k)), rem);
        if (gd.degree() > 0) {
            detail::equal_degree_split(gd, d, rng, irreducibles);
            rem = rem.divmod(gd).first;
            h = h.mod(rem);
        }
    }

    for (const auto& q : irreducibles) {
        int m = 0;
        while (true) {
            auto [quo, r] = f.divmod(q);
            if (!r.is_zero()) break;
            f = quo;
            ++m;
        }
        RDL_CHECK(m > 0, "factor_fp: spurious irreducible");
        result.emplace_back(q, m);
    }
    RDL_CHECK(f.degree() == 0, "factor_fp: leftover factor after distinct-degree stage");
    return result;
}

/// Minimal polynomial of a vector under M: the least-degree monic g with
/// g(M) v = 0, found by a Krylov dependency search.
template <class F>
Poly<F> vector_minpoly(const Matrix<F>& m, const std::vector<typename F::Elem>& v) {
    RDL_CHECK(m.rows == m.cols, "vector_minpoly needs a square matrix");
    const F& f = m.field;
    RowSpan<F> span(f, m.rows);
    std::vector<typename F::Elem> cur = v;
    int steps = 0;
    while (true) {
        if (!span.add(cur)) {
            auto coords = span.coords(cur);
            RDL_CHECK(coords.has_value(), "Krylov reduction inconsistency");
            // cur = sum coords_i * M^i v  =>  minpoly = x^k - sum coords_i x^i
            std::vector<typename F::Elem> pc(coords->size() + 1, f.zero());
            for (size_t i = 0; i < coords->size(); ++i) pc[i] = f.neg((*coords)[i]);
            pc[coords->size()] = f.one();
            return Poly<F>(f, std::move(pc));
        }
        cur = mat_vec(m, cur);
        RDL_CHECK(++steps <= m.rows + 1, "Krylov loop overran");
    }
}

/// Minimal polynomial of a square matrix. Monte Carlo with exact local
/// verification: candidates are lcm'd over random vectors until a candidate
/// annihilates several further random vectors; every consumer of the result
/// re-verifies the consequences it needs exactly.
template <class F>
Poly<F> matrix_minpoly(const Matrix<F>& m, std::mt19937_64& rng) {
    RDL_CHECK(m.rows == m.cols, "matrix_minpoly needs a square matrix");
    const F& f = m.field;
    const int n = m.rows;
    if (n == 0) return Poly<F>::one(f);
    Poly<F> cand = Poly<F>::one(f);
    auto rand_vec = [&]() {
        std::vector<typename F::Elem> v(n);
        for (auto& x : v) x = f.from_int(static_cast<long long>(rng() % 2048) - 1024);
        return v;
    };
    auto apply_poly = [&](const Poly<F>& g, std::vector<typename F::Elem> v) {
        // Horner: g(M) v
        std::vector<typename F::Elem> acc(n, f.zero());
        for (int i = g.degree(); i >= 0; --i) {
            acc = mat_vec(m, acc);
            for (int j = 0; j < n; ++j) acc[j] = f.add(acc[j], f.mul(g.c[i], v[j]));
        }
        return acc;
    };
    for (int round = 0; round < 64; ++round) {
        auto v = rand_vec();
        bool zero = true;
        if (cand.degree() >= 1) {
            auto w = apply_poly(cand, v);
            for (const auto& x : w)
                if (!f.is_zero(x)) {
                    zero = false;
                    break;
                }
        } else {
            zero = false;
        }
        if (zero) {
            // candidate annihilates this probe too; accept after two clean probes
            auto v2 = rand_vec();
            auto w2 = apply_poly(cand, v2);
            bool zero2 = true;
            for (const auto& x : w2)
                if (!f.is_zero(x)) {
                    zero2 = false;
                    break;
                }
            if (zero2) return cand;
        }
        cand = poly_lcm(cand, vector_minpoly(m, v));
        if (cand.degree() >= n) return cand;  // cannot grow further
    }
    return cand;
}

}  // namespace rdl
