#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "repdimlab/matrix.hpp"

namespace rdl {

struct Arrow {
    int source = 0;
    int target = 0;
    std::string label;
};

struct Quiver {
    int vertex_count = 0;
    std::vector<Arrow> arrows;

    void validate() const {
        std::set<std::string> labels;
        for (const auto& a : arrows) {
            if (a.source < 0 || a.source >= vertex_count || a.target < 0 || a.target >= vertex_count)
                throw input_error("arrow endpoint out of range");
            if (!labels.insert(a.label).second) throw input_error("duplicate arrow label " + a.label);
        }
    }

    bool is_acyclic() const {
        // Kahn's algorithm
        std::vector<int> indeg(vertex_count, 0);
        for (const auto& a : arrows) ++indeg[a.target];
        std::vector<int> queue;
        for (int v = 0; v < vertex_count; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        int seen = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++seen;
            for (const auto& a : arrows)
                if (a.source == v && --indeg[a.target] == 0) queue.push_back(a.target);
        }
        return seen == vertex_count;
    }
};

/// A path is a composable arrow sequence read left to right: the path pq
/// traverses p first, then q. Empty sequence = the lazy path e_v.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }

    static Path lazy(int v) { return Path{v, v, {}}; }

    Path compose(const Path& q) const {
        RDL_CHECK(target == q.source, "composing non-composable paths");
        Path r{source, q.target, arrows};
        r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
        return r;
    }

    bool operator<(const Path& o) const { return arrows < o.arrows; }
    bool operator==(const Path& o) const = default;
};

template <class F>
struct RelTerm {
    typename F::Elem coeff;
    Path path;
};

/// A linear combination of parallel paths of one common length >= 2.
template <class F>
struct Relation {
    int source = 0;
    int target = 0;
    std::vector<RelTerm<F>> terms;

    int length() const { return terms.empty() ? 0 : terms.front().path.length(); }
};

template <class F>
struct AlgebraPresentation {
    F field;
    Quiver quiver;
    std::vector<Relation<F>> relations;
    std::optional<int> nilpotency_bound;

    void validate() const {
        quiver.validate();
        for (const auto& rel : relations) {
            if (rel.terms.empty()) throw input_error("empty relation");
            const int len = rel.terms.front().path.length();
            if (len < 2) throw input_error("relation of path length < 2 is not admissible");
            for (const auto& t : rel.terms) {
                if (t.path.source != rel.source || t.path.target != rel.target)
                    throw input_error("relation terms are not parallel");
                if (t.path.length() != len) throw input_error("relation is not length-homogeneous");
                int at = t.path.source;
                for (int a : t.path.arrows) {
                    if (a < 0 || a >= static_cast<int>(quiver.arrows.size()))
                        throw input_error("relation path uses an unknown arrow");
                    if (quiver.arrows[a].source != at) throw input_error("relation path not composable");
                    at = quiver.arrows[a].target;
                }
                if (at != t.path.target) throw input_error("relation path target mismatch");
            }
        }
        if (!quiver.is_acyclic() && !nilpotency_bound)
            throw input_error("cyclic quiver requires a nilpotency bound");
        if (nilpotency_bound && *nilpotency_bound < 1) throw input_error("nilpotency bound must be >= 1");
    }
};

/// The Beilinson algebra on n+1 vertices: n+1 parallel arrows x_0..x_n at
/// each gap v -> v+1, modulo the commutativity relations x_i x_j = x_j x_i.
/// Arrow x_i at gap v gets global index v*(n+1)+i.
template <class F>
AlgebraPresentation<F> build_beilinson(int n, F field) {
    if (n < 1) throw input_error("beilinson family needs n >= 1");
    AlgebraPresentation<F> pres;
    pres.field = field;
    pres.quiver.vertex_count = n + 1;
    for (int v = 0; v < n; ++v)
        for (int i = 0; i <= n; ++i)
            pres.quiver.arrows.push_back({v, v + 1, "x" + std::to_string(i) + "@" + std::to_string(v)});
    auto arrow_at = [n](int v, int i) { return v * (n + 1) + i; };
    for (int v = 0; v + 2 <= n; ++v)
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                Relation<F> rel;
                rel.source = v;
                rel.target = v + 2;
                rel.terms.push_back({field.one(), Path{v, v + 2, {arrow_at(v, i), arrow_at(v + 1, j)}}});
                rel.terms.push_back(
                    {field.neg(field.one()), Path{v, v + 2, {arrow_at(v, j), arrow_at(v + 1, i)}}});
                pres.relations.push_back(std::move(rel));
            }
    pres.validate();
    return pres;
}

/// The exterior algebra on n generators as a one-vertex quiver with loops
/// x_1..x_n, relations x_i^2 and x_i x_j + x_j x_i (i < j), nilpotency bound
/// n+1.
template <class F>
AlgebraPresentation<F> build_exterior(int n, F field) {
    if (n < 1) throw input_error("exterior family needs n >= 1");
    AlgebraPresentation<F> pres;
    pres.field = field;
    pres.quiver.vertex_count = 1;
    for (int i = 1; i <= n; ++i) pres.quiver.arrows.push_back({0, 0, "x" + std::to_string(i)});
    for (int i = 0; i < n; ++i) {
        Relation<F> sq;
        sq.source = sq.target = 0;
        sq.terms.push_back({field.one(), Path{0, 0, {i, i}}});
        pres.relations.push_back(std::move(sq));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Relation<F> anti;
            anti.source = anti.target = 0;
            anti.terms.push_back({field.one(), Path{0, 0, {i, j}}});
            anti.terms.push_back({field.one(), Path{0, 0, {j, i}}});
            pres.relations.push_back(std::move(anti));
        }
    pres.nilpotency_bound = n + 1;
    pres.validate();
    return pres;
}

/// Normal-form data for one (source, target, length) graded piece: the lex
/// ordered monomial list, the rref'd span of the degree-d ideal layer, and the
/// surviving (non-pivot) monomials that represent the quotient basis.
template <class F>
struct GradedPiece {
    int source = 0, target = 0, length = 0;
    std::vector<Path> monomials;                  // lex ascending by arrow sequence
    std::map<std::vector<int>, int> monomial_index;
    Matrix<F> ideal_rref;                          // rows: ideal basis in rref
    std::vector<int> pivot_cols;
    std::vector<int> standard_cols;                // quotient representatives
    int global_offset = 0;                         // index of first standard monomial in the algebra basis
};

/// Basis of the quotient algebra kQ/I, organized degreewise. Relations are
/// length-homogeneous, so the degree-d layer of the ideal is spanned by the
/// products p*r*q with |p| + |r| + |q| = d and no Groebner machinery is
/// needed.
template <class F>
class PathBasis {
  public:
    using Elem = typename F::Elem;

    F field;
    int max_length = 0;
    int total_dim = 0;
    // key: (length, source, target); this ordering fixes the global basis order
    std::map<std::tuple<int, int, int>, GradedPiece<F>> pieces;

    const GradedPiece<F>* piece(int s, int t, int d) const {
        auto it = pieces.find({d, s, t});
        return it == pieces.end() ? nullptr : &it->second;
    }

    int dim_of(int s, int t, int d) const {
        const auto* p = piece(s, t, d);
        return p ? static_cast<int>(p->standard_cols.size()) : 0;
    }

    /// Reduces a coefficient vector over the monomials of (s,t,d) to
    /// coefficients over the standard monomials of that piece.
    std::vector<Elem> reduce_in_piece(const GradedPiece<F>& p, std::vector<Elem> v) const {
        for (int r = 0; r < ideal_rank(p); ++r) {
            const int pc = p.pivot_cols[r];
            const Elem c = v[pc];
            if (field.is_zero(c)) continue;
            for (int j = 0; j < static_cast<int>(p.monomials.size()); ++j)
                v[j] = field.sub(v[j], field.mul(c, p.ideal_rref.at(r, j)));
        }
        std::vector<Elem> out;
        out.reserve(p.standard_cols.size());
        for (int c : p.standard_cols) out.push_back(v[c]);
        return out;
    }

    static int ideal_rank(const GradedPiece<F>& p) { return p.ideal_rref.rows; }

    /// Global basis index of the k-th standard monomial of a piece.
    static int global_index(const GradedPiece<F>& p, int k) { return p.global_offset + k; }

    /// The standard monomial representing basis element g, plus its piece.
    std::pair<const GradedPiece<F>*, Path> representative(int g) const {
        for (const auto& [key, p] : pieces) {
            const int n = static_cast<int>(p.standard_cols.size());
            if (g >= p.global_offset && g < p.global_offset + n)
                return {&p, p.monomials[p.standard_cols[g - p.global_offset]]};
        }
        throw internal_error("global basis index out of range");
    }
};

namespace detail {

template <class F>
void enumerate_paths(const AlgebraPresentation<F>& pres, int max_len,
                     std::map<std::tuple<int, int, int>, std::vector<Path>>& out) {
    const auto& q = pres.quiver;
    std::vector<std::vector<int>> arrows_from(q.vertex_count);
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
        arrows_from[q.arrows[a].source].push_back(a);
    // arrows_from lists are ascending in arrow index, so extending paths in
    // order yields lex-ascending monomial lists per piece
    std::vector<Path> frontier;
    for (int v = 0; v < q.vertex_count; ++v) {
        Path e = Path::lazy(v);
        out[{0, v, v}].push_back(e);
        frontier.push_back(e);
    }
    for (int d = 1; d <= max_len; ++d) {
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (int a : arrows_from[p.target]) {
                Path ext = p;
                ext.arrows.push_back(a);
                ext.target = q.arrows[a].target;
                out[{d, ext.source, ext.target}].push_back(ext);
                next.push_back(ext);
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
}

}  // namespace detail

/// Computes the graded normal-form basis of kQ/I (plus the degreewise ideal
/// data needed to reduce arbitrary path vectors).
template <class F>
PathBasis<F> algebra_basis(const AlgebraPresentation<F>& pres) {
    pres.validate();
    const F field = pres.field;
    PathBasis<F> basis;
    basis.field = field;
    int max_len;
    if (pres.nilpotency_bound)
        max_len = *pres.nilpotency_bound - 1;
    else
        max_len = pres.quiver.vertex_count - 1;
    basis.max_length = max_len;

    std::map<std::tuple<int, int, int>, std::vector<Path>> paths;
    detail::enumerate_paths(pres, max_len, paths);

    int offset = 0;
    for (const auto& [key, monos] : paths) {
        auto [d, s, t] = key;
        GradedPiece<F> piece;
        piece.source = s;
        piece.target = t;
        piece.length = d;
        piece.monomials = monos;
        std::sort(piece.monomials.begin(), piece.monomials.end());
        for (int i = 0; i < static_cast<int>(piece.monomials.size()); ++i)
            piece.monomial_index[piece.monomials[i].arrows] = i;

        // span of the degree-d ideal layer within this piece
        std::vector<std::vector<typename F::Elem>> rows;
        for (const auto& rel : pres.relations) {
            const int len = rel.length();
            if (len > d) continue;
            for (int a = 0; a + len <= d; ++a) {
                const int c = d - len - a;
                auto pit = paths.find({a, s, rel.source});
                auto qit = paths.find({c, rel.target, t});
                if (pit == paths.end() || qit == paths.end()) continue;
                for (const auto& p : pit->second)
                    for (const auto& q : qit->second) {
                        std::vector<typename F::Elem> row(piece.monomials.size(), field.zero());
                        for (const auto& term : rel.terms) {
                            Path full = p.compose(term.path).compose(q);
                            auto idx = piece.monomial_index.find(full.arrows);
                            RDL_CHECK(idx != piece.monomial_index.end(), "ideal product outside piece");
                            row[idx->second] = field.add(row[idx->second], term.coeff);
                        }
                        rows.push_back(std::move(row));
                    }
            }
        }
        Matrix<F> span = Matrix<F>::from_rows(field, static_cast<int>(piece.monomials.size()), rows);
        auto rr = rref(span);
        piece.ideal_rref = rr.reduced.block(0, 0, rr.rank, span.cols);
        piece.pivot_cols = rr.pivots;
        std::vector<bool> is_pivot(piece.monomials.size(), false);
        for (int c : rr.pivots) is_pivot[c] = true;
        for (int c = 0; c < static_cast<int>(piece.monomials.size()); ++c)
            if (!is_pivot[c]) piece.standard_cols.push_back(c);
        piece.global_offset = offset;
        offset += static_cast<int>(piece.standard_cols.size());
        basis.pieces[key] = std::move(piece);
    }
    basis.total_dim = offset;
    return basis;
}

/// A finite-dimensional algebra by structure constants. sc is stored flat:
/// sc[(i*dim + j)*dim + m] is the coefficient of basis_m in basis_i * basis_j.
template <class F>
struct FDAlgebra {
    using Elem = typename F::Elem;

    F field;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<Elem> sc;
    std::vector<Elem> unit;
    std::vector<std::vector<Elem>> idempotents;

    const Elem& c(int i, int j, int m) const {
        return sc[(static_cast<size_t>(i) * dim + j) * dim + m];
    }
    Elem& c(int i, int j, int m) { return sc[(static_cast<size_t>(i) * dim + j) * dim + m]; }

    std::vector<Elem> mult(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
        std::vector<Elem> out(dim, field.zero());
        for (int i = 0; i < dim; ++i) {
            if (field.is_zero(a[i])) continue;
            for (int j = 0; j < dim; ++j) {
                if (field.is_zero(b[j])) continue;
                const Elem s = field.mul(a[i], b[j]);
                for (int m = 0; m < dim; ++m)
                    if (!field.is_zero(c(i, j, m))) out[m] = field.add(out[m], field.mul(s, c(i, j, m)));
            }
        }
        return out;
    }

    /// Matrix of left multiplication by a (columns: images of basis vectors).
    Matrix<F> left_mult_matrix(const std::vector<Elem>& a) const {
        Matrix<F> m(field, dim, dim);
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < dim; ++i) {
                if (field.is_zero(a[i])) continue;
                for (int r = 0; r < dim; ++r)
                    if (!field.is_zero(c(i, j, r)))
                        m.at(r, j) = field.add(m.at(r, j), field.mul(a[i], c(i, j, r)));
            }
        }
        return m;
    }

    /// Row-convention matrix of right multiplication by a: (v * a) = v * R.
    Matrix<F> right_mult_matrix(const std::vector<Elem>& a) const {
        Matrix<F> m(field, dim, dim);
        for (int j = 0; j < dim; ++j) {
            if (field.is_zero(a[j])) continue;
            for (int i = 0; i < dim; ++i)
                for (int r = 0; r < dim; ++r)
                    if (!field.is_zero(c(i, j, r)))
                        m.at(i, r) = field.add(m.at(i, r), field.mul(a[j], c(i, j, r)));
        }
        return m;
    }

    std::vector<Elem> basis_vector(int i) const {
        std::vector<Elem> v(dim, field.zero());
        v[i] = field.one();
        return v;
    }

    /// Associativity, unit and idempotent axioms. Cost grows with dim^3, so
    /// callers gate the exhaustive check and fall back to sampling.
    void verify(std::mt19937_64* rng = nullptr, int sample_triples = 4000) const {
        auto unit_l = left_mult_matrix(unit);
        RDL_CHECK(unit_l == Matrix<F>::identity(field, dim), "unit is not a left identity");
        auto unit_r = right_mult_matrix(unit);
        RDL_CHECK(unit_r == Matrix<F>::identity(field, dim), "unit is not a right identity");
        std::vector<Elem> esum(dim, field.zero());
        for (const auto& e : idempotents) {
            auto ee = mult(e, e);
            RDL_CHECK(ee == e, "listed idempotent is not idempotent");
            for (int i = 0; i < dim; ++i) esum[i] = field.add(esum[i], e[i]);
        }
        for (size_t a = 0; a < idempotents.size(); ++a)
            for (size_t b = 0; b < idempotents.size(); ++b) {
                if (a == b) continue;
                auto prod = mult(idempotents[a], idempotents[b]);
                for (const auto& x : prod) RDL_CHECK(field.is_zero(x), "idempotents not orthogonal");
            }
        RDL_CHECK(esum == unit, "idempotents do not sum to the unit");

        auto check_triple = [&](int i, int j, int k) {
            auto ij = mult(basis_vector(i), basis_vector(j));
            auto jk = mult(basis_vector(j), basis_vector(k));
            auto l = mult(ij, basis_vector(k));
            auto r = mult(basis_vector(i), jk);
            RDL_CHECK(l == r, "associativity fails on basis triple");
        };
        const long long total = static_cast<long long>(dim) * dim * dim;
        if (rng == nullptr || total <= 300000) {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    for (int k = 0; k < dim; ++k) check_triple(i, j, k);
        } else {
            for (int s = 0; s < sample_triples; ++s)
                check_triple(static_cast<int>((*rng)() % dim), static_cast<int>((*rng)() % dim),
                             static_cast<int>((*rng)() % dim));
        }
    }
};

/// Structure constants of the presented algebra in its normal-form basis.
template <class F>
FDAlgebra<F> structure_constants(const AlgebraPresentation<F>& pres, const PathBasis<F>& basis) {
    const F field = pres.field;
    FDAlgebra<F> alg;
    alg.field = field;
    alg.dim = basis.total_dim;
    alg.sc.assign(static_cast<size_t>(alg.dim) * alg.dim * alg.dim, field.zero());
    alg.basis_labels.resize(alg.dim);
    alg.unit.assign(alg.dim, field.zero());

    struct Entry {
        const GradedPiece<F>* piece;
        Path mono;
    };
    std::vector<Entry> entries(alg.dim);
    for (const auto& [key, piece] : basis.pieces) {
        for (int k = 0; k < static_cast<int>(piece.standard_cols.size()); ++k) {
            const int g = piece.global_offset + k;
            entries[g] = {&piece, piece.monomials[piece.standard_cols[k]]};
            const Path& m = entries[g].mono;
            if (m.length() == 0) {
                alg.basis_labels[g] = "e" + std::to_string(m.source);
            } else {
                std::string lbl;
                for (int a : m.arrows) {
                    if (!lbl.empty()) lbl += "*";
                    lbl += pres.quiver.arrows[a].label;
                }
                alg.basis_labels[g] = lbl;
            }
        }
    }

    // vertex idempotents e_v are always standard monomials (degree 0 has no relations)
    alg.idempotents.assign(pres.quiver.vertex_count, std::vector<typename F::Elem>(alg.dim, field.zero()));
    for (int g = 0; g < alg.dim; ++g) {
        const Path& m = entries[g].mono;
        if (m.length() == 0) {
            alg.unit[g] = field.one();
            alg.idempotents[m.source][g] = field.one();
        }
    }

    for (int i = 0; i < alg.dim; ++i) {
        const Path& pi = entries[i].mono;
        for (int j = 0; j < alg.dim; ++j) {
            const Path& pj = entries[j].mono;
            if (pi.target != pj.source) continue;  // non-composable products vanish
            const int d = pi.length() + pj.length();
            const auto* piece = basis.piece(pi.source, pj.target, d);
            if (piece == nullptr) continue;  // beyond the nilpotency bound
            Path prod = pi.compose(pj);
            auto idx = piece->monomial_index.find(prod.arrows);
            RDL_CHECK(idx != piece->monomial_index.end(), "product monomial missing from piece");
            std::vector<typename F::Elem> vec(piece->monomials.size(), field.zero());
            vec[idx->second] = field.one();
            auto reduced = basis.reduce_in_piece(*piece, std::move(vec));
            for (int k = 0; k < static_cast<int>(reduced.size()); ++k)
                alg.c(i, j, piece->global_offset + k) = reduced[k];
        }
    }
    return alg;
}

/// Evaluates a relation through normal forms; used to assert that relations
/// vanish in the constructed algebra.
template <class F>
std::vector<typename F::Elem> reduce_relation(const PathBasis<F>& basis, const Relation<F>& rel) {
    const F field = basis.field;
    const auto* piece = basis.piece(rel.source, rel.target, rel.length());
    if (!piece) return {};
    std::vector<typename F::Elem> vec(piece->monomials.size(), field.zero());
    for (const auto& t : rel.terms) {
        auto idx = piece->monomial_index.find(t.path.arrows);
        RDL_CHECK(idx != piece->monomial_index.end(), "relation monomial missing");
        vec[idx->second] = field.add(vec[idx->second], t.coeff);
    }
    return basis.reduce_in_piece(*piece, std::move(vec));
}

/// Shared handle bundling a presentation with its computed basis; modules
/// keep a reference to this.
template <class F>
struct Algebra {
    AlgebraPresentation<F> pres;
    PathBasis<F> basis;

    int vertices() const { return pres.quiver.vertex_count; }
    const F& field() const { return pres.field; }
};

template <class F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

template <class F>
AlgebraPtr<F> make_algebra(AlgebraPresentation<F> pres) {
    auto basis = algebra_basis(pres);
    return std::make_shared<const Algebra<F>>(Algebra<F>{std::move(pres), std::move(basis)});
}

}  // namespace rdl
