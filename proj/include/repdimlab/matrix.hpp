#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "repdimlab/errors.hpp"
#include "repdimlab/field.hpp"

namespace rdl {

/// Dense row-major matrix over an exact field. All entries stay in canonical
/// form (lowest terms over Q, residues in [0,p) over F_p).
template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    F field;
    int rows = 0;
    int cols = 0;
    std::vector<Elem> e;

    Matrix() = default;
    Matrix(F f, int r, int c) : field(f), rows(r), cols(c), e(static_cast<size_t>(r) * c, f.zero()) {
        RDL_CHECK(r >= 0 && c >= 0, "negative matrix dimensions");
    }

    static Matrix zeros(F f, int r, int c) { return Matrix(f, r, c); }
    static Matrix identity(F f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    Elem& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
    const Elem& at(int r, int c) const { return e[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const {
        for (const auto& x : e)
            if (!field.is_zero(x)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < e.size(); ++i)
            if (!field.eq(e[i], o.e[i])) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field, cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix mul(const Matrix& o) const {
        RDL_CHECK(cols == o.rows, "matrix product shape mismatch");
        Matrix r(field, rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Elem& a = at(i, k);
                if (field.is_zero(a)) continue;
                for (int j = 0; j < o.cols; ++j) {
                    const Elem& b = o.at(k, j);
                    if (field.is_zero(b)) continue;
                    r.at(i, j) = field.add(r.at(i, j), field.mul(a, b));
                }
            }
        return r;
    }

    Matrix add(const Matrix& o) const {
        RDL_CHECK(rows == o.rows && cols == o.cols, "matrix sum shape mismatch");
        Matrix r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] = field.add(r.e[i], o.e[i]);
        return r;
    }

    Matrix sub(const Matrix& o) const {
        RDL_CHECK(rows == o.rows && cols == o.cols, "matrix difference shape mismatch");
        Matrix r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] = field.sub(r.e[i], o.e[i]);
        return r;
    }

    Matrix neg() const {
        Matrix r = *this;
        for (auto& x : r.e) x = field.neg(x);
        return r;
    }

    Matrix scale(const Elem& s) const {
        Matrix r = *this;
        for (auto& x : r.e) x = field.mul(x, s);
        return r;
    }

    Matrix hstack(const Matrix& o) const {
        RDL_CHECK(rows == o.rows, "hstack row mismatch");
        Matrix r(field, rows, cols + o.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
        }
        return r;
    }

    Matrix vstack(const Matrix& o) const {
        RDL_CHECK(cols == o.cols, "vstack column mismatch");
        Matrix r(field, rows + o.rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(rows + i, j) = o.at(i, j);
        return r;
    }

    Matrix block(int r0, int c0, int nr, int nc) const {
        RDL_CHECK(r0 >= 0 && c0 >= 0 && r0 + nr <= rows && c0 + nc <= cols, "block out of range");
        Matrix r(field, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
        return r;
    }

    std::vector<Elem> row(int i) const {
        return std::vector<Elem>(e.begin() + static_cast<size_t>(i) * cols,
                                 e.begin() + static_cast<size_t>(i + 1) * cols);
    }

    std::vector<Elem> col(int j) const {
        std::vector<Elem> v;
        v.reserve(rows);
        for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
        return v;
    }

    static Matrix from_rows(F f, int ncols, const std::vector<std::vector<Elem>>& rws) {
        Matrix m(f, static_cast<int>(rws.size()), ncols);
        for (int i = 0; i < m.rows; ++i) {
            RDL_CHECK(static_cast<int>(rws[i].size()) == ncols, "ragged row list");
            for (int j = 0; j < ncols; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }

    static Matrix from_cols(F f, int nrows, const std::vector<std::vector<Elem>>& cls) {
        Matrix m(f, nrows, static_cast<int>(cls.size()));
        for (int j = 0; j < m.cols; ++j) {
            RDL_CHECK(static_cast<int>(cls[j].size()) == nrows, "ragged column list");
            for (int i = 0; i < nrows; ++i) m.at(i, j) = cls[j][i];
        }
        return m;
    }

    Matrix random(std::mt19937_64& rng, long long lo, long long hi) const = delete;
};

template <class F>
Matrix<F> random_matrix(F f, int rows, int cols, std::mt19937_64& rng, long long lo, long long hi) {
    Matrix<F> m(f, rows, cols);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    for (auto& x : m.e) x = f.from_int(lo + static_cast<long long>(rng() % span));
    return m;
}

template <class F>
struct RrefResult {
    Matrix<F> reduced;
    int rank = 0;
    std::vector<int> pivots;  // pivot column per nonzero row
};

/// Reduced row echelon form with leftmost pivots and leading ones.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    const F& f = m.field;
    Matrix<F> a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int pr = -1;
        for (int i = r; i < a.rows; ++i)
            if (!f.is_zero(a.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < a.cols; ++j) std::swap(a.at(pr, j), a.at(r, j));
        const auto piv = f.inv(a.at(r, c));
        for (int j = c; j < a.cols; ++j) a.at(r, j) = f.mul(a.at(r, j), piv);
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || f.is_zero(a.at(i, c))) continue;
            const auto s = a.at(i, c);
            for (int j = c; j < a.cols; ++j) a.at(i, j) = f.sub(a.at(i, j), f.mul(s, a.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), r, std::move(pivots)};
}

template <class F>
int rank(const Matrix<F>& m) {
    return rref(m).rank;
}

template <class F>
struct KernelBasis {
    /// Columns form a basis of the right null space; the rows indexed by
    /// free_cols form an identity block, so membership coordinates in this
    /// basis can be read off at free_cols.
    Matrix<F> basis;
    std::vector<int> free_cols;
};

template <class F>
KernelBasis<F> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field;
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix<F> basis(f, m.cols, static_cast<int>(free_cols.size()));
    for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
        const int fc = free_cols[k];
        basis.at(fc, k) = f.one();
        for (int r = 0; r < rr.rank; ++r) basis.at(rr.pivots[r], k) = f.neg(rr.reduced.at(r, fc));
    }
    return {std::move(basis), std::move(free_cols)};
}

/// Rows of the result form a basis of { v : v * m = 0 }.
template <class F>
Matrix<F> left_kernel_rows(const Matrix<F>& m) {
    return kernel_basis(m.transpose()).basis.transpose();
}

/// Solves a * x = b (b may have several columns). Returns one solution or
/// nullopt when the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve_linear(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows != b.rows) throw input_error("solve_linear: row-count mismatch between a and b");
    const F& f = a.field;
    auto rr = rref(a.hstack(b));
    for (int r = 0; r < rr.rank; ++r)
        if (rr.pivots[r] >= a.cols) return std::nullopt;
    Matrix<F> x(f, a.cols, b.cols);
    for (int r = 0; r < rr.rank; ++r)
        for (int j = 0; j < b.cols; ++j) x.at(rr.pivots[r], j) = rr.reduced.at(r, a.cols + j);
    return x;
}

/// Inverse of a square matrix; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    RDL_CHECK(m.rows == m.cols, "inverse of non-square matrix");
    auto x = solve_linear(m, Matrix<F>::identity(m.field, m.rows));
    if (!x) return std::nullopt;
    if (rank(m) != m.rows) return std::nullopt;
    return x;
}

/// Incremental row-space tracker. Maintains an echelonized spanning set
/// together with the expression of each echelon row in terms of the
/// independent rows inserted so far, so both membership tests and
/// coordinates-in-inserted-basis are cheap.
template <class F>
class RowSpan {
  public:
    using Elem = typename F::Elem;

    RowSpan(F f, int ncols) : field_(f), ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int dim() const { return static_cast<int>(ech_.size()); }

    /// The inserted independent rows, in insertion order.
    const std::vector<std::vector<Elem>>& basis_rows() const { return inserted_; }

    /// Adds v to the span. Returns true when v was independent (and kept).
    bool add(const std::vector<Elem>& v) {
        auto [res, combo] = reduce_(v);
        if (all_zero_(res)) return false;
        // normalize leading entry to 1
        int lead = lead_of_(res);
        const Elem inv = field_.inv(res[lead]);
        for (auto& x : res) x = field_.mul(x, inv);
        // new echelon row = inv * (v - sum combo_r * ech_r); expand the ech
        // rows through their own inserted-basis expressions
        std::vector<Elem> c(inserted_.size() + 1, field_.zero());
        c[inserted_.size()] = inv;
        for (size_t r = 0; r < combo.size(); ++r) {
            if (field_.is_zero(combo[r])) continue;
            const Elem s = field_.mul(inv, combo[r]);
            for (size_t i = 0; i < comb_[r].size(); ++i)
                c[i] = field_.sub(c[i], field_.mul(s, comb_[r][i]));
        }
        inserted_.push_back(v);
        ech_.push_back(std::move(res));
        comb_.push_back(std::move(c));
        leads_.push_back(lead);
        return true;
    }

    bool contains(const std::vector<Elem>& v) const {
        auto [res, combo] = reduce_(v);
        (void)combo;
        return all_zero_(res);
    }

    /// Coordinates of v in terms of the inserted basis rows; nullopt if v is
    /// outside the span.
    std::optional<std::vector<Elem>> coords(const std::vector<Elem>& v) const {
        auto [res, combo] = reduce_(v);
        if (!all_zero_(res)) return std::nullopt;
        // v = sum combo_r * ech_r and ech_r = sum comb_[r][i] * inserted_i
        std::vector<Elem> out(inserted_.size(), field_.zero());
        for (size_t r = 0; r < combo.size(); ++r) {
            if (field_.is_zero(combo[r])) continue;
            for (size_t i = 0; i < comb_[r].size(); ++i)
                out[i] = field_.add(out[i], field_.mul(combo[r], comb_[r][i]));
        }
        return out;
    }

    Matrix<F> basis_matrix() const { return Matrix<F>::from_rows(field_, ncols_, inserted_); }
    Matrix<F> echelon_matrix() const { return Matrix<F>::from_rows(field_, ncols_, ech_); }

  private:
    // returns (residual, coefficients of v over the echelon rows)
    std::pair<std::vector<Elem>, std::vector<Elem>> reduce_(const std::vector<Elem>& v) const {
        RDL_CHECK(static_cast<int>(v.size()) == ncols_, "RowSpan: wrong vector length");
        std::vector<Elem> res = v;
        std::vector<Elem> combo(ech_.size(), field_.zero());
        for (size_t r = 0; r < ech_.size(); ++r) {
            const Elem c = res[leads_[r]];
            if (field_.is_zero(c)) continue;
            combo[r] = c;
            for (int j = leads_[r]; j < ncols_; ++j)
                res[j] = field_.sub(res[j], field_.mul(c, ech_[r][j]));
        }
        return {std::move(res), std::move(combo)};
    }

    bool all_zero_(const std::vector<Elem>& v) const {
        for (const auto& x : v)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    int lead_of_(const std::vector<Elem>& v) const {
        for (int j = 0; j < ncols_; ++j)
            if (!field_.is_zero(v[j])) return j;
        return -1;
    }

    F field_;
    int ncols_;
    std::vector<std::vector<Elem>> inserted_;
    std::vector<std::vector<Elem>> ech_;
    std::vector<std::vector<Elem>> comb_;
    std::vector<int> leads_;
};

template <class F>
std::vector<typename F::Elem> mat_vec(const Matrix<F>& m, const std::vector<typename F::Elem>& v) {
    RDL_CHECK(static_cast<int>(v.size()) == m.cols, "mat_vec shape mismatch");
    const F& f = m.field;
    std::vector<typename F::Elem> out(m.rows, f.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!f.is_zero(m.at(i, j)) && !f.is_zero(v[j]))
                out[i] = f.add(out[i], f.mul(m.at(i, j), v[j]));
    return out;
}

template <class F>
std::vector<typename F::Elem> vec_mat(const std::vector<typename F::Elem>& v, const Matrix<F>& m) {
    RDL_CHECK(static_cast<int>(v.size()) == m.rows, "vec_mat shape mismatch");
    const F& f = m.field;
    std::vector<typename F::Elem> out(m.cols, f.zero());
    for (int i = 0; i < m.rows; ++i) {
        if (f.is_zero(v[i])) continue;
        for (int j = 0; j < m.cols; ++j)
            if (!f.is_zero(m.at(i, j))) out[j] = f.add(out[j], f.mul(v[i], m.at(i, j)));
    }
    return out;
}

}  // namespace rdl
