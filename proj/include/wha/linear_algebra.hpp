#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wha/cyclotomic.hpp"

namespace wha {

inline bool is_zero(const CycloNumber& x) { return x.is_zero(); }
inline CycloNumber inv(const CycloNumber& x) { return x.inverse(); }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline mpq_class inv(const mpq_class& x) { return 1 / x; }

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            for (auto& v : row) a_.push_back(v);
        }
    }
    static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0)) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c;
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }
    void append_row(const std::vector<T>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
        Matrix z(x.rows_, y.cols_, x.rows_ && x.cols_ ? x(0, 0) - x(0, 0) : T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& a = x(i, k);
                if (is_zero(a)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!is_zero(y(k, j))) z(i, j) += a * y(k, j);
            }
        return z;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        Matrix z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
        return z;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix z = x;
        for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
        return z;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    bool is_zero_matrix() const {
        for (auto& v : a_) if (!is_zero(v)) return false;
        return true;
    }
    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(rows_, v.empty() ? T(0) : v[0] - v[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j)) && !is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

template <class T>
struct RrefResult {
    std::size_t rank = 0;
    Matrix<T> reduced;
    std::vector<std::size_t> pivots;
};

namespace detail {
inline void check_conductor(const Matrix<CycloNumber>& m) {
    const CycloField* F = nullptr;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const CycloField* G = m(i, j).field();
            if (!G) continue;
            if (!F) F = G;
            else if (F != G) throw std::invalid_argument("rref: mixed conductors");
        }
}
template <class T>
void check_conductor(const Matrix<T>&) {}
}  // namespace detail

/// Reduced row-echelon form. Pivot = first nonzero column scanning left to right; the pivot row is
/// the first remaining row (in input order) with a nonzero entry there.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
    detail::check_conductor(m);
    RrefResult<T> res;
    std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = R;
        for (std::size_t i = r; i < R; ++i)
            if (!is_zero(m(i, c))) { p = i; break; }
        if (p == R) continue;
        if (p != r) {
            // keep the remaining rows in input order
            for (std::size_t i = p; i > r; --i)
                for (std::size_t j = 0; j < C; ++j) std::swap(m(i, j), m(i - 1, j));
        }
        T pinv = inv(m(r, c));
        for (std::size_t j = c; j < C; ++j)
            if (!is_zero(m(r, j))) m(r, j) = m(r, j) * pinv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < C; ++j)
                if (!is_zero(m(r, j))) m(i, j) = m(i, j) - f * m(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.reduced = std::move(m);
    return res;
}

template <class T>
std::size_t rank(const Matrix<T>& m) { return rref(m).rank; }

/// Kernel basis as rows of a matrix in RREF.
template <class T>
Matrix<T> kernel(const Matrix<T>& m, const T& one = T(1)) {
    auto rr = rref(m);
    std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    T zero = one - one;
    Matrix<T> K(0, C);
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(C, zero);
        v[f] = one;
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
        K.append_row(v);
    }
    if (K.rows() == 0) return Matrix<T>(0, C, zero);
    return rref(K).reduced;
}

template <class T>
struct AffineSolution {
    bool consistent = false;
    std::vector<T> particular;
    Matrix<T> kernel;  // rows span the homogeneous solutions
    std::size_t nullity() const { return kernel.rows(); }
};

template <class T>
AffineSolution<T> solve_affine(const Matrix<T>& A, const std::vector<T>& b, const T& one = T(1)) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_affine: shape mismatch");
    T zero = one - one;
    std::size_t C = A.cols();
    Matrix<T> aug(A.rows(), C + 1, zero);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < C; ++j) aug(i, j) = A(i, j);
        aug(i, C) = b[i];
    }
    auto rr = rref(aug);
    AffineSolution<T> sol;
    if (!rr.pivots.empty() && rr.pivots.back() == C) return sol;
    sol.consistent = true;
    sol.particular.assign(C, zero);
    for (std::size_t i = 0; i < rr.rank; ++i) sol.particular[rr.pivots[i]] = rr.reduced(i, C);
    sol.kernel = kernel(A, one);
    return sol;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, const T& one = T(1)) {
    std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse: not square");
    T zero = one - one;
    Matrix<T> aug(n, 2 * n, zero);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one;
    }
    auto rr = rref(aug);
    if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<T> out(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = rr.reduced(i, n + j);
    return out;
}

/// Incremental sparse elimination for large structured systems A x = b.
template <class T>
class SparseSolver {
public:
    using Row = std::vector<std::pair<std::size_t, T>>;  // sorted by column

    explicit SparseSolver(std::size_t nvars, const T& one = T(1)) : nvars_(nvars), one_(one), zero_(one - one) {}

    /// returns false if the row is inconsistent with the rows added so far
    bool add_row(Row row, T rhs) {
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::map<std::size_t, T> cur;
        for (auto& [c, v] : row) {
            if (is_zero(v)) continue;
            auto it = cur.find(c);
            if (it == cur.end()) cur.emplace(c, v);
            else {
                it->second = it->second + v;
                if (is_zero(it->second)) cur.erase(it);
            }
        }
        auto it = cur.begin();
        while (it != cur.end()) {
            auto pit = pivot_of_.find(it->first);
            if (pit == pivot_of_.end()) { ++it; continue; }
            const auto& prow = rows_[pit->second];
            T f = it->second;
            std::size_t col = it->first;
            for (auto& [c, v] : prow.entries) {
                auto jt = cur.find(c);
                T nv = (jt == cur.end() ? zero_ : jt->second) - f * v;
                if (is_zero(nv)) {
                    if (jt != cur.end()) cur.erase(jt);
                } else if (jt == cur.end()) cur.emplace(c, nv);
                else jt->second = nv;
            }
            rhs = rhs - f * prow.rhs;
            it = cur.upper_bound(col);
        }
        if (cur.empty()) {
            if (!is_zero(rhs)) { inconsistent_ = true; return false; }
            return true;
        }
        std::size_t lead = cur.begin()->first;
        T pinv = inv(cur.begin()->second);
        PivotRow pr;
        pr.lead = lead;
        for (auto& [c, v] : cur) pr.entries.emplace_back(c, v * pinv);
        pr.rhs = rhs * pinv;
        pivot_of_[lead] = rows_.size();
        rows_.push_back(std::move(pr));
        return true;
    }

    /// residue of a vector modulo the row space, supported on free variables
    std::map<std::size_t, T> reduce(const Row& row) const {
        std::map<std::size_t, T> cur;
        for (auto& [c, v] : row) {
            if (is_zero(v)) continue;
            auto it = cur.find(c);
            if (it == cur.end()) cur.emplace(c, v);
            else {
                it->second = it->second + v;
                if (is_zero(it->second)) cur.erase(it);
            }
        }
        auto it = cur.begin();
        while (it != cur.end()) {
            auto pit = pivot_of_.find(it->first);
            if (pit == pivot_of_.end()) { ++it; continue; }
            const auto& prow = rows_[pit->second];
            T f = it->second;
            std::size_t col = it->first;
            for (auto& [c, v] : prow.entries) {
                auto jt = cur.find(c);
                T nv = (jt == cur.end() ? zero_ : jt->second) - f * v;
                if (is_zero(nv)) {
                    if (jt != cur.end()) cur.erase(jt);
                } else if (jt == cur.end()) cur.emplace(c, nv);
                else jt->second = nv;
            }
            it = cur.upper_bound(col);
        }
        return cur;
    }
    bool is_pivot(std::size_t c) const { return pivot_of_.count(c) > 0; }

    bool consistent() const { return !inconsistent_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t nullity() const { return nvars_ - rows_.size(); }
    std::vector<std::size_t> free_variables() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (!pivot_of_.count(i)) out.push_back(i);
        return out;
    }

    /// particular solution with all free variables zero
    std::vector<T> particular() const { return back_substitute_({}, false); }

    /// one homogeneous solution per free variable (that variable one, the other free variables zero)
    std::vector<std::vector<T>> kernel_basis() const {
        std::vector<std::vector<T>> out;
        for (auto f : free_variables()) out.push_back(back_substitute_({{f, one_}}, true));
        return out;
    }

private:
    std::vector<T> back_substitute_(const std::map<std::size_t, T>& free, bool homogeneous) const {
        std::vector<T> x(nvars_, zero_);
        for (auto& [c, v] : free) x[c] = v;
        for (auto it = pivot_of_.rbegin(); it != pivot_of_.rend(); ++it) {
            const auto& pr = rows_[it->second];
            T v = homogeneous ? zero_ : pr.rhs;
            for (auto& [c, a] : pr.entries)
                if (c != pr.lead && !is_zero(x[c])) v = v - a * x[c];
            x[pr.lead] = v;
        }
        return x;
    }

    struct PivotRow {
        std::size_t lead = 0;
        Row entries;
        T rhs;
    };
    std::size_t nvars_;
    T one_, zero_;
    std::vector<PivotRow> rows_;
    std::map<std::size_t, std::size_t> pivot_of_;
    bool inconsistent_ = false;
};

}  // namespace wha
