#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homprob/rational.hpp"

namespace homprob {

using Vec = std::vector<Rational>;

inline Vec& vec_add_scaled(Vec& a, const Rational& c, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
    return a;
}

inline Vec vec_scale(const Rational& c, Vec v) {
    for (auto& x : v) x *= c;
    return v;
}

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Dense exact-rational matrix, row major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static Matrix identity(unsigned n) {
        Matrix m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }
    static Matrix from_columns(const std::vector<Vec>& cols) {
        if (cols.empty()) return {};
        Matrix m(static_cast<unsigned>(cols[0].size()), static_cast<unsigned>(cols.size()));
        for (unsigned j = 0; j < m.cols(); ++j) {
            if (cols[j].size() != m.rows()) throw std::invalid_argument("ragged columns");
            for (unsigned i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    Rational& at(unsigned r, unsigned c) { return a_[std::size_t(r) * cols_ + c]; }
    const Rational& at(unsigned r, unsigned c) const { return a_[std::size_t(r) * cols_ + c]; }

    Vec column(unsigned c) const {
        Vec v(rows_);
        for (unsigned i = 0; i < rows_; ++i) v[i] = at(i, c);
        return v;
    }
    Vec row(unsigned r) const {
        Vec v(cols_);
        for (unsigned j = 0; j < cols_; ++j) v[j] = at(r, j);
        return v;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (unsigned i = 0; i < a.rows_; ++i)
            for (unsigned k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (unsigned j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend Vec operator*(const Matrix& a, const Vec& v) {
        if (v.size() != a.cols_) throw std::invalid_argument("matrix/vector size mismatch");
        Vec r(a.rows_);
        for (unsigned i = 0; i < a.rows_; ++i)
            for (unsigned j = 0; j < a.cols_; ++j)
                if (!a.at(i, j).is_zero()) r[i] += a.at(i, j) * v[j];
        return r;
    }

  private:
    unsigned rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Rational r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

struct Echelon {
    Matrix reduced;
    std::vector<unsigned> pivot_cols;
    unsigned rank() const { return static_cast<unsigned>(pivot_cols.size()); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
inline Echelon rref(Matrix m) {
    Echelon e;
    unsigned r = 0;
    for (unsigned c = 0; c < m.cols() && r < m.rows(); ++c) {
        unsigned pivot = r;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (unsigned j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (unsigned i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c);
            for (unsigned j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

inline unsigned rank(const Matrix& m) { return rref(m).rank(); }

/// Basis of the kernel, one vector per free column, in column order.
/// Each vector has entry 1 at its free column.
inline std::vector<Vec> nullspace_basis(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (unsigned c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (unsigned free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = Rational(1);
        for (unsigned p = 0; p < e.pivot_cols.size(); ++p)
            v[e.pivot_cols[p]] = -e.reduced.at(p, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("size mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (unsigned i = 0; i < a.rows(); ++i) {
        for (unsigned j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    Echelon e = rref(std::move(aug));
    Vec x(a.cols());
    for (unsigned p = 0; p < e.pivot_cols.size(); ++p) {
        if (e.pivot_cols[p] == a.cols()) return std::nullopt;  // pivot in the last column
        x[e.pivot_cols[p]] = e.reduced.at(p, a.cols());
    }
    return x;
}

/// Incrementally maintained row space; used for greedy basis extension and
/// membership tests. Deterministic given the insertion order.
class SpanBuilder {
  public:
    explicit SpanBuilder(unsigned ambient) : ambient_(ambient) {}

    unsigned dim() const { return static_cast<unsigned>(rows_.size()); }

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    /// Adds v to the span; returns true when the span grew.
    bool add(const Vec& v) {
        Vec r = reduce(v);
        if (vec_is_zero(r)) return false;
        unsigned lead = 0;
        while (r[lead].is_zero()) ++lead;
        Rational inv = Rational(1) / r[lead];
        for (auto& x : r) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (!rows_[i][lead].is_zero()) vec_add_scaled(rows_[i], -rows_[i][lead], r);
        rows_.push_back(std::move(r));
        leads_.push_back(lead);
        return true;
    }

  private:
    unsigned ambient_;
    std::vector<Vec> rows_;       // reduced rows, each with a distinct lead
    std::vector<unsigned> leads_;

    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw std::invalid_argument("size mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (!v[leads_[i]].is_zero()) vec_add_scaled(v, -v[leads_[i]], rows_[i]);
        return v;
    }
};

}  // namespace homprob
