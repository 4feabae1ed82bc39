#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over Q: dense row reduction and sparse
 * incremental echelon bases.
 */

#include "superweyl/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace superweyl {

using DenseMatrix = std::vector<ScalarVector>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(DenseMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m.front().size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        const Scalar inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0) continue;
            const Scalar f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

inline std::size_t rank(DenseMatrix m) { return rref(m).size(); }

/// Solves sum_j x_j * columns[j] = target exactly. Free variables are set to
/// zero. Returns nullopt when the system is inconsistent.
inline std::optional<ScalarVector> solve_columns(const std::vector<ScalarVector>& columns,
                                                 const ScalarVector& target) {
    const std::size_t n = columns.size();
    const std::size_t rows = target.size();
    DenseMatrix aug(rows, ScalarVector(n + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < n; ++j) aug[r][j] = columns[j].at(r);
        aug[r][n] = target[r];
    }
    const auto piv = rref(aug);
    ScalarVector x(n);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == n) return std::nullopt;
        x[piv[r]] = aug[r][n];
    }
    return x;
}

/// Basis of the right null space {x : m x = 0}.
inline std::vector<ScalarVector> nullspace(DenseMatrix m, std::size_t cols) {
    const auto piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<ScalarVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ScalarVector v(cols);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Sparse vectors over an integer-indexed basis.

/// Sorted (index, nonzero coefficient) pairs.
class SparseVector {
public:
    using Entry = std::pair<int, Scalar>;

    SparseVector() = default;

    static SparseVector unit(int index, Scalar coeff = 1) {
        SparseVector v;
        if (sgn(coeff) != 0) v.entries_.emplace_back(index, std::move(coeff));
        return v;
    }

    static SparseVector from_map(const std::map<int, Scalar>& m) {
        SparseVector v;
        v.entries_.reserve(m.size());
        for (const auto& [k, c] : m)
            if (sgn(c) != 0) v.entries_.emplace_back(k, c);
        return v;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    Scalar coeff(int index) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const Entry& e, int k) { return e.first < k; });
        if (it != entries_.end() && it->first == index) return it->second;
        return 0;
    }

    /// this += factor * other
    void axpy(const Scalar& factor, const SparseVector& other) {
        if (sgn(factor) == 0 || other.empty()) return;
        std::vector<Entry> out;
        out.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                out.push_back(std::move(*a++));
            } else if (a == entries_.end() || b->first < a->first) {
                out.emplace_back(b->first, factor * b->second);
                ++b;
            } else {
                Scalar s = a->second + factor * b->second;
                if (sgn(s) != 0) out.emplace_back(a->first, std::move(s));
                ++a;
                ++b;
            }
        }
        entries_ = std::move(out);
    }

    SparseVector& operator+=(const SparseVector& o) {
        axpy(1, o);
        return *this;
    }
    SparseVector& operator-=(const SparseVector& o) {
        axpy(-1, o);
        return *this;
    }
    SparseVector& operator*=(const Scalar& f) {
        if (sgn(f) == 0) {
            entries_.clear();
        } else {
            for (auto& e : entries_) e.second *= f;
        }
        return *this;
    }

    friend SparseVector operator*(const Scalar& f, SparseVector v) {
        v *= f;
        return v;
    }
    friend SparseVector operator+(SparseVector a, const SparseVector& b) {
        a += b;
        return a;
    }
    friend SparseVector operator-(SparseVector a, const SparseVector& b) {
        a -= b;
        return a;
    }
    friend bool operator==(const SparseVector& a, const SparseVector& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<Entry> entries_;
};

/// Accumulates many scaled sparse vectors before materializing; cheaper than
/// repeated merges when the number of summands is large.
class SparseAccumulator {
public:
    void add(int index, const Scalar& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = acc_.try_emplace(index, c);
        if (!inserted) it->second += c;
    }
    void add(const Scalar& factor, const SparseVector& v) {
        if (sgn(factor) == 0) return;
        for (const auto& [k, c] : v.entries()) add(k, factor * c);
    }
    SparseVector finish() const { return SparseVector::from_map(acc_); }

private:
    std::map<int, Scalar> acc_;
};

/// Incrementally maintained reduced echelon basis of a subspace. Each row has
/// a pivot (its smallest index) with coefficient 1, and no row has a nonzero
/// entry at another row's pivot.
class EchelonBasis {
public:
    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVector>& rows() const { return rows_; }

    bool is_pivot(int index) const { return pivot_row_.count(index) != 0; }

    /// Removes every pivot coordinate; the result is the canonical
    /// representative of v modulo the subspace.
    SparseVector reduce(const SparseVector& v) const {
        if (rows_.empty() || v.empty()) return v;
        SparseAccumulator acc;
        bool touched = false;
        for (const auto& [k, c] : v.entries()) {
            auto pr = pivot_row_.find(k);
            if (pr == pivot_row_.end()) {
                acc.add(k, c);
            } else {
                touched = true;
                // the pivot entry cancels; the rest of the row has no pivots
                const auto& row = rows_[pr->second].entries();
                for (std::size_t i = 1; i < row.size(); ++i) acc.add(row[i].first, -c * row[i].second);
            }
        }
        if (!touched) return v;
        return acc.finish();
    }

    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    /// Adds v to the span; returns true if the rank grew.
    bool insert(const SparseVector& v) {
        SparseVector r = reduce(v);
        if (r.empty()) return false;
        const Scalar lead = r.entries().front().second;
        if (lead != 1) r *= Scalar(1 / lead);
        const int pivot = r.entries().front().first;
        for (auto& row : rows_) {
            const Scalar c = row.coeff(pivot);
            if (sgn(c) != 0) row.axpy(-c, r);
        }
        pivot_row_.emplace(pivot, rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

private:
    std::vector<SparseVector> rows_;
    std::unordered_map<int, std::size_t> pivot_row_;
};

}  // namespace superweyl
