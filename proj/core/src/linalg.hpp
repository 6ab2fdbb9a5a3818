#pragma once

// Internal dense exact linear algebra over Coeff (Gauss-Jordan).

#include "tamesl2/coeff.hpp"

#include <optional>
#include <vector>

namespace tamesl2::linalg {

using Matrix = std::vector<std::vector<Coeff>>;

// Reduced row echelon form in place; returns pivot column per pivot row.
inline std::vector<int> rref(Matrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && a[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        Coeff inv = a[r][c].inverse();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Coeff f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

inline size_t rank(Matrix a) { return rref(a).size(); }

// Solves A x = b. Returns the particular solution with all free variables
// set to zero (deterministic), or nullopt if inconsistent.
inline std::optional<std::vector<Coeff>> solve(const Matrix& a, const std::vector<Coeff>& b) {
    if (a.empty()) {
        for (const Coeff& v : b)
            if (!v.is_zero()) return std::nullopt;
        return std::vector<Coeff>{};
    }
    size_t rows = a.size(), cols = a[0].size();
    Matrix aug(rows);
    for (size_t i = 0; i < rows; ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    std::vector<int> pivots = rref(aug);
    for (size_t i = pivots.size(); i < rows; ++i)
        if (!aug[i][cols].is_zero()) return std::nullopt;
    // a pivot in the rhs column means inconsistency
    if (!pivots.empty() && pivots.back() == (int)cols) return std::nullopt;
    std::vector<Coeff> x(cols, Coeff::zero());
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

// Nullspace basis of A (free-variable unit vectors), deterministic order.
inline std::vector<std::vector<Coeff>> nullspace(Matrix a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Coeff>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Coeff> v(cols, Coeff::zero());
        v[f] = Coeff::one();
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace tamesl2::linalg
