// Independent oracles shared by the test suites. Nothing here calls the
// library's matrix or normal-form code.
#pragma once

#include "lefschetz/word_engine.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;  // row major

inline std::int64_t pairing(const Vec& u, const Vec& v) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
    return s;
}

inline Vec homology(const lefschetz::Curve& c) {
    Vec v;
    for (Eigen::Index i = 0; i < c.homology.size(); ++i) v.push_back(c.homology(i).to_int64());
    return v;
}

/// Image of the word on homology, built column by column: column j is
/// t_1(t_2(...t_n(e_j))) with t(x) = x + e <x, c> c.
inline Mat homology_image(const lefschetz::TwistWord& w) {
    const std::size_t n = static_cast<std::size_t>(2 * w.genus());
    std::vector<Vec> classes;
    for (std::size_t i = 0; i < w.size(); ++i) classes.push_back(homology(w.curve_at(i)));
    Mat m(n, Vec(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        Vec x(n, 0);
        x[j] = 1;
        for (std::size_t i = w.size(); i-- > 0;) {
            const std::int64_t k = w[i].exponent * pairing(x, classes[i]);
            for (std::size_t r = 0; r < n; ++r) x[r] += k * classes[i][r];
        }
        for (std::size_t r = 0; r < n; ++r) m[r][j] = x[r];
    }
    return m;
}

inline bool is_identity(const Mat& m) {
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            if (m[r][c] != (r == c ? 1 : 0)) return false;
    return true;
}

inline Mat to_mat(const lefschetz::IntMatrix& a) {
    Mat m(static_cast<std::size_t>(a.rows()), Vec(static_cast<std::size_t>(a.cols())));
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) m[r][c] = a(r, c).to_int64();
    return m;
}

/// Determinant by cofactor expansion (small matrices only).
inline std::int64_t det(const Mat& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    std::int64_t s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            Vec row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        s += (c % 2 == 0 ? 1 : -1) * a[0][c] * det(minor);
    }
    return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Invariant factors from determinantal divisors: d_k = gcd of k x k minors,
/// factor_k = d_k / d_{k-1}. Stops at the rank.
inline std::vector<std::int64_t> invariant_factors(const Mat& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        std::int64_t g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat m;
                for (auto i : r) {
                    Vec row;
                    for (auto j : c) row.push_back(a[i][j]);
                    m.push_back(row);
                }
                g = std::gcd(g, det(m));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

}  // namespace oracle
