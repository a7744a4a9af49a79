// Smith normal form over the integers.
//
// Works for any Eigen scalar with exact truncating / and % (built-in integers
// or lefschetz::Integer). The input is copied; no transforms are tracked.
#pragma once

#include "lefschetz/exact.hpp"

#include <utility>
#include <vector>

namespace lefschetz {

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
    return x < Scalar(0) ? Scalar(-x) : x;
}

// Moves an entry of least absolute value in the trailing block to (t, t).
template <typename Scalar>
bool pivot_smallest(Matrix<Scalar>& a, Eigen::Index t) {
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index j = t; j < a.cols(); ++j)
        for (Eigen::Index i = t; i < a.rows(); ++i)
            if (a(i, j) != Scalar(0) && (pr < 0 || abs_value(a(i, j)) < abs_value(a(pr, pc)))) {
                pr = i;
                pc = j;
            }
    if (pr < 0) return false;
    a.row(t).swap(a.row(pr));
    a.col(t).swap(a.col(pc));
    return true;
}

}  // namespace detail

/// Diagonal entries d_1 | d_2 | ... | d_r (all positive) of the Smith form of `m`.
template <typename Scalar>
std::vector<Scalar> smith_invariant_factors(Matrix<Scalar> a) {
    using detail::abs_value;
    std::vector<Scalar> diag;
    const Eigen::Index limit = std::min(a.rows(), a.cols());
    for (Eigen::Index t = 0; t < limit; ++t) {
        if (!detail::pivot_smallest(a, t)) break;
        for (;;) {
            bool clean = true;
            for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == Scalar(0)) continue;
                const Scalar q = a(i, t) / a(t, t);
                a.row(i) -= q * a.row(t);
                if (a(i, t) != Scalar(0)) clean = false;
            }
            for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == Scalar(0)) continue;
                const Scalar q = a(t, j) / a(t, t);
                a.col(j) -= q * a.col(t);
                if (a(t, j) != Scalar(0)) clean = false;
            }
            if (clean) {
                // Divisibility: fold any row whose entry is not a multiple of the pivot.
                Eigen::Index bad_row = -1;
                for (Eigen::Index i = t + 1; i < a.rows() && bad_row < 0; ++i)
                    for (Eigen::Index j = t + 1; j < a.cols(); ++j)
                        if (a(i, j) % a(t, t) != Scalar(0)) {
                            bad_row = i;
                            break;
                        }
                if (bad_row < 0) break;
                a.row(t) += a.row(bad_row);
            }
            detail::pivot_smallest(a, t);
        }
        diag.push_back(abs_value(a(t, t)));
    }
    return diag;
}

/// Invariant factors of the cokernel Z^rows / (column span of m): torsion
/// orders greater than 1 in divisibility order, then a 0 for each free summand.
/// An empty result means the trivial group.
template <typename Scalar>
std::vector<Scalar> cokernel_invariants(const Matrix<Scalar>& m) {
    const auto diag = smith_invariant_factors(m);
    std::vector<Scalar> out;
    for (const auto& d : diag)
        if (d != Scalar(1)) out.push_back(d);
    for (auto free = m.rows() - static_cast<Eigen::Index>(diag.size()); free > 0; --free) out.push_back(Scalar(0));
    return out;
}

}  // namespace lefschetz
