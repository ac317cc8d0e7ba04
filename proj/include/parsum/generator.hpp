#pragma once

#include "parsum/errors.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"
#include "parsum/means.hpp"

namespace parsum {

/// Relative tolerance of the feasibility test H >= A:B.
inline constexpr double kFeasibilityRelTol = 1e-10;

/// F(C) = C^T A C + (I - C)^T B (I - C)
///
/// For positive definite A, B this dominates A:B for every C, with equality
/// at C = (A+B)^{-1} B.
template <class T, SquareMatrix Cm>
    requires std::same_as<typename Cm::scalar_type, T>
SymMatrix<T> generator_F(const SymMatrix<T>& a, const SymMatrix<T>& b, const Cm& c) {
    detail::require_same_dim(a.dim(), b.dim(), "generator_F");
    const Matrix<T> i_minus_c = Matrix<T>::identity(a.dim()) - c;
    return congruence(a, c) + congruence(b, i_minus_c);
}

template <class T>
struct SolveResult {
    Matrix<T> c;
    T residual;                 ///< ||F(C) - H||_max
    PsdVerdict<T> feasibility;  ///< verdict on H - A:B
};

namespace detail {

// The pieces of the symmetric reformulation: with R = (A+B)^{-1/2},
// S = R (H - A:B) R and Y = R B R, the equation F(C) = H becomes
// (X - Y)^T (X - Y) = S for X = R^{-1} C R.
template <class T>
struct WhitenedEquation {
    SymMatrix<T> r;      // (A+B)^{-1/2}
    SymMatrix<T> r_inv;  // (A+B)^{1/2}
    SymMatrix<T> y;
    SymMatrix<T> s;
    PsdVerdict<T> feasibility;
};

template <class T>
WhitenedEquation<T> whiten(const SymMatrix<T>& a, const SymMatrix<T>& b, const SymMatrix<T>& h,
                           double rel_tol) {
    require_same_dim(a.dim(), b.dim(), "solve_equation");
    require_same_dim(a.dim(), h.dim(), "solve_equation");
    const SymMatrix<T> sum = a + b;
    const SymMatrix<T> gap = h - parallel_sum(a, b);
    const auto verdict = psd_check(gap, rel_tol);
    if (verdict.indefinite()) throw InfeasibleError("H is not >= A:B");
    const SymMatrix<T> r = power(sum, -0.5);
    return {r, power(sum, 0.5), congruence(b, r), congruence(gap, r), verdict};
}

// S^{1/2} with the negative eigenvalues that survived a passing feasibility test
// treated as zero.
template <class T>
SymMatrix<T> clamped_sqrt(const SymMatrix<T>& s) {
    using std::sqrt;
    return matrix_function(s, [](T x) { return x > T(0) ? sqrt(x) : T(0); });
}

} // namespace detail

/// Solves F(C) = H for C. Throws InfeasibleError unless H >= A:B within tolerance.
///
/// Returns C = R (Y + S^{1/2}) R^{-1} in the notation of detail::WhitenedEquation.
template <class T>
SolveResult<T> solve_equation(const SymMatrix<T>& a, const SymMatrix<T>& b, const SymMatrix<T>& h,
                              double rel_tol = kFeasibilityRelTol) {
    const auto w = detail::whiten(a, b, h, rel_tol);
    const SymMatrix<T> x = w.y + detail::clamped_sqrt(w.s);
    Matrix<T> c = w.r * x * w.r_inv;
    const T residual = max_abs_diff(generator_F(a, b, c), h);
    return {std::move(c), residual, w.feasibility};
}

/// The same solution assembled as (A+B)^{-1} B + ((A+B)^{-1}(H - A:B))^{1/2}, where the
/// square root of the non-symmetric factor is taken as R S^{1/2} R^{-1}.
template <class T>
Matrix<T> solve_equation_display_form(const SymMatrix<T>& a, const SymMatrix<T>& b, const SymMatrix<T>& h,
                                      double rel_tol = kFeasibilityRelTol) {
    const auto w = detail::whiten(a, b, h, rel_tol);
    return solve_spd(a + b, b) + w.r * detail::clamped_sqrt(w.s) * w.r_inv;
}

} // namespace parsum
