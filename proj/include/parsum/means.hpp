#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "parsum/errors.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"

namespace parsum {

/// Step cap for the steepest-descent variational oracle.
inline constexpr int kOracleMaxSteps = 10000;

struct ParallelSumMean {};
struct HarmonicMean {};
struct PowerMean {
    double p;
};

/// Which binary operator mean to compute.
using MeanKind = std::variant<ParallelSumMean, HarmonicMean, PowerMean>;

/// A:B = (A^{-1} + B^{-1})^{-1}, evaluated as A (A+B)^{-1} B.
template <class T>
SymMatrix<T> parallel_sum(const SymMatrix<T>& a, const SymMatrix<T>& b) {
    detail::require_same_dim(a.dim(), b.dim(), "parallel_sum");
    require_pd(a, "parallel_sum");
    require_pd(b, "parallel_sum");
    return symmetrize(a * solve_spd(a + b, b));
}

/// H2(A,B) = 2 (A:B)
template <class T>
SymMatrix<T> harmonic_mean(const SymMatrix<T>& a, const SymMatrix<T>& b) {
    return T(2) * parallel_sum(a, b);
}

/// M_p(A,B) = ((A^p + B^p)/2)^{1/p}, p != 0.
template <class T>
SymMatrix<T> power_mean(const SymMatrix<T>& a, const SymMatrix<T>& b, double p) {
    if (p == 0.0) throw ParamError("power_mean: p must be non-zero");
    detail::require_same_dim(a.dim(), b.dim(), "power_mean");
    require_pd(a, "power_mean");
    require_pd(b, "power_mean");
    const SymMatrix<T> avg = T(0.5) * (power(a, p) + power(b, p));
    return power(avg, 1.0 / p);
}

template <class T>
SymMatrix<T> compute_mean(const MeanKind& kind, const SymMatrix<T>& a, const SymMatrix<T>& b) {
    struct Visitor {
        const SymMatrix<T>& a;
        const SymMatrix<T>& b;
        SymMatrix<T> operator()(ParallelSumMean) const { return parallel_sum(a, b); }
        SymMatrix<T> operator()(HarmonicMean) const { return harmonic_mean(a, b); }
        SymMatrix<T> operator()(PowerMean m) const { return power_mean(a, b, m.p); }
    };
    return std::visit(Visitor{a, b}, kind);
}

/// The minimiser xi = (A+B)^{-1} B x of eta -> (A eta|eta) + (B(x-eta)|x-eta).
template <class T>
Vector<T> variational_minimizer(const SymMatrix<T>& a, const SymMatrix<T>& b, const Vector<T>& x) {
    detail::require_same_dim(a.dim(), b.dim(), "variational_minimizer");
    return solve_spd(a + b, b * x);
}

/// f(eta) = (A eta|eta) + (B(x-eta)|x-eta)
template <class T>
T variational_value(const SymMatrix<T>& a, const SymMatrix<T>& b, const Vector<T>& x, const Vector<T>& eta) {
    const Vector<T> rest = x - eta;
    return quadratic_form(a, eta) + quadratic_form(b, rest);
}

/// Numerical infimum of f by steepest descent with exact line search.
///
/// The gradient of f at eta is 2((A+B) eta - B x). Since f is a quadratic
/// with Hessian 2(A+B), the exact step along -g is g.g / (2 g.(A+B)g).
/// Iterates from eta = 0 until max|g| <= 1e-10 (1 + |x|).
template <class T>
T variational_infimum_oracle(const SymMatrix<T>& a, const SymMatrix<T>& b, const Vector<T>& x,
                             int max_steps = kOracleMaxSteps) {
    detail::require_same_dim(a.dim(), b.dim(), "variational_infimum_oracle");
    detail::require_same_dim(a.dim(), x.dim(), "variational_infimum_oracle");
    require_pd(a, "variational_infimum_oracle");
    require_pd(b, "variational_infimum_oracle");

    const SymMatrix<T> sum = a + b;
    const Vector<T> bx = b * x;
    const T tol = T(1e-10) * (T(1) + x.norm());
    Vector<T> eta(x.dim());
    for (int step = 0; step <= max_steps; ++step) {
        const Vector<T> g = T(2) * (sum * eta - bx);
        if (g.max_abs() <= tol) return variational_value(a, b, x, eta);
        if (step == max_steps) break;
        const T curvature = T(2) * quadratic_form(sum, g);
        eta = eta - (dot(g, g) / curvature) * g;
    }
    throw NonConvergence("variational_infimum_oracle: no convergence within " + std::to_string(max_steps) +
                         " steps");
}

} // namespace parsum
