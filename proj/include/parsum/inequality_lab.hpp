#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "parsum/errors.hpp"
#include "parsum/generator.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"
#include "parsum/means.hpp"

namespace parsum {

/// Relative tolerance applied to every gap verdict in the lab.
inline constexpr double kLabRelTol = 1e-9;

/// The parameter grids the suites sweep.
inline const std::vector<double> kPowerFamilyGrid{-1.0, -0.5, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
inline const std::vector<double> kLambdaGrid{0.0, 0.25, 0.5, 0.75, 1.0};

/// One instance of an inequality lhs <= rhs in the Loewner order.
template <class T>
struct InequalityReport {
    std::string name;
    SymMatrix<T> lhs;
    SymMatrix<T> rhs;
    PsdVerdict<T> gap_verdict;  ///< verdict on rhs - lhs
    std::vector<std::pair<std::string, double>> parameters;

    static InequalityReport make(std::string name, SymMatrix<T> lhs, SymMatrix<T> rhs,
                                 std::vector<std::pair<std::string, double>> parameters,
                                 double rel_tol = kLabRelTol) {
        detail::require_same_dim(lhs.dim(), rhs.dim(), "InequalityReport");
        auto verdict = psd_check(rhs - lhs, rel_tol);
        return {std::move(name), std::move(lhs), std::move(rhs), verdict, std::move(parameters)};
    }
};

/// A:B <= lambda^2 A + (1-lambda)^2 B, 0 <= lambda <= 1.
template <class T>
InequalityReport<T> ineq_scalar_lambda(const SymMatrix<T>& a, const SymMatrix<T>& b, double lambda,
                                       double rel_tol = kLabRelTol) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParamError("ineq_scalar_lambda: lambda must lie in [0, 1]");
    const T l = static_cast<T>(lambda);
    const T k = T(1) - l;
    return InequalityReport<T>::make("scalar_lambda", parallel_sum(a, b), l * l * a + k * k * b,
                                     {{"lambda", lambda}}, rel_tol);
}

/// A:B <= PAP + (I-P)B(I-P) for an orthogonal projection P.
template <class T>
InequalityReport<T> ineq_projection(const SymMatrix<T>& a, const SymMatrix<T>& b, const SymMatrix<T>& proj,
                                    double rel_tol = kLabRelTol) {
    detail::require_same_dim(a.dim(), proj.dim(), "ineq_projection");
    if (max_abs_diff(proj * proj, proj) > T(1e-10)) {
        throw ParamError("ineq_projection: P is not an orthogonal projection");
    }
    const SymMatrix<T> complement = SymMatrix<T>::identity(a.dim()) - proj;
    T trace(0);
    for (std::size_t i = 0; i < proj.dim(); ++i) trace += proj(i, i);
    const double rank = std::round(static_cast<double>(trace));
    return InequalityReport<T>::make("projection", parallel_sum(a, b),
                                     congruence(a, proj) + congruence(b, complement), {{"rank", rank}},
                                     rel_tol);
}

/// A:B <= (A+B)^{-1} (BAB + ABA) (A+B)^{-1}
template <class T>
InequalityReport<T> ineq_bab_aba(const SymMatrix<T>& a, const SymMatrix<T>& b, double rel_tol = kLabRelTol) {
    const SymMatrix<T> lhs = parallel_sum(a, b);
    const SymMatrix<T> middle = congruence(a, b) + congruence(b, a);
    return InequalityReport<T>::make("bab_aba", lhs, congruence(middle, inverse(a + b)), {}, rel_tol);
}

/// A:B <= (A^p:B^p) (A^{2p-1}:B^{2p-1})^{-1} (A^p:B^p)
///
/// The middle factor is the inverse of a parallel sum, i.e. A^{1-2p} + B^{1-2p},
/// which is formed directly to avoid inverting twice.
template <class T>
InequalityReport<T> ineq_power_family(const SymMatrix<T>& a, const SymMatrix<T>& b, double p,
                                      double rel_tol = kLabRelTol) {
    const SymMatrix<T> lhs = parallel_sum(a, b);
    const SymMatrix<T> outer = parallel_sum(power(a, p), power(b, p));
    const SymMatrix<T> middle = power(a, 1.0 - 2.0 * p) + power(b, 1.0 - 2.0 * p);
    return InequalityReport<T>::make("power_family", lhs, congruence(middle, outer), {{"p", p}}, rel_tol);
}

/// H2(A,B)^p <= H2(A^p,B^p) for 0 <= p <= 1; the reverse for p in [-1,0) and (1,2].
template <class T>
InequalityReport<T> ineq_h2_power_chain(const SymMatrix<T>& a, const SymMatrix<T>& b, double p,
                                        double rel_tol = kLabRelTol) {
    if (!(p >= -1.0 && p <= 2.0)) throw ParamError("ineq_h2_power_chain: p must lie in [-1, 2]");
    SymMatrix<T> of_mean = power(harmonic_mean(a, b), p);
    SymMatrix<T> mean_of = harmonic_mean(power(a, p), power(b, p));
    if (p >= 0.0 && p <= 1.0) {
        return InequalityReport<T>::make("h2_power_chain", std::move(of_mean), std::move(mean_of), {{"p", p}},
                                         rel_tol);
    }
    return InequalityReport<T>::make("h2_power_chain", std::move(mean_of), std::move(of_mean), {{"p", p}},
                                     rel_tol);
}

/// 2(A:B) <= M_p(A,B) for p >= 1.
template <class T>
InequalityReport<T> ineq_power_mean_bound(const SymMatrix<T>& a, const SymMatrix<T>& b, double p,
                                          double rel_tol = kLabRelTol) {
    if (!(p >= 1.0)) throw ParamError("ineq_power_mean_bound: p must be >= 1");
    return InequalityReport<T>::make("power_mean_bound", harmonic_mean(a, b), power_mean(a, b, p), {{"p", p}},
                                     rel_tol);
}

/// C = B (A+B)^{-1}, for which F(C) is the right side of ineq_bab_aba.
template <class T>
Matrix<T> bab_aba_generator_choice(const SymMatrix<T>& a, const SymMatrix<T>& b) {
    return solve_spd(a + b, b).transposed();
}

/// C = (A^p + B^p)^{-1} B^p, for which F(C) is the right side of ineq_power_family.
template <class T>
Matrix<T> power_family_generator_choice(const SymMatrix<T>& a, const SymMatrix<T>& b, double p) {
    const SymMatrix<T> bp = power(b, p);
    return solve_spd(power(a, p) + bp, bp);
}

} // namespace parsum
