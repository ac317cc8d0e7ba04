#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "parsum/errors.hpp"
#include "parsum/matrix.hpp"

namespace parsum {

/// Sweep cap for the Jacobi eigensolver.
inline constexpr int kJacobiMaxSweeps = 100;

/// The solver must reach off(M) <= kJacobiStop * ||M||_F.
inline constexpr double kJacobiStop = 1e-14;

/// Fractional and negative powers reject spectra with lambda_min < kEigenFloor * lambda_max.
inline constexpr double kEigenFloor = 1e-14;

/// Tolerance for "positive definite" preconditions.
inline constexpr double kPdRelTol = 1e-12;

template <class T>
struct EigenDecomposition {
    Matrix<T> q;             ///< orthogonal, column k is the eigenvector of lambda[k]
    std::vector<T> lambda;   ///< ascending
};

enum class PsdClass { PositiveDefinite, PositiveSemidefiniteWithinTol, Indefinite };

inline const char* to_string(PsdClass c) {
    switch (c) {
    case PsdClass::PositiveDefinite: return "PositiveDefinite";
    case PsdClass::PositiveSemidefiniteWithinTol: return "PositiveSemidefiniteWithinTol";
    case PsdClass::Indefinite: return "Indefinite";
    }
    return "?";
}

template <class T>
struct PsdVerdict {
    T min_eig;
    T threshold;
    PsdClass classification;

    bool indefinite() const noexcept { return classification == PsdClass::Indefinite; }
};

namespace detail {

template <class T>
T abs_(T x) {
    return x < T(0) ? -x : x;
}

template <class T>
T frobenius(const Matrix<T>& a) {
    using std::sqrt;
    T s(0);
    for (const T& v : a.data()) s += v * v;
    return sqrt(s);
}

template <class T>
T off_diagonal(const Matrix<T>& a) {
    using std::sqrt;
    T s(0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return sqrt(s);
}

} // namespace detail

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// A rotation is skipped once |a_pq| <= eps * sqrt(|a_pp a_qq|); sweeping stops
/// after a sweep that rotates nothing. This rule gives small eigenvalues high
/// relative accuracy, which matters for badly scaled positive definite input.
/// Eigenvalues are returned ascending, and each eigenvector is signed so that
/// its largest-magnitude entry (first one on ties) is positive.
template <class T>
EigenDecomposition<T> eigh(const SymMatrix<T>& m, int max_sweeps = kJacobiMaxSweeps) {
    using std::sqrt;
    const std::size_t n = m.dim();
    Matrix<T> a = m.general();
    Matrix<T> v = Matrix<T>::identity(n);
    const T eps = std::numeric_limits<T>::epsilon();
    const T norm_f = detail::frobenius(a);
    const T stop = T(kJacobiStop) * norm_f;
    const T negligible = eps * eps * norm_f;

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                if (detail::abs_(apq) <= negligible) continue;
                const T app = a(p, p);
                const T aqq = a(q, q);
                if (detail::abs_(apq) <= eps * sqrt(detail::abs_(app) * detail::abs_(aqq))) continue;
                rotated = true;

                const T theta = (aqq - app) / (T(2) * apq);
                T t;
                if (detail::abs_(theta) > T(1e150)) {
                    t = T(1) / (T(2) * theta);
                } else {
                    t = T(1) / (detail::abs_(theta) + sqrt(theta * theta + T(1)));
                    if (theta < T(0)) t = -t;
                }
                const T c = T(1) / sqrt(t * t + T(1));
                const T s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p);
                    const T akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k);
                    const T aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = T(0);
                a(q, p) = T(0);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;

                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p);
                    const T vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (!rotated) {
            converged = true;
            break;
        }
    }
    if (!converged && detail::off_diagonal(a) > stop) {
        throw NonConvergence("eigh: Jacobi did not converge within " + std::to_string(max_sweeps) +
                             " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenDecomposition<T> out{Matrix<T>(n), std::vector<T>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.lambda[k] = a(src, src);
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (detail::abs_(v(i, src)) > detail::abs_(v(big, src))) big = i;
        const T sign = v(big, src) < T(0) ? T(-1) : T(1);
        for (std::size_t i = 0; i < n; ++i) out.q(i, k) = sign * v(i, src);
    }
    return out;
}

template <class T>
std::vector<T> eigenvalues(const SymMatrix<T>& m) {
    return eigh(m).lambda;
}

/// Q diag(values) Q^T for an orthogonal Q.
template <class T>
SymMatrix<T> from_spectrum(const Matrix<T>& q, const std::vector<T>& values) {
    const std::size_t n = q.dim();
    Matrix<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            T s(0);
            for (std::size_t k = 0; k < n; ++k) s += q(i, k) * values[k] * q(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return SymMatrix<T>(out);
}

/// Q diag(f(lambda)) Q^T. Throws DomainError if f yields a non-finite value.
template <class T, class F>
SymMatrix<T> matrix_function(const EigenDecomposition<T>& ed, F&& f) {
    using std::isfinite;
    std::vector<T> fv(ed.lambda.size());
    for (std::size_t k = 0; k < fv.size(); ++k) {
        fv[k] = f(ed.lambda[k]);
        if (!isfinite(fv[k])) throw DomainError("matrix_function: eigenvalue outside function domain");
    }
    return from_spectrum(ed.q, fv);
}

template <class T, class F>
SymMatrix<T> matrix_function(const SymMatrix<T>& m, F&& f) {
    return matrix_function(eigh(m), std::forward<F>(f));
}

namespace detail {

template <class T>
void require_above_floor(const std::vector<T>& lambda, const char* what) {
    const T lo = lambda.front();
    const T hi = lambda.back();
    if (!(hi > T(0)) || !(lo > T(kEigenFloor) * hi)) {
        throw DomainError(std::string(what) + ": matrix is not positive definite above the eigenvalue floor");
    }
}

inline bool is_nonnegative_integer(double p) { return p >= 0.0 && std::floor(p) == p; }

} // namespace detail

/// M^p. Exponents other than non-negative integers need a spectrum above the floor.
template <class T>
SymMatrix<T> power(const SymMatrix<T>& m, double p) {
    using std::pow;
    const auto ed = eigh(m);
    if (detail::is_nonnegative_integer(p)) {
        const int k = static_cast<int>(p);
        return matrix_function(ed, [k](T x) {
            T r(1);
            for (int i = 0; i < k; ++i) r *= x;
            return r;
        });
    }
    detail::require_above_floor(ed.lambda, "power");
    const T tp = static_cast<T>(p);
    return matrix_function(ed, [tp](T x) { return pow(x, tp); });
}

template <class T>
SymMatrix<T> sqrt_psd(const SymMatrix<T>& m) {
    using std::sqrt;
    const auto ed = eigh(m);
    detail::require_above_floor(ed.lambda, "sqrt");
    return matrix_function(ed, [](T x) { return sqrt(x); });
}

template <class T>
SymMatrix<T> inverse(const SymMatrix<T>& m) {
    const auto ed = eigh(m);
    detail::require_above_floor(ed.lambda, "inverse");
    return matrix_function(ed, [](T x) { return T(1) / x; });
}

/// Smallest eigenvalue against threshold rel_tol * (1 + ||m||_max).
template <class T>
PsdVerdict<T> psd_check(const SymMatrix<T>& m, double rel_tol) {
    if (!(rel_tol >= 0.0)) throw ParamError("psd_check: rel_tol must be non-negative");
    const T threshold = static_cast<T>(rel_tol) * (T(1) + m.max_abs());
    const T min_eig = eigh(m).lambda.front();
    PsdClass c = PsdClass::PositiveSemidefiniteWithinTol;
    if (min_eig < -threshold) c = PsdClass::Indefinite;
    else if (min_eig > threshold) c = PsdClass::PositiveDefinite;
    return {min_eig, threshold, c};
}

template <class T>
bool is_positive_definite(const SymMatrix<T>& m) {
    return psd_check(m, kPdRelTol).classification == PsdClass::PositiveDefinite;
}

template <class T>
void require_pd(const SymMatrix<T>& m, const char* what) {
    if (!is_positive_definite(m)) throw DomainError(std::string(what) + ": argument is not positive definite");
}

/// T^T M T
template <class T, SquareMatrix Tm>
    requires std::same_as<typename Tm::scalar_type, T>
SymMatrix<T> congruence(const SymMatrix<T>& m, const Tm& t) {
    detail::require_same_dim(m.dim(), t.dim(), "congruence");
    const std::size_t n = m.dim();
    const Matrix<T> mt = m * t;
    Matrix<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            T s(0);
            for (std::size_t k = 0; k < n; ++k) s += t(k, i) * mt(k, j);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return SymMatrix<T>(out);
}

/// M^{-1} rhs through the eigendecomposition of M. M must be positive definite.
template <class T>
Vector<T> solve_spd(const SymMatrix<T>& m, const Vector<T>& rhs) {
    detail::require_same_dim(m.dim(), rhs.dim(), "solve_spd");
    require_pd(m, "solve_spd");
    const auto ed = eigh(m);
    const std::size_t n = m.dim();
    Vector<T> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        T s(0);
        for (std::size_t i = 0; i < n; ++i) s += ed.q(i, k) * rhs[i];
        y[k] = s / ed.lambda[k];
    }
    Vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        T s(0);
        for (std::size_t k = 0; k < n; ++k) s += ed.q(i, k) * y[k];
        out[i] = s;
    }
    return out;
}

template <class T, SquareMatrix R>
    requires std::same_as<typename R::scalar_type, T>
Matrix<T> solve_spd(const SymMatrix<T>& m, const R& rhs) {
    detail::require_same_dim(m.dim(), rhs.dim(), "solve_spd");
    require_pd(m, "solve_spd");
    const auto ed = eigh(m);
    const std::size_t n = m.dim();
    Matrix<T> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            T s(0);
            for (std::size_t i = 0; i < n; ++i) s += ed.q(i, k) * rhs(i, j);
            y(k, j) = s / ed.lambda[k];
        }
    }
    return ed.q * y;
}

} // namespace parsum
