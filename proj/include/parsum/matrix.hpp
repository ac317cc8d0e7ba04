#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parsum/errors.hpp"

namespace parsum {

namespace detail {

inline void require_dim(std::size_t n) {
    if (n == 0) throw DomainError("matrix dimension must be at least 1");
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
    }
}

} // namespace detail

/// Dense square n x n matrix, row-major. No symmetry requirement.
template <class T>
class Matrix {
public:
    using scalar_type = T;

    explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) { detail::require_dim(n); }

    static Matrix zeros(std::size_t n) { return Matrix(n); }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            detail::require_same_dim(rows[i].size(), rows.size(), "Matrix::from_rows");
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t dim() const noexcept { return n_; }

    T operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

    std::span<const T> data() const noexcept { return data_; }

    Matrix transposed() const {
        Matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    T max_abs() const {
        T m(0);
        for (const T& v : data_) m = std::max<T>(m, v < T(0) ? -v : v);
        return m;
    }

    std::vector<std::vector<T>> rows() const {
        std::vector<std::vector<T>> out(n_, std::vector<T>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
        return out;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        detail::require_same_dim(n_, o.n_, "Matrix +=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        detail::require_same_dim(n_, o.n_, "Matrix -=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(T s) {
        for (T& v : data_) v *= s;
        return *this;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_;
    std::vector<T> data_;
};

/// Real symmetric matrix. Symmetry is exact: construction from a general
/// matrix stores (M + M^T)/2 into both triangles.
template <class T>
class SymMatrix {
public:
    using scalar_type = T;

    explicit SymMatrix(const Matrix<T>& m) : m_(m) {
        const std::size_t n = m_.dim();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const T avg = (m_(i, j) + m_(j, i)) / T(2);
                m_(i, j) = avg;
                m_(j, i) = avg;
            }
        }
    }

    static SymMatrix zeros(std::size_t n) { return SymMatrix(Matrix<T>(n)); }
    static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix<T>::identity(n)); }

    static SymMatrix diagonal(const std::vector<T>& d) {
        Matrix<T> m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return SymMatrix(m);
    }

    static SymMatrix from_rows(const std::vector<std::vector<T>>& rows) {
        return SymMatrix(Matrix<T>::from_rows(rows));
    }

    std::size_t dim() const noexcept { return m_.dim(); }
    T operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    const Matrix<T>& general() const noexcept { return m_; }
    T max_abs() const { return m_.max_abs(); }
    std::vector<std::vector<T>> rows() const { return m_.rows(); }

    template <class U>
    SymMatrix<U> cast() const {
        return SymMatrix<U>(m_.template cast<U>());
    }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix<T> m_;
};

/// Dense real n-vector.
template <class T>
class Vector {
public:
    using scalar_type = T;

    explicit Vector(std::size_t n) : v_(n, T(0)) { detail::require_dim(n); }
    explicit Vector(std::vector<T> v) : v_(std::move(v)) { detail::require_dim(v_.size()); }

    std::size_t dim() const noexcept { return v_.size(); }
    T operator[](std::size_t i) const noexcept { return v_[i]; }
    T& operator[](std::size_t i) noexcept { return v_[i]; }
    std::span<const T> data() const noexcept { return v_; }

    T max_abs() const {
        T m(0);
        for (const T& x : v_) m = std::max<T>(m, x < T(0) ? -x : x);
        return m;
    }

    T norm() const {
        using std::sqrt;
        return sqrt(dot(*this, *this));
    }

    friend T dot(const Vector& a, const Vector& b) {
        detail::require_same_dim(a.dim(), b.dim(), "dot");
        T s(0);
        for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
        return s;
    }

    friend Vector operator+(Vector a, const Vector& b) {
        detail::require_same_dim(a.dim(), b.dim(), "Vector +");
        for (std::size_t i = 0; i < a.dim(); ++i) a[i] += b[i];
        return a;
    }

    friend Vector operator-(Vector a, const Vector& b) {
        detail::require_same_dim(a.dim(), b.dim(), "Vector -");
        for (std::size_t i = 0; i < a.dim(); ++i) a[i] -= b[i];
        return a;
    }

    friend Vector operator*(T s, Vector a) {
        for (auto& x : a.v_) x *= s;
        return a;
    }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<T> v_;
};

template <class M>
concept SquareMatrix = requires(const M& m, std::size_t i) {
    typename M::scalar_type;
    { m.dim() } -> std::convertible_to<std::size_t>;
    { m(i, i) } -> std::convertible_to<typename M::scalar_type>;
};

template <class T>
SymMatrix<T> symmetrize(const Matrix<T>& m) {
    return SymMatrix<T>(m);
}

template <SquareMatrix L, SquareMatrix R>
    requires std::same_as<typename L::scalar_type, typename R::scalar_type>
Matrix<typename L::scalar_type> operator*(const L& a, const R& b) {
    using T = typename L::scalar_type;
    detail::require_same_dim(a.dim(), b.dim(), "matrix product");
    const std::size_t n = a.dim();
    Matrix<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const T aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

template <SquareMatrix L>
Vector<typename L::scalar_type> operator*(const L& a, const Vector<typename L::scalar_type>& x) {
    using T = typename L::scalar_type;
    detail::require_same_dim(a.dim(), x.dim(), "matrix-vector product");
    Vector<T> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        T s(0);
        for (std::size_t j = 0; j < x.dim(); ++j) s += a(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

namespace detail {

template <SquareMatrix L, SquareMatrix R, class Op>
Matrix<typename L::scalar_type> elementwise(const L& a, const R& b, Op op, const char* what) {
    require_same_dim(a.dim(), b.dim(), what);
    Matrix<typename L::scalar_type> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = op(a(i, j), b(i, j));
    return out;
}

} // namespace detail

template <SquareMatrix L, SquareMatrix R>
    requires std::same_as<typename L::scalar_type, typename R::scalar_type>
Matrix<typename L::scalar_type> operator+(const L& a, const R& b) {
    return detail::elementwise(a, b, std::plus<>{}, "matrix +");
}

template <SquareMatrix L, SquareMatrix R>
    requires std::same_as<typename L::scalar_type, typename R::scalar_type>
Matrix<typename L::scalar_type> operator-(const L& a, const R& b) {
    return detail::elementwise(a, b, std::minus<>{}, "matrix -");
}

// Sums and differences of symmetric matrices stay symmetric.
template <class T>
SymMatrix<T> operator+(const SymMatrix<T>& a, const SymMatrix<T>& b) {
    return SymMatrix<T>(detail::elementwise(a, b, std::plus<>{}, "matrix +"));
}

template <class T>
SymMatrix<T> operator-(const SymMatrix<T>& a, const SymMatrix<T>& b) {
    return SymMatrix<T>(detail::elementwise(a, b, std::minus<>{}, "matrix -"));
}

template <class T>
Matrix<T> operator*(T s, Matrix<T> m) {
    m *= s;
    return m;
}

template <class T>
SymMatrix<T> operator*(T s, const SymMatrix<T>& m) {
    return SymMatrix<T>(s * m.general());
}

/// max_{i,j} |a_ij - b_ij|
template <SquareMatrix L, SquareMatrix R>
typename L::scalar_type max_abs_diff(const L& a, const R& b) {
    using T = typename L::scalar_type;
    detail::require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    T m(0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const T d = a(i, j) - b(i, j);
            m = std::max<T>(m, d < T(0) ? -d : d);
        }
    }
    return m;
}

/// (Mx | x)
template <SquareMatrix M>
typename M::scalar_type quadratic_form(const M& m, const Vector<typename M::scalar_type>& x) {
    return dot(m * x, x);
}

} // namespace parsum
