#ifndef CMOT_MATRIX_HPP
#define CMOT_MATRIX_HPP

#include <cassert>
#include <functional>
#include <stdexcept>
#include <vector>

#include "poly.hpp"

namespace cmot {

/// Dense matrix over a commutative ring/field T. T follows the coefficient
/// protocol: +, -, *, ==, is_zero(), one_like(), and inv()/is_unit() where
/// division is required. Desk-scale ranks only; everything is exact.
template <typename T>
class Matrix {
public:
    Matrix(int rows, int cols, const T& zero)
        : r_(rows), c_(cols), z_(zero), a_((size_t)rows * cols, zero) {}

    static Matrix identity(int n, const T& zero) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m.at(i, i) = zero.one_like();
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const T& zero_elem() const { return z_; }

    T& at(int i, int j) { return a_[(size_t)i * c_ + j]; }
    const T& at(int i, int j) const { return a_[(size_t)i * c_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        assert(x.r_ == y.r_ && x.c_ == y.c_);
        Matrix m = x;
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] + y.a_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        assert(x.r_ == y.r_ && x.c_ == y.c_);
        Matrix m = x;
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] - y.a_[k];
        return m;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        assert(x.c_ == y.r_);
        Matrix m(x.r_, y.c_, x.z_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (int j = 0; j < y.c_; ++j)
                    m.at(i, j) = m.at(i, j) + x.at(i, k) * y.at(k, j);
            }
        return m;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) return false;
        for (size_t k = 0; k < x.a_.size(); ++k)
            if (!(x.a_[k] == y.a_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    Matrix scaled(const T& s) const {
        Matrix m = *this;
        for (auto& v : m.a_) v = v * s;
        return m;
    }

    Matrix transpose() const {
        Matrix m(c_, r_, z_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    template <typename Fn>
    auto map(const Fn& fn, const decltype(fn(std::declval<T>()))& new_zero) const {
        using U = decltype(fn(std::declval<T>()));
        Matrix<U> m(r_, c_, new_zero);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(i, j) = fn(at(i, j));
        return m;
    }

    bool is_zero() const {
        for (auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    /// Gaussian determinant over a field (entries need inv()).
    T det_field() const {
        assert(r_ == c_);
        if (r_ == 0) return z_.one_like();
        Matrix m = *this;
        T det = z_.one_like();
        bool neg = false;
        for (int col = 0; col < r_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) return z_;
            if (piv != col) {
                for (int j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(col, j));
                neg = !neg;
            }
            det = det * m.at(col, col);
            T inv = m.at(col, col).inv();
            for (int i = col + 1; i < r_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                T f = m.at(i, col) * inv;
                for (int j = col; j < c_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
            }
        }
        if (neg) det = z_ - det;
        return det;
    }

    /// Inverse using pivots that are units; works over fields and local rings.
    Matrix inverse() const {
        assert(r_ == c_);
        Matrix m = *this;
        Matrix inv = identity(r_, z_);
        for (int col = 0; col < r_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (m.at(i, col).is_unit()) { piv = i; break; }
            if (piv < 0) throw std::domain_error("Matrix: not invertible (no unit pivot)");
            if (piv != col)
                for (int j = 0; j < c_; ++j) {
                    std::swap(m.at(piv, j), m.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            T pi = m.at(col, col).inv();
            for (int j = 0; j < c_; ++j) {
                m.at(col, j) = m.at(col, j) * pi;
                inv.at(col, j) = inv.at(col, j) * pi;
            }
            for (int i = 0; i < r_; ++i) {
                if (i == col || m.at(i, col).is_zero()) continue;
                T f = m.at(i, col);
                for (int j = 0; j < c_; ++j) {
                    m.at(i, j) = m.at(i, j) - f * m.at(col, j);
                    inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    /// Adjugate via cofactors (any commutative ring); adj * A = det(A) * I.
    Matrix adjugate() const {
        assert(r_ == c_);
        Matrix adj(r_, c_, z_);
        if (r_ == 0) return adj;
        if (r_ == 1) {
            adj.at(0, 0) = z_.one_like();
            return adj;
        }
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) {
                Matrix minor(r_ - 1, c_ - 1, z_);
                for (int a = 0, ai = 0; a < r_; ++a) {
                    if (a == i) continue;
                    for (int b = 0, bj = 0; b < c_; ++b) {
                        if (b == j) continue;
                        minor.at(ai, bj) = at(a, b);
                        ++bj;
                    }
                    ++ai;
                }
                T cof = minor.det_cofactor();
                if ((i + j) & 1) cof = z_ - cof;
                adj.at(j, i) = cof;
            }
        return adj;
    }

    /// Cofactor-expansion determinant (any commutative ring; small sizes).
    T det_cofactor() const {
        assert(r_ == c_);
        if (r_ == 0) return z_.one_like();
        if (r_ == 1) return at(0, 0);
        if (r_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        T acc = z_;
        for (int j = 0; j < c_; ++j) {
            if (at(0, j).is_zero()) continue;
            Matrix minor(r_ - 1, c_ - 1, z_);
            for (int a = 1; a < r_; ++a)
                for (int b = 0, bj = 0; b < c_; ++b) {
                    if (b == j) continue;
                    minor.at(a - 1, bj++) = at(a, b);
                }
            T term = at(0, j) * minor.det_cofactor();
            acc = (j & 1) ? acc - term : acc + term;
        }
        return acc;
    }

    /// Kernel basis over a field, as columns.
    std::vector<std::vector<T>> kernel_field() const {
        Matrix m = *this;
        std::vector<int> pivot_of_col(c_, -1);
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int piv = -1;
            for (int i = row; i < r_; ++i)
                if (!m.at(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != row)
                for (int j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(row, j));
            T inv = m.at(row, col).inv();
            for (int j = 0; j < c_; ++j) m.at(row, j) = m.at(row, j) * inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || m.at(i, col).is_zero()) continue;
                T f = m.at(i, col);
                for (int j = 0; j < c_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
            }
            pivot_of_col[col] = row;
            ++row;
        }
        std::vector<std::vector<T>> basis;
        for (int col = 0; col < c_; ++col) {
            if (pivot_of_col[col] >= 0) continue;
            std::vector<T> v(c_, z_);
            v[col] = z_.one_like();
            for (int c2 = 0; c2 < c_; ++c2)
                if (pivot_of_col[c2] >= 0) v[c2] = z_ - m.at(pivot_of_col[c2], col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    int rank_field() const {
        return c_ - (int)kernel_field().size();
    }

    /// Characteristic polynomial det(x*I - A) by fraction-free (Bareiss)
    /// elimination over K[x]; K a field.
    Poly<T> charpoly() const {
        assert(r_ == c_);
        using PT = Poly<T>;
        PT zero_p(z_);
        int n = r_;
        if (n == 0) return PT::constant(z_, z_.one_like());
        Matrix<PT> b(n, n, zero_p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                PT e = PT::constant(z_, z_ - at(i, j));
                if (i == j) e = e + PT::monomial(z_, z_.one_like(), 1);
                b.at(i, j) = e;
            }
        return b.det_bareiss();
    }

    /// Bareiss fraction-free determinant; requires exact_div on T (integral
    /// domain). Used with T = Poly<field>.
    T det_bareiss() const {
        assert(r_ == c_);
        int n = r_;
        if (n == 0) return z_.one_like();
        Matrix m = *this;
        T prev = z_.one_like();
        bool neg = false;
        for (int k = 0; k < n - 1; ++k) {
            if (m.at(k, k).is_zero()) {
                int piv = -1;
                for (int i = k + 1; i < n; ++i)
                    if (!m.at(i, k).is_zero()) { piv = i; break; }
                if (piv < 0) return z_;
                for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
                neg = !neg;
            }
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j) {
                    T v = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                    m.at(i, j) = exact_div_entry(v, prev);
                }
            prev = m.at(k, k);
        }
        T det = m.at(n - 1, n - 1);
        if (neg) det = z_ - det;
        return det;
    }

    /// Minimal polynomial over a field via Krylov iteration.
    Poly<T> minpoly() const;

    /// i-th compound matrix (exterior power on minors), rows/cols indexed by
    /// lexicographically sorted i-subsets.
    Matrix compound(int i) const;

    /// Kronecker product.
    static Matrix kronecker(const Matrix& x, const Matrix& y) {
        Matrix m(x.rows() * y.rows(), x.cols() * y.cols(), x.z_);
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
                for (int k = 0; k < y.rows(); ++k)
                    for (int l = 0; l < y.cols(); ++l)
                        m.at(i * y.rows() + k, j * y.cols() + l) = x.at(i, j) * y.at(k, l);
        return m;
    }

    static Matrix block_diag(const Matrix& x, const Matrix& y) {
        Matrix m(x.rows() + y.rows(), x.cols() + y.cols(), x.z_);
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) m.at(i, j) = x.at(i, j);
        for (int i = 0; i < y.rows(); ++i)
            for (int j = 0; j < y.cols(); ++j) m.at(x.rows() + i, x.cols() + j) = y.at(i, j);
        return m;
    }

private:
    int r_, c_;
    T z_;
    std::vector<T> a_;

    static T exact_div_entry(const T& a, const T& b) {
        if constexpr (requires(const T& x, const T& y) { exact_div(x, y); }) {
            return exact_div(a, b);
        } else {
            return a * b.inv();
        }
    }
};

namespace detail {
void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out);
}

/// Sorted i-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> sorted_subsets(int n, int k);

template <typename T>
Matrix<T> Matrix<T>::compound(int i) const {
    assert(r_ == c_);
    auto subs = sorted_subsets(r_, i);
    Matrix m((int)subs.size(), (int)subs.size(), z_);
    for (size_t a = 0; a < subs.size(); ++a)
        for (size_t b = 0; b < subs.size(); ++b) {
            Matrix minor(i, i, z_);
            for (int x = 0; x < i; ++x)
                for (int y = 0; y < i; ++y) minor.at(x, y) = at(subs[a][x], subs[b][y]);
            m.at((int)a, (int)b) = minor.det_cofactor();
        }
    return m;
}

template <typename T>
Poly<T> Matrix<T>::minpoly() const {
    assert(r_ == c_);
    int n = r_;
    Poly<T> result(z_);
    result = Poly<T>::constant(z_, z_.one_like());
    if (n == 0) return result;
    for (int s = 0; s < n; ++s) {
        // Krylov sequence from e_s; find the first linear dependence
        std::vector<std::vector<T>> vecs;
        std::vector<T> v(n, z_);
        v[s] = z_.one_like();
        for (;;) {
            vecs.push_back(v);
            // solve for dependence: [v0 ... vk] c = 0 with c_k = 1
            int k = (int)vecs.size();
            Matrix sys(n, k, z_);
            for (int col = 0; col < k; ++col)
                for (int row = 0; row < n; ++row) sys.at(row, col) = vecs[col][row];
            auto ker = sys.kernel_field();
            if (!ker.empty()) {
                // kernel vector with a nonzero last coordinate exists exactly
                // when the new vector is dependent; normalize it monic
                std::vector<T> dep;
                for (auto& kv : ker)
                    if (!kv[k - 1].is_zero()) { dep = kv; break; }
                if (!dep.empty()) {
                    T inv = dep[k - 1].inv();
                    std::vector<T> coeffs(k, z_);
                    for (int j = 0; j < k; ++j) coeffs[j] = dep[j] * inv;
                    Poly<T> mp(z_, std::move(coeffs));
                    // lcm accumulate
                    Poly<T> g = poly_gcd(result, mp);
                    result = exact_div(result * mp, g);
                    break;
                }
            }
            // v = A * v
            std::vector<T> w(n, z_);
            for (int i2 = 0; i2 < n; ++i2)
                for (int j = 0; j < n; ++j)
                    if (!at(i2, j).is_zero() && !v[j].is_zero())
                        w[i2] = w[i2] + at(i2, j) * v[j];
            v = std::move(w);
        }
    }
    return result.monic();
}

} // namespace cmot

#endif
