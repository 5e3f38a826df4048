#pragma once

/**
 * @file maxplus.hpp
 * @brief The max-plus semiring (R u {eps}, max, +) over scalars and dense matrices.
 *
 *   a (+) b = max(a, b)     neutral element eps = -inf
 *   a (x) b = a + b         neutral element e = 0, eps absorbing
 *
 * Matrices follow the usual conventions: [A (+) B]_ij = A_ij (+) B_ij and
 * [A (x) B]_ij = max_p (A_ip + B_pj).  The operators `+` and `*` on Scalar and
 * Matrix are the max-plus ones; named functions `oplus` / `otimes` are
 * provided for call sites where the operator reading would be ambiguous.
 *
 * eps is an explicit tag, never a sentinel double, so eps arithmetic is exact.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropgait/error.hpp"

namespace tropgait {

/// Default tolerance for comparisons of user supplied, non-integer data.
inline constexpr double default_tolerance = 1e-9;

class Scalar {
public:
    /// eps
    constexpr Scalar() noexcept = default;

    /// A finite value; -inf is accepted and mapped to eps.
    constexpr Scalar(double v) noexcept  // NOLINT(google-explicit-constructor)
        : finite_(v != -std::numeric_limits<double>::infinity()), value_(finite_ ? v : 0.0) {}

    static constexpr Scalar epsilon() noexcept { return Scalar{}; }
    static constexpr Scalar unit() noexcept { return Scalar{0.0}; }

    constexpr bool is_finite() const noexcept { return finite_; }
    constexpr bool is_epsilon() const noexcept { return !finite_; }

    /// The real value, -inf for eps.
    constexpr double value() const noexcept {
        return finite_ ? value_ : -std::numeric_limits<double>::infinity();
    }

    friend constexpr bool operator==(const Scalar& a, const Scalar& b) noexcept {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }

    friend constexpr std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) noexcept {
        if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
        return a.value_ <=> b.value_;
    }

private:
    bool finite_ = false;
    double value_ = 0.0;
};

inline constexpr Scalar eps{};
inline constexpr Scalar e{0.0};

constexpr Scalar oplus(Scalar a, Scalar b) noexcept { return a < b ? b : a; }

constexpr Scalar otimes(Scalar a, Scalar b) noexcept {
    if (a.is_epsilon() || b.is_epsilon()) return eps;
    return Scalar{a.value() + b.value()};
}

constexpr Scalar operator+(Scalar a, Scalar b) noexcept { return oplus(a, b); }
constexpr Scalar operator*(Scalar a, Scalar b) noexcept { return otimes(a, b); }

/// x^(r) = r * x in conventional algebra; eps^0 = e, eps^r = eps for r > 0.
inline Scalar mpow_scalar(Scalar x, double r) {
    if (x.is_epsilon()) {
        if (r < 0.0) throw error(errc::negative_power_of_epsilon, "eps has no inverse");
        return r == 0.0 ? e : eps;
    }
    return Scalar{r * x.value()};
}

inline bool approx_equal(Scalar a, Scalar b, double tol = default_tolerance) noexcept {
    if (a.is_epsilon() || b.is_epsilon()) return a.is_epsilon() && b.is_epsilon();
    return std::abs(a.value() - b.value()) <= tol;
}

inline std::string to_string(Scalar s) {
    if (s.is_epsilon()) return "-inf";
    std::ostringstream os;
    os << s.value();
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, Scalar s) { return os << to_string(s); }

/// Dense row-major max-plus matrix.  Column vectors are n x 1 matrices.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, Scalar fill = eps)
        : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<Scalar>> init) : rows_(init.size()) {
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw error(errc::dimension_mismatch, "ragged initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw error(errc::dimension_mismatch, "entry count does not match rows*cols");
    }

    /// Z: all eps.
    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix zeros(std::size_t n) { return Matrix(n, n); }

    /// E_n: e on the diagonal, eps elsewhere.
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = e;
        return m;
    }

    /// All entries e (block-ones).
    static Matrix ones(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, e); }

    static Matrix column(const std::vector<Scalar>& values) {
        return Matrix(values.size(), 1, values);
    }

    static Matrix column(const std::vector<double>& values) {
        return Matrix(values.size(), 1, std::vector<Scalar>(values.begin(), values.end()));
    }

    /// Assemble from a rectangular grid of blocks with consistent sizes.
    static Matrix from_blocks(const std::vector<std::vector<Matrix>>& grid) {
        if (grid.empty()) return {};
        std::size_t rows = 0, cols = 0;
        for (const auto& b : grid.front()) cols += b.cols();
        for (const auto& row : grid) {
            if (row.size() != grid.front().size())
                throw error(errc::dimension_mismatch, "ragged block grid");
            rows += row.front().rows();
        }
        Matrix out(rows, cols);
        std::size_t r0 = 0;
        for (const auto& row : grid) {
            std::size_t c0 = 0;
            for (const auto& b : row) {
                if (b.rows() != row.front().rows())
                    throw error(errc::dimension_mismatch, "block row heights differ");
                out.set_block(r0, c0, b);
                c0 += b.cols();
            }
            if (c0 != cols) throw error(errc::dimension_mismatch, "block column widths differ");
            r0 += row.front().rows();
        }
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    Scalar operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    /// Vector access for n x 1 matrices.
    Scalar operator[](std::size_t i) const { return entries_[i]; }

    const std::vector<Scalar>& entries() const noexcept { return entries_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
        if (r0 + rows > rows_ || c0 + cols > cols_)
            throw error(errc::dimension_mismatch, "block out of range");
        Matrix b(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
            throw error(errc::dimension_mismatch, "block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    bool all_finite() const noexcept {
        return std::all_of(entries_.begin(), entries_.end(), [](Scalar s) { return s.is_finite(); });
    }

    bool all_epsilon() const noexcept {
        return std::all_of(entries_.begin(), entries_.end(), [](Scalar s) { return s.is_epsilon(); });
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw error(errc::dimension_mismatch, what);
}

inline void require_square(const Matrix& a, const char* what) {
    if (!a.is_square()) throw error(errc::not_square, what);
}

}  // namespace detail

inline Matrix oplus(const Matrix& a, const Matrix& b) {
    detail::require_same_shape(a, b, "oplus operands differ in shape");
    std::vector<Scalar> out(a.entries().size());
    std::transform(a.entries().begin(), a.entries().end(), b.entries().begin(), out.begin(),
                   [](Scalar x, Scalar y) { return oplus(x, y); });
    return Matrix(a.rows(), a.cols(), std::move(out));
}

inline Matrix otimes(const Matrix& a, const Matrix& c) {
    if (a.cols() != c.rows()) throw error(errc::dimension_mismatch, "otimes inner dimensions differ");
    Matrix out(a.rows(), c.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t p = 0; p < a.cols(); ++p) {
            const Scalar aip = a(i, p);
            if (aip.is_epsilon()) continue;
            for (std::size_t j = 0; j < c.cols(); ++j) {
                const Scalar cpj = c(p, j);
                if (cpj.is_epsilon()) continue;
                Scalar& acc = out(i, j);
                const double v = aip.value() + cpj.value();
                if (acc.is_epsilon() || acc.value() < v) acc = Scalar{v};
            }
        }
    }
    return out;
}

/// alpha (x) A, entrywise.
inline Matrix otimes(Scalar alpha, const Matrix& a) {
    std::vector<Scalar> out(a.entries().size());
    std::transform(a.entries().begin(), a.entries().end(), out.begin(),
                   [alpha](Scalar x) { return otimes(alpha, x); });
    return Matrix(a.rows(), a.cols(), std::move(out));
}

inline Matrix operator+(const Matrix& a, const Matrix& b) { return oplus(a, b); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return otimes(a, b); }
inline Matrix operator*(Scalar alpha, const Matrix& a) { return otimes(alpha, a); }
inline Matrix operator*(const Matrix& a, Scalar alpha) { return otimes(alpha, a); }

inline Matrix mat_oplus(const Matrix& a, const Matrix& b) { return oplus(a, b); }
inline Matrix mat_otimes(const Matrix& a, const Matrix& c) { return otimes(a, c); }

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol = default_tolerance) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (!approx_equal(a.entries()[k], b.entries()[k], tol)) return false;
    return true;
}

/// A^(p), with A^(0) = I.  Binary exponentiation.
inline Matrix mat_power(const Matrix& a, std::size_t p) {
    detail::require_square(a, "mat_power needs a square matrix");
    Matrix result = Matrix::identity(a.rows());
    Matrix base = a;
    while (p > 0) {
        if (p & 1U) result = result * base;
        p >>= 1U;
        if (p > 0) base = base * base;
    }
    return result;
}

/// True iff A (+) B = A, i.e. A >= B entrywise.
inline bool overcomes(const Matrix& a, const Matrix& b) {
    detail::require_same_shape(a, b, "overcomes operands differ in shape");
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (a.entries()[k] < b.entries()[k]) return false;
    return true;
}

/// Sum of A^(p) for p = 0..n-1, by squaring (I (+) A).  No circuit check.
inline Matrix star_partial_sum(const Matrix& a) {
    detail::require_square(a, "kleene_star needs a square matrix");
    const std::size_t n = a.rows();
    Matrix s = oplus(Matrix::identity(n), a);
    for (std::size_t reach = 1; reach + 1 < n; reach *= 2) s = s * s;
    return s;
}

/// A* = I (+) A (+) A^2 (+) ...  Finite iff no circuit has positive weight.
inline Matrix kleene_star(const Matrix& a) {
    Matrix s = star_partial_sum(a);
    const Matrix plus = a * s;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (plus(i, i) > e)
            throw error(errc::positive_circuit,
                        "circuit through node " + std::to_string(i) + " has positive weight");
    }
    return s;
}

/// Least p0 <= n with A^(p0) = Z, or nullopt when A is not nilpotent.
inline std::optional<std::size_t> is_nilpotent(const Matrix& a) {
    detail::require_square(a, "is_nilpotent needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 0;
    Matrix power = a;
    for (std::size_t p = 1; p <= n; ++p) {
        if (power.all_epsilon()) return p;
        power = power * a;
    }
    return std::nullopt;
}

/// Least solution x = A* (x) b of x = A (x) x (+) b.
inline Matrix solve_affine(const Matrix& a, const Matrix& b) {
    detail::require_square(a, "solve_affine needs a square matrix");
    if (b.rows() != a.rows()) throw error(errc::dimension_mismatch, "right hand side size");
    return kleene_star(a) * b;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "]\n";
    }
    return os;
}

}  // namespace tropgait
