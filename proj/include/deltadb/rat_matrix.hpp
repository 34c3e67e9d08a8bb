/**@file   rat_matrix.hpp
 * @brief  Dense row-major rational matrices with exact determinant and inverse
 */
#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "deltadb/rational.hpp"

namespace deltadb {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    /// Literal construction, e.g. RatMatrix::from_rows({{1, 1}, {-1, 4}}).
    static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
    static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    const std::vector<Rational>& entries() const { return entries_; }

    RatMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    RatMatrix transpose() const;
    void append_row(std::span<const Rational> values);

    bool is_integral() const;
    bool is_zero() const;

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

/// Exact determinant. Fraction-free Bareiss elimination for integral input,
/// exact rational Gaussian elimination otherwise. Throws DomainError if not square.
Rational det(const RatMatrix& m);

/// Exact inverse. Throws DomainError if not square, SingularMatrixError if singular.
RatMatrix inverse(const RatMatrix& m);

/// Least D >= 1 such that D * m is integral.
Integer denominator_lcm(const RatMatrix& m);

/// Solves m * x = b for square nonsingular m; nullopt if singular.
std::optional<RatVector> solve_linear(const RatMatrix& m, std::span<const Rational> b);

}  // namespace deltadb
