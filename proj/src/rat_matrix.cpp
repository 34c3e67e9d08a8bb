#include "deltadb/rat_matrix.hpp"

#include <utility>

#include "deltadb/errors.hpp"

namespace deltadb {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw DomainError("RatMatrix: entry count does not match rows x cols");
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    RatMatrix m(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw DomainError("RatMatrix: ragged rows");
        std::size_t c = 0;
        for (const auto& v : row)
            m(r, c++) = v;
        ++r;
    }
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DomainError("RatMatrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    RatMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r) {
        if (row_idx[r] >= rows_)
            throw DomainError("submatrix: row index out of range");
        for (std::size_t c = 0; c < col_idx.size(); ++c) {
            if (col_idx[c] >= cols_)
                throw DomainError("submatrix: column index out of range");
            s(r, c) = (*this)(row_idx[r], col_idx[c]);
        }
    }
    return s;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void RatMatrix::append_row(std::span<const Rational> values) {
    if (rows_ == 0 && cols_ == 0)
        cols_ = values.size();
    if (values.size() != cols_)
        throw DomainError("append_row: length mismatch");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
}

bool RatMatrix::is_integral() const {
    for (const auto& v : entries_)
        if (!v.is_integer())
            return false;
    return true;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : entries_)
        if (!v.is_zero())
            return false;
    return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DomainError("matrix product: dimension mismatch");
    RatMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                p(i, j) += aik * b(k, j);
        }
    }
    return p;
}

namespace {

Rational det_bareiss(const RatMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<Integer> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = m(i, j).num();
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0)
                ++p;
            if (p == n)
                return Rational(0);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    Integer d = n == 0 ? Integer(1) : at(n - 1, n - 1);
    return Rational(sign < 0 ? Integer(-d) : d);
}

Rational det_gauss(const RatMatrix& m) {
    const std::size_t n = m.rows();
    RatMatrix a = m;
    Rational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k).is_zero())
            ++p;
        if (p == n)
            return Rational(0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero())
                continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

}  // namespace

Rational det(const RatMatrix& m) {
    if (!m.is_square())
        throw DomainError("det: matrix is not square");
    return m.is_integral() ? det_bareiss(m) : det_gauss(m);
}

RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square())
        throw DomainError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k).is_zero())
            ++p;
        if (p == n)
            throw SingularMatrixError();
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        }
        Rational piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero())
                continue;
            Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Integer denominator_lcm(const RatMatrix& m) {
    Integer acc = 1;
    for (const auto& v : m.entries())
        acc = lcm(acc, v.den());
    return acc;
}

std::optional<RatVector> solve_linear(const RatMatrix& m, std::span<const Rational> b) {
    if (!m.is_square() || b.size() != m.rows())
        throw DomainError("solve_linear: dimension mismatch");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatVector x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k).is_zero())
            ++p;
        if (p == n)
            return std::nullopt;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            std::swap(x[k], x[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero())
                continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        Rational s = x[k];
        for (std::size_t j = k + 1; j < n; ++j)
            s -= a(k, j) * x[j];
        x[k] = s / a(k, k);
    }
    return x;
}

}  // namespace deltadb
