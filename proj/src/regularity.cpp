/**@file   regularity.cpp
 * @brief  Submatrix enumeration, Delta bounds and the model matrices of the lot-sizing and location theorems
 */
#include "deltadb/regularity.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "deltadb/errors.hpp"

namespace deltadb {

std::string_view to_string(DeltaProvenance p) {
    switch (p) {
    case DeltaProvenance::BruteForceMinimal: return "BruteForceMinimal";
    case DeltaProvenance::LowerBound: return "LowerBound";
    case DeltaProvenance::UpperBoundDetSet: return "UpperBoundDetSet";
    case DeltaProvenance::UpperBoundHadamard: return "UpperBoundHadamard";
    case DeltaProvenance::UpperBoundNonSquare: return "UpperBoundNonSquare";
    case DeltaProvenance::TheoremCLS: return "TheoremCLS";
    case DeltaProvenance::TheoremMISL: return "TheoremMISL";
    case DeltaProvenance::TheoremCFL: return "TheoremCFL";
    case DeltaProvenance::UserSupplied: return "UserSupplied";
    }
    return "?";
}

std::string_view to_string(ModelKind k) {
    switch (k) {
    case ModelKind::CLS: return "CLS";
    case ModelKind::MISL: return "MISL";
    case ModelKind::CFL: return "CFL";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (t == "cls")
        return ModelKind::CLS;
    if (t == "misl")
        return ModelKind::MISL;
    if (t == "cfl")
        return ModelKind::CFL;
    throw DomainError("unknown model kind '" + std::string(text) + "' (expected cls, misl or cfl)");
}

namespace {

void require_integral(const RatMatrix& a) {
    if (!a.is_integral())
        throw DomainError("matrix must be integral");
}

struct Support {
    std::vector<std::size_t> rows, cols;
};

Support nonzero_support(const RatMatrix& a) {
    Support s;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) {
                s.rows.push_back(i);
                break;
            }
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (!a(i, j).is_zero()) {
                s.cols.push_back(j);
                break;
            }
    return s;
}

// Advances idx (strictly increasing, values < n) to the next k-combination.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t t = k; t-- > 0;) {
        if (idx[t] < n - k + t) {
            ++idx[t];
            for (std::size_t u = t + 1; u < k; ++u)
                idx[u] = idx[u - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t t = 0; t < k; ++t)
        idx[t] = t;
    return idx;
}

// Fraction-free Gauss-Jordan on [R | I]. On success the left half is d*I and the
// right half is d*R^{-1}; every division is exact. Reports |d| and
// D_R = |d| / gcd(|d|, entries of d*R^{-1}).
class SubmatrixKernel {
public:
    explicit SubmatrixKernel(const RatMatrix& a) : a_(a) {
        small_ok_ = true;
        small_.reserve(a.entries().size());
        for (const auto& e : a.entries()) {
            const mpz_class& num = e.mpq().get_num();
            if (!num.fits_slong_p() || std::abs(num.get_si()) > (1L << 20))
                small_ok_ = false;
            small_.push_back(small_ok_ ? num.get_si() : 0);
        }
    }

    struct Result {
        bool singular = true;
        Integer det_abs;
        Integer d_r;
    };

    Result eval(const std::vector<std::size_t>& rsel, const std::vector<std::size_t>& csel) {
        if (small_ok_) {
            std::int64_t det = 0, dr = 0;
            switch (eval_small(rsel, csel, det, dr)) {
            case Small::Singular: return {};
            case Small::Ok: return {false, Integer(static_cast<long>(det)), Integer(static_cast<long>(dr))};
            case Small::Overflow: break;
            }
        }
        return eval_big(rsel, csel);
    }

private:
    enum class Small { Ok, Singular, Overflow };

    Small eval_small(const std::vector<std::size_t>& rsel, const std::vector<std::size_t>& csel, std::int64_t& det_abs,
                     std::int64_t& dr) {
        const std::size_t k = rsel.size(), w = 2 * k;
        buf_.assign(k * w, 0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                buf_[i * w + j] = small_[rsel[i] * a_.cols() + csel[j]];
            buf_[i * w + k + i] = 1;
        }
        std::int64_t prev = 1;
        for (std::size_t p = 0; p < k; ++p) {
            std::size_t piv = p;
            while (piv < k && buf_[piv * w + p] == 0)
                ++piv;
            if (piv == k)
                return Small::Singular;
            if (piv != p)
                std::swap_ranges(buf_.begin() + static_cast<std::ptrdiff_t>(p * w),
                                 buf_.begin() + static_cast<std::ptrdiff_t>((p + 1) * w),
                                 buf_.begin() + static_cast<std::ptrdiff_t>(piv * w));
            const __int128 app = buf_[p * w + p];
            for (std::size_t i = 0; i < k; ++i) {
                if (i == p)
                    continue;
                const __int128 aip = buf_[i * w + p];
                for (std::size_t j = 0; j < w; ++j) {
                    if (j == p)
                        continue;
                    __int128 v = (app * buf_[i * w + j] - aip * buf_[p * w + j]) / prev;
                    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
                        return Small::Overflow;
                    buf_[i * w + j] = static_cast<std::int64_t>(v);
                }
                buf_[i * w + p] = 0;
            }
            prev = buf_[p * w + p];
        }
        if (prev == std::numeric_limits<std::int64_t>::min())
            return Small::Overflow;
        det_abs = prev < 0 ? -prev : prev;
        std::int64_t g = det_abs;
        for (std::size_t i = 0; i < k && g != 1; ++i)
            for (std::size_t j = k; j < w && g != 1; ++j)
                g = std::gcd(g, buf_[i * w + j]);
        dr = det_abs / g;
        return Small::Ok;
    }

    Result eval_big(const std::vector<std::size_t>& rsel, const std::vector<std::size_t>& csel) const {
        const std::size_t k = rsel.size(), w = 2 * k;
        std::vector<Integer> m(k * w, 0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                m[i * w + j] = a_(rsel[i], csel[j]).num();
            m[i * w + k + i] = 1;
        }
        Integer prev = 1, t;
        for (std::size_t p = 0; p < k; ++p) {
            std::size_t piv = p;
            while (piv < k && m[piv * w + p] == 0)
                ++piv;
            if (piv == k)
                return {};
            if (piv != p)
                for (std::size_t j = 0; j < w; ++j)
                    std::swap(m[p * w + j], m[piv * w + j]);
            for (std::size_t i = 0; i < k; ++i) {
                if (i == p)
                    continue;
                for (std::size_t j = 0; j < w; ++j) {
                    if (j == p)
                        continue;
                    t = m[p * w + p] * m[i * w + j] - m[i * w + p] * m[p * w + j];
                    mpz_divexact(m[i * w + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                m[i * w + p] = 0;
            }
            prev = m[p * w + p];
        }
        Result r;
        r.singular = false;
        r.det_abs = ::abs(prev);
        Integer g = r.det_abs;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = k; j < w; ++j)
                g = deltadb::gcd(g, m[i * w + j]);
        r.d_r = r.det_abs / g;
        return r;
    }

    const RatMatrix& a_;
    bool small_ok_ = false;
    std::vector<std::int64_t> small_;  // row-major copy, valid iff small_ok_
    std::vector<std::int64_t> buf_;
};

// Calls f(result) for every square submatrix on the nonzero support, by ascending size.
template <class F>
void for_each_square_submatrix(const RatMatrix& a, F&& f) {
    const Support s = nonzero_support(a);
    SubmatrixKernel kernel(a);
    const std::size_t kmax = std::min(s.rows.size(), s.cols.size());
    std::vector<std::size_t> rsel, csel;
    for (std::size_t k = 1; k <= kmax; ++k) {
        auto ri = first_combination(k);
        rsel.resize(k);
        csel.resize(k);
        do {
            for (std::size_t t = 0; t < k; ++t)
                rsel[t] = s.rows[ri[t]];
            auto ci = first_combination(k);
            do {
                for (std::size_t t = 0; t < k; ++t)
                    csel[t] = s.cols[ci[t]];
                auto r = kernel.eval(rsel, csel);
                if (!r.singular)
                    f(r);
            } while (next_combination(ci, s.cols.size()));
        } while (next_combination(ri, s.rows.size()));
    }
}

Integer binomial(std::size_t n, std::size_t k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer squared_norm(std::span<const Rational> row) {
    Integer s = 0;
    for (const auto& v : row)
        s += v.num() * v.num();
    return s;
}

}  // namespace

Integer lower_bound_delta(const RatMatrix& a) {
    require_integral(a);
    std::vector<Integer> nz;
    for (const auto& e : a.entries())
        if (!e.is_zero())
            nz.push_back(e.num());
    if (nz.empty())
        throw DomainError("lower_bound_delta: matrix has no nonzero entry");
    return lcm_all(nz);
}

Integer upper_bound_detset(const RatMatrix& a, std::size_t size_cap) {
    require_integral(a);
    if (std::min(a.rows(), a.cols()) > size_cap)
        throw CapExceededError("detset bound: min(m, n) = " + std::to_string(std::min(a.rows(), a.cols())) +
                               " exceeds the size cap " + std::to_string(size_cap) + "; use the Hadamard bound instead");
    Integer out = 1;
    for_each_square_submatrix(a, [&](const SubmatrixKernel::Result& r) { out = lcm(out, r.det_abs); });
    return out;
}

Integer upper_bound_hadamard(const RatMatrix& a) {
    require_integral(a);
    Integer prod = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Integer s = squared_norm(a.row(i));
        if (s > 1)
            prod *= s;
    }
    return lcm_up_to(isqrt(prod));
}

Integer upper_bound_nonsquare(const RatMatrix& a) {
    require_integral(a);
    if (a.is_square())
        throw DomainError("upper_bound_nonsquare: matrix is square; use the detset or Hadamard bound");
    const RatMatrix t = a.rows() >= a.cols() ? a : a.transpose();
    Integer max_sq = 1;
    for (std::size_t i = 0; i < t.rows(); ++i)
        max_sq = std::max(max_sq, squared_norm(t.row(i)));
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), max_sq.get_mpz_t(), t.cols());
    return lcm_up_to(isqrt(power));
}

Integer count_square_submatrices(const RatMatrix& a) {
    const Support s = nonzero_support(a);
    Integer total = 0;
    for (std::size_t k = 1; k <= std::min(s.rows.size(), s.cols.size()); ++k)
        total += binomial(s.rows.size(), k) * binomial(s.cols.size(), k);
    return total;
}

DeltaInfo brute_force_minimal_delta(const RatMatrix& a, std::uint64_t work_cap) {
    require_integral(a);
    const Integer estimate = count_square_submatrices(a);
    if (estimate > Integer(std::to_string(work_cap)))
        throw CapExceededError("brute force: " + estimate.get_str() + " square submatrices exceed the work cap " +
                               std::to_string(work_cap));
    Integer delta = 1;
    for_each_square_submatrix(a, [&](const SubmatrixKernel::Result& r) {
        if (r.d_r.fits_ulong_p())
            mpz_lcm_ui(delta.get_mpz_t(), delta.get_mpz_t(), r.d_r.get_ui());
        else
            delta = lcm(delta, r.d_r);
    });
    return {delta, DeltaProvenance::BruteForceMinimal};
}

DeltaInfo delta_for_model(ModelKind kind, std::span<const Integer> a) {
    if (kind == ModelKind::CLS)
        return {Integer(1), DeltaProvenance::TheoremCLS};
    if (a.empty())
        throw DomainError(std::string(to_string(kind)) + " requires the coefficient vector a");
    for (const auto& v : a)
        if (v < 1)
            throw DomainError(std::string(to_string(kind)) + " coefficients a must be >= 1");
    return {lcm_all(a), kind == ModelKind::MISL ? DeltaProvenance::TheoremMISL : DeltaProvenance::TheoremCFL};
}

RatMatrix build_model_matrix(ModelKind kind, ModelDims dims, std::span<const Integer> a) {
    constexpr std::size_t kMaxEntries = 1'000'000;
    const std::size_t mu = kind == ModelKind::CLS ? 1 : dims.mu, eta = dims.eta;
    if (mu == 0 || eta == 0)
        throw DomainError("build_model_matrix: dimensions must be positive");
    if (kind != ModelKind::CLS && a.size() != mu)
        throw DomainError("build_model_matrix: expected " + std::to_string(mu) + " coefficients a");

    if (kind == ModelKind::CFL) {
        const std::size_t rows = 2 * mu + eta, cols = mu * eta;
        if (rows * cols > kMaxEntries)
            throw DomainError("build_model_matrix: dimensions too large");
        RatMatrix m(rows, cols);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < eta; ++j) {
                m(i, i * eta + j) = 1;
                m(mu + i, i * eta + j) = -1;
                m(2 * mu + j, i * eta + j) = Rational(Integer(-a[i]));
            }
        return m;
    }

    // Per item: eta + 1 stock columns, then eta production columns after all stocks.
    const std::size_t rows = 3 * mu * eta + (kind == ModelKind::MISL ? eta : 0);
    const std::size_t cols = 2 * mu * eta + mu;
    if (rows * cols > kMaxEntries)
        throw DomainError("build_model_matrix: dimensions too large");
    RatMatrix m(rows, cols);
    const std::size_t x0 = mu * (eta + 1);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t t = 0; t < eta; ++t) {
            const std::size_t r = i * eta + t;
            const std::size_t s_prev = i * (eta + 1) + t, s_cur = s_prev + 1, x = x0 + i * eta + t;
            m(r, s_prev) = 1;
            m(r, s_cur) = -1;
            m(r, x) = 1;
            m(mu * eta + r, s_prev) = -1;
            m(mu * eta + r, s_cur) = 1;
            m(mu * eta + r, x) = -1;
            m(2 * mu * eta + r, x) = -1;
            if (kind == ModelKind::MISL)
                m(3 * mu * eta + t, x) = Rational(Integer(-a[i]));
        }
    return m;
}

}  // namespace deltadb
