#include "deltadb/lp.hpp"

#include <algorithm>
#include <string>

#include "deltadb/errors.hpp"

namespace deltadb {

std::string_view to_string(Sense s) {
    switch (s) {
    case Sense::Ge: return ">=";
    case Sense::Le: return "<=";
    case Sense::Eq: return "=";
    }
    return "?";
}

Sense parse_sense(std::string_view text) {
    if (text == ">=")
        return Sense::Ge;
    if (text == "<=")
        return Sense::Le;
    if (text == "=" || text == "==")
        return Sense::Eq;
    throw DomainError("unknown sense '" + std::string(text) + "'");
}

std::string_view to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

void LpProblem::add_row(std::span<const Rational> coeffs, Sense sense, Rational value) {
    if (coeffs.size() != num_vars())
        throw DomainError("add_row: coefficient count does not match variable count");
    if (constraints.rows() == 0 && constraints.cols() != num_vars())
        constraints = RatMatrix(0, num_vars());
    constraints.append_row(coeffs);
    senses.push_back(sense);
    rhs.push_back(std::move(value));
}

void LpProblem::validate() const {
    if (constraints.cols() != objective.size() && constraints.rows() > 0)
        throw DomainError("LpProblem: objective length does not match constraint columns");
    if (rhs.size() != constraints.rows())
        throw DomainError("LpProblem: rhs length does not match constraint rows");
    if (senses.size() != constraints.rows())
        throw DomainError("LpProblem: sense count does not match constraint rows");
}

bool LpProblem::is_feasible(std::span<const Rational> z) const {
    if (z.size() != num_vars())
        throw DomainError("is_feasible: point dimension mismatch");
    for (const auto& v : z)
        if (v.sign() < 0)
            return false;
    for (std::size_t i = 0; i < num_rows(); ++i) {
        Rational act = dot(constraints.row(i), z);
        switch (senses[i]) {
        case Sense::Ge: if (act < rhs[i]) return false; break;
        case Sense::Le: if (act > rhs[i]) return false; break;
        case Sense::Eq: if (act != rhs[i]) return false; break;
        }
    }
    return true;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense simplex tableau in canonical form. Column layout: structural
// variables, then slacks, then artificials; the last column is the rhs.
class Tableau {
public:
    explicit Tableau(const LpProblem& p) : n_(p.num_vars()) {
        const std::size_t m = p.num_rows();
        std::size_t slacks = 0;
        for (auto s : p.senses)
            if (s != Sense::Eq)
                ++slacks;

        // Decide per row whether a slack can start basic or an artificial is needed.
        std::vector<int> slack_sign(m, 0);
        std::vector<bool> negate(m, false);
        std::size_t artificials = 0;
        for (std::size_t i = 0; i < m; ++i) {
            negate[i] = p.rhs[i].sign() < 0;
            int s = p.senses[i] == Sense::Ge ? -1 : (p.senses[i] == Sense::Le ? 1 : 0);
            slack_sign[i] = negate[i] ? -s : s;
            if (slack_sign[i] != 1)
                ++artificials;
        }
        first_slack_ = n_;
        first_art_ = n_ + slacks;
        width_ = n_ + slacks + artificials;  // rhs at index width_
        rows_.assign(m, std::vector<mpq_class>(width_ + 1));
        basis_.assign(m, kNone);

        std::size_t slack_col = first_slack_;
        std::size_t art_col = first_art_;
        for (std::size_t i = 0; i < m; ++i) {
            auto& row = rows_[i];
            const int sign = negate[i] ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                const auto& v = p.constraints(i, j);
                if (!v.is_zero())
                    row[j] = sign < 0 ? mpq_class(-v.mpq()) : v.mpq();
            }
            row[width_] = sign < 0 ? mpq_class(-p.rhs[i].mpq()) : p.rhs[i].mpq();
            if (p.senses[i] != Sense::Eq) {
                row[slack_col] = slack_sign[i];
                if (slack_sign[i] == 1)
                    basis_[i] = slack_col;
                ++slack_col;
            }
            if (basis_[i] == kNone) {
                row[art_col] = 1;
                basis_[i] = art_col++;
            }
        }
        allowed_.assign(width_, true);
    }

    // Returns Optimal or Unbounded for the given cost vector over all columns.
    // Dantzig pricing; after kDegenerateRun consecutive degenerate pivots Bland's
    // rule takes over until the objective moves again, which rules out cycling.
    LpStatus optimize(const std::vector<mpq_class>& cost) {
        constexpr std::size_t kDegenerateRun = 20;
        price(cost);
        std::size_t degenerate = 0;
        while (true) {
            const bool bland = degenerate >= kDegenerateRun;
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < width_; ++j) {
                if (!allowed_[j] || sgn(obj_[j]) >= 0)
                    continue;
                if (enter == kNone || (!bland && obj_[j] < obj_[enter]))
                    enter = j;
                if (bland)
                    break;
            }
            if (enter == kNone)
                return LpStatus::Optimal;

            std::size_t leave = kNone;
            mpq_class best;
            mpq_class ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const auto& a = rows_[i][enter];
                if (sgn(a) <= 0)
                    continue;
                ratio = rows_[i][width_] / a;
                if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == kNone)
                return LpStatus::Unbounded;
            degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
    }

    bool solve_phase1() {
        if (first_art_ == width_)
            return true;
        std::vector<mpq_class> cost(width_);
        for (std::size_t j = first_art_; j < width_; ++j)
            cost[j] = 1;
        optimize(cost);
        if (sgn(obj_[width_]) != 0)
            return false;

        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_art_) {
                ++i;
                continue;
            }
            std::size_t col = kNone;
            for (std::size_t j = 0; j < first_art_; ++j) {
                if (sgn(rows_[i][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (col == kNone) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col);
            ++i;
        }
        for (std::size_t j = first_art_; j < width_; ++j)
            allowed_[j] = false;
        return true;
    }

    LpStatus solve_phase2(const LpProblem& p) {
        std::vector<mpq_class> cost(width_);
        for (std::size_t j = 0; j < n_; ++j)
            cost[j] = p.objective[j].mpq();
        return optimize(cost);
    }

    RatVector solution() const {
        RatVector z(n_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < n_)
                z[basis_[i]] = Rational(rows_[i][width_]);
        return z;
    }

private:
    void price(const std::vector<mpq_class>& cost) {
        obj_.assign(width_ + 1, mpq_class(0));
        for (std::size_t j = 0; j < width_; ++j)
            obj_[j] = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& cb = cost[basis_[i]];
            if (sgn(cb) == 0)
                continue;
            for (std::size_t j = 0; j <= width_; ++j)
                if (sgn(rows_[i][j]) != 0)
                    obj_[j] -= cb * rows_[i][j];
        }
    }

    static void eliminate(std::vector<mpq_class>& row, const std::vector<mpq_class>& prow,
                          const std::vector<std::size_t>& nz, std::size_t enter, mpq_class& tmp) {
        mpq_class f = row[enter];
        for (auto j : nz) {
            mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
            mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
        }
        row[enter] = 0;
    }

    void pivot(std::size_t p, std::size_t enter) {
        auto& prow = rows_[p];
        mpq_class inv = 1 / prow[enter];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= width_; ++j) {
            if (sgn(prow[j]) != 0) {
                if (j != enter)
                    prow[j] *= inv;
                nz.push_back(j);
            }
        }
        prow[enter] = 1;
        mpq_class tmp;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != p && sgn(rows_[i][enter]) != 0)
                eliminate(rows_[i], prow, nz, enter, tmp);
        }
        if (sgn(obj_[enter]) != 0)
            eliminate(obj_, prow, nz, enter, tmp);
        basis_[p] = enter;
    }

    std::size_t n_;
    std::size_t first_slack_ = 0;
    std::size_t first_art_ = 0;
    std::size_t width_ = 0;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<mpq_class> obj_;
    std::vector<bool> allowed_;
};

}  // namespace

LpOutcome solve_lp(const LpProblem& p) {
    p.validate();
    Tableau t(p);
    LpOutcome out;
    if (!t.solve_phase1()) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    if (t.solve_phase2(p) == LpStatus::Unbounded) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.solution = t.solution();
    out.value = dot(p.objective, out.solution);
    return out;
}

namespace {

// Advances `idx` to the next k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void check_bounded(const LpProblem& p) {
    // The recession cone {Mz (sense) 0, z >= 0} must be {0}.
    const std::size_t n = p.num_vars();
    LpProblem cone(RatVector(n, Rational(-1)));
    for (std::size_t i = 0; i < p.num_rows(); ++i)
        cone.add_row(p.constraints.row(i), p.senses[i], 0);
    cone.add_row(RatVector(n, Rational(1)), Sense::Le, 1);
    auto res = solve_lp(cone);
    if (res.status == LpStatus::Optimal && res.value.sign() < 0)
        throw UnboundedError();
}

}  // namespace

std::vector<RatVector> enumerate_vertices(const LpProblem& p, std::size_t var_cap) {
    p.validate();
    const std::size_t n = p.num_vars();
    if (n > var_cap)
        throw CapExceededError("enumerate_vertices: " + std::to_string(n) + " variables exceed cap " +
                               std::to_string(var_cap));
    if (solve_lp(LpProblem(p)).status == LpStatus::Infeasible)
        throw InfeasibleError();
    check_bounded(p);

    // Candidate tight hyperplanes: every row, then every bound z_j = 0.
    const std::size_t m = p.num_rows();
    const std::size_t h = m + n;
    std::vector<RatVector> found;
    if (n == 0) {
        found.emplace_back();
        return found;
    }
    if (h < n)
        return found;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    do {
        RatMatrix sys(n, n);
        RatVector b(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (idx[r] < m) {
                for (std::size_t c = 0; c < n; ++c)
                    sys(r, c) = p.constraints(idx[r], c);
                b[r] = p.rhs[idx[r]];
            } else {
                sys(r, idx[r] - m) = 1;
            }
        }
        auto z = solve_linear(sys, b);
        if (z && p.is_feasible(*z))
            found.push_back(std::move(*z));
    } while (next_combination(idx, h));

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace deltadb
