/**@file   generator.cpp
 * @brief  Instance construction and feasibility-driven resampling
 */
#include "deltadb/generator.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "deltadb/bnb.hpp"
#include "deltadb/errors.hpp"

namespace deltadb {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::int64_t draw(IntRange r) {
        const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
        return r.lo + static_cast<std::int64_t>(eng_() % span);
    }

private:
    std::mt19937_64 eng_;
};

void check_range(IntRange r, const char* name, std::int64_t min_lo) {
    if (r.lo > r.hi || r.lo < min_lo)
        throw DomainError(std::string("invalid range for ") + name);
}

Integer ceil_mul(const Rational& f, const Integer& v) { return (f * Rational(v)).ceil(); }

nlohmann::json range_json(IntRange r) { return nlohmann::json::array({r.lo, r.hi}); }

struct Builder {
    DecomposedMip m;
    std::size_t n, l;

    Builder(std::size_t n_, std::size_t l_) : n(n_), l(l_) {
        m.c.assign(n, 0);
        m.d.assign(l, 0);
        m.A = RatMatrix(0, n);
        m.B = RatMatrix(0, l);
    }

    // Row from sparse (index, coefficient) lists; returns its index.
    std::size_t row(const std::vector<std::pair<std::size_t, std::int64_t>>& xs,
                    const std::vector<std::pair<std::size_t, std::int64_t>>& ys, Sense s, std::int64_t rhs) {
        RatVector ax(n), by(l);
        for (auto [j, v] : xs)
            ax[j] = v;
        for (auto [j, v] : ys)
            by[j] = v;
        m.A.append_row(ax);
        m.B.append_row(by);
        m.senses.push_back(s);
        m.g.emplace_back(static_cast<long>(rhs));
        return m.g.size() - 1;
    }
};

DecomposedMip draw_lot_sizing(const GenSpec& spec, Rng& rng, std::vector<std::int64_t>& a) {
    const bool misl = spec.model == ModelKind::MISL;
    const std::size_t mu = misl ? spec.mu : 1, eta = spec.eta;
    Builder bld(2 * mu * eta, mu * eta);
    auto s_col = [&](std::size_t i, std::size_t t) { return i * 2 * eta + t; };  // s_{t+1}
    auto x_col = [&](std::size_t i, std::size_t t) { return i * 2 * eta + eta + t; };
    auto y_col = [&](std::size_t i, std::size_t t) { return i * eta + t; };

    a.clear();
    std::vector<std::int64_t> b(mu);
    std::vector<std::vector<std::int64_t>> dem(mu, std::vector<std::int64_t>(eta));
    for (std::size_t i = 0; i < mu; ++i) {
        if (misl) {
            a.push_back(rng.draw(spec.a));
            b[i] = rng.draw(spec.b);
        }
        for (std::size_t t = 0; t < eta; ++t)
            dem[i][t] = rng.draw(spec.d);
    }
    for (std::size_t i = 0; i < mu; ++i) {
        Block blk;
        const std::int64_t dmax = *std::max_element(dem[i].begin(), dem[i].end());
        const std::int64_t dsum = std::accumulate(dem[i].begin(), dem[i].end(), std::int64_t{0});
        for (std::size_t t = 0; t < eta; ++t) {
            bld.m.c[s_col(i, t)] = rng.draw(spec.h);
            bld.m.c[x_col(i, t)] = rng.draw(spec.p);
            bld.m.d[y_col(i, t)] = rng.draw(spec.q);
            const std::int64_t cap = rng.draw({dmax, 2 * dsum});
            std::vector<std::pair<std::size_t, std::int64_t>> flow{{s_col(i, t), -1}, {x_col(i, t), 1}};
            if (t > 0)
                flow.push_back({s_col(i, t - 1), 1});
            blk.rows.push_back(bld.row(flow, {}, Sense::Eq, dem[i][t]));
            blk.rows.push_back(bld.row({{x_col(i, t), 1}}, {{y_col(i, t), -cap}}, Sense::Le, 0));
            blk.rows.push_back(bld.row({}, {{y_col(i, t), 1}}, Sense::Le, 1));
        }
        for (std::size_t t = 0; t < eta; ++t)
            blk.x_cols.push_back(s_col(i, t));
        for (std::size_t t = 0; t < eta; ++t)
            blk.x_cols.push_back(x_col(i, t));
        for (std::size_t t = 0; t < eta; ++t)
            blk.y_cols.push_back(y_col(i, t));
        bld.m.blocks.push_back(std::move(blk));
    }
    if (misl) {
        Integer peak = 0;
        for (std::size_t t = 0; t < eta; ++t) {
            Integer use = 0;
            for (std::size_t i = 0; i < mu; ++i)
                use += Integer(static_cast<long>(a[i] * dem[i][t]));
            peak = std::max(peak, use);
        }
        const Integer r = ceil_mul(spec.resource_factor, peak);
        for (std::size_t t = 0; t < eta; ++t) {
            std::vector<std::pair<std::size_t, std::int64_t>> xs, ys;
            for (std::size_t i = 0; i < mu; ++i) {
                xs.push_back({x_col(i, t), a[i]});
                ys.push_back({y_col(i, t), b[i]});
            }
            bld.m.linking_rows.push_back(bld.row(xs, ys, Sense::Le, r.get_si()));
        }
        bld.m.meta["b"] = b;
    }
    bld.m.meta["demand"] = dem;
    return std::move(bld.m);
}

DecomposedMip draw_facility_location(const GenSpec& spec, Rng& rng, std::vector<std::int64_t>& a) {
    const std::size_t mu = spec.mu, eta = spec.eta;
    Builder bld(mu * eta, eta);
    a.clear();
    for (std::size_t i = 0; i < mu; ++i)
        a.push_back(rng.draw(spec.a));
    const std::int64_t asum = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const std::int64_t amax = *std::max_element(a.begin(), a.end());
    const Integer total = ceil_mul(spec.capacity_factor, Integer(static_cast<long>(asum)));
    const std::int64_t base = std::max<std::int64_t>((total.get_si() + static_cast<std::int64_t>(eta) - 1) /
                                                         static_cast<std::int64_t>(eta),
                                                     amax);
    std::vector<std::int64_t> r(eta);
    for (std::size_t j = 0; j < eta; ++j) {
        r[j] = base + rng.draw({0, amax});
        bld.m.d[j] = rng.draw(spec.fixed);
    }
    for (std::size_t i = 0; i < mu; ++i) {
        Block blk;
        std::vector<std::pair<std::size_t, std::int64_t>> xs;
        for (std::size_t j = 0; j < eta; ++j) {
            bld.m.c[i * eta + j] = rng.draw(spec.transport);
            xs.push_back({i * eta + j, 1});
            blk.x_cols.push_back(i * eta + j);
        }
        blk.rows.push_back(bld.row(xs, {}, Sense::Eq, 1));
        bld.m.blocks.push_back(std::move(blk));
    }
    Block yblk;
    {
        std::vector<std::pair<std::size_t, std::int64_t>> ys;
        for (std::size_t j = 0; j < eta; ++j) {
            ys.push_back({j, r[j]});
            yblk.y_cols.push_back(j);
        }
        yblk.rows.push_back(bld.row({}, ys, Sense::Ge, asum));
        for (std::size_t j = 0; j < eta; ++j)
            yblk.rows.push_back(bld.row({}, {{j, 1}}, Sense::Le, 1));
    }
    bld.m.blocks.push_back(std::move(yblk));
    for (std::size_t j = 0; j < eta; ++j) {
        std::vector<std::pair<std::size_t, std::int64_t>> xs;
        for (std::size_t i = 0; i < mu; ++i)
            xs.push_back({i * eta + j, a[i]});
        bld.m.linking_rows.push_back(bld.row(xs, {{j, -r[j]}}, Sense::Le, 0));
    }
    // Partial Fisher-Yates: the first floor(mu/2) entries are the single-sourced clients.
    std::vector<std::size_t> clients(mu);
    std::iota(clients.begin(), clients.end(), 0);
    const std::size_t single = mu / 2;
    for (std::size_t k = 0; k < single; ++k) {
        const auto pick = static_cast<std::size_t>(rng.draw({static_cast<std::int64_t>(k), static_cast<std::int64_t>(mu - 1)}));
        std::swap(clients[k], clients[pick]);
    }
    std::vector<std::size_t> chosen(clients.begin(), clients.begin() + static_cast<std::ptrdiff_t>(single));
    std::sort(chosen.begin(), chosen.end());
    for (auto i : chosen)
        for (std::size_t j = 0; j < eta; ++j)
            bld.m.integer_x.push_back(i * eta + j);
    bld.m.meta["single_sourced"] = chosen;
    bld.m.meta["capacity"] = r;
    return std::move(bld.m);
}

bool probe_feasible(const DecomposedMip& m, const GenSpec& spec) {
    LpProblem p = m.lp_relaxation();
    for (auto& v : p.objective)
        v = 0;
    const auto cols = m.integer_columns();
    MipOutcome out = solve_mip(p, cols, {spec.probe_node_limit, 3600.0});
    return out.status == MipStatus::Optimal;
}

}  // namespace

DecomposedMip generate(const GenSpec& spec) {
    if (spec.mu == 0 || spec.eta == 0)
        throw DomainError("generate: mu and eta must be positive");
    check_range(spec.a, "a", 1);
    check_range(spec.b, "b", 0);
    check_range(spec.h, "h", 0);
    check_range(spec.p, "p", 0);
    check_range(spec.q, "q", 0);
    check_range(spec.d, "d", 0);
    check_range(spec.transport, "transport", 0);
    check_range(spec.fixed, "fixed", 0);
    if (spec.resource_factor.sign() <= 0 || spec.capacity_factor.sign() <= 0)
        throw DomainError("generate: capacity factors must be positive");

    Rng rng(spec.seed);
    const std::string kind(to_string(spec.model));
    std::string lower = kind;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    const std::size_t mu = spec.model == ModelKind::CLS ? 1 : spec.mu;

    for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
        std::vector<std::int64_t> a;
        DecomposedMip m = spec.model == ModelKind::CFL ? draw_facility_location(spec, rng, a)
                                                        : draw_lot_sizing(spec, rng, a);
        m.name = lower + "-" + std::to_string(mu) + "x" + std::to_string(spec.eta) + "-s" + std::to_string(spec.seed);
        std::vector<Integer> a_int;
        for (auto v : a)
            a_int.emplace_back(static_cast<long>(v));
        m.delta = delta_for_model(spec.model, a_int).delta;
        m.meta["model"] = kind;
        m.meta["seed"] = spec.seed;
        m.meta["mu"] = mu;
        m.meta["eta"] = spec.eta;
        m.meta["attempt"] = attempt;
        if (spec.model != ModelKind::CLS)
            m.meta["a"] = a;
        nlohmann::json ranges = nlohmann::json::object();
        if (spec.model == ModelKind::CFL) {
            ranges["a"] = range_json(spec.a);
            ranges["transport"] = range_json(spec.transport);
            ranges["fixed"] = range_json(spec.fixed);
            ranges["capacity_factor"] = spec.capacity_factor.str();
        } else {
            if (spec.model == ModelKind::MISL) {
                ranges["a"] = range_json(spec.a);
                ranges["b"] = range_json(spec.b);
                ranges["resource_factor"] = spec.resource_factor.str();
            }
            ranges["h"] = range_json(spec.h);
            ranges["p"] = range_json(spec.p);
            ranges["q"] = range_json(spec.q);
            ranges["d"] = range_json(spec.d);
        }
        m.meta["ranges"] = ranges;
        m.validate();
        if (probe_feasible(m, spec))
            return m;
    }
    throw std::runtime_error("generate: no feasible instance after " + std::to_string(spec.max_retries) +
                             " draws; loosen the capacities (resource_factor / capacity_factor)");
}

}  // namespace deltadb
