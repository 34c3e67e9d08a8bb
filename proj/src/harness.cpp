/**@file   harness.cpp
 * @brief  Oracle solves, run classification and CSV reports
 */
#include "deltadb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "deltadb/errors.hpp"

namespace deltadb {

std::string_view to_string(RunState s) {
    switch (s) {
    case RunState::TimeLimit: return "timelimit";
    case RunState::FinishedOpt: return "finished_opt";
    case RunState::FinishedNoSol: return "finished_nosol";
    case RunState::FinishedSubopt: return "finished_subopt";
    }
    return "?";
}

RunState classify(const SolveReport& report, const Rational& oracle_value) {
    switch (report.state) {
    case DbState::TimeLimit:
    case DbState::NodeLimit: return RunState::TimeLimit;
    case DbState::FinishedNoSol: return RunState::FinishedNoSol;
    case DbState::FinishedOpt: break;
    }
    if (!report.value)
        throw InvariantViolation("finished_opt has an incumbent", "no value reported");
    if (*report.value < oracle_value)
        throw InvariantViolation("incumbent not below the optimum",
                                 "value " + report.value->str() + " < oracle " + oracle_value.str());
    return *report.value == oracle_value ? RunState::FinishedOpt : RunState::FinishedSubopt;
}

Experiment run_experiment(const std::vector<NamedInstance>& instances, const std::vector<DbConfig>& variants,
                          const MipLimits& oracle_limits) {
    Experiment e;
    for (const auto& v : variants)
        e.summary.variants.push_back(variant_label(v));
    for (const auto& label : e.summary.variants)
        for (auto s : {RunState::FinishedOpt, RunState::FinishedSubopt, RunState::FinishedNoSol, RunState::TimeLimit})
            e.summary.counts[label][s] = 0;

    for (const auto& inst : instances) {
        MipOutcome oracle;
        try {
            oracle = solve_mip(inst.mip.lp_relaxation(), inst.mip.integer_columns(), oracle_limits);
        } catch (const std::exception& ex) {
            e.summary.excluded.push_back(inst.id + ": oracle error: " + ex.what());
            continue;
        }
        if (oracle.status != MipStatus::Optimal) {
            e.summary.excluded.push_back(inst.id + ": oracle " + std::string(to_string(oracle.status)));
            continue;
        }
        for (std::size_t k = 0; k < variants.size(); ++k) {
            const SolveReport rep = solve_db(inst.mip, variants[k]);
            RunRecord r;
            r.instance = inst.id;
            r.variant = e.summary.variants[k];
            r.state = classify(rep, *oracle.value);
            r.value = rep.value;
            r.oracle_value = *oracle.value;
            r.nodes = rep.nodes;
            r.time_sec = rep.wall_time;
            ++e.summary.counts[r.variant][r.state];
            e.records.push_back(std::move(r));
        }
    }
    return e;
}

std::vector<NamedInstance> load_instance_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("not a directory: '" + dir.string() + "'");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".dmip")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<NamedInstance> out;
    for (const auto& f : files)
        out.push_back({f.stem().string(), load(f)});
    return out;
}

std::vector<DbConfig> parse_variants(const std::string& spec, std::uint64_t node_limit, double time_limit) {
    std::vector<DbConfig> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        DbConfig cfg;
        cfg.node_limit = node_limit;
        cfg.time_limit = time_limit;
        const auto colon = item.find(':');
        const std::string head = item.substr(0, colon);
        const std::string arg = colon == std::string::npos ? "" : item.substr(colon + 1);
        if (head == "delta") {
            DeltaDB d;
            if (!arg.empty() && arg != "auto")
                d.delta = parse_integer(arg);
            cfg.variant = d;
        } else if (head == "eps") {
            if (arg.empty())
                throw DomainError("variant 'eps' needs a value, e.g. eps:1/10");
            const Rational eps = Rational::parse(arg);
            if (eps.sign() <= 0)
                throw DomainError("epsilon must be positive");
            cfg.variant = EpsilonDB{eps};
        } else {
            throw DomainError("unknown variant '" + item + "' (expected delta[:N|auto] or eps:RAT)");
        }
        out.push_back(cfg);
    }
    return out;
}

std::string records_csv(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << "instance,variant,state,value,oracle_value,nodes,time_sec\n";
    for (const auto& r : records)
        os << r.instance << ',' << r.variant << ',' << to_string(r.state) << ',' << (r.value ? r.value->str() : "")
           << ',' << r.oracle_value.str() << ',' << r.nodes << ',' << std::fixed << std::setprecision(3) << r.time_sec
           << std::defaultfloat << '\n';
    return os.str();
}

std::string scatter_csv(const Experiment& e) {
    std::ostringstream os;
    os << "instance";
    for (const auto& v : e.summary.variants)
        os << ',' << v << "_nodes," << v << "_state";
    os << '\n';
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, const RunRecord*>> by;
    for (const auto& r : e.records) {
        if (by.find(r.instance) == by.end())
            order.push_back(r.instance);
        by[r.instance][r.variant] = &r;
    }
    for (const auto& inst : order) {
        os << inst;
        for (const auto& v : e.summary.variants) {
            auto it = by[inst].find(v);
            if (it == by[inst].end())
                os << ",,";
            else
                os << ',' << it->second->nodes << ',' << to_string(it->second->state);
        }
        os << '\n';
    }
    return os.str();
}

std::string summary_table(const ExperimentSummary& s) {
    const RunState states[] = {RunState::FinishedOpt, RunState::FinishedSubopt, RunState::FinishedNoSol,
                               RunState::TimeLimit};
    std::size_t width = 8;
    for (const auto& v : s.variants)
        width = std::max(width, v.size() + 2);
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "variant";
    for (auto st : states)
        os << std::right << std::setw(17) << to_string(st);
    os << '\n';
    for (const auto& v : s.variants) {
        os << std::left << std::setw(static_cast<int>(width)) << v;
        for (auto st : states)
            os << std::right << std::setw(17) << s.counts.at(v).at(st);
        os << '\n';
    }
    if (!s.excluded.empty())
        os << "excluded: " << s.excluded.size() << '\n';
    return os.str();
}

std::optional<double> geometric_mean_node_ratio(const std::vector<RunRecord>& records, const std::string& variant_a,
                                                const std::string& variant_b) {
    std::map<std::string, const RunRecord*> a, b;
    for (const auto& r : records) {
        if (r.state == RunState::TimeLimit)
            continue;
        if (r.variant == variant_a)
            a[r.instance] = &r;
        else if (r.variant == variant_b)
            b[r.instance] = &r;
    }
    double log_sum = 0.0;
    std::size_t count = 0;
    for (const auto& [inst, ra] : a) {
        auto it = b.find(inst);
        if (it == b.end())
            continue;
        log_sum += std::log(static_cast<double>(ra->nodes)) - std::log(static_cast<double>(it->second->nodes));
        ++count;
    }
    if (count == 0)
        return std::nullopt;
    return std::exp(log_sum / static_cast<double>(count));
}

}  // namespace deltadb
