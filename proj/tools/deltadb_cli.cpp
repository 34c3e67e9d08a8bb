/**@file   deltadb_cli.cpp
 * @brief  Command line: generate, solve, regularity, experiment
 *
 * Exit codes: 0 success, 1 usage error, 2 runtime error.
 */
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "deltadb/bnb.hpp"
#include "deltadb/decbranch.hpp"
#include "deltadb/errors.hpp"
#include "deltadb/generator.hpp"
#include "deltadb/harness.hpp"
#include "deltadb/model.hpp"
#include "deltadb/regularity.hpp"

using namespace deltadb;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join(const RatVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + v[i].str();
    return out;
}

json to_json(const RatVector& v) {
    json arr = json::array();
    for (const auto& e : v)
        arr.push_back(e.str());
    return arr;
}

std::string format_time(double t) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << t;
    return os.str();
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string model = "misl";
    std::size_t items = 2, periods = 3, clients = 6, facilities = 2;
    std::uint64_t seed = 1;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    GenSpec spec;
    spec.model = parse_model_kind(a.model);
    spec.seed = a.seed;
    if (spec.model == ModelKind::CFL) {
        spec.mu = a.clients;
        spec.eta = a.facilities;
    } else {
        spec.mu = a.items;
        spec.eta = a.periods;
    }
    const DecomposedMip m = generate(spec);
    store(m, a.out);
    std::cout << a.out << '\n';
    return 0;
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
    std::string path;
    std::string variant = "delta";
    std::string epsilon = "1/10";
    std::string delta = "auto";
    std::uint64_t node_limit = 100'000;
    double time_limit = 60.0;
    bool trace = false;
    bool json_out = false;
};

int run_solve(const SolveArgs& a) {
    const DecomposedMip m = load(a.path);
    json out = json::object();
    std::string state, label;
    std::optional<Rational> value;
    std::optional<RatVector> incumbent;
    std::uint64_t nodes = 0;
    double time_sec = 0.0;
    std::vector<std::string> trace;

    if (a.variant == "baseline") {
        const auto start = std::chrono::steady_clock::now();
        const MipOutcome mo = solve_mip(m.lp_relaxation(), m.integer_columns(), {a.node_limit, a.time_limit});
        time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        switch (mo.status) {
        case MipStatus::Optimal: state = "finished_opt"; break;
        case MipStatus::Infeasible: state = "finished_nosol"; break;
        case MipStatus::NodeLimit: state = "nodelimit"; break;
        case MipStatus::TimeLimit: state = "timelimit"; break;
        }
        label = "baseline";
        value = mo.value;
        incumbent = mo.incumbent;
        nodes = mo.nodes;
    } else {
        DbConfig cfg;
        cfg.node_limit = a.node_limit;
        cfg.time_limit = a.time_limit;
        cfg.trace = a.trace;
        if (a.variant == "delta") {
            DeltaDB d;
            if (a.delta != "auto")
                d.delta = parse_integer(a.delta);
            cfg.variant = d;
        } else if (a.variant == "eps") {
            cfg.variant = EpsilonDB{Rational::parse(a.epsilon)};
        } else {
            throw UsageError("--variant must be delta, eps or baseline");
        }
        const SolveReport r = solve_db(m, cfg);
        state = std::string(to_string(r.state));
        label = variant_label(cfg);
        value = r.value;
        incumbent = r.incumbent;
        nodes = r.nodes;
        time_sec = r.wall_time;
        if (r.delta)
            out["delta"] = r.delta->delta.get_str();
        for (const auto& e : r.trace)
            trace.push_back(e.line());
    }

    if (a.json_out) {
        out["state"] = state;
        out["value"] = value ? json(value->str()) : json(nullptr);
        out["nodes"] = nodes;
        out["time_sec"] = time_sec;
        out["variant"] = label;
        out["incumbent"] = incumbent ? to_json(*incumbent) : json(nullptr);
        if (!out.contains("delta"))
            out["delta"] = nullptr;
        if (a.trace)
            out["trace"] = trace;
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    for (const auto& line : trace)
        std::cout << line << '\n';
    std::cout << "state " << state << '\n'
              << "value " << (value ? value->str() : "-") << '\n'
              << "nodes " << nodes << '\n'
              << "time_sec " << format_time(time_sec) << '\n'
              << "variant " << label << '\n';
    if (out.contains("delta"))
        std::cout << "delta " << out["delta"].get<std::string>() << '\n';
    if (incumbent)
        std::cout << "incumbent " << join(*incumbent) << '\n';
    return 0;
}

// --- regularity -------------------------------------------------------------

struct RegularityArgs {
    std::string path;
    std::string method = "brute";
    std::uint64_t cap = kBruteForceWorkCap;
    std::size_t size_cap = kDetSetSizeCap;
    std::string model;
    std::vector<long> a;
};

int run_regularity(const RegularityArgs& r) {
    if (r.method == "theorem") {
        std::string model = r.model;
        std::vector<Integer> a;
        for (auto v : r.a)
            a.emplace_back(v);
        if (model.empty()) {
            const DecomposedMip m = load(r.path);
            if (!m.meta.contains("model") || !m.meta["model"].is_string())
                throw DomainError("instance has no meta.model; pass --model");
            model = m.meta["model"].get<std::string>();
            if (a.empty() && m.meta.contains("a"))
                for (const auto& v : m.meta["a"])
                    a.emplace_back(static_cast<long>(v.get<std::int64_t>()));
        }
        const DeltaInfo info = delta_for_model(parse_model_kind(model), a);
        std::cout << info.delta.get_str() << '\n';
        return 0;
    }
    const RatMatrix mat = load_matrix(r.path);
    if (r.method == "brute") {
        std::cout << brute_force_minimal_delta(mat, r.cap).delta.get_str() << '\n';
        return 0;
    }
    if (r.method == "bounds") {
        std::cout << "lower " << lower_bound_delta(mat).get_str() << '\n';
        try {
            std::cout << "detset " << upper_bound_detset(mat, r.size_cap).get_str() << '\n';
        } catch (const CapExceededError&) {
            std::cout << "detset n/a\n";
        }
        std::cout << "hadamard " << upper_bound_hadamard(mat).get_str() << '\n';
        if (!mat.is_square())
            std::cout << "nonsquare " << upper_bound_nonsquare(mat).get_str() << '\n';
        return 0;
    }
    throw UsageError("--method must be brute, bounds or theorem");
}

// --- experiment -------------------------------------------------------------

struct ExperimentArgs {
    std::string dir;
    std::string variants = "delta,eps:1/10";
    std::string out;
    std::string scatter;
    std::uint64_t node_limit = 100'000;
    double time_limit = 60.0;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    const auto instances = load_instance_dir(a.dir);
    const auto variants = parse_variants(a.variants, a.node_limit, a.time_limit);
    const Experiment e = run_experiment(instances, variants);
    write_file(a.out, records_csv(e.records));
    if (!a.scatter.empty())
        write_file(a.scatter, scatter_csv(e));
    std::cout << summary_table(e.summary);
    for (const auto& x : e.summary.excluded)
        std::cout << "excluded " << x << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Decomposition Branching with lattice rounding"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate a seeded MISL, CFL or CLS instance");
    g->add_option("--model", gen.model, "misl, cfl or cls")->check(CLI::IsMember({"misl", "cfl", "cls"}, CLI::ignore_case));
    g->add_option("--items", gen.items, "MISL/CLS items")->check(CLI::PositiveNumber);
    g->add_option("--periods", gen.periods, "MISL/CLS periods")->check(CLI::PositiveNumber);
    g->add_option("--clients", gen.clients, "CFL clients")->check(CLI::PositiveNumber);
    g->add_option("--facilities", gen.facilities, "CFL facilities")->check(CLI::PositiveNumber);
    g->add_option("--seed", gen.seed, "64-bit seed");
    g->add_option("--out", gen.out, "Output instance file")->required();

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Solve an instance");
    s->add_option("path", sol.path, "Instance file")->required();
    s->add_option("--variant", sol.variant, "delta, eps or baseline")
        ->check(CLI::IsMember({"delta", "eps", "baseline"}));
    s->add_option("--epsilon", sol.epsilon, "Exact rational epsilon for --variant eps");
    s->add_option("--delta", sol.delta, "auto or a positive integer");
    s->add_option("--node-limit", sol.node_limit);
    s->add_option("--time-limit", sol.time_limit, "Seconds");
    s->add_flag("--trace", sol.trace, "Print one line per node");
    s->add_flag("--json", sol.json_out, "JSON report");

    RegularityArgs reg;
    auto* r = app.add_subcommand("regularity", "Minimal Delta-regularity of a matrix or instance");
    r->add_option("path", reg.path, "Matrix (.mat) or instance (.dmip) file");
    r->add_option("--method", reg.method, "brute, bounds or theorem")
        ->check(CLI::IsMember({"brute", "bounds", "theorem"}));
    r->add_option("--cap", reg.cap, "Brute-force submatrix cap");
    r->add_option("--size-cap", reg.size_cap, "Largest min(m, n) for the detset bound");
    r->add_option("--model", reg.model, "Model kind for --method theorem");
    r->add_option("--a", reg.a, "Coefficients a for --method theorem")->delimiter(',');

    ExperimentArgs exp;
    auto* x = app.add_subcommand("experiment", "Run variants on all instances of a directory");
    x->add_option("--dir", exp.dir, "Directory of .dmip files")->required();
    x->add_option("--variants", exp.variants, "e.g. delta,eps:1/10,eps:1/10000");
    x->add_option("--out", exp.out, "Records CSV")->required();
    x->add_option("--scatter", exp.scatter, "Node-count CSV, one row per instance");
    x->add_option("--node-limit", exp.node_limit);
    x->add_option("--time-limit", exp.time_limit, "Seconds per run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*g)
            return run_generate(gen);
        if (*s)
            return run_solve(sol);
        if (*r) {
            if (reg.path.empty() && reg.method != "theorem")
                throw UsageError("regularity needs a matrix file");
            if (reg.path.empty() && reg.model.empty())
                throw UsageError("--method theorem needs a path or --model");
            return run_regularity(reg);
        }
        return run_experiment_cmd(exp);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n' << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
