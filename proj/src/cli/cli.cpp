#include "repfam/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "repfam/bench.hpp"
#include "repfam/bounds.hpp"
#include "repfam/errors.hpp"
#include "repfam/family_io.hpp"
#include "repfam/kpath.hpp"
#include "repfam/ktree.hpp"
#include "repfam/pcover.hpp"
#include "repfam/report.hpp"
#include "repfam/representation.hpp"

namespace repfam {

namespace {

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct SolverFlags {
    double c = 1.447;
    std::string strategy = "verified";
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool debug_verify = false;
    std::size_t skip_threshold = 0;
    CLI::Option* skip_option = nullptr;
    std::size_t max_attempts = 64;
};

void add_solver_flags(CLI::App* sub, SolverFlags& flags) {
    sub->add_option("--c", flags.c, "tradeoff parameter (>= 1)")->capture_default_str();
    sub->add_option("--strategy", flags.strategy, "separator construction: verified or randomized")
        ->capture_default_str();
    sub->add_option("--seed", flags.seed, "seed for every random choice")->capture_default_str();
    sub->add_option("--threads", flags.threads, "worker threads")->capture_default_str();
    sub->add_flag("--debug-verify", flags.debug_verify, "check intermediate families against brute-force oracles");
    flags.skip_option = sub->add_option("--skip-threshold", flags.skip_threshold,
                                        "families up to this size skip filtering (default: separator size)");
    sub->add_option("--max-attempts", flags.max_attempts, "seeds tried per verified separator")
        ->capture_default_str();
}

RepConfig to_config(const SolverFlags& flags) {
    if (!(flags.c >= 1.0) || !std::isfinite(flags.c)) {
        throw InputError("--c must be a finite value >= 1");
    }
    RepConfig config;
    config.c = flags.c;
    config.strategy = parse_strategy(flags.strategy);
    config.seed = flags.seed;
    config.threads = std::max<std::size_t>(flags.threads, 1);
    config.max_attempts = flags.max_attempts;
    if (flags.skip_option->count() > 0) {
        config.skip_threshold = flags.skip_threshold;
    }
    return config;
}

Json solver_params(const SolverFlags& flags) {
    Json out;
    out["c"] = flags.c;
    out["strategy"] = flags.strategy;
    out["seed"] = flags.seed;
    out["skip_threshold"] = flags.skip_option->count() > 0 ? Json(flags.skip_threshold) : Json(nullptr);
    out["debug_verify"] = flags.debug_verify;
    return out;
}

Json separators_json(const std::vector<SeparatorInfo>& infos) {
    Json out = Json::array();
    for (const auto& info : infos) {
        out.push_back(to_json(info));
    }
    return out;
}

Json optional_json(const std::optional<std::size_t>& value) { return value ? Json(*value) : Json(nullptr); }

std::vector<std::string> family_lines(const WeightedFamily& family) {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::string line;
        for (Element e : family.member(i).elements()) {
            line += (line.empty() ? "" : " ") + std::to_string(e);
        }
        if (line.empty()) {
            line = "-";
        }
        if (family.weighted()) {
            line += " w " + format_weight(family.weight(i));
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

// A subcommand fills the report and returns its exit code.
using Handler = std::function<int(RunReport&)>;

struct Registry {
    std::vector<std::pair<CLI::App*, Handler>> handlers;
};

void add_repfam(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("repfam", "compute a representative subfamily of a family file");
    auto file = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(0);
    auto flags = std::make_shared<SolverFlags>();
    sub->add_option("file", *file, "family file")->required();
    auto* k_option = sub->add_option("--k", *k, "rank (default: from the file header)");
    sub->add_option("--mode", *mode, "max, min or unweighted (default: max when weighted)");
    sub->add_option("--out", *out_path, "write the subfamily here in the family format");
    add_solver_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        FamilyFile input = read_family_file(*file);
        const std::size_t rank = k_option->count() > 0 ? *k : input.k;
        const RepMode rep_mode = mode->empty() ? (input.family.weighted() ? RepMode::kMax : RepMode::kUnweighted)
                                               : parse_rep_mode(*mode);
        RepConfig config = to_config(*flags);
        report.params = solver_params(*flags);
        report.params["k"] = rank;
        report.params["mode"] = std::string(to_string(rep_mode));

        RepresentativeFilter filter(config);
        const Stopwatch filter_time;
        const WeightedFamily result = filter(input.universe, rank, input.family, rep_mode);
        report.timings["filter_ms"] = filter_time.ms();

        if (!out_path->empty()) {
            std::ofstream out(*out_path);
            if (!out) {
                throw InputError("cannot write " + *out_path);
            }
            write_family(out, FamilyFile{input.universe, rank, result});
        }
        report.answer = Json{{"size", result.size()}, {"members", family_lines(result)}};
        report.stats["input_size"] = input.family.size();
        report.stats["output_size"] = result.size();
        report.stats["separators"] = separators_json(filter.cache().entries());
        int code = kExitOk;
        if (flags->debug_verify) {
            VerificationSummary summary;
            const auto check = verify_representation(input.family, result, rank, rep_mode);
            summary.record(check.represents, "output does not represent the input family");
            report.verification = summary;
            code = summary.passed() ? kExitOk : kExitNo;
        }
        report.timings["total_ms"] = total.ms();
        return code;
    });
}

void add_separator(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("separator", "build an (n, k, p)-separator and measure it");
    struct Flags {
        SeparatorParams params{0, 0, 0, 1.447};
        std::uint64_t seed = 0;
        bool verify = false;
        bool json = false;
        std::size_t samples = 1000;
        std::size_t max_attempts = 64;
        std::size_t threads = 1;
    };
    auto flags = std::make_shared<Flags>();
    sub->add_option("--n", flags->params.n, "universe size")->required();
    sub->add_option("--k", flags->params.k, "rank")->required();
    sub->add_option("--p", flags->params.p, "set size")->required();
    sub->add_option("--c", flags->params.c, "tradeoff parameter")->capture_default_str();
    sub->add_option("--seed", flags->seed, "construction seed")->capture_default_str();
    sub->add_flag("--verify", flags->verify, "retry seeds until the exhaustive covering check passes");
    sub->add_flag("--json", flags->json, "JSON output (same as --format json)");
    sub->add_option("--samples", flags->samples, "random p-sets used to measure |chi(S)|")->capture_default_str();
    sub->add_option("--max-attempts", flags->max_attempts, "seeds tried with --verify")->capture_default_str();
    sub->add_option("--threads", flags->threads, "worker threads")->capture_default_str();
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        validate(flags->params);
        report.params = to_json(flags->params);
        report.params["seed"] = flags->seed;
        report.params["verify"] = flags->verify;
        report.params["samples"] = flags->samples;
        BuildOptions build;
        build.threads = std::max<std::size_t>(flags->threads, 1);

        const Stopwatch build_time;
        Separator sep;
        std::uint64_t used_seed = flags->seed;
        std::size_t attempts = 1;
        Verified verified = Verified::kUnchecked;
        if (flags->verify) {
            VerifiedBuild vb = build_verified(flags->params, flags->seed, flags->max_attempts, build);
            sep = std::move(vb.separator);
            used_seed = vb.seed;
            attempts = vb.attempts;
            verified = Verified::kYes;
        } else {
            sep = build_randomized(flags->params, flags->seed, build);
        }
        report.timings["build_ms"] = build_time.ms();
        const SeparatorStats stats = measure_separator(sep, flags->samples, flags->seed, verified);
        report.answer = Json{{"t", separator_size_formula(flags->params)},
                             {"C", stats.sets},
                             {"verified", std::string(to_string(stats.verified))},
                             {"seed_used", used_seed},
                             {"attempts", attempts}};
        report.stats["inclusion_probability"] = inclusion_probability(flags->params);
        report.stats["delta_expected"] = stats.delta_expected;
        report.stats["delta_max_sampled"] = stats.delta_max_sampled;
        report.stats["delta_mean_sampled"] = stats.delta_mean_sampled;
        report.timings["total_ms"] = total.ms();
        return kExitOk;
    });
}

void add_pcover(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("pcover", "k-Partial Cover on a set-system file");
    auto file = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(0);
    auto flags = std::make_shared<SolverFlags>();
    sub->add_option("file", *file, "set-system file (k from the header)")->required();
    auto* k_option = sub->add_option("--k", *k, "coverage target (default: from the file header)");
    add_solver_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        const SetSystemFile input = read_set_system_file(*file);
        PCInstance inst{input.universe, input.sets, k_option->count() > 0 ? *k : input.k};
        PCOptions options;
        options.rep = to_config(*flags);
        options.debug_verify = flags->debug_verify;
        report.params = solver_params(*flags);
        report.params["k"] = inst.k;

        const Stopwatch solve_time;
        const PCResult result = solve_partial_cover(inst, options);
        report.timings["solve_ms"] = solve_time.ms();
        report.timings["filter_ms"] = result.filter.seconds * 1e3;
        report.answer = optional_json(result.answer);
        report.stats["universe"] = inst.universe.n;
        report.stats["sets"] = inst.sets.size();
        report.stats["shortcut"] = result.shortcut;
        report.stats["cells_filled"] = result.cells_filled;
        report.stats["max_cell_size"] = result.max_cell_size;
        report.stats["max_inner_size"] = result.max_inner_size;
        report.stats["filter"] = to_json(result.filter);
        report.stats["separators"] = separators_json(result.separators);
        report.verification = result.verification;
        report.timings["total_ms"] = total.ms();
        return result.verification && !result.verification->passed() ? kExitNo : kExitOk;
    });
}

void add_kds(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("kds", "k-Dominating Set on an undirected graph via partial cover");
    auto file = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(1);
    auto flags = std::make_shared<SolverFlags>();
    sub->add_option("file", *file, "graph file")->required();
    sub->add_option("--k", *k, "nodes to dominate")->required();
    add_solver_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        const Digraph g = Digraph::from_file(read_graph_file(*file), true);
        const PCInstance inst = dominating_set_reduce(g, *k);
        PCOptions options;
        options.rep = to_config(*flags);
        options.debug_verify = flags->debug_verify;
        report.params = solver_params(*flags);
        report.params["k"] = *k;

        const Stopwatch solve_time;
        const PCResult result = solve_partial_cover(inst, options);
        report.timings["solve_ms"] = solve_time.ms();
        report.timings["filter_ms"] = result.filter.seconds * 1e3;
        report.answer = optional_json(result.answer);
        report.stats["nodes"] = g.size();
        report.stats["shortcut"] = result.shortcut;
        report.stats["cells_filled"] = result.cells_filled;
        report.stats["max_cell_size"] = result.max_cell_size;
        report.stats["max_inner_size"] = result.max_inner_size;
        report.stats["filter"] = to_json(result.filter);
        report.stats["separators"] = separators_json(result.separators);
        report.verification = result.verification;
        report.timings["total_ms"] = total.ms();
        return result.verification && !result.verification->passed() ? kExitNo : kExitOk;
    });
}

struct TreeFlags {
    SolverFlags solver;
    std::size_t d = 2;
    bool full_table = false;
};

void add_tree_flags(CLI::App* sub, TreeFlags& flags) {
    add_solver_flags(sub, flags.solver);
    sub->add_option("--d", flags.d, "guide tree parameter (>= 2)")->capture_default_str();
    sub->add_flag("--full-table", flags.full_table, "fill every table cell");
}

TreeOptions to_tree_options(const TreeFlags& flags) {
    TreeOptions options;
    options.rep = to_config(flags.solver);
    options.d = flags.d;
    options.full_table = flags.full_table;
    options.debug_verify = flags.solver.debug_verify;
    return options;
}

void add_kttree(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("kttree", "(k, t)-Tree: out-tree with exactly k internal nodes and t leaves");
    auto file = std::make_shared<std::string>();
    auto root = std::make_shared<Node>(0);
    auto k = std::make_shared<std::size_t>(1);
    auto t = std::make_shared<std::size_t>(1);
    auto flags = std::make_shared<TreeFlags>();
    sub->add_option("file", *file, "digraph file")->required();
    sub->add_option("--root", *root, "root node")->capture_default_str();
    sub->add_option("--k", *k, "internal nodes")->required();
    sub->add_option("--t", *t, "leaves")->required();
    add_tree_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        const Digraph g = Digraph::from_file(read_graph_file(*file));
        const TreeOptions options = to_tree_options(*flags);
        report.params = solver_params(flags->solver);
        report.params["root"] = *root;
        report.params["k"] = *k;
        report.params["t"] = *t;
        report.params["d"] = flags->d;

        const Stopwatch solve_time;
        const TreeResult result = solve_kt_tree(g, *root, *k, *t, options);
        report.timings["solve_ms"] = solve_time.ms();
        report.timings["filter_ms"] = result.filter.seconds * 1e3;
        report.answer = result.answer;
        report.stats["cells"] = result.cells;
        report.stats["max_family"] = result.max_family;
        report.stats["max_inner"] = result.max_inner;
        report.stats["guide_trees"] = result.guide_trees;
        report.stats["filter"] = to_json(result.filter);
        report.stats["separators"] = separators_json(result.separators);
        report.verification = result.verification;
        report.timings["total_ms"] = total.ms();
        if (result.verification && !result.verification->passed()) {
            return kExitNo;
        }
        return result.answer ? kExitOk : kExitNo;
    });
}

void add_kiob(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("kiob", "k-Internal Out-Branching");
    auto file = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(1);
    auto flags = std::make_shared<TreeFlags>();
    sub->add_option("file", *file, "digraph file")->required();
    sub->add_option("--k", *k, "internal nodes required")->required();
    add_tree_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        const Digraph g = Digraph::from_file(read_graph_file(*file));
        const TreeOptions options = to_tree_options(*flags);
        if (options.debug_verify) {
            throw InputError("kiob has no debug verification; use kttree --debug-verify per query");
        }
        report.params = solver_params(flags->solver);
        report.params["k"] = *k;
        report.params["d"] = flags->d;

        const Stopwatch solve_time;
        const KiobResult result = solve_kiob(g, *k, options);
        report.timings["solve_ms"] = solve_time.ms();
        report.answer = result.answer;
        report.stats["root"] = result.root ? Json(*result.root) : Json(nullptr);
        report.stats["leaves"] = optional_json(result.leaves);
        report.stats["queries"] = result.queries;
        report.timings["total_ms"] = total.ms();
        return result.answer ? kExitOk : kExitNo;
    });
}

void add_kpath(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("kpath", "minimum-weight simple path of length k");
    auto file = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(1);
    auto directed = std::make_shared<bool>(false);
    auto length = std::make_shared<std::string>("vertices");
    auto flags = std::make_shared<SolverFlags>();
    sub->add_option("file", *file, "weighted graph file (u v w lines)")->required();
    sub->add_option("--k", *k, "path length")->required();
    sub->add_flag("--directed", *directed, "read edges as arcs");
    sub->add_option("--length", *length, "what k counts: vertices or edges")->capture_default_str();
    add_solver_flags(sub, *flags);
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_file(*file);
        const WeightedGraph g = WeightedGraph::from_file(read_graph_file(*file), *directed);
        KPathOptions options;
        options.rep = to_config(*flags);
        options.length = parse_path_length(*length);
        options.debug_verify = flags->debug_verify;
        report.params = solver_params(*flags);
        report.params["k"] = *k;
        report.params["directed"] = *directed;
        report.params["length"] = *length;

        const Stopwatch solve_time;
        const KPathResult result = solve_weighted_kpath(g, *k, options);
        report.timings["solve_ms"] = solve_time.ms();
        report.timings["filter_ms"] = result.filter.seconds * 1e3;
        report.answer = result.answer ? Json(*result.answer) : Json(nullptr);
        report.stats["vertices"] = result.vertices;
        report.stats["families"] = result.families;
        report.stats["max_family"] = result.max_family;
        report.stats["filter"] = to_json(result.filter);
        report.stats["separators"] = separators_json(result.separators);
        report.verification = result.verification;
        report.timings["total_ms"] = total.ms();
        return result.verification && !result.verification->passed() ? kExitNo : kExitOk;
    });
}

void add_bounds(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("bounds", "evaluate separator bounds and tuned exponential bases");
    struct Flags {
        std::size_t n = 0;
        std::size_t k = 0;
        std::size_t p = 0;
        double p_frac = 0.0;
        double c = 1.447;
        std::string shape = "pc";
    };
    auto flags = std::make_shared<Flags>();
    auto* n_option = sub->add_option("--n", flags->n, "universe size (default: k)");
    sub->add_option("--k", flags->k, "rank")->required();
    auto* p_option = sub->add_option("--p", flags->p, "set size");
    auto* frac_option = sub->add_option("--p-frac", flags->p_frac, "set size as a fraction of k");
    p_option->excludes(frac_option);
    sub->add_option("--c", flags->c, "tradeoff parameter")->capture_default_str();
    sub->add_option("--shape", flags->shape, "pc or cycle, for the optimized base")->capture_default_str();
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        if (p_option->count() == 0 && frac_option->count() == 0) {
            throw InputError("bounds needs --p or --p-frac");
        }
        double alpha = 0.0;
        std::size_t p = flags->p;
        if (frac_option->count() > 0) {
            if (!(flags->p_frac >= 0.0 && flags->p_frac <= 1.0)) {
                throw InputError("--p-frac must lie in [0, 1]");
            }
            alpha = flags->p_frac;
            p = static_cast<std::size_t>(std::lround(alpha * static_cast<double>(flags->k)));
        } else if (flags->k > 0) {
            alpha = static_cast<double>(p) / static_cast<double>(flags->k);
        }
        const SeparatorParams params{n_option->count() > 0 ? flags->n : flags->k, flags->k, p, flags->c};
        const BaseShape shape = parse_base_shape(flags->shape);
        const BoundReport b = bounds(params);
        const OptimizedBase best = optimize_base(flags->c, shape);

        auto log_json = [](const LogValue& v) {
            return Json{{"log2", v.log2}, {"value", v.value ? Json(*v.value) : Json(nullptr)}};
        };
        report.params = to_json(params);
        report.params["alpha"] = alpha;
        report.params["shape"] = std::string(to_string(shape));
        report.answer = Json{{"base", tradeoff_base(flags->c, alpha, shape)},
                             {"optimized", Json{{"alpha", best.alpha}, {"base", best.base}}},
                             {"kiob_base", kiob_base(flags->c)}};
        report.stats["t"] = b.t_formula;
        report.stats["t_sets"] = separator_set_count(params);
        report.stats["lead"] = log_json(b.lead);
        report.stats["c_star"] = log_json(b.c_star);
        report.stats["tau_f_star"] = log_json(b.tau_f_star);
        report.stats["tau_chi_star"] = log_json(b.tau_chi_star);
        report.stats["delta_expected"] = b.delta_expected;
        report.stats["star_slack"] = b.star_slack;
        report.stats["s"] = b.s;
        report.stats["t_blocks"] = b.t_blocks;
        report.stats["z_count"] = b.z_count ? Json(*b.z_count) : Json(nullptr);
        report.stats["z_bound_log2"] = b.z_bound_log2;
        Json chain = Json::array();
        for (const auto& entry : b.chain) {
            chain.push_back(Json{{"stage", entry.stage},
                                 {"formula", entry.formula},
                                 {"leading", log_json(entry.leading)},
                                 {"slack", entry.slack}});
        }
        report.stats["chain"] = chain;
        report.timings["total_ms"] = total.ms();
        return kExitOk;
    });
}

void add_bench(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("bench", "run a benchmark suite");
    auto options = std::make_shared<BenchOptions>();
    auto strategy = std::make_shared<std::string>("verified");
    sub->add_option("--suite", options->suite, "c-sweep, pcover or empty")->capture_default_str();
    sub->add_option("--seed", options->seed, "instance and separator seed")->capture_default_str();
    sub->add_option("--strategy", *strategy, "verified or randomized")->capture_default_str();
    sub->add_option("--threads", options->threads, "worker threads")->capture_default_str();
    sub->add_flag("--debug-verify", options->debug_verify, "run the oracle checks in every solver call");
    sub->add_option("--budget", options->budget_seconds, "seconds before the table is cut short")
        ->capture_default_str();
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        BenchOptions run = *options;
        run.strategy = parse_strategy(*strategy);
        report.params = Json{{"suite", run.suite},
                             {"seed", run.seed},
                             {"strategy", *strategy},
                             {"debug_verify", run.debug_verify}};
        const BenchTable table = run_bench(run);
        Json rows = Json::array();
        Json row_times = Json::array();
        bool all_passed = true;
        for (const auto& row : table.rows) {
            Json r{{"instance", row.instance},
                   {"c", row.c},
                   {"t", row.t},
                   {"answer", optional_json(row.answer)},
                   {"oracle", optional_json(row.oracle)},
                   {"max_cell", row.max_cell},
                   {"max_inner", row.max_inner},
                   {"separator_sets", row.separator_sets},
                   {"verification", row.verification_passed
                                        ? Json(*row.verification_passed ? "pass" : "fail")
                                        : Json(nullptr)}};
            rows.push_back(std::move(r));
            row_times.push_back(Json{{"filter_ms", row.filter_seconds * 1e3}, {"solver_ms", row.solver_seconds * 1e3}});
            all_passed = all_passed && row.verification_passed.value_or(true) &&
                         (!row.oracle || row.oracle == row.answer);
        }
        report.answer = Json{{"rows", rows}, {"truncated", table.truncated}};
        report.stats["reference"] = to_json(table.reference);
        report.stats["row_count"] = table.rows.size();
        report.timings["rows"] = row_times;
        report.timings["total_ms"] = total.ms();
        return all_passed ? kExitOk : kExitNo;
    });
}

void add_verify(CLI::App& app, Registry& registry) {
    auto* sub = app.add_subcommand("verify", "check that one family file represents another");
    auto file = std::make_shared<std::string>();
    auto sub_file = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(0);
    sub->add_option("file", *file, "family file")->required();
    sub->add_option("--sub", *sub_file, "candidate subfamily file")->required();
    auto* k_option = sub->add_option("--k", *k, "rank (default: from the family header)");
    sub->add_option("--mode", *mode, "max, min or unweighted (default: max when weighted)");
    registry.handlers.emplace_back(sub, [=](RunReport& report) -> int {
        const Stopwatch total;
        report.input_digest = "sha256:" + sha256_hex(sha256_file(*file) + sha256_file(*sub_file));
        const FamilyFile family = read_family_file(*file);
        const FamilyFile candidate = read_family_file(*sub_file);
        const std::size_t rank = k_option->count() > 0 ? *k : family.k;
        const RepMode rep_mode = mode->empty() ? (family.family.weighted() ? RepMode::kMax : RepMode::kUnweighted)
                                               : parse_rep_mode(*mode);
        report.params = Json{{"k", rank}, {"mode", std::string(to_string(rep_mode))}};
        const auto check = verify_representation(family.family, candidate.family, rank, rep_mode);
        Json answer{{"represents", check.represents}};
        if (check.witness) {
            answer["witness"] = Json{{"x", check.witness->x.elements()}, {"y", check.witness->y.elements()}};
        }
        report.answer = answer;
        report.stats["family_size"] = family.family.size();
        report.stats["subfamily_size"] = candidate.family.size();
        report.timings["total_ms"] = total.ms();
        return check.represents ? kExitOk : kExitNo;
    });
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Representative families over uniform matroids and solvers built on them", "repfam"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    Registry registry;
    add_repfam(app, registry);
    add_separator(app, registry);
    add_pcover(app, registry);
    add_kds(app, registry);
    add_kttree(app, registry);
    add_kiob(app, registry);
    add_kpath(app, registry);
    add_bounds(app, registry);
    add_bench(app, registry);
    add_verify(app, registry);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitInput;
    }

    for (auto& [sub, handler] : registry.handlers) {
        if (!sub->parsed()) {
            continue;
        }
        RunReport report;
        report.subcommand = sub->get_name();
        try {
            const int code = handler(report);
            out << (format == "text" ? report.to_text() : report.to_json().dump(2) + "\n");
            return code;
        } catch (const InputError& e) {
            err << "error: " << e.what() << '\n';
            return kExitInput;
        } catch (const ResourceError& e) {
            err << "resource limit: " << e.what() << '\n';
            return kExitResource;
        } catch (const ConstructionError& e) {
            err << "construction failed: " << e.what() << '\n';
            return kExitResource;
        }
    }
    return kExitInput;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"repfam"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace repfam
