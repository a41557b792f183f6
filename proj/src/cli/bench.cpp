#include "repfam/bench.hpp"

#include <chrono>
#include <random>
#include <string>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

constexpr std::size_t kSweepUniverse = 10;
constexpr std::size_t kSweepSets = 8;
constexpr std::size_t kSweepK = 5;
constexpr std::size_t kSweepInstances = 3;
constexpr std::size_t kPCoverInstances = 6;

PCInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k,
                           std::size_t max_set) {
    PCInstance inst{Universe{n}, {}, k};
    std::uniform_int_distribution<std::size_t> size_dist(1, max_set);
    std::uniform_int_distribution<Element> element_dist(0, static_cast<Element>(n - 1));
    for (std::size_t i = 0; i < m; ++i) {
        ElementSet s(n);
        const std::size_t size = size_dist(rng);
        while (s.size() < size) {
            s.insert(element_dist(rng));
        }
        inst.sets.push_back(std::move(s));
    }
    return inst;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

BenchRow run_row(const PCInstance& inst, const std::string& name, double c, const BenchOptions& options,
                 const SeparatorParams& reference) {
    PCOptions pc;
    pc.rep.c = c;
    pc.rep.strategy = options.strategy;
    pc.rep.seed = options.seed;
    pc.rep.threads = options.threads;
    pc.rep.skip_threshold = 0;
    pc.debug_verify = options.debug_verify;

    BenchRow row;
    row.instance = name;
    row.c = c;
    row.t = separator_set_count({reference.n, reference.k, reference.p, c});
    const auto start = std::chrono::steady_clock::now();
    const PCResult result = solve_partial_cover(inst, pc);
    row.solver_seconds = seconds_since(start);
    row.answer = result.answer;
    row.max_cell = result.max_cell_size;
    row.max_inner = result.max_inner_size;
    for (const auto& info : result.separators) {
        row.separator_sets += info.sets;
    }
    if (result.verification) {
        row.verification_passed = result.verification->passed();
    }
    row.filter_seconds = result.filter.seconds;
    return row;
}

}  // namespace

std::vector<std::string> bench_suites() { return {"c-sweep", "pcover", "empty"}; }

std::vector<PCInstance> c_sweep_instances(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eedc0ffeeULL);
    std::vector<PCInstance> out;
    for (std::size_t i = 0; i < kSweepInstances; ++i) {
        out.push_back(random_instance(rng, kSweepUniverse, kSweepSets, kSweepK, 2));
    }
    return out;
}

BenchTable run_bench(const BenchOptions& options) {
    BenchTable table;
    table.suite = options.suite;
    const auto start = std::chrono::steady_clock::now();
    auto out_of_budget = [&] { return seconds_since(start) > options.budget_seconds; };

    if (options.suite == "empty") {
        return table;
    }
    if (options.suite == "c-sweep") {
        table.reference = {kSweepUniverse, kSweepK, kSweepK / 2, 1.0};
        const auto instances = c_sweep_instances(options.seed);
        for (std::size_t i = 0; i < instances.size(); ++i) {
            for (double c : kCSweepValues) {
                if (out_of_budget()) {
                    table.truncated = true;
                    return table;
                }
                table.rows.push_back(run_row(instances[i], "sweep-" + std::to_string(i), c, options, table.reference));
            }
        }
        return table;
    }
    if (options.suite == "pcover") {
        std::mt19937_64 rng(options.seed ^ 0x9c0e4ULL);
        table.reference = {8, 4, 2, 1.447};
        for (std::size_t i = 0; i < kPCoverInstances; ++i) {
            const std::size_t n = 5 + rng() % 4;
            const std::size_t m = 3 + rng() % 4;
            const std::size_t k = 3 + rng() % 3;
            const PCInstance inst = random_instance(rng, n, m, k, 2);
            if (out_of_budget()) {
                table.truncated = true;
                return table;
            }
            BenchRow row = run_row(inst, "pcover-" + std::to_string(i), 1.447, options, table.reference);
            row.oracle = brute_force_pcover(inst);
            table.rows.push_back(std::move(row));
        }
        return table;
    }
    throw InputError("unknown bench suite '" + options.suite + "'");
}

}  // namespace repfam
