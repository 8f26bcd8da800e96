/*
 * Copyright 2026 the blockcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockcr/commtrace.hpp"
#include "blockcr/io.hpp"
#include "blockcr/oracle.hpp"
#include "blockcr/residual.hpp"
#include "blockcr/solver.hpp"

namespace {

// Exit codes: 0 success, 1 usage or I/O error, 2 not positive definite,
// 3 verification failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotPd = 2;
constexpr int kExitVerifyFailed = 3;

// --verify falls back to the residual alone above this dense-oracle size.
constexpr std::size_t kOracleGate = 512;

constexpr double kVerifyResidualGate = 1e-8;

blockcr::BlockTridiagonalSystem load_system(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw blockcr::IoError("cannot open input file: " + path);
    }
    return blockcr::io::read_system(in);
}

void print_not_pd(const blockcr::NotPositiveDefinite& e) {
    std::cout << "NOT_PD level=" << e.level << " block=" << e.block_index << "\n";
}

double max_relative_difference(const blockcr::BlockVector& got,
                               const blockcr::BlockVector& want) {
    double max_diff = 0.0;
    double max_ref = 0.0;
    for (std::size_t b = 0; b < want.n_blocks(); ++b) {
        const blockcr::Block& g = got.block(b);
        const blockcr::Block& w = want.block(b);
        for (std::size_t i = 0; i < w.rows(); ++i) {
            for (std::size_t j = 0; j < w.cols(); ++j) {
                max_diff = std::max(max_diff, std::abs(g(i, j) - w(i, j)));
                max_ref = std::max(max_ref, std::abs(w(i, j)));
            }
        }
    }
    return max_ref > 0.0 ? max_diff / max_ref : max_diff;
}

struct GenerateArgs {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::string kind = "hpd_random";
    double coupling_scale = 1.0;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    const auto kind = blockcr::io::parse_kind(args.kind);
    if (!kind) {
        std::cerr << "unknown kind: " << args.kind << "\n";
        return kExitUsage;
    }
    blockcr::io::GeneratorSpec spec;
    spec.n = args.n;
    spec.m = args.m;
    spec.k = args.k;
    spec.seed = args.seed;
    spec.kind = *kind;
    spec.coupling_scale = args.coupling_scale;
    const blockcr::BlockTridiagonalSystem system = blockcr::io::generate(spec);
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << args.out << "\n";
        return kExitUsage;
    }
    blockcr::io::write_system(system, out);
    std::cout << "generated n=" << spec.n << " m=" << spec.m << " k=" << spec.k
              << " kind=" << blockcr::io::kind_name(spec.kind) << " seed=" << spec.seed
              << " coupling_scale=" << spec.coupling_scale << " -> " << args.out << "\n";
    return kExitOk;
}

struct SolveArgs {
    std::string in;
    std::string out;
    std::size_t threshold = 4;
    bool serial = false;
    bool verify = false;
    bool stats = false;
};

int cmd_solve(const SolveArgs& args) {
    const blockcr::BlockTridiagonalSystem system = load_system(args.in);
    blockcr::SolveOptions opts;
    opts.base_threshold = args.threshold;
    opts.parallel = !args.serial;

    blockcr::BlockVector x(1, 1);
    blockcr::SolveStats stats;
    try {
        std::tie(x, stats) = blockcr::solve(system, opts);
    } catch (const blockcr::NotPositiveDefinite& e) {
        print_not_pd(e);
        return kExitNotPd;
    }

    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << args.out << "\n";
            return kExitUsage;
        }
        blockcr::io::write_solution(x, out);
    }
    if (args.stats) {
        std::cout << "levels=" << stats.levels
                  << " block_factorizations=" << stats.block_factorizations
                  << " base_case_dim=" << stats.base_case_dim << "\n";
    }
    if (args.verify) {
        const double residual = blockcr::relative_residual(system, x);
        std::cout << "residual=" << std::scientific << std::setprecision(6) << residual << "\n";
        if (system.n() * system.m() <= kOracleGate) {
            const blockcr::BlockVector reference = blockcr::oracle::dense_solve(system);
            std::cout << "oracle_max_rel_diff=" << std::scientific << std::setprecision(6)
                      << max_relative_difference(x, reference) << "\n";
        }
        if (!(residual <= kVerifyResidualGate)) {
            std::cerr << "verification failed: residual above " << kVerifyResidualGate << "\n";
            return kExitVerifyFailed;
        }
    }
    return kExitOk;
}

int cmd_check_pd(const std::string& in, std::size_t threshold) {
    const blockcr::BlockTridiagonalSystem system = load_system(in);
    blockcr::SolveOptions opts;
    opts.base_threshold = threshold;
    const blockcr::DefinitenessReport report = blockcr::check_positive_definite(system, opts);
    if (report.positive_definite) {
        std::cout << "PD\n";
        return kExitOk;
    }
    std::cout << "NOT_PD level=" << report.failure->first << " block=" << report.failure->second
              << "\n";
    return kExitNotPd;
}

int cmd_comm_trace(std::size_t n, std::size_t threshold, const std::string& out_path) {
    const blockcr::commtrace::Trace trace = blockcr::commtrace::trace_full(n, threshold);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitUsage;
    }
    blockcr::commtrace::write_csv(trace, out);
    std::cout << blockcr::commtrace::summary_line(trace.summary) << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::size_t> n_list;
    std::size_t m = 4;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::size_t repeat = 1;
    std::size_t threshold = 4;
};

int cmd_bench(const BenchArgs& args) {
    using Clock = std::chrono::steady_clock;
    std::cout << "n\tserial_ms\tparallel_ms\tlevels\tblock_factorizations\n";
    for (const std::size_t n : args.n_list) {
        blockcr::io::GeneratorSpec spec;
        spec.n = n;
        spec.m = args.m;
        spec.k = args.k;
        spec.seed = args.seed;
        spec.kind = blockcr::io::SystemKind::hpd_random;
        const blockcr::BlockTridiagonalSystem system = blockcr::io::generate(spec);

        blockcr::SolveStats stats;
        double best_serial = 0.0;
        double best_parallel = 0.0;
        for (const bool parallel : {false, true}) {
            blockcr::SolveOptions opts;
            opts.base_threshold = args.threshold;
            opts.parallel = parallel;
            double best = -1.0;
            for (std::size_t r = 0; r < args.repeat; ++r) {
                const auto start = Clock::now();
                auto [x, s] = blockcr::solve(system, opts);
                const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
                if (best < 0.0 || elapsed.count() < best) {
                    best = elapsed.count();
                }
                stats = s;
            }
            (parallel ? best_parallel : best_serial) = best;
        }
        std::cout << n << '\t' << std::fixed << std::setprecision(3) << best_serial << '\t'
                  << best_parallel << '\t' << stats.levels << '\t' << stats.block_factorizations
                  << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermitian positive-definite block-tridiagonal solver "
                 "(recursive odd/even cyclic reduction)"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "generate a seeded test system (BTHP)");
    generate->add_option("--n", gen.n, "block count")->required()->check(CLI::PositiveNumber);
    generate->add_option("--m", gen.m, "block size")->required()->check(CLI::PositiveNumber);
    generate->add_option("--k", gen.k, "right-hand-side columns (0 = none)");
    generate->add_option("--seed", gen.seed, "generator seed");
    generate->add_option("--kind", gen.kind,
                         "hpd_random | hpd_laplacian | indefinite | real_symmetric");
    generate->add_option("--coupling-scale", gen.coupling_scale, "subdiagonal magnitude")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--out", gen.out, "output BTHP file")->required();

    SolveArgs sol;
    CLI::App* solve = app.add_subcommand("solve", "solve a BTHP system, write a BTHX solution");
    solve->add_option("--in", sol.in, "input BTHP file")->required();
    solve->add_option("--out", sol.out, "output BTHX file");
    solve->add_option("--threshold", sol.threshold, "base-case block threshold")
        ->check(CLI::PositiveNumber);
    solve->add_flag("--serial", sol.serial, "disable fork-join parallelism");
    solve->add_flag("--verify", sol.verify,
                    "print the relative residual (and the dense-oracle difference for n*m <= 512); "
                    "exit 3 if the residual exceeds 1e-8");
    solve->add_flag("--stats", sol.stats, "print recursion statistics");

    std::string check_in;
    std::size_t check_threshold = 4;
    CLI::App* check = app.add_subcommand("check-pd", "report whether a BTHP system is positive "
                                                     "definite (exit 0 = PD, 2 = not PD)");
    check->add_option("--in", check_in, "input BTHP file")->required();
    check->add_option("--threshold", check_threshold, "base-case block threshold")
        ->check(CLI::PositiveNumber);

    std::size_t trace_n = 0;
    std::size_t trace_threshold = 4;
    std::string trace_out;
    CLI::App* trace = app.add_subcommand("comm-trace", "emit the per-level communication "
                                                       "pattern as CSV");
    trace->add_option("--n", trace_n, "block count (>= 2)")->required()->check(CLI::Range(2u, ~0u));
    trace->add_option("--threshold", trace_threshold, "recursion stop size")
        ->check(CLI::PositiveNumber);
    trace->add_option("--out", trace_out, "output CSV file")->required();

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "timing and work-law table over a size list");
    bench_cmd->add_option("--n-list", bench.n_list, "comma-separated block counts")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--m", bench.m, "block size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--k", bench.k, "right-hand-side columns")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "generator seed");
    bench_cmd->add_option("--repeat", bench.repeat, "timing repetitions (best-of)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--threshold", bench.threshold, "base-case block threshold")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(gen);
        }
        if (solve->parsed()) {
            return cmd_solve(sol);
        }
        if (check->parsed()) {
            return cmd_check_pd(check_in, check_threshold);
        }
        if (trace->parsed()) {
            return cmd_comm_trace(trace_n, trace_threshold, trace_out);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench);
        }
    } catch (const blockcr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
