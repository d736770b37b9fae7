/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "bench/runner.hpp"

#include <kernelweave/error.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <tuple>

namespace {

using namespace kernelweave;
using namespace kernelweave::bench;

void printSummary(const std::vector<BenchRecord>& records)
{
    using PointKey = std::tuple<std::string, std::string, std::size_t>;
    std::map<PointKey, std::vector<double>> seconds;
    std::map<PointKey, bool> allVerified;
    for (const BenchRecord& r : records) {
        const PointKey key{r.kernel, r.backend, r.n};
        seconds[key].push_back(r.seconds);
        auto [it, inserted] = allVerified.emplace(key, r.verified);
        if (!inserted)
            it->second = it->second && r.verified;
    }
    std::printf("%-12s %-8s %8s %14s %10s %9s\n", "kernel", "backend", "n", "median_s", "gflops",
                "verified");
    for (const auto& [key, times] : seconds) {
        const auto& [kernel, backend, n] = key;
        const double med = median(times);
        std::printf("%-12s %-8s %8zu %14.6g %10.3f %9s\n", kernel.c_str(), backend.c_str(), n, med,
                    flopCount(kernel, n) / med / 1e9, allVerified[key] ? "yes" : "NO");
    }
}

void printReport(const std::vector<ReportRow>& rows, const std::string& baseline)
{
    std::printf("\nmedian time relative to '%s':\n", baseline.c_str());
    std::printf("%-12s %-8s %8s %10s\n", "kernel", "backend", "n", "ratio");
    for (const ReportRow& row : rows)
        std::printf("%-12s %-8s %8zu %10.4f\n", row.kernel.c_str(), row.backend.c_str(), row.n,
                    row.ratio);
    std::printf("\nkernel,backend,n,ratio_vs_%s\n", baseline.c_str());
    for (const ReportRow& row : rows)
        std::printf("%s,%s,%zu,%s\n", row.kernel.c_str(), row.backend.c_str(), row.n,
                    formatDouble(row.ratio).c_str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kwbench — portable kernel benchmark harness"};

    BenchConfig cfg;
    app.add_option("--kernel", cfg.kernel, "Kernel to run: axpy, gemm-naive or gemm-tiled")
        ->capture_default_str();
    app.add_option("--backend", cfg.backend,
                   "Backend: serial, blocks, threads, native or all (the three library backends)")
        ->capture_default_str();
    app.add_option("--sizes", cfg.sizes, "Comma-separated problem sizes (vector length / matrix edge)")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--reps", cfg.reps, "Timed repetitions per point (>= 3); one extra warm-up run is discarded")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed for the uniform [0,10) input data")
        ->capture_default_str();
    app.add_option("--tile", cfg.tile, "Tile edge of gemm-tiled")->capture_default_str();
    app.add_option("--tpb", cfg.threadsPerBlock, "Threads per block (B)")->capture_default_str();
    app.add_option("--ept", cfg.elementsPerThread, "Elements per thread (V)")->capture_default_str();
    app.add_flag("--verify", cfg.verify, "Verify every repetition bitwise against the sequential reference");
    app.add_option("--csv", cfg.csvPath, "Write all records to this CSV file");
    app.add_option("--baseline", cfg.baseline,
                   "Report median times relative to this backend (it is benchmarked if needed)");
    app.add_flag("--pessimize", cfg.pessimize,
                 "Additionally run a deliberately unsuited division: gemm-tiled with tile=1, "
                 "gemm-naive with one thread owning every element");

    app.footer("GFLOPS = flops / seconds / 1e9 with flops(axpy) = 2*n and\n"
               "flops(gemm-*) = 2*n^3 + 3*n^2.\n"
               "Timings use the monotonic steady clock (resolution 1 us or better);\n"
               "allocation, filling, verification and queue construction are never timed.\n"
               "KERNELWEAVE_POOL_SIZE overrides the blocks backend worker pool size.\n"
               "Exit codes: 0 ok, 1 verification failure, 2 usage error.");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::vector<BenchRecord> records = runBench(cfg);
        printSummary(records);

        if (cfg.pessimize)
            std::printf("\n%s", pessimizeSummary(records, cfg).c_str());

        if (!cfg.baseline.empty())
            printReport(relativeReport(records, cfg.baseline), cfg.baseline);

        if (!cfg.csvPath.empty()) {
            std::ofstream out(cfg.csvPath, std::ios::binary);
            if (!out)
                throw UsageError("cannot open '" + cfg.csvPath + "' for writing");
            writeRecordsCsv(records, out);
        }

        if (cfg.verify) {
            for (const BenchRecord& r : records) {
                if (!r.verified) {
                    std::fprintf(stderr, "verification FAILED for %s on %s at n=%zu\n",
                                 r.kernel.c_str(), r.backend.c_str(), r.n);
                    return 1;
                }
            }
        }
        return 0;
    }
    catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
