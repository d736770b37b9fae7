/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "bench/records.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kernelweave::bench {

/// One harness invocation. backend may be a single backend name, "native"
/// (the plain sequential loop, bypassing the library) or "all" (the three
/// library backends). When baseline names a backend that is not already part
/// of the run it is benchmarked additionally so the report has its records.
struct BenchConfig {
    std::string kernel = "axpy"; // axpy | gemm-naive | gemm-tiled
    std::string backend = "all"; // serial | blocks | threads | native | all
    std::vector<std::size_t> sizes = {256};
    int reps = 5;                // >= 3
    std::uint64_t seed = 42;
    std::size_t tile = 16;
    std::size_t threadsPerBlock = 16;
    std::size_t elementsPerThread = 8;
    bool verify = false;
    std::string csvPath;  // empty: no CSV file
    std::string baseline; // empty: no relative report
    bool pessimize = false;
};

struct ReportRow {
    std::string kernel;
    std::string backend;
    std::size_t n = 0;
    double ratio = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Runs the configured benchmark matrix and returns one record per timed
/// repetition. Per point: buffers are allocated and filled (untimed), one
/// warm-up run is discarded, then each repetition restores the outputs,
/// times exactly the enqueue-and-wait of the kernel, and optionally verifies
/// the result bitwise against the sequential reference. Timing never includes
/// allocation, filling, restores, verification or queue construction.
///
/// With pessimize set (gemm kernels only) every point additionally runs a
/// deliberately unsuited division: tile = 1 for gemm-tiled, and for
/// gemm-naive a single thread owning every output element.
///
/// If the environment variable KWBENCH_INJECT_FAULT is set to a non-empty
/// value, one output byte is corrupted after each timed run — a testing hook
/// to exercise the verification failure path end to end.
std::vector<BenchRecord> runBench(const BenchConfig& cfg);

/// Median wall time of one native (plain sequential loop) execution of the
/// kernel at size n with seed-deterministic inputs. n = 0 is tolerated and
/// yields a near-zero time.
double nativeBaselineSeconds(const std::string& kernel, std::size_t n, std::uint64_t seed);

/// Per (kernel, backend, n): median seconds divided by the baseline backend's
/// median seconds for the same kernel and n. Every (kernel, n) present in
/// records must have baseline records, otherwise a usage error is raised.
std::vector<ReportRow> relativeReport(const std::vector<BenchRecord>& records,
                                      const std::string& baselineBackend);

/// Human-readable summary of the slowdown the pessimized divisions cause,
/// grouped per kernel, backend and size. Empty string when the records hold
/// no pessimized runs.
std::string pessimizeSummary(const std::vector<BenchRecord>& records, const BenchConfig& cfg);

} // namespace kernelweave::bench
