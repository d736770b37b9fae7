/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kernelweave::bench {

/// One timed repetition of one benchmark point. b and v are the products of
/// the threads-per-block and elements-per-thread vectors actually used; tile
/// is the tile edge for the tiled kernel and 0 otherwise; the pseudo-backend
/// "native" reports b = v = 0 since it bypasses the work division entirely.
struct BenchRecord {
    std::string kernel;
    std::string backend;
    std::size_t n = 0;
    std::size_t b = 0;
    std::size_t v = 0;
    std::size_t tile = 0;
    int rep = 0;
    double seconds = 0.0;
    double gflops = 0.0;
    bool verified = true;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr std::string_view csvHeader = "kernel,backend,n,b,v,tile,rep,seconds,gflops,verified";

/// Shortest decimal form that parses back to the identical double.
std::string formatDouble(double v);

/// Floating point operations of one kernel execution:
///   axpy: 2 * n (one multiply and one add per element)
///   gemm-naive / gemm-tiled: 2*n^3 + 3*n^2 (2k per dot product plus the
///   scale-and-add alpha*acc + beta*C per output element)
double flopCount(std::string_view kernel, std::size_t n);

void writeRecordsCsv(const std::vector<BenchRecord>& records, std::ostream& os);

/// Inverse of writeRecordsCsv; malformed input is a usage error. Parsing and
/// re-emitting reproduces the input byte for byte.
std::vector<BenchRecord> readRecordsCsv(std::istream& is);

/// Median of a sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

} // namespace kernelweave::bench
