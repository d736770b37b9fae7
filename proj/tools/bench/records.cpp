/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "bench/records.hpp"

#include <kernelweave/error.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace kernelweave::bench {

std::string formatDouble(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double flopCount(std::string_view kernel, std::size_t n)
{
    const auto dn = static_cast<double>(n);
    if (kernel == "axpy")
        return 2.0 * dn;
    if (kernel == "gemm-naive" || kernel == "gemm-tiled")
        return 2.0 * dn * dn * dn + 3.0 * dn * dn;
    throw UsageError("flopCount: unknown kernel '" + std::string(kernel) + "'");
}

void writeRecordsCsv(const std::vector<BenchRecord>& records, std::ostream& os)
{
    os << csvHeader << '\n';
    for (const BenchRecord& r : records) {
        os << r.kernel << ',' << r.backend << ',' << r.n << ',' << r.b << ',' << r.v << ','
           << r.tile << ',' << r.rep << ',' << formatDouble(r.seconds) << ','
           << formatDouble(r.gflops) << ',' << (r.verified ? 1 : 0) << '\n';
    }
}

namespace {

std::vector<std::string> splitCsvLine(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::size_t parseSize(const std::string& s)
{
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw UsageError("readRecordsCsv: malformed integer '" + s + "'");
    return static_cast<std::size_t>(v);
}

double parseDouble(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw UsageError("readRecordsCsv: malformed number '" + s + "'");
    return v;
}

} // namespace

std::vector<BenchRecord> readRecordsCsv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != csvHeader)
        throw UsageError("readRecordsCsv: missing or unexpected header");

    std::vector<BenchRecord> records;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> f = splitCsvLine(line);
        if (f.size() != 10)
            throw UsageError("readRecordsCsv: expected 10 fields in '" + line + "'");
        BenchRecord r;
        r.kernel = f[0];
        r.backend = f[1];
        r.n = parseSize(f[2]);
        r.b = parseSize(f[3]);
        r.v = parseSize(f[4]);
        r.tile = parseSize(f[5]);
        r.rep = static_cast<int>(parseSize(f[6]));
        r.seconds = parseDouble(f[7]);
        r.gflops = parseDouble(f[8]);
        if (f[9] != "0" && f[9] != "1")
            throw UsageError("readRecordsCsv: verified flag must be 0 or 1");
        r.verified = f[9] == "1";
        records.push_back(std::move(r));
    }
    return records;
}

double median(std::vector<double> values)
{
    if (values.empty())
        throw UsageError("median: empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1)
        return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

} // namespace kernelweave::bench
