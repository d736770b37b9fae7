/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "bench/runner.hpp"

#include <kernelweave/kernelweave.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>
#include <utility>

namespace kernelweave::bench {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::period::den >= 1000000, "benchmark timer must resolve at least microseconds");

constexpr std::string_view kNativeName = "native";

bool faultInjectionEnabled()
{
    const char* raw = std::getenv("KWBENCH_INJECT_FAULT");
    return raw != nullptr && *raw != '\0';
}

std::uint64_t kernelTag(const std::string& kernel)
{
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : kernel) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

struct Variant {
    bool pessimized = false;
    std::size_t tile = 16;
    std::size_t threadsPerBlock = 16;
    std::size_t elementsPerThread = 8;
};

/// Buffers and parameters of one (kernel, n) point: seed-deterministic
/// uniform [0, 10) inputs, pristine copies to restore the output between
/// repetitions, and the reference output for verification.
class Workload {
public:
    Workload(const std::string& kernel, std::size_t n, std::uint64_t seed, bool wantReference)
        : m_kernel(kernel), m_n(n)
    {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(n), kernelTag(kernel)};
        std::mt19937_64 rng(seq);
        const auto draw = [&rng] {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 10.0;
        };
        m_alpha = draw();
        m_beta = draw();

        if (m_kernel == "axpy") {
            m_x.emplace(Device::host(), IndexVec(std::max<std::size_t>(n, 1)), sizeof(double));
            m_out.emplace(Device::host(), IndexVec(std::max<std::size_t>(n, 1)), sizeof(double));
            if (n > 0) {
                fillUniform<double>(*m_x, rng, 0.0, 10.0);
                fillUniform<double>(*m_out, rng, 0.0, 10.0);
            }
        }
        else {
            const std::size_t edge = std::max<std::size_t>(n, 1);
            m_a.emplace(Device::host(), IndexVec(edge, edge), sizeof(double));
            m_b.emplace(Device::host(), IndexVec(edge, edge), sizeof(double));
            m_out.emplace(Device::host(), IndexVec(edge, edge), sizeof(double));
            if (n > 0) {
                fillUniform<double>(*m_a, rng, 0.0, 10.0);
                fillUniform<double>(*m_b, rng, 0.0, 10.0);
                fillUniform<double>(*m_out, rng, 0.0, 10.0);
            }
        }

        m_pristine.emplace(Device::host(), m_out->extent(), sizeof(double));
        std::memcpy(m_pristine->data(), m_out->data(), m_out->storageBytes());

        if (wantReference && n > 0) {
            m_reference.emplace(Device::host(), m_out->extent(), sizeof(double));
            std::memcpy(m_reference->data(), m_out->data(), m_out->storageBytes());
            runNativeOn(*m_reference);
        }
    }

    void restoreOutput()
    {
        std::memcpy(m_out->data(), m_pristine->data(), m_out->storageBytes());
    }

    /// One timed execution on the given backend name; outputs land in the
    /// working buffer. Returns wall seconds of the enqueue-and-wait only.
    double runTimed(const std::string& backend, const Variant& variant, Queue& queue)
    {
        if (backend == kNativeName) {
            const auto t0 = Clock::now();
            runNativeOn(*m_out);
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        const BackendKind kind = parseBackend(backend);
        ExecTask task = makeTask(kind, variant);
        const auto t0 = Clock::now();
        queue.enqueue(std::move(task));
        queue.wait();
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    bool verifyOutput() const
    {
        if (!m_reference)
            return true;
        return std::memcmp(m_out->data(), m_reference->data(), m_out->storageBytes()) == 0;
    }

    void corruptOutput()
    {
        if (m_out->storageBytes() > 0)
            m_out->data()[0] ^= std::byte{0x01};
    }

    /// (b, v) column values of the division the variant produces.
    std::pair<std::size_t, std::size_t> divisionColumns(const std::string& backend,
                                                        const Variant& variant) const
    {
        if (backend == kNativeName)
            return {0, 0};
        const WorkDiv wd = makeWorkDiv(parseBackend(backend), variant);
        return {wd.threadsPerBlock().product(), wd.elementsPerThread().product()};
    }

private:
    WorkDiv makeWorkDiv(BackendKind kind, const Variant& variant) const
    {
        if (m_kernel == "axpy")
            return kernels::axpyWorkDiv(kind, m_n, variant.threadsPerBlock, variant.elementsPerThread);
        if (m_kernel == "gemm-naive") {
            if (variant.pessimized) {
                // Maximal elements per thread: one worker owns the whole output.
                const IndexVec problem(m_n, m_n);
                return divideForBackend(problem, kind, IndexVec(1, 1), problem);
            }
            return kernels::gemmNaiveWorkDiv(kind, m_n, m_n, variant.threadsPerBlock,
                                             variant.elementsPerThread);
        }
        return kernels::gemmTiledWorkDiv(kind, m_n, m_n, variant.tile);
    }

    ExecTask makeTask(BackendKind kind, const Variant& variant)
    {
        const WorkDiv wd = makeWorkDiv(kind, variant);
        if (m_kernel == "axpy")
            return createExec(kind, wd, kernels::AxpyKernel{},
                              kernels::AxpyArgs{m_n, m_alpha, &*m_x, &*m_out});
        const kernels::GemmArgs args{m_n, m_n, m_n, m_alpha, m_beta, &*m_a, &*m_b, &*m_out,
                                     variant.tile};
        if (m_kernel == "gemm-naive")
            return createExec(kind, wd, kernels::GemmNaiveKernel{}, args);
        return createExec(kind, wd, kernels::GemmTiledKernel{}, args);
    }

    void runNativeOn(Buffer& out)
    {
        if (m_n == 0)
            return;
        if (m_kernel == "axpy") {
            kernels::axpyReference(m_n, m_alpha, m_x->rowData<double>(0), out.rowData<double>(0));
            return;
        }
        kernels::gemmReference(m_n, m_n, m_n, m_alpha, m_beta, m_a->rowData<double>(0),
                               m_a->leadingDim<double>(), m_b->rowData<double>(0),
                               m_b->leadingDim<double>(), out.rowData<double>(0),
                               out.leadingDim<double>());
    }

    std::string m_kernel;
    std::size_t m_n;
    double m_alpha = 0.0;
    double m_beta = 0.0;
    std::optional<Buffer> m_x; // axpy input
    std::optional<Buffer> m_a; // gemm inputs
    std::optional<Buffer> m_b;
    std::optional<Buffer> m_out;
    std::optional<Buffer> m_pristine;
    std::optional<Buffer> m_reference;
};

void validate(const BenchConfig& cfg)
{
    if (cfg.kernel != "axpy" && cfg.kernel != "gemm-naive" && cfg.kernel != "gemm-tiled")
        throw UsageError("unknown kernel '" + cfg.kernel + "' (expected axpy, gemm-naive or gemm-tiled)");
    if (cfg.backend != "all" && cfg.backend != kNativeName)
        parseBackend(cfg.backend); // throws on unknown names
    if (cfg.reps < 3)
        throw UsageError("reps must be at least 3");
    if (cfg.sizes.empty())
        throw UsageError("at least one size is required");
    for (std::size_t n : cfg.sizes)
        if (n == 0)
            throw UsageError("sizes must be at least 1");
    if (cfg.tile == 0 || cfg.threadsPerBlock == 0 || cfg.elementsPerThread == 0)
        throw UsageError("tile, tpb and ept must be at least 1");
    if (cfg.pessimize && cfg.kernel == "axpy")
        throw UsageError("--pessimize applies to the gemm kernels only");
    if (!cfg.baseline.empty() && cfg.baseline != kNativeName)
        parseBackend(cfg.baseline);
}

std::vector<std::string> expandBackends(const BenchConfig& cfg)
{
    std::vector<std::string> backends;
    if (cfg.backend == "all") {
        for (BackendKind kind : allBackends)
            backends.emplace_back(backendName(kind));
    }
    else {
        backends.push_back(cfg.backend);
    }
    if (!cfg.baseline.empty()
        && std::find(backends.begin(), backends.end(), cfg.baseline) == backends.end())
        backends.insert(backends.begin(), cfg.baseline);
    return backends;
}

} // namespace

std::vector<BenchRecord> runBench(const BenchConfig& cfg)
{
    validate(cfg);
    const std::vector<std::string> backends = expandBackends(cfg);

    std::vector<Variant> variants;
    variants.push_back(Variant{false, cfg.tile, cfg.threadsPerBlock, cfg.elementsPerThread});
    if (cfg.pessimize)
        variants.push_back(Variant{true, 1, cfg.threadsPerBlock, cfg.elementsPerThread});

    const bool inject = faultInjectionEnabled();
    Queue queue(Device::host(), QueueFlavor::Sync);
    std::vector<BenchRecord> records;

    for (std::size_t n : cfg.sizes) {
        Workload work(cfg.kernel, n, cfg.seed, cfg.verify);
        for (const Variant& variant : variants) {
            for (const std::string& backend : backends) {
                work.restoreOutput();
                work.runTimed(backend, variant, queue); // warm-up, discarded

                for (int rep = 0; rep < cfg.reps; ++rep) {
                    work.restoreOutput();
                    const double seconds = work.runTimed(backend, variant, queue);
                    if (inject)
                        work.corruptOutput();
                    const bool verified = !cfg.verify || work.verifyOutput();

                    if (!(seconds > 0.0))
                        continue; // timer floor: no meaningful rate, skip the record
                    BenchRecord rec;
                    rec.kernel = cfg.kernel;
                    rec.backend = backend;
                    rec.n = n;
                    std::tie(rec.b, rec.v) = work.divisionColumns(backend, variant);
                    rec.tile = cfg.kernel == "gemm-tiled" ? variant.tile : 0;
                    rec.rep = rep;
                    rec.seconds = seconds;
                    rec.gflops = flopCount(cfg.kernel, n) / seconds / 1e9;
                    rec.verified = verified;
                    records.push_back(std::move(rec));
                }
            }
        }
    }
    return records;
}

double nativeBaselineSeconds(const std::string& kernel, std::size_t n, std::uint64_t seed)
{
    if (kernel != "axpy" && kernel != "gemm-naive" && kernel != "gemm-tiled")
        throw UsageError("unknown kernel '" + kernel + "'");
    Workload work(kernel, n, seed, false);
    Queue queue(Device::host(), QueueFlavor::Sync);
    const Variant variant;
    work.restoreOutput();
    work.runTimed(std::string(kNativeName), variant, queue); // warm-up
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
        work.restoreOutput();
        times.push_back(work.runTimed(std::string(kNativeName), variant, queue));
    }
    return median(std::move(times));
}

std::vector<ReportRow> relativeReport(const std::vector<BenchRecord>& records,
                                      const std::string& baselineBackend)
{
    using PointKey = std::tuple<std::string, std::string, std::size_t>; // kernel, backend, n
    std::map<PointKey, std::vector<double>> samples;
    for (const BenchRecord& r : records)
        samples[{r.kernel, r.backend, r.n}].push_back(r.seconds);

    std::map<std::pair<std::string, std::size_t>, double> baselineMedian;
    for (const auto& [key, times] : samples)
        if (std::get<1>(key) == baselineBackend)
            baselineMedian[{std::get<0>(key), std::get<2>(key)}] = median(times);

    std::vector<ReportRow> rows;
    for (const auto& [key, times] : samples) {
        const auto& [kernel, backend, n] = key;
        const auto base = baselineMedian.find({kernel, n});
        if (base == baselineMedian.end())
            throw UsageError("relativeReport: no '" + baselineBackend + "' records for kernel "
                             + kernel + " at n=" + std::to_string(n));
        if (!(base->second > 0.0))
            throw UsageError("relativeReport: baseline median is zero");
        rows.push_back(ReportRow{kernel, backend, n, median(times) / base->second});
    }
    return rows;
}

std::string pessimizeSummary(const std::vector<BenchRecord>& records, const BenchConfig& cfg)
{
    if (!cfg.pessimize)
        return {};
    using PointKey = std::tuple<std::string, std::string, std::size_t>;
    std::map<PointKey, std::vector<double>> normal;
    std::map<PointKey, std::vector<double>> pessimized;
    for (const BenchRecord& r : records) {
        const bool isPessimized = cfg.kernel == "gemm-tiled" ? r.tile == 1 && cfg.tile != 1
                                                             : r.v == r.n * r.n;
        auto& bucket = isPessimized ? pessimized : normal;
        bucket[{r.kernel, r.backend, r.n}].push_back(r.seconds);
    }

    std::ostringstream os;
    os << "pessimized division slowdown (median vs tuned division):\n";
    for (const auto& [key, times] : pessimized) {
        const auto& [kernel, backend, n] = key;
        const auto tuned = normal.find(key);
        if (tuned == normal.end())
            continue;
        os << "  " << kernel << " " << backend << " n=" << n << ": "
           << formatDouble(median(times) / median(tuned->second)) << "x slower\n";
    }
    return os.str();
}

} // namespace kernelweave::bench
