/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <kernelweave/kernelweave.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace kernelweave;
using namespace kernelweave::kernels;

namespace {

Buffer uniformBuffer(const IndexVec& extent, std::uint64_t seed)
{
    Buffer buf(Device::host(), extent, sizeof(double));
    std::mt19937_64 rng(seed);
    fillUniform<double>(buf, rng, 0.0, 10.0);
    return buf;
}

BackendKind backendArg(const benchmark::State& state)
{
    return allBackends[static_cast<std::size_t>(state.range(1)) % allBackends.size()];
}

} // namespace

static void Axpy(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const BackendKind backend = backendArg(state);
    state.SetLabel(std::string(backendName(backend)));

    Buffer x = uniformBuffer(IndexVec(n), 1);
    Buffer y = uniformBuffer(IndexVec(n), 2);
    const WorkDiv wd = axpyWorkDiv(backend, n, 16, 4096);
    for (auto _ : state)
        executeTask(backend, wd, AxpyKernel{}, AxpyArgs{n, 2.5, &x, &y});
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n * 2);
}
BENCHMARK(Axpy)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1, 2}});

static void GemmNaive(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const BackendKind backend = backendArg(state);
    state.SetLabel(std::string(backendName(backend)));

    Buffer a = uniformBuffer(IndexVec(n, n), 3);
    Buffer b = uniformBuffer(IndexVec(n, n), 4);
    Buffer c = uniformBuffer(IndexVec(n, n), 5);
    const WorkDiv wd = gemmNaiveWorkDiv(backend, n, n, 8, n);
    for (auto _ : state)
        executeTask(backend, wd, GemmNaiveKernel{}, GemmArgs{n, n, n, 1.5, 0.5, &a, &b, &c});
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations())
                            * static_cast<std::int64_t>(2 * n * n * n + 3 * n * n));
}
BENCHMARK(GemmNaive)->ArgsProduct({{128, 256}, {0, 1, 2}});

static void GemmTiled(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const BackendKind backend = backendArg(state);
    state.SetLabel(std::string(backendName(backend)));

    Buffer a = uniformBuffer(IndexVec(n, n), 6);
    Buffer b = uniformBuffer(IndexVec(n, n), 7);
    Buffer c = uniformBuffer(IndexVec(n, n), 8);
    const WorkDiv wd = gemmTiledWorkDiv(backend, n, n, 16);
    for (auto _ : state)
        executeTask(backend, wd, GemmTiledKernel{}, GemmArgs{n, n, n, 1.5, 0.5, &a, &b, &c, 16});
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations())
                            * static_cast<std::int64_t>(2 * n * n * n + 3 * n * n));
}
BENCHMARK(GemmTiled)->ArgsProduct({{128, 256, 512}, {0, 1}});

BENCHMARK_MAIN();
