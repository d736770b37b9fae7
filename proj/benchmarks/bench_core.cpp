/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <kernelweave/kernelweave.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace kernelweave;

static void IndexLinearize(benchmark::State& state)
{
    const IndexVec extent(64, 64, 64);
    std::size_t lin = 0;
    for (auto _ : state) {
        const IndexVec idx = delinearize(lin % extent.product(), extent);
        benchmark::DoNotOptimize(linearize(idx, extent));
        lin += 7919;
    }
}
BENCHMARK(IndexLinearize);

static void PitchedCopy2D(benchmark::State& state)
{
    const auto edge = static_cast<std::size_t>(state.range(0));
    Queue q(Device::host(), QueueFlavor::Sync);
    Buffer src(Device::host(), IndexVec(edge, edge), 8, 128);
    Buffer dst(Device::host(), IndexVec(edge, edge), 8, 64);
    std::mt19937_64 rng(1);
    fillUniform<double>(src, rng, 0.0, 10.0);
    for (auto _ : state) {
        copyBuffer(q, dst, src, src.extent());
        q.wait();
        benchmark::DoNotOptimize(dst.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * edge * edge * 8);
}
BENCHMARK(PitchedCopy2D)->Arg(64)->Arg(512)->Arg(2048);

static void SyncQueueEnqueue(benchmark::State& state)
{
    Queue q(Device::host(), QueueFlavor::Sync);
    const WorkDiv wd(IndexVec(1), IndexVec(1), IndexVec(1));
    struct Noop {
        void operator()(const AccContext&) const {}
    };
    for (auto _ : state)
        q.enqueue(createExec(BackendKind::Serial, wd, Noop{}));
}
BENCHMARK(SyncQueueEnqueue);

static void AsyncQueueRoundTrip(benchmark::State& state)
{
    Queue q(Device::host(), QueueFlavor::Async);
    const WorkDiv wd(IndexVec(1), IndexVec(1), IndexVec(1));
    struct Noop {
        void operator()(const AccContext&) const {}
    };
    for (auto _ : state) {
        q.enqueue(createExec(BackendKind::Serial, wd, Noop{}));
        q.wait();
    }
}
BENCHMARK(AsyncQueueRoundTrip);

// Per-(block, thread) dispatch cost of the type-erased grid walk.
static void DispatchOverhead(benchmark::State& state)
{
    const auto pairs = static_cast<std::size_t>(state.range(0));
    const WorkDiv wd(IndexVec(pairs), IndexVec(1), IndexVec(1));
    struct Noop {
        void operator()(const AccContext&) const {}
    };
    for (auto _ : state)
        executeTask(BackendKind::Serial, wd, Noop{});
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * pairs);
}
BENCHMARK(DispatchOverhead)->Arg(1024)->Arg(16384);

BENCHMARK_MAIN();
