/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/acc.hpp"
#include "kernelweave/exec.hpp"

#include <atomic>
#include <barrier>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace kernelweave {

namespace detail {

/// Per-block shared memory region pool. Allocation calls are matched across a
/// block's threads by call-sequence index: the first thread to reach index i
/// allocates and zeroes the region, every later thread at index i joins it
/// (sizes verified). Slot storage is retained across blocks; resetBlock()
/// only invalidates the live slots, so the next block starts fresh without
/// reallocating.
class SharedArena {
public:
    std::byte* acquire(std::size_t callIdx, std::size_t bytes)
    {
        std::scoped_lock lock(m_mutex);
        if (callIdx < m_live) {
            Slot& slot = m_slots[callIdx];
            if (slot.bytes != bytes)
                throw UsageError("allocSharedMem: divergent allocation sequence across the threads of a block");
            return slot.storage.data();
        }
        // Per-thread call indices grow one at a time, so the first claim of a
        // new slot always arrives exactly at m_live.
        if (callIdx != m_live)
            throw UsageError("allocSharedMem: allocation sequence out of order");
        if (m_slots.size() <= callIdx)
            m_slots.resize(callIdx + 1);
        Slot& slot = m_slots[callIdx];
        if (slot.storage.size() < bytes)
            slot.storage.resize(bytes);
        std::fill_n(slot.storage.begin(), bytes, std::byte{0});
        slot.bytes = bytes;
        ++m_live;
        return slot.storage.data();
    }

    void resetBlock() noexcept { m_live = 0; }

private:
    struct Slot {
        std::vector<std::byte> storage;
        std::size_t bytes = 0;
    };

    std::mutex m_mutex;
    std::vector<Slot> m_slots;
    std::size_t m_live = 0;
};

class TeamBarrier {
public:
    explicit TeamBarrier(std::ptrdiff_t count) : m_barrier(count) {}

    void arriveAndWait() { m_barrier.arrive_and_wait(); }

    /// Arrive, then permanently leave the team (used when a thread abandons a
    /// block after a kernel failure so waiting peers are released).
    void arriveAndDrop() { m_barrier.arrive_and_drop(); }

private:
    std::barrier<> m_barrier;
};

struct AccFactory {
    static AccContext make(const WorkDiv* wd, IndexVec blockIdx, IndexVec threadIdx, SharedArena* arena,
                           TeamBarrier* barrier, std::size_t blockThreadCount, bool threadsConcurrent)
    {
        return AccContext(wd, blockIdx, threadIdx, arena, barrier, blockThreadCount, threadsConcurrent);
    }
};

namespace {

/// Records the first failure of a task; later failures only bump the count.
class FailureLatch {
public:
    void record(std::exception_ptr error) noexcept
    {
        std::scoped_lock lock(m_mutex);
        if (!m_error)
            m_error = std::move(error);
    }

    void rethrowIfFailed() const
    {
        if (m_error)
            std::rethrow_exception(m_error);
    }

private:
    std::mutex m_mutex;
    std::exception_ptr m_error;
};

std::size_t poolSizeFromEnv(std::size_t fallback)
{
    const char* raw = std::getenv("KERNELWEAVE_POOL_SIZE");
    if (raw == nullptr || *raw == '\0')
        return fallback;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1)
        return fallback; // malformed override is ignored
    return static_cast<std::size_t>(value);
}

/// Runs every (block, thread) pair of the range [firstBlock, lastBlock) in
/// linearized ascending order on the calling thread. Shared memory works
/// across the sequentially executed threads of a block; barriers over more
/// than one thread are rejected inside syncBlockThreads.
void runBlockRangeSequential(const WorkDiv& wd, const KernelBody& body, SharedArena& arena,
                             std::size_t firstBlock, std::size_t lastBlock)
{
    const IndexVec blockExtent = wd.blocksPerGrid();
    const IndexVec threadExtent = wd.threadsPerBlock();
    const std::size_t threadsPerBlock = threadExtent.product();
    for (std::size_t b = firstBlock; b < lastBlock; ++b) {
        const IndexVec blockIdx = delinearize(b, blockExtent);
        for (std::size_t t = 0; t < threadsPerBlock; ++t) {
            AccContext acc = AccFactory::make(&wd, blockIdx, delinearize(t, threadExtent), &arena,
                                              nullptr, threadsPerBlock, false);
            body(acc);
        }
        arena.resetBlock();
    }
}

void runSerial(const WorkDiv& wd, const KernelBody& body)
{
    SharedArena arena;
    runBlockRangeSequential(wd, body, arena, 0, wd.blocksPerGrid().product());
}

void runBlocksParallel(const WorkDiv& wd, const KernelBody& body)
{
    const std::size_t numBlocks = wd.blocksPerGrid().product();
    const std::size_t hardware = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(poolSizeFromEnv(hardware), std::max<std::size_t>(1, numBlocks));
    if (workers <= 1 || numBlocks <= 1) {
        runSerial(wd, body);
        return;
    }

    const IndexVec blockExtent = wd.blocksPerGrid();
    const IndexVec threadExtent = wd.threadsPerBlock();
    const std::size_t threadsPerBlock = threadExtent.product();
    std::atomic<std::size_t> nextBlock{0};
    std::atomic<bool> cancel{false};
    FailureLatch failure;

    auto workerLoop = [&]() {
        SharedArena arena; // worker-local: live regions of concurrent blocks never alias
        for (;;) {
            if (cancel.load(std::memory_order_relaxed))
                break;
            const std::size_t b = nextBlock.fetch_add(1, std::memory_order_relaxed);
            if (b >= numBlocks)
                break;
            const IndexVec blockIdx = delinearize(b, blockExtent);
            for (std::size_t t = 0; t < threadsPerBlock; ++t) {
                AccContext acc = AccFactory::make(&wd, blockIdx, delinearize(t, threadExtent), &arena,
                                                  nullptr, threadsPerBlock, false);
                try {
                    body(acc);
                }
                catch (...) {
                    failure.record(std::current_exception());
                    cancel.store(true, std::memory_order_relaxed);
                    break;
                }
            }
            arena.resetBlock();
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(workerLoop);
    }
    failure.rethrowIfFailed();
}

void runThreadsParallel(const WorkDiv& wd, const KernelBody& body)
{
    const std::size_t threadsPerBlock = wd.threadsPerBlock().product();
    if (threadsPerBlock <= 1) {
        // One thread per block: barrier semantics are trivial, run in place.
        runSerial(wd, body);
        return;
    }

    const std::size_t numBlocks = wd.blocksPerGrid().product();
    const IndexVec blockExtent = wd.blocksPerGrid();
    const IndexVec threadExtent = wd.threadsPerBlock();
    SharedArena arena; // blocks run one at a time on the leased team
    TeamBarrier barrier(static_cast<std::ptrdiff_t>(threadsPerBlock));
    std::atomic<bool> cancel{false};
    FailureLatch failure;

    auto workerLoop = [&](std::size_t threadLin) {
        const IndexVec threadIdx = delinearize(threadLin, threadExtent);
        for (std::size_t b = 0; b < numBlocks; ++b) {
            AccContext acc = AccFactory::make(&wd, delinearize(b, blockExtent), threadIdx, &arena,
                                              &barrier, threadsPerBlock, true);
            try {
                body(acc);
            }
            catch (...) {
                failure.record(std::current_exception());
                cancel.store(true);
                // Leave the team so peers blocked in syncBlockThreads or at
                // the block boundary are released; they stop after this block.
                barrier.arriveAndDrop();
                return;
            }
            barrier.arriveAndWait(); // block complete
            if (threadLin == 0 && !cancel.load())
                arena.resetBlock();
            barrier.arriveAndWait(); // arena reset visible before the next block
            if (cancel.load())
                return;
        }
    };

    {
        std::vector<std::jthread> team;
        team.reserve(threadsPerBlock);
        for (std::size_t t = 0; t < threadsPerBlock; ++t)
            team.emplace_back(workerLoop, t);
    }
    failure.rethrowIfFailed();
}

} // namespace

void runGrid(BackendKind backend, const WorkDiv& wd, const KernelBody& body)
{
    switch (backend) {
    case BackendKind::Serial:
        runSerial(wd, body);
        return;
    case BackendKind::BlocksParallel:
        runBlocksParallel(wd, body);
        return;
    case BackendKind::ThreadsParallel:
        runThreadsParallel(wd, body);
        return;
    }
    throw UsageError("runGrid: unknown BackendKind value");
}

} // namespace detail

IndexVec getIdx(const AccContext& acc, Level origin, Unit unit)
{
    if (origin == Level::Grid && unit == Unit::Blocks)
        return acc.gridBlockIdx();
    if (origin == Level::Grid && unit == Unit::Threads)
        return acc.gridBlockIdx() * acc.workDiv().threadsPerBlock() + acc.blockThreadIdx();
    if (origin == Level::Block && unit == Unit::Threads)
        return acc.blockThreadIdx();
    throw UsageError("getIdx: unsupported (origin, unit) pair (" + std::string(name(origin)) + ", "
                     + std::string(name(unit)) + ")");
}

IndexVec getWorkDiv(const AccContext& acc, Level origin, Unit unit)
{
    return totalExtent(acc.workDiv(), origin, unit);
}

void* allocSharedMem(const AccContext& acc, std::size_t elemCount, std::size_t elemSize)
{
    if (elemCount == 0 || elemSize == 0)
        throw UsageError("allocSharedMem: element count and size must be positive");
    const std::size_t callIdx = acc.m_sharedCallIdx++;
    return acc.m_arena->acquire(callIdx, elemCount * elemSize);
}

void syncBlockThreads(const AccContext& acc)
{
    if (acc.m_blockThreadCount <= 1)
        return;
    if (!acc.m_threadsConcurrent)
        throw UsageError("syncBlockThreads: this backend runs the threads of a block sequentially; "
                         "a barrier over more than one thread cannot be realized");
    acc.m_barrier->arriveAndWait();
}

double atomicAdd(const AccContext&, double& cell, double operand)
{
    std::atomic_ref<double> ref(cell);
    double old = ref.load();
    while (!ref.compare_exchange_weak(old, old + operand)) {
    }
    return old;
}

std::int64_t atomicAdd(const AccContext&, std::int64_t& cell, std::int64_t operand)
{
    return std::atomic_ref<std::int64_t>(cell).fetch_add(operand);
}

std::uint64_t atomicAdd(const AccContext&, std::uint64_t& cell, std::uint64_t operand)
{
    return std::atomic_ref<std::uint64_t>(cell).fetch_add(operand);
}

} // namespace kernelweave
