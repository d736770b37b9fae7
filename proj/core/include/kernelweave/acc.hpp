/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/work_div.hpp"

#include <cstddef>
#include <cstdint>

namespace kernelweave {

namespace detail {
class SharedArena;
class TeamBarrier;
struct AccFactory;
} // namespace detail

/// Per-thread kernel-side handle. The executor constructs one AccContext per
/// (block, thread) invocation; it is valid only inside that invocation and
/// must never be stored or sent to another thread. All information a kernel
/// needs — indices, work division, shared memory, the block barrier — is
/// reached through it.
class AccContext {
public:
    AccContext(const AccContext&) = delete;
    AccContext& operator=(const AccContext&) = delete;

    const WorkDiv& workDiv() const noexcept { return *m_workDiv; }
    const IndexVec& gridBlockIdx() const noexcept { return m_gridBlockIdx; }
    const IndexVec& blockThreadIdx() const noexcept { return m_blockThreadIdx; }

private:
    friend struct detail::AccFactory;
    friend void* allocSharedMem(const AccContext&, std::size_t, std::size_t);
    friend void syncBlockThreads(const AccContext&);

    AccContext(const WorkDiv* workDiv,
               IndexVec gridBlockIdx,
               IndexVec blockThreadIdx,
               detail::SharedArena* arena,
               detail::TeamBarrier* barrier,
               std::size_t blockThreadCount,
               bool threadsConcurrent) noexcept
        : m_workDiv(workDiv)
        , m_gridBlockIdx(gridBlockIdx)
        , m_blockThreadIdx(blockThreadIdx)
        , m_arena(arena)
        , m_barrier(barrier)
        , m_blockThreadCount(blockThreadCount)
        , m_threadsConcurrent(threadsConcurrent)
    {
    }

    const WorkDiv* m_workDiv;
    IndexVec m_gridBlockIdx;
    IndexVec m_blockThreadIdx;
    detail::SharedArena* m_arena;
    detail::TeamBarrier* m_barrier;
    std::size_t m_blockThreadCount;
    bool m_threadsConcurrent;
    mutable std::size_t m_sharedCallIdx = 0;
};

/// The calling thread's index measured from an origin level. Supported pairs:
///   (Grid, Blocks)  -> gridBlockIdx
///   (Grid, Threads) -> gridBlockIdx * threadsPerBlock + blockThreadIdx
///   (Block, Threads)-> blockThreadIdx
/// Any other pair is a usage error.
IndexVec getIdx(const AccContext& acc, Level origin, Unit unit);

/// The work-division extent, same pairs and semantics as totalExtent().
IndexVec getWorkDiv(const AccContext& acc, Level origin, Unit unit);

/// Allocates (or joins) a per-block shared memory region of
/// elemCount * elemSize bytes, zero-initialized on first allocation.
///
/// Every thread of a block must issue the same sequence of allocation calls
/// with the same sizes; calls are matched across threads by their sequence
/// index, so the n-th call of every thread of one block yields the same
/// region. Distinct blocks never share a live region, and a region is
/// discarded when its block completes. A size mismatch at the same sequence
/// index is reported as a usage error.
void* allocSharedMem(const AccContext& acc, std::size_t elemCount, std::size_t elemSize);

/// Typed convenience over the byte-level allocation.
template <class T>
T* allocSharedMem(const AccContext& acc, std::size_t count)
{
    return static_cast<T*>(allocSharedMem(acc, count, sizeof(T)));
}

/// Block-wide barrier: no thread of the block proceeds until every thread of
/// the block has arrived. Collective — every thread must call it, or the
/// block deadlocks (documented contract, not detected). A no-op on
/// single-thread blocks. On backends that run a block's threads sequentially
/// (Serial, BlocksParallel) a barrier over more than one thread cannot be
/// realized and is reported as a usage error.
void syncBlockThreads(const AccContext& acc);

/// Atomic read-modify-write add on a cell of global memory, serialized with
/// respect to every thread of the task. Returns the pre-update value. The
/// floating point overload is a compare-exchange loop.
double atomicAdd(const AccContext& acc, double& cell, double operand);
std::int64_t atomicAdd(const AccContext& acc, std::int64_t& cell, std::int64_t operand);
std::uint64_t atomicAdd(const AccContext& acc, std::uint64_t& cell, std::uint64_t operand);

} // namespace kernelweave
