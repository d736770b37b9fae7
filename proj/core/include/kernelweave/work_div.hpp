/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/backend.hpp"
#include "kernelweave/error.hpp"
#include "kernelweave/index_vec.hpp"

namespace kernelweave {

/// Hierarchy levels an extent or index can originate from.
enum class Level {
    Grid,
    Block,
    Thread,
};

/// Units an extent or index is counted in.
enum class Unit {
    Blocks,
    Threads,
    Elems,
};

std::string_view name(Level level);
std::string_view name(Unit unit);

/// The three-level work division (blocksPerGrid, threadsPerBlock,
/// elementsPerThread) defining the execution domain of one task. All three
/// vectors share one dimensionality and every component is at least one; a
/// level without parallelism has extent one. Immutable and freely sendable.
class WorkDiv {
public:
    WorkDiv(IndexVec blocksPerGrid, IndexVec threadsPerBlock, IndexVec elementsPerThread);

    const IndexVec& blocksPerGrid() const noexcept { return m_blocksPerGrid; }
    const IndexVec& threadsPerBlock() const noexcept { return m_threadsPerBlock; }
    const IndexVec& elementsPerThread() const noexcept { return m_elementsPerThread; }

    std::size_t dim() const noexcept { return m_blocksPerGrid.dim(); }

    friend bool operator==(const WorkDiv& a, const WorkDiv& b) noexcept
    {
        return a.m_blocksPerGrid == b.m_blocksPerGrid && a.m_threadsPerBlock == b.m_threadsPerBlock
               && a.m_elementsPerThread == b.m_elementsPerThread;
    }

private:
    IndexVec m_blocksPerGrid;
    IndexVec m_threadsPerBlock;
    IndexVec m_elementsPerThread;
};

/// The n-dimensional extent of the work division measured from an origin
/// level in a given unit. Supported pairs: (Grid,Blocks), (Grid,Threads),
/// (Grid,Elems), (Block,Threads), (Block,Elems), (Thread,Elems); any other
/// pair is a usage error.
IndexVec totalExtent(const WorkDiv& wd, Level origin, Unit unit);

/// Computes a work division covering problemExtent for the given backend.
///
/// Block-level backends (Serial, BlocksParallel) get
///   blocksPerGrid = ceil(N / V), threadsPerBlock = 1;
/// the thread-level backend (ThreadsParallel) gets
///   blocksPerGrid = ceil(N / (B * V)), threadsPerBlock = B;
/// elementsPerThread = V in both shapes. Division is ceiling division, so the
/// grid element extent covers problemExtent component-wise and kernels guard
/// the tail. Hints are taken verbatim, not tuned.
WorkDiv divideForBackend(const IndexVec& problemExtent,
                         BackendKind backend,
                         const IndexVec& threadsPerBlockHint,
                         const IndexVec& elementsPerThreadHint);

} // namespace kernelweave
