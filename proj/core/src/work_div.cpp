/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/work_div.hpp"

#include <string>

namespace kernelweave {

std::string_view name(Level level)
{
    switch (level) {
    case Level::Grid:
        return "Grid";
    case Level::Block:
        return "Block";
    case Level::Thread:
        return "Thread";
    }
    return "?";
}

std::string_view name(Unit unit)
{
    switch (unit) {
    case Unit::Blocks:
        return "Blocks";
    case Unit::Threads:
        return "Threads";
    case Unit::Elems:
        return "Elems";
    }
    return "?";
}

namespace {

void requirePositive(const IndexVec& v, const char* what)
{
    for (std::size_t k = 0; k < v.dim(); ++k)
        if (v[k] == 0)
            throw UsageError(std::string("WorkDiv: ") + what + " has a zero component; every level extent is at least 1");
}

[[noreturn]] void unsupportedPair(const char* what, Level origin, Unit unit)
{
    throw UsageError(std::string(what) + ": unsupported (origin, unit) pair ("
                     + std::string(name(origin)) + ", " + std::string(name(unit)) + ")");
}

} // namespace

WorkDiv::WorkDiv(IndexVec blocksPerGrid, IndexVec threadsPerBlock, IndexVec elementsPerThread)
    : m_blocksPerGrid(blocksPerGrid)
    , m_threadsPerBlock(threadsPerBlock)
    , m_elementsPerThread(elementsPerThread)
{
    detail::requireSameDim(m_blocksPerGrid, m_threadsPerBlock, "WorkDiv");
    detail::requireSameDim(m_blocksPerGrid, m_elementsPerThread, "WorkDiv");
    requirePositive(m_blocksPerGrid, "blocksPerGrid");
    requirePositive(m_threadsPerBlock, "threadsPerBlock");
    requirePositive(m_elementsPerThread, "elementsPerThread");
}

IndexVec totalExtent(const WorkDiv& wd, Level origin, Unit unit)
{
    switch (origin) {
    case Level::Grid:
        switch (unit) {
        case Unit::Blocks:
            return wd.blocksPerGrid();
        case Unit::Threads:
            return wd.blocksPerGrid() * wd.threadsPerBlock();
        case Unit::Elems:
            return wd.blocksPerGrid() * wd.threadsPerBlock() * wd.elementsPerThread();
        }
        break;
    case Level::Block:
        switch (unit) {
        case Unit::Threads:
            return wd.threadsPerBlock();
        case Unit::Elems:
            return wd.threadsPerBlock() * wd.elementsPerThread();
        default:
            break;
        }
        break;
    case Level::Thread:
        if (unit == Unit::Elems)
            return wd.elementsPerThread();
        break;
    }
    unsupportedPair("totalExtent", origin, unit);
}

WorkDiv divideForBackend(const IndexVec& problemExtent,
                         BackendKind backend,
                         const IndexVec& threadsPerBlockHint,
                         const IndexVec& elementsPerThreadHint)
{
    detail::requireSameDim(problemExtent, threadsPerBlockHint, "divideForBackend");
    detail::requireSameDim(problemExtent, elementsPerThreadHint, "divideForBackend");
    requirePositive(problemExtent, "problem extent");
    requirePositive(threadsPerBlockHint, "threadsPerBlock hint");
    requirePositive(elementsPerThreadHint, "elementsPerThread hint");

    const IndexVec ones = IndexVec::filled(problemExtent.dim(), 1);
    switch (backend) {
    case BackendKind::Serial:
    case BackendKind::BlocksParallel:
        // Block-level shape: N/V blocks of a single thread.
        return WorkDiv(ceilDivide(problemExtent, elementsPerThreadHint), ones, elementsPerThreadHint);
    case BackendKind::ThreadsParallel:
        // Thread-level shape: N/(B*V) blocks of B threads.
        return WorkDiv(ceilDivide(problemExtent, threadsPerBlockHint * elementsPerThreadHint),
                       threadsPerBlockHint, elementsPerThreadHint);
    }
    throw UsageError("divideForBackend: unknown BackendKind value");
}

} // namespace kernelweave
