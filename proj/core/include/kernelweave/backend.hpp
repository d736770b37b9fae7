/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <string_view>

namespace kernelweave {

/// The CPU execution strategies onto which the grid/block/thread/element
/// hierarchy is mapped. Selected by value at run time.
///
///  - Serial: one OS thread executes every (block, thread) pair in
///    linearized ascending order.
///  - BlocksParallel: blocks are distributed over a worker pool, one OS
///    thread per block; the abstract threads of a block run sequentially.
///    The pool is sized to the hardware concurrency unless the
///    KERNELWEAVE_POOL_SIZE environment variable overrides it.
///  - ThreadsParallel: the threads of one block run concurrently on
///    distinct OS threads with a shared barrier; blocks execute one at a
///    time on the same leased worker team.
enum class BackendKind {
    Serial,
    BlocksParallel,
    ThreadsParallel,
};

inline constexpr std::array<BackendKind, 3> allBackends{
    BackendKind::Serial,
    BackendKind::BlocksParallel,
    BackendKind::ThreadsParallel,
};

/// Stable lowercase name, also used by the bench CLI ("serial", "blocks",
/// "threads").
std::string_view backendName(BackendKind kind);

/// Inverse of backendName; throws UsageError for unknown names.
BackendKind parseBackend(std::string_view name);

} // namespace kernelweave
