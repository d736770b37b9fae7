/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/acc.hpp"
#include "kernelweave/backend.hpp"
#include "kernelweave/work_div.hpp"

#include <functional>
#include <tuple>
#include <utility>

namespace kernelweave {

namespace detail {

using KernelBody = std::function<void(const AccContext&)>;

/// Backend-specific grid walk: invokes body exactly once per (block, thread)
/// pair of wd, mapped per the BackendKind contract. Synchronous; the first
/// kernel failure cancels remaining un-started blocks and is rethrown.
void runGrid(BackendKind backend, const WorkDiv& wd, const KernelBody& body);

} // namespace detail

/// Runs kernel(acc, args...) once per (block, thread) pair of wd on the given
/// backend. Externally synchronous — asynchrony belongs to queues. The kernel
/// must be const-callable and stateless with respect to the parallelization:
/// all data flows through the arguments, which are shared by every
/// invocation.
template <class Kernel, class... Args>
void executeTask(BackendKind backend, const WorkDiv& wd, const Kernel& kernel, const Args&... args)
{
    detail::runGrid(backend, wd, [&](const AccContext& acc) { kernel(acc, args...); });
}

} // namespace kernelweave
