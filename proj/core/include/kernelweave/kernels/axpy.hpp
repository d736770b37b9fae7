/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/acc.hpp"
#include "kernelweave/buffer.hpp"

namespace kernelweave::kernels {

/// Arguments of the vector update Y <- alpha * X + Y. X and Y are 1-D double
/// buffers of at least n elements; pointees must outlive the task.
struct AxpyArgs {
    std::size_t n = 0;
    double alpha = 0.0;
    const Buffer* x = nullptr;
    Buffer* y = nullptr;
};

/// Element-extended AXPY kernel. Each grid thread owns the contiguous run of
/// elementsPerThread indices starting at gridThreadIdx * elementsPerThread,
/// clamped at n; indices at or beyond n are never touched. Runs with a 1-D
/// work division whose grid element extent covers n.
struct AxpyKernel {
    void operator()(const AccContext& acc, const AxpyArgs& args) const;
};

/// Table-shaped work division for an AXPY of n elements: block-level backends
/// use ceil(n/V) blocks of one thread, the thread-level backend
/// ceil(n/(B*V)) blocks of B threads; V elements per thread either way.
WorkDiv axpyWorkDiv(BackendKind backend, std::size_t n, std::size_t threadsPerBlock,
                    std::size_t elementsPerThread);

} // namespace kernelweave::kernels
