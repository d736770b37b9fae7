/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/kernels/axpy.hpp"

#include <algorithm>

namespace kernelweave::kernels {

void AxpyKernel::operator()(const AccContext& acc, const AxpyArgs& args) const
{
    const std::size_t gridThreadIdx = getIdx(acc, Level::Grid, Unit::Threads)[0];
    const std::size_t threadElemExtent = getWorkDiv(acc, Level::Thread, Unit::Elems)[0];
    const std::size_t threadFirstElemIdx = gridThreadIdx * threadElemExtent;
    if (threadFirstElemIdx >= args.n)
        return;
    const std::size_t elems = std::min(threadElemExtent, args.n - threadFirstElemIdx);

    const double* x = args.x->rowData<double>(0);
    double* y = args.y->rowData<double>(0);
    for (std::size_t i = threadFirstElemIdx; i < threadFirstElemIdx + elems; ++i)
        y[i] = args.alpha * x[i] + y[i];
}

WorkDiv axpyWorkDiv(BackendKind backend, std::size_t n, std::size_t threadsPerBlock,
                    std::size_t elementsPerThread)
{
    return divideForBackend(IndexVec(n), backend, IndexVec(threadsPerBlock),
                            IndexVec(elementsPerThread));
}

} // namespace kernelweave::kernels
