/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/kernels/gemm.hpp"

#include <algorithm>
#include <vector>

namespace kernelweave::kernels {

void GemmNaiveKernel::operator()(const AccContext& acc, const GemmArgs& args) const
{
    const IndexVec gridThreadIdx = getIdx(acc, Level::Grid, Unit::Threads);
    const IndexVec elemsPerThread = getWorkDiv(acc, Level::Thread, Unit::Elems);

    const std::size_t rowFirst = gridThreadIdx[0] * elemsPerThread[0];
    const std::size_t colFirst = gridThreadIdx[1] * elemsPerThread[1];
    if (rowFirst >= args.m || colFirst >= args.n)
        return;
    const std::size_t rowEnd = std::min(rowFirst + elemsPerThread[0], args.m);
    const std::size_t colEnd = std::min(colFirst + elemsPerThread[1], args.n);

    const double* a = args.a->rowData<double>(0);
    const double* b = args.b->rowData<double>(0);
    double* c = args.c->rowData<double>(0);
    const std::size_t lda = args.a->leadingDim<double>();
    const std::size_t ldb = args.b->leadingDim<double>();
    const std::size_t ldc = args.c->leadingDim<double>();

    for (std::size_t r = rowFirst; r < rowEnd; ++r) {
        for (std::size_t col = colFirst; col < colEnd; ++col) {
            double acc0 = 0.0;
            for (std::size_t p = 0; p < args.k; ++p)
                acc0 += a[r * lda + p] * b[p * ldb + col];
            c[r * ldc + col] = args.alpha * acc0 + args.beta * c[r * ldc + col];
        }
    }
}

void GemmTiledKernel::operator()(const AccContext& acc, const GemmArgs& args) const
{
    const std::size_t tile = args.tile;
    double* tileA = allocSharedMem<double>(acc, tile * tile);
    double* tileB = allocSharedMem<double>(acc, tile * tile);

    const IndexVec blockIdx = getIdx(acc, Level::Grid, Unit::Blocks);
    const IndexVec threadIdx = getIdx(acc, Level::Block, Unit::Threads);
    const IndexVec elemsPerThread = getWorkDiv(acc, Level::Thread, Unit::Elems);

    const std::size_t rowBase = blockIdx[0] * tile; // tile origin within C
    const std::size_t colBase = blockIdx[1] * tile;

    // This thread's slice of the tile (tile coordinates, clamped).
    const std::size_t tr0 = std::min(threadIdx[0] * elemsPerThread[0], tile);
    const std::size_t tc0 = std::min(threadIdx[1] * elemsPerThread[1], tile);
    const std::size_t trEnd = std::min(tr0 + elemsPerThread[0], tile);
    const std::size_t tcEnd = std::min(tc0 + elemsPerThread[1], tile);
    const std::size_t ownedRows = trEnd - tr0;
    const std::size_t ownedCols = tcEnd - tc0;

    const double* a = args.a->rowData<double>(0);
    const double* b = args.b->rowData<double>(0);
    double* c = args.c->rowData<double>(0);
    const std::size_t lda = args.a->leadingDim<double>();
    const std::size_t ldb = args.b->leadingDim<double>();
    const std::size_t ldc = args.c->leadingDim<double>();

    std::vector<double> partial(ownedRows * ownedCols, 0.0);

    const std::size_t kSteps = (args.k + tile - 1) / tile;
    for (std::size_t step = 0; step < kSteps; ++step) {
        const std::size_t kBase = step * tile;

        // Threads owning the first column chunk stage their tile rows: row sr
        // of the A tile and row sr of the B tile, zero-padding whatever falls
        // outside the logical extents so the accumulation below is uniform.
        if (tc0 == 0) {
            for (std::size_t sr = tr0; sr < trEnd; ++sr) {
                const std::size_t aRow = rowBase + sr;
                for (std::size_t j = 0; j < tile; ++j) {
                    const std::size_t aCol = kBase + j;
                    tileA[sr * tile + j] =
                        (aRow < args.m && aCol < args.k) ? a[aRow * lda + aCol] : 0.0;
                }
                const std::size_t bRow = kBase + sr;
                for (std::size_t j = 0; j < tile; ++j) {
                    const std::size_t bCol = colBase + j;
                    tileB[sr * tile + j] =
                        (bRow < args.k && bCol < args.n) ? b[bRow * ldb + bCol] : 0.0;
                }
            }
        }
        syncBlockThreads(acc);

        for (std::size_t r = tr0; r < trEnd; ++r) {
            for (std::size_t col = tc0; col < tcEnd; ++col) {
                double sum = partial[(r - tr0) * ownedCols + (col - tc0)];
                for (std::size_t p = 0; p < tile; ++p)
                    sum += tileA[r * tile + p] * tileB[p * tile + col];
                partial[(r - tr0) * ownedCols + (col - tc0)] = sum;
            }
        }
        syncBlockThreads(acc);
    }

    for (std::size_t r = tr0; r < trEnd; ++r) {
        const std::size_t outRow = rowBase + r;
        if (outRow >= args.m)
            break;
        for (std::size_t col = tc0; col < tcEnd; ++col) {
            const std::size_t outCol = colBase + col;
            if (outCol >= args.n)
                break;
            c[outRow * ldc + outCol] =
                args.alpha * partial[(r - tr0) * ownedCols + (col - tc0)] + args.beta * c[outRow * ldc + outCol];
        }
    }
}

WorkDiv gemmNaiveWorkDiv(BackendKind backend, std::size_t m, std::size_t n,
                         std::size_t threadsPerBlock, std::size_t elementsPerThread)
{
    return divideForBackend(IndexVec(m, n), backend, IndexVec(threadsPerBlock, 1),
                            IndexVec(1, elementsPerThread));
}

WorkDiv gemmTiledWorkDiv(BackendKind backend, std::size_t m, std::size_t n, std::size_t tile)
{
    if (tile == 0)
        throw UsageError("gemmTiledWorkDiv: tile edge must be positive");
    const IndexVec blocks((m + tile - 1) / tile, (n + tile - 1) / tile);
    if (backend == BackendKind::ThreadsParallel)
        return WorkDiv(blocks, IndexVec(tile, 1), IndexVec(1, tile));
    return WorkDiv(blocks, IndexVec(1, 1), IndexVec(tile, tile));
}

} // namespace kernelweave::kernels
