/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/acc.hpp"
#include "kernelweave/buffer.hpp"

namespace kernelweave::kernels {

/// Arguments of the matrix update C <- alpha * A * B + beta * C with
/// A (m x k), B (k x n) and C (m x n) stored in pitched 2-D double buffers.
/// Buffers may be larger than the logical extents; everything outside them is
/// left untouched. tile is the block tile edge of the tiled kernel and is
/// ignored by the naive kernel.
struct GemmArgs {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    const Buffer* a = nullptr;
    const Buffer* b = nullptr;
    Buffer* c = nullptr;
    std::size_t tile = 16;
};

/// Nested-loop GEMM. The 2-D grid thread space covers the m x n output with
/// element extension: a thread at grid index (r, c) owns output rows
/// [r*er, r*er+er) and columns [c*ec, c*ec+ec), clamped at (m, n), where
/// (er, ec) is elementsPerThread. Each owned element accumulates its dot
/// product in ascending k order.
struct GemmNaiveKernel {
    void operator()(const AccContext& acc, const GemmArgs& args) const;
};

/// Hierarchically tiled GEMM: one block per tile x tile output tile. The
/// block's threads cooperatively stage the matching A and B tiles into shared
/// memory (zero-padding ragged edges), synchronize, accumulate partial
/// products into per-thread registers, synchronize, and continue with the
/// next k step. Staging and accumulation walk k ascending, so the summation
/// order per output element is exactly the naive kernel's.
///
/// The work division must provide one block per output tile with
/// threadsPerBlock * elementsPerThread covering (tile, tile); use
/// gemmTiledWorkDiv() for the canonical shapes.
struct GemmTiledKernel {
    void operator()(const AccContext& acc, const GemmArgs& args) const;
};

/// Work division for the naive kernel over an m x n output: the scalar hints
/// B and V are placed on the row and column axis respectively, so thread-level
/// backends get ceil(m/B) x ceil(n/V) blocks of (B, 1) threads and
/// block-level backends ceil(m) x ceil(n/V) blocks of one thread, each thread
/// owning (1, V) elements.
WorkDiv gemmNaiveWorkDiv(BackendKind backend, std::size_t m, std::size_t n,
                         std::size_t threadsPerBlock, std::size_t elementsPerThread);

/// Work division for the tiled kernel: ceil(m/tile) x ceil(n/tile) blocks.
/// The thread-level backend runs (tile, 1) threads per block, each owning one
/// tile row of (1, tile) elements; block-level backends run one thread owning
/// the whole (tile, tile) tile.
WorkDiv gemmTiledWorkDiv(BackendKind backend, std::size_t m, std::size_t n, std::size_t tile);

} // namespace kernelweave::kernels
