/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>

namespace kernelweave::kernels {

/// Sequential AXPY, ascending index order: Y[i] = alpha * X[i] + Y[i].
/// This is both the verification oracle and the "native" baseline of the
/// bench harness — deliberately one code path.
void axpyReference(std::size_t n, double alpha, const double* x, double* y);

/// Sequential triple-loop GEMM on pitched storage (leading dimensions in
/// elements), ascending k order per output element:
/// C[r,c] = alpha * sum_p A[r,p] * B[p,c] + beta * C[r,c].
void gemmReference(std::size_t m, std::size_t n, std::size_t k, double alpha, double beta,
                   const double* a, std::size_t lda, const double* b, std::size_t ldb,
                   double* c, std::size_t ldc);

} // namespace kernelweave::kernels
