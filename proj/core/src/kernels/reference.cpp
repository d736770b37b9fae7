/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/kernels/reference.hpp"

namespace kernelweave::kernels {

void axpyReference(std::size_t n, double alpha, const double* x, double* y)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = alpha * x[i] + y[i];
}

void gemmReference(std::size_t m, std::size_t n, std::size_t k, double alpha, double beta,
                   const double* a, std::size_t lda, const double* b, std::size_t ldb,
                   double* c, std::size_t ldc)
{
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < n; ++col) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p)
                acc += a[r * lda + p] * b[p * ldb + col];
            c[r * ldc + col] = alpha * acc + beta * c[r * ldc + col];
        }
    }
}

} // namespace kernelweave::kernels
