/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/index_vec.hpp"

#include <ostream>

namespace kernelweave {

std::ostream& operator<<(std::ostream& os, const IndexVec& v)
{
    os << '(';
    for (std::size_t k = 0; k < v.dim(); ++k) {
        if (k)
            os << ',';
        os << v[k];
    }
    return os << ')';
}

} // namespace kernelweave
