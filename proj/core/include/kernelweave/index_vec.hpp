/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>

namespace kernelweave {

/// Fixed-dimensionality vector of non-negative extents or indices. This is the
/// universal coordinate type of the library: problem sizes, work divisions,
/// buffer extents and thread indices are all IndexVecs of one to three
/// components.
///
/// Components are ordered slowest-varying first. For a 2-D extent (r, c), r is
/// the outer axis and c is the contiguous inner axis; linearization is
/// row-major with the *last* component varying fastest, matching C memory
/// layout. Values are immutable after construction and freely shareable
/// between threads.
class IndexVec {
public:
    using Value = std::size_t;
    static constexpr std::size_t maxDim = 3;

    constexpr explicit IndexVec(Value x) : m_dim(1), m_comp{x, 0, 0} {}
    constexpr IndexVec(Value x, Value y) : m_dim(2), m_comp{x, y, 0} {}
    constexpr IndexVec(Value x, Value y, Value z) : m_dim(3), m_comp{x, y, z} {}

    /// dim-component vector with every component set to the same value.
    static constexpr IndexVec filled(std::size_t dim, Value value)
    {
        checkDim(dim);
        IndexVec v(value);
        v.m_dim = dim;
        for (std::size_t k = 1; k < dim && k < maxDim; ++k)
            v.m_comp[k] = value;
        return v;
    }

    constexpr std::size_t dim() const noexcept { return m_dim; }

    constexpr Value operator[](std::size_t k) const
    {
        if (k >= m_dim)
            throw UsageError("IndexVec: component index out of range");
        return m_comp[k];
    }

    /// Product of all components; the number of points in the box [0, *this).
    constexpr Value product() const noexcept
    {
        Value p = 1;
        for (std::size_t k = 0; k < m_dim; ++k)
            p *= m_comp[k];
        return p;
    }

    /// Returns a copy with component k replaced.
    constexpr IndexVec with(std::size_t k, Value value) const
    {
        if (k >= m_dim)
            throw UsageError("IndexVec: component index out of range");
        IndexVec v = *this;
        v.m_comp[k] = value;
        return v;
    }

    friend constexpr bool operator==(const IndexVec& a, const IndexVec& b) noexcept
    {
        if (a.m_dim != b.m_dim)
            return false;
        for (std::size_t k = 0; k < a.m_dim; ++k)
            if (a.m_comp[k] != b.m_comp[k])
                return false;
        return true;
    }

    friend constexpr bool operator!=(const IndexVec& a, const IndexVec& b) noexcept { return !(a == b); }

    friend std::size_t linearize(const IndexVec& idx, const IndexVec& extent);
    friend IndexVec delinearize(std::size_t lin, const IndexVec& extent);

private:
    static constexpr void checkDim(std::size_t dim)
    {
        if (dim < 1 || dim > maxDim)
            throw UsageError("IndexVec: dimensionality must be 1, 2 or 3");
    }

    std::size_t m_dim;
    std::array<Value, maxDim> m_comp;
};

namespace detail {

inline void requireSameDim(const IndexVec& a, const IndexVec& b, const char* what)
{
    if (a.dim() != b.dim())
        throw UsageError(std::string(what) + ": dimensionality mismatch ("
                         + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

} // namespace detail

/// Component-wise product, e.g. blocks x threads giving the grid thread extent.
inline IndexVec elementwiseProduct(const IndexVec& a, const IndexVec& b)
{
    detail::requireSameDim(a, b, "elementwiseProduct");
    IndexVec r = a;
    for (std::size_t k = 0; k < a.dim(); ++k)
        r = r.with(k, a[k] * b[k]);
    return r;
}

/// Component-wise sum.
inline IndexVec elementwiseSum(const IndexVec& a, const IndexVec& b)
{
    detail::requireSameDim(a, b, "elementwiseSum");
    IndexVec r = a;
    for (std::size_t k = 0; k < a.dim(); ++k)
        r = r.with(k, a[k] + b[k]);
    return r;
}

/// Component-wise ceil(a / b). Every component of b must be positive.
inline IndexVec ceilDivide(const IndexVec& a, const IndexVec& b)
{
    detail::requireSameDim(a, b, "ceilDivide");
    IndexVec r = a;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (b[k] == 0)
            throw UsageError("ceilDivide: zero divisor component");
        r = r.with(k, (a[k] + b[k] - 1) / b[k]);
    }
    return r;
}

inline IndexVec operator*(const IndexVec& a, const IndexVec& b) { return elementwiseProduct(a, b); }
inline IndexVec operator+(const IndexVec& a, const IndexVec& b) { return elementwiseSum(a, b); }

/// True when idx lies inside the box [0, extent).
inline bool insideExtent(const IndexVec& idx, const IndexVec& extent)
{
    detail::requireSameDim(idx, extent, "insideExtent");
    for (std::size_t k = 0; k < idx.dim(); ++k)
        if (idx[k] >= extent[k])
            return false;
    return true;
}

/// Row-major linear index of idx within extent; the last component varies
/// fastest. The result is < extent.product().
inline std::size_t linearize(const IndexVec& idx, const IndexVec& extent)
{
    detail::requireSameDim(idx, extent, "linearize");
    std::size_t lin = 0;
    for (std::size_t k = 0; k < idx.m_dim; ++k) {
        if (idx.m_comp[k] >= extent.m_comp[k])
            throw UsageError("linearize: index component out of range");
        lin = lin * extent.m_comp[k] + idx.m_comp[k];
    }
    return lin;
}

/// Inverse of linearize: maps lin < extent.product() back onto the box.
inline IndexVec delinearize(std::size_t lin, const IndexVec& extent)
{
    const std::size_t points = extent.product();
    if (lin >= points)
        throw UsageError("delinearize: linear index out of range");
    IndexVec idx = extent;
    if (points <= UINT32_MAX) {
        // 32-bit divides are noticeably faster and cover every practical extent.
        auto rest = static_cast<std::uint32_t>(lin);
        for (std::size_t k = extent.m_dim; k-- > 1;) {
            const auto e = static_cast<std::uint32_t>(extent.m_comp[k]);
            idx.m_comp[k] = rest % e;
            rest /= e;
        }
        idx.m_comp[0] = rest;
    }
    else {
        std::size_t rest = lin;
        for (std::size_t k = extent.m_dim; k-- > 1;) {
            idx.m_comp[k] = rest % extent.m_comp[k];
            rest /= extent.m_comp[k];
        }
        idx.m_comp[0] = rest;
    }
    return idx;
}

std::ostream& operator<<(std::ostream& os, const IndexVec& v);

} // namespace kernelweave
