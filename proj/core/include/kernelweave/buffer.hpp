/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/device.hpp"
#include "kernelweave/index_vec.hpp"
#include "kernelweave/queue.hpp"

#include <cmath>
#include <cstddef>
#include <random>
#include <type_traits>

namespace kernelweave {

/// Device-associated pitched n-D memory region (1-3 dimensions).
///
/// Buffers are byte-typed with a declared element size; typed access is a
/// convenience layer on top. Rows — runs along the fastest-varying (last)
/// axis — are padded so that consecutive rows start rowPitch() bytes apart,
/// with the pitch rounded up to the row alignment quantum (64 bytes unless
/// overridden at allocation). 1-D buffers are dense: pitch equals the row's
/// byte size. Freshly allocated contents are unspecified.
///
/// Buffers are sendable between threads. Kernel access follows the executor's
/// contract of exclusive-write or shared-read per task; host access must not
/// race an in-flight task on the same buffer.
class Buffer {
public:
    static constexpr std::size_t defaultRowAlignment = 64;

    Buffer(Device device, const IndexVec& extent, std::size_t elemSize,
           std::size_t rowAlignment = defaultRowAlignment);
    ~Buffer();

    Buffer(Buffer&& other) noexcept;
    Buffer& operator=(Buffer&& other) noexcept;
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;

    Device device() const noexcept { return m_device; }
    const IndexVec& extent() const noexcept { return m_extent; }
    std::size_t dim() const noexcept { return m_extent.dim(); }
    std::size_t elemSize() const noexcept { return m_elemSize; }

    /// Byte stride between consecutive rows along the fastest-varying axis.
    std::size_t rowPitch() const noexcept { return m_rowPitch; }

    /// Number of rows: the product of every extent component but the last.
    std::size_t rowCount() const noexcept;

    /// Bytes of one dense (unpadded) row.
    std::size_t rowBytes() const noexcept { return m_extent[dim() - 1] * m_elemSize; }

    /// Total owned storage: rowCount() * rowPitch().
    std::size_t storageBytes() const noexcept { return rowCount() * m_rowPitch; }

    std::byte* data() noexcept { return m_storage; }
    const std::byte* data() const noexcept { return m_storage; }

    /// Byte offset of the element at idx:
    /// (row-major row index) * rowPitch + idx[last] * elemSize.
    std::size_t byteOffset(const IndexVec& idx) const;

    void* elementPtr(const IndexVec& idx) { return m_storage + byteOffset(idx); }
    const void* elementPtr(const IndexVec& idx) const { return m_storage + byteOffset(idx); }

    template <class T>
    T& at(const IndexVec& idx)
    {
        checkElemType(sizeof(T));
        return *static_cast<T*>(elementPtr(idx));
    }

    template <class T>
    const T& at(const IndexVec& idx) const
    {
        checkElemType(sizeof(T));
        return *static_cast<const T*>(elementPtr(idx));
    }

    /// Typed pointer to the start of a row (rows numbered row-major).
    template <class T>
    T* rowData(std::size_t row)
    {
        checkElemType(sizeof(T));
        checkRow(row);
        return reinterpret_cast<T*>(m_storage + row * m_rowPitch);
    }

    template <class T>
    const T* rowData(std::size_t row) const
    {
        checkElemType(sizeof(T));
        checkRow(row);
        return reinterpret_cast<const T*>(m_storage + row * m_rowPitch);
    }

    /// Row pitch in elements of T; requires the pitch to be divisible.
    template <class T>
    std::size_t leadingDim() const
    {
        checkElemType(sizeof(T));
        if (m_rowPitch % sizeof(T) != 0)
            throw UsageError("Buffer: row pitch not divisible by element size");
        return m_rowPitch / sizeof(T);
    }

private:
    void checkElemType(std::size_t size) const
    {
        if (size != m_elemSize)
            throw UsageError("Buffer: typed access with mismatching element size");
    }
    void checkRow(std::size_t row) const
    {
        if (row >= rowCount())
            throw UsageError("Buffer: row index out of range");
    }

    Device m_device;
    IndexVec m_extent;
    std::size_t m_elemSize;
    std::size_t m_rowPitch;
    std::size_t m_alignment;
    std::byte* m_storage = nullptr;
};

inline Buffer allocBuffer(Device device, const IndexVec& extent, std::size_t elemSize,
                          std::size_t rowAlignment = Buffer::defaultRowAlignment)
{
    return Buffer(device, extent, elemSize, rowAlignment);
}

/// Builds a deep-copy task for extent elements from the origin corner of src
/// to the origin corner of dst, respecting both pitches. Dimensionalities and
/// element sizes must match and extent must fit in both buffers; violations
/// are usage errors raised here, before anything is enqueued. Bytes of dst
/// outside the copied extent are left untouched.
CopyTask createCopy(Buffer& dst, const Buffer& src, const IndexVec& extent);

/// Convenience: validate, enqueue on q, return the handle.
TaskHandle copyBuffer(Queue& q, Buffer& dst, const Buffer& src, const IndexVec& extent);

/// Fills every element with an independent uniform draw from [lo, hi),
/// visiting elements in row-major order. Deterministic for a fixed generator
/// state. The buffer's element size must match T.
template <class T>
void fillUniform(Buffer& buf, std::mt19937_64& rng, T lo, T hi)
{
    static_assert(std::is_floating_point_v<T>, "fillUniform expects a floating point element type");
    if (!(lo < hi))
        throw UsageError("fillUniform: requires lo < hi");
    const std::size_t rows = buf.rowCount();
    const std::size_t cols = buf.extent()[buf.dim() - 1];
    for (std::size_t r = 0; r < rows; ++r) {
        T* row = buf.rowData<T>(r);
        for (std::size_t c = 0; c < cols; ++c) {
            // 53-bit mantissa draw; portable across standard library versions.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            T value = static_cast<T>(lo + u * (hi - lo));
            if (value >= hi)
                value = std::nextafter(hi, lo);
            row[c] = value;
        }
    }
}

} // namespace kernelweave
