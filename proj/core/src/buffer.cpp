/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/buffer.hpp"

#include <cstring>
#include <new>

namespace kernelweave {

namespace {

bool isPowerOfTwo(std::size_t v)
{
    return v != 0 && (v & (v - 1)) == 0;
}

std::size_t roundUp(std::size_t value, std::size_t quantum)
{
    return (value + quantum - 1) / quantum * quantum;
}

} // namespace

Buffer::Buffer(Device device, const IndexVec& extent, std::size_t elemSize, std::size_t rowAlignment)
    : m_device(device), m_extent(extent), m_elemSize(elemSize), m_alignment(rowAlignment)
{
    if (elemSize == 0)
        throw UsageError("Buffer: element size must be positive");
    if (!isPowerOfTwo(rowAlignment))
        throw UsageError("Buffer: row alignment must be a power of two");
    for (std::size_t k = 0; k < extent.dim(); ++k)
        if (extent[k] == 0)
            throw UsageError("Buffer: extent components must be positive");

    // 1-D buffers are dense; padding a vector has no locality benefit.
    m_rowPitch = dim() == 1 ? rowBytes() : roundUp(rowBytes(), rowAlignment);

    try {
        m_storage = static_cast<std::byte*>(
            ::operator new[](storageBytes(), std::align_val_t{rowAlignment}));
    }
    catch (const std::bad_alloc&) {
        throw ResourceError("Buffer: allocation of " + std::to_string(storageBytes()) + " bytes failed");
    }
}

Buffer::~Buffer()
{
    if (m_storage != nullptr)
        ::operator delete[](m_storage, std::align_val_t{m_alignment});
}

Buffer::Buffer(Buffer&& other) noexcept
    : m_device(other.m_device)
    , m_extent(other.m_extent)
    , m_elemSize(other.m_elemSize)
    , m_rowPitch(other.m_rowPitch)
    , m_alignment(other.m_alignment)
    , m_storage(other.m_storage)
{
    other.m_storage = nullptr;
}

Buffer& Buffer::operator=(Buffer&& other) noexcept
{
    if (this != &other) {
        if (m_storage != nullptr)
            ::operator delete[](m_storage, std::align_val_t{m_alignment});
        m_device = other.m_device;
        m_extent = other.m_extent;
        m_elemSize = other.m_elemSize;
        m_rowPitch = other.m_rowPitch;
        m_alignment = other.m_alignment;
        m_storage = other.m_storage;
        other.m_storage = nullptr;
    }
    return *this;
}

std::size_t Buffer::rowCount() const noexcept
{
    std::size_t rows = 1;
    for (std::size_t k = 0; k + 1 < m_extent.dim(); ++k)
        rows *= m_extent[k];
    return rows;
}

std::size_t Buffer::byteOffset(const IndexVec& idx) const
{
    if (!insideExtent(idx, m_extent))
        throw UsageError("Buffer: element index out of range");
    std::size_t row = 0;
    for (std::size_t k = 0; k + 1 < idx.dim(); ++k)
        row = row * m_extent[k] + idx[k];
    return row * m_rowPitch + idx[idx.dim() - 1] * m_elemSize;
}

CopyTask createCopy(Buffer& dst, const Buffer& src, const IndexVec& extent)
{
    if (dst.dim() != src.dim() || dst.dim() != extent.dim())
        throw UsageError("copy: buffer and extent dimensionalities must match");
    if (dst.elemSize() != src.elemSize())
        throw UsageError("copy: element sizes must match");
    for (std::size_t k = 0; k < extent.dim(); ++k)
        if (extent[k] > dst.extent()[k] || extent[k] > src.extent()[k])
            throw UsageError("copy: extent exceeds a buffer extent");

    // Snapshot the layout now; the buffers themselves must stay alive and
    // unmoved until the task completes.
    std::byte* dstData = dst.data();
    const std::byte* srcData = src.data();
    const std::size_t dstPitch = dst.rowPitch();
    const std::size_t srcPitch = src.rowPitch();
    const std::size_t elemSize = dst.elemSize();
    const IndexVec dstExtent = dst.extent();
    const IndexVec srcExtent = src.extent();

    return CopyTask{[=]() {
        const std::size_t lineBytes = extent[extent.dim() - 1] * elemSize;
        if (extent.dim() == 1) {
            std::memcpy(dstData, srcData, lineBytes);
            return;
        }
        // Walk the leading (row-identifying) dimensions of the copied box; each
        // buffer locates the row via its own extents and pitch.
        std::size_t leadCount = 1;
        for (std::size_t k = 0; k + 1 < extent.dim(); ++k)
            leadCount *= extent[k];
        for (std::size_t lead = 0; lead < leadCount; ++lead) {
            std::size_t dstRow = 0;
            std::size_t srcRow = 0;
            std::size_t rest = lead;
            for (std::size_t k = 0; k + 1 < extent.dim(); ++k) {
                std::size_t stride = 1;
                for (std::size_t j = k + 1; j + 1 < extent.dim(); ++j)
                    stride *= extent[j];
                const std::size_t comp = rest / stride;
                rest %= stride;
                dstRow = dstRow * dstExtent[k] + comp;
                srcRow = srcRow * srcExtent[k] + comp;
            }
            std::memcpy(dstData + dstRow * dstPitch, srcData + srcRow * srcPitch, lineBytes);
        }
    }};
}

TaskHandle copyBuffer(Queue& q, Buffer& dst, const Buffer& src, const IndexVec& extent)
{
    return q.enqueue(createCopy(dst, src, extent));
}

} // namespace kernelweave
