/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/error.hpp"

namespace kernelweave {

/// Identifies the device a buffer or queue belongs to. On CPU-only builds
/// every device is host memory, but buffers and queues still carry a device
/// tag so copies exercise the cross-device code path and future back-ends can
/// attach real devices. Device 0 is the host.
class Device {
public:
    constexpr Device() noexcept = default;

    static constexpr Device host() noexcept { return Device{}; }

    static constexpr Device logical(int index)
    {
        if (index < 0)
            throw UsageError("Device: negative device index");
        Device d;
        d.m_index = index;
        return d;
    }

    constexpr int index() const noexcept { return m_index; }
    constexpr bool isHost() const noexcept { return m_index == 0; }

    friend constexpr bool operator==(Device a, Device b) noexcept { return a.m_index == b.m_index; }
    friend constexpr bool operator!=(Device a, Device b) noexcept { return a.m_index != b.m_index; }

private:
    int m_index = 0;
};

} // namespace kernelweave
