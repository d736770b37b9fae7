/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/buffer.hpp"

#include <iosfwd>

namespace kernelweave {

/// Writes a 2-D double buffer as CSV, one line per matrix row, values
/// formatted with enough decimal digits to round-trip exactly.
void writeBufferCsv(const Buffer& buf, std::ostream& os);

/// Parses a CSV matrix back into a freshly allocated 2-D double buffer on the
/// given device. Ragged or empty input is a usage error.
Buffer readBufferCsv(std::istream& is, Device device = Device::host());

} // namespace kernelweave
