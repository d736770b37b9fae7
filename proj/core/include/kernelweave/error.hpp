/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace kernelweave {

/// A caller violated an API precondition (dimension mismatch, out-of-range
/// index, unsupported enum pair, ...).
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A system resource could not be obtained (memory, worker threads).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by Queue::wait() when one or more tasks on the queue failed since
/// the last successful wait. Carries the first failure's message.
class TaskError : public std::runtime_error {
public:
    TaskError(std::size_t failedCount, const std::string& firstMessage)
        : std::runtime_error(failedCount == 1
                                 ? "task failed: " + firstMessage
                                 : std::to_string(failedCount) + " tasks failed; first: " + firstMessage)
        , m_failedCount(failedCount)
    {
    }

    std::size_t failedCount() const noexcept { return m_failedCount; }

private:
    std::size_t m_failedCount;
};

} // namespace kernelweave
