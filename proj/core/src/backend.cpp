/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/backend.hpp"

#include "kernelweave/error.hpp"

#include <string>

namespace kernelweave {

std::string_view backendName(BackendKind kind)
{
    switch (kind) {
    case BackendKind::Serial:
        return "serial";
    case BackendKind::BlocksParallel:
        return "blocks";
    case BackendKind::ThreadsParallel:
        return "threads";
    }
    throw UsageError("backendName: unknown BackendKind value");
}

BackendKind parseBackend(std::string_view name)
{
    for (BackendKind kind : allBackends)
        if (name == backendName(kind))
            return kind;
    throw UsageError("unknown backend '" + std::string(name) + "' (expected serial, blocks or threads)");
}

} // namespace kernelweave
