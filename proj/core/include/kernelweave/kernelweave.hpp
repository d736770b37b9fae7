/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/acc.hpp"
#include "kernelweave/backend.hpp"
#include "kernelweave/buffer.hpp"
#include "kernelweave/buffer_csv.hpp"
#include "kernelweave/device.hpp"
#include "kernelweave/error.hpp"
#include "kernelweave/exec.hpp"
#include "kernelweave/index_vec.hpp"
#include "kernelweave/kernels/axpy.hpp"
#include "kernelweave/kernels/gemm.hpp"
#include "kernelweave/kernels/reference.hpp"
#include "kernelweave/queue.hpp"
#include "kernelweave/work_div.hpp"
