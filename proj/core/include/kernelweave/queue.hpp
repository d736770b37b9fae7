/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "kernelweave/device.hpp"
#include "kernelweave/exec.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace kernelweave {

enum class QueueFlavor {
    Sync,  ///< enqueue returns only after the task completed
    Async, ///< enqueue returns immediately; a dedicated worker drains the FIFO
};

enum class TaskState {
    Pending,
    Running,
    Done,
    Failed,
};

namespace detail {

struct TaskRecord {
    std::atomic<TaskState> state{TaskState::Pending};
    std::exception_ptr error; // written before state becomes Failed
};

} // namespace detail

/// Sendable, non-blocking view of one enqueued task's progress.
class TaskHandle {
public:
    TaskState state() const noexcept { return m_rec->state.load(std::memory_order_acquire); }

    /// Non-null once state() == Failed.
    std::exception_ptr error() const noexcept
    {
        return state() == TaskState::Failed ? m_rec->error : nullptr;
    }

private:
    friend class Queue;
    explicit TaskHandle(std::shared_ptr<detail::TaskRecord> rec) : m_rec(std::move(rec)) {}
    std::shared_ptr<detail::TaskRecord> m_rec;
};

/// The binding of a backend, a work division, a kernel and its arguments into
/// an enqueueable unit. Constructing a task executes nothing. Arguments are
/// stored by value; anything they point to (buffers in particular) must
/// outlive the task's completion.
struct ExecTask {
    BackendKind backend;
    WorkDiv workDiv;
    std::function<void()> body;
};

/// An enqueueable deep copy between buffers, built by createCopy().
struct CopyTask {
    std::function<void()> body;
};

template <class Kernel, class... Args>
ExecTask createExec(BackendKind backend, const WorkDiv& wd, Kernel kernel, Args... args)
{
    return ExecTask{
        backend, wd,
        [backend, wd, kernel = std::move(kernel), bound = std::make_tuple(std::move(args)...)]() {
            std::apply([&](const auto&... a) { executeTask(backend, wd, kernel, a...); }, bound);
        }};
}

/// In-order FIFO of tasks bound to one device. No task begins before all
/// previously enqueued tasks on the same queue have completed; there is no
/// ordering between different queues. A Sync queue completes each task inside
/// enqueue; an Async queue drains the FIFO on a dedicated worker thread.
///
/// Enqueue is thread-safe; the order of concurrent enqueues is their arrival
/// order at the queue's lock. Task failures do not stop the queue: subsequent
/// tasks still run, each task's outcome is available through its handle, and
/// the next wait() reports the failures collected since the last report as a
/// TaskError.
class Queue {
public:
    explicit Queue(Device device, QueueFlavor flavor);
    ~Queue();

    Queue(const Queue&) = delete;
    Queue& operator=(const Queue&) = delete;

    TaskHandle enqueue(ExecTask task);
    TaskHandle enqueue(CopyTask task);

    /// Blocks until every task enqueued before the call is complete, then
    /// throws TaskError if any task failed since the last report. Idempotent.
    void wait();

    /// Completes outstanding work and rejects further enqueues.
    void shutdown();

    Device device() const noexcept { return m_device; }
    QueueFlavor flavor() const noexcept { return m_flavor; }

private:
    struct Item {
        std::function<void()> body;
        std::shared_ptr<detail::TaskRecord> rec;
    };

    TaskHandle enqueueBody(std::function<void()> body);
    void runItem(Item& item);
    void workerLoop();
    void throwCollectedFailures();

    Device m_device;
    QueueFlavor m_flavor;

    std::mutex m_mutex;
    std::condition_variable m_cv;
    std::deque<Item> m_pending;
    bool m_busy = false;
    bool m_shutdown = false;
    std::size_t m_failedCount = 0;
    std::exception_ptr m_firstFailure;
    std::thread m_worker; // async flavor only
};

} // namespace kernelweave
