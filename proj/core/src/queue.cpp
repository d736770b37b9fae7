/* Copyright 2026 kernelweave contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernelweave/queue.hpp"

#include "kernelweave/error.hpp"

namespace kernelweave {

Queue::Queue(Device device, QueueFlavor flavor) : m_device(device), m_flavor(flavor)
{
    if (m_flavor == QueueFlavor::Async)
        m_worker = std::thread([this] { workerLoop(); });
}

Queue::~Queue()
{
    shutdown();
}

TaskHandle Queue::enqueue(ExecTask task)
{
    return enqueueBody(std::move(task.body));
}

TaskHandle Queue::enqueue(CopyTask task)
{
    return enqueueBody(std::move(task.body));
}

TaskHandle Queue::enqueueBody(std::function<void()> body)
{
    auto rec = std::make_shared<detail::TaskRecord>();
    Item item{std::move(body), rec};

    if (m_flavor == QueueFlavor::Sync) {
        {
            std::scoped_lock lock(m_mutex);
            if (m_shutdown)
                throw UsageError("Queue: enqueue on a shut-down queue");
        }
        // In-order is trivial: the previous enqueue already completed.
        runItem(item);
        return TaskHandle(std::move(rec));
    }

    {
        std::scoped_lock lock(m_mutex);
        if (m_shutdown)
            throw UsageError("Queue: enqueue on a shut-down queue");
        m_pending.push_back(std::move(item));
    }
    m_cv.notify_all();
    return TaskHandle(std::move(rec));
}

void Queue::runItem(Item& item)
{
    item.rec->state.store(TaskState::Running, std::memory_order_release);
    try {
        item.body();
        item.rec->state.store(TaskState::Done, std::memory_order_release);
    }
    catch (...) {
        item.rec->error = std::current_exception();
        item.rec->state.store(TaskState::Failed, std::memory_order_release);
        std::scoped_lock lock(m_mutex);
        ++m_failedCount;
        if (!m_firstFailure)
            m_firstFailure = item.rec->error;
    }
}

void Queue::workerLoop()
{
    for (;;) {
        Item item;
        {
            std::unique_lock lock(m_mutex);
            m_cv.wait(lock, [this] { return !m_pending.empty() || m_shutdown; });
            if (m_pending.empty()) {
                if (m_shutdown)
                    return;
                continue;
            }
            item = std::move(m_pending.front());
            m_pending.pop_front();
            m_busy = true;
        }
        runItem(item);
        {
            std::scoped_lock lock(m_mutex);
            m_busy = false;
        }
        m_cv.notify_all();
    }
}

void Queue::wait()
{
    if (m_flavor == QueueFlavor::Async) {
        std::unique_lock lock(m_mutex);
        m_cv.wait(lock, [this] { return m_pending.empty() && !m_busy; });
    }
    throwCollectedFailures();
}

void Queue::throwCollectedFailures()
{
    std::size_t count = 0;
    std::exception_ptr first;
    {
        std::scoped_lock lock(m_mutex);
        count = m_failedCount;
        first = m_firstFailure;
        m_failedCount = 0;
        m_firstFailure = nullptr;
    }
    if (count == 0)
        return;
    std::string message = "unknown error";
    try {
        std::rethrow_exception(first);
    }
    catch (const std::exception& e) {
        message = e.what();
    }
    catch (...) {
    }
    throw TaskError(count, message);
}

void Queue::shutdown()
{
    {
        std::scoped_lock lock(m_mutex);
        if (m_shutdown)
            return;
        m_shutdown = true;
    }
    m_cv.notify_all();
    if (m_worker.joinable())
        m_worker.join();
}

} // namespace kernelweave
