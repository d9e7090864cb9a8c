#include "core/worker_pool.hpp"

#include "core/error.hpp"

namespace v2x {

WorkerPool::WorkerPool(int worker_count) : worker_count_(worker_count) {
    if (worker_count < 1)
        fail(ErrorCode::argument, "worker_count must be >= 1");
    threads_.reserve(static_cast<std::size_t>(worker_count - 1));
    for (int i = 1; i < worker_count; ++i)
        threads_.emplace_back([this, i] { worker_main(i); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    cv_start_.notify_all();
    for (std::thread& t : threads_) t.join();
}

void WorkerPool::run(const std::function<void(int)>& task) {
    if (worker_count_ == 1) {
        task(0);
        return;
    }

    {
        std::lock_guard lock(mutex_);
        task_ = &task;
        pending_ = worker_count_ - 1;
        first_error_ = nullptr;
        ++generation_;
    }
    cv_start_.notify_all();

    try {
        task(0);
    } catch (...) {
        std::lock_guard lock(mutex_);
        if (!first_error_) first_error_ = std::current_exception();
    }

    std::unique_lock lock(mutex_);
    cv_done_.wait(lock, [this] { return pending_ == 0; });
    task_ = nullptr;
    if (first_error_) std::rethrow_exception(first_error_);
}

void WorkerPool::worker_main(int index) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(int)>* task = nullptr;
        {
            std::unique_lock lock(mutex_);
            cv_start_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_) return;
            seen = generation_;
            task = task_;
        }
        try {
            (*task)(index);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!first_error_) first_error_ = std::current_exception();
        }
        {
            std::lock_guard lock(mutex_);
            if (--pending_ == 0) cv_done_.notify_one();
        }
    }
}

} // namespace v2x
