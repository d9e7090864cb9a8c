#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace v2x {

// Fork-join pool with a fixed worker count, created once per simulation run to
// amortize thread startup. run() executes task(worker) for every worker index
// and returns after all have finished; with a single worker the task runs
// inline on the calling thread. The calling thread always participates as
// worker 0.
class WorkerPool {
public:
    explicit WorkerPool(int worker_count);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int worker_count() const noexcept { return worker_count_; }

    void run(const std::function<void(int)>& task);

private:
    void worker_main(int index);

    int worker_count_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    const std::function<void(int)>* task_ = nullptr;
    std::uint64_t generation_ = 0;
    int pending_ = 0;
    bool stopping_ = false;
    std::exception_ptr first_error_;
};

} // namespace v2x
