#include "hpf/parallel.hpp"

#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace hpf {

int default_thread_count() {
    if (const char* env = std::getenv("HPF_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1 && v <= 256) return v;
    }
    return 1;
}

namespace {

class WorkerPool {
public:
    static WorkerPool& instance() {
        static WorkerPool pool;
        return pool;
    }

    void run(const std::vector<std::function<void()>>& tasks) {
        ensure_workers(tasks.size());
        {
            std::lock_guard lock(mutex_);
            pending_ = tasks.size();
            for (const auto& t : tasks) queue_.push(&t);
        }
        cv_.notify_all();
        std::unique_lock lock(mutex_);
        done_cv_.wait(lock, [&] { return pending_ == 0; });
    }

private:
    WorkerPool() = default;
    ~WorkerPool() {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& w : workers_) w.join();
    }

    void ensure_workers(std::size_t n) {
        std::lock_guard lock(mutex_);
        while (workers_.size() < n)
            workers_.emplace_back([this] { worker_loop(); });
    }

    void worker_loop() {
        while (true) {
            const std::function<void()>* task = nullptr;
            {
                std::unique_lock lock(mutex_);
                cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
                if (stop_ && queue_.empty()) return;
                task = queue_.front();
                queue_.pop();
            }
            (*task)();
            {
                std::lock_guard lock(mutex_);
                if (--pending_ == 0) done_cv_.notify_all();
            }
        }
    }

    std::mutex mutex_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    std::queue<const std::function<void()>*> queue_;
    std::vector<std::thread> workers_;
    std::size_t pending_ = 0;
    bool stop_ = false;
};

}  // namespace

void parallel_for_chunks(std::int64_t total, int threads,
                         const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (total <= 0) return;
    const int chunks = static_cast<int>(std::min<std::int64_t>(std::max(1, threads), total));
    if (chunks == 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::function<void()>> tasks;
    tasks.reserve(static_cast<std::size_t>(chunks));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int c = 0; c < chunks; ++c) {
        const std::int64_t lo = total * c / chunks;
        const std::int64_t hi = total * (c + 1) / chunks;
        tasks.emplace_back([&, c, lo, hi] {
            try {
                fn(c, lo, hi);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    WorkerPool::instance().run(tasks);
    if (error) std::rethrow_exception(error);
}

}  // namespace hpf
