#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dminimax {

/// Persistent striped-for pool.  Work items must write disjoint state;
/// the stripe assignment is fixed, so results never depend on timing.
class WorkerPool {
 public:
  explicit WorkerPool(int threads) {
    const int workers = threads > 1 ? threads - 1 : 0;
    threads_.reserve(workers);
    for (int w = 0; w < workers; ++w)
      threads_.emplace_back([this, w] { worker_loop(w + 1); });
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::unique_lock<std::mutex> lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
  }

  int width() const { return static_cast<int>(threads_.size()) + 1; }

  void parallel_for(int n, const std::function<void(int)>& fn) {
    if (threads_.empty() || n <= 1) {
      for (int i = 0; i < n; ++i) fn(i);
      return;
    }
    {
      std::unique_lock<std::mutex> lock(mutex_);
      job_ = &fn;
      job_n_ = n;
      done_ = 0;
      ++generation_;
    }
    wake_.notify_all();
    run_stripe(0, n, fn);
    std::unique_lock<std::mutex> lock(mutex_);
    finished_.wait(lock, [this] {
      return done_ == static_cast<int>(threads_.size());
    });
    job_ = nullptr;
    if (error_) {
      std::exception_ptr err = error_;
      error_ = nullptr;
      std::rethrow_exception(err);
    }
  }

 private:
  void run_stripe(int stripe, int n, const std::function<void(int)>& fn) {
    for (int i = stripe; i < n; i += width()) fn(i);
  }

  void worker_loop(int stripe) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(int)>* fn = nullptr;
      int n = 0;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        fn = job_;
        n = job_n_;
      }
      try {
        run_stripe(stripe, n, *fn);
      } catch (...) {
        std::unique_lock<std::mutex> lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
      {
        std::unique_lock<std::mutex> lock(mutex_);
        ++done_;
      }
      finished_.notify_one();
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable finished_;
  const std::function<void(int)>* job_ = nullptr;
  int job_n_ = 0;
  int done_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace dminimax
