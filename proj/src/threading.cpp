#include "samrad/threading.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

namespace samrad {

namespace {

int g_threads = 1;

struct Pool {
  std::vector<std::thread> workers;
  std::mutex mu;
  std::condition_variable cv_work, cv_done;
  const std::function<void(std::int64_t)>* body = nullptr;
  std::atomic<std::int64_t> next{0};
  std::int64_t count = 0;
  std::atomic<int> working{0};
  std::uint64_t generation = 0;
  bool shutdown = false;

  explicit Pool(int n) {
    for (int t = 0; t < n; ++t)
      workers.emplace_back([this] { worker_loop(); });
  }
  ~Pool() {
    {
      std::lock_guard<std::mutex> lk(mu);
      shutdown = true;
    }
    cv_work.notify_all();
    for (auto& w : workers) w.join();
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock<std::mutex> lk(mu);
        cv_work.wait(lk, [&] { return shutdown || generation != seen; });
        if (shutdown) return;
        seen = generation;
      }
      drain();
    }
  }

  void drain() {
    for (;;) {
      std::int64_t i = next.fetch_add(1);
      if (i >= count) break;
      (*body)(i);
    }
    if (working.fetch_sub(1) == 1) {
      std::lock_guard<std::mutex> lk(mu);
      cv_done.notify_all();
    }
  }

  void run(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    {
      std::lock_guard<std::mutex> lk(mu);
      body = &fn;
      next.store(0);
      count = n;
      working.store(int(workers.size()) + 1);
      ++generation;
    }
    cv_work.notify_all();
    drain();
    std::unique_lock<std::mutex> lk(mu);
    cv_done.wait(lk, [&] { return working.load() == 0; });
  }
};

Pool* g_pool = nullptr;

}  // namespace

void set_num_threads(int n) {
  if (n < 1) n = 1;
  if (n == g_threads) return;
  delete g_pool;
  g_pool = nullptr;
  g_threads = n;
  if (n > 1) g_pool = new Pool(n - 1);
}

int num_threads() { return g_threads; }

void parallel_for_items(std::int64_t n,
                        const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  if (g_threads == 1 || !g_pool || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  g_pool->run(n, body);
}

}  // namespace samrad
