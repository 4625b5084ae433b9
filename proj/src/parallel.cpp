// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace maxmaj
{

namespace
{
std::atomic<int> thread_count{1};
}

void SetThreadCount(int n)
{
  thread_count = n > 0 ? n : std::max(1u, std::thread::hardware_concurrency());
}

int ThreadCount()
{
  return thread_count;
}

void ParallelFor(int n, const std::function<void(int)> &fn)
{
  const int workers = std::min(ThreadCount(), n);
  if (workers <= 1)
  {
    for (int i = 0; i < n; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; w++)
  {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++)
      {
        try
        {
          fn(i);
        }
        catch (...)
        {
          std::lock_guard lock(error_mutex);
          if (!error)
          {
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace maxmaj
