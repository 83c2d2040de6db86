/*
 Copyright 2026 The fddp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "fddp/parallel.hpp"

#include <algorithm>

namespace fddp {

WorkerPool::WorkerPool(std::size_t workers) {
  const std::size_t extra = workers > 1 ? workers - 1 : 0;
  errors_.resize(extra + 1);
  threads_.reserve(extra);
  for (std::size_t i = 0; i < extra; ++i) {
    threads_.emplace_back([this, i] { worker_loop(i + 1); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run_chunk(std::size_t chunk) {
  const std::size_t chunks = size();
  const std::size_t begin = n_ * chunk / chunks;
  const std::size_t end = n_ * (chunk + 1) / chunks;
  try {
    for (std::size_t i = begin; i < end; ++i) (*body_)(i);
  } catch (...) {
    errors_[chunk] = std::current_exception();
  }
}

void WorkerPool::worker_loop(std::size_t id) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    run_chunk(id);
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_.notify_one();
    }
  }
}

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  std::fill(errors_.begin(), errors_.end(), nullptr);
  body_ = &body;
  n_ = n;
  if (!threads_.empty()) {
    {
      std::lock_guard lock(mutex_);
      pending_ = threads_.size();
      ++generation_;
    }
    wake_.notify_all();
  }
  run_chunk(0);
  if (!threads_.empty()) {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return pending_ == 0; });
  }
  body_ = nullptr;
  for (auto& e : errors_) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fddp
