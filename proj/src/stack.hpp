/*
 * Copyright (C) 2026 The lfk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs a callable on a thread with a large stack.

#ifndef LFK_SRC_STACK_HPP
#define LFK_SRC_STACK_HPP

#include <pthread.h>

#include <exception>
#include <functional>
#include <stdexcept>

namespace lfk::detail {

inline constexpr std::size_t kLargeStack = std::size_t{1} << 30;

inline void run_with_large_stack(const std::function<void()> &fn) {
  struct Job {
    const std::function<void()> *fn;
    std::exception_ptr error;
  } job{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kLargeStack);
  pthread_t thread;
  auto entry = [](void *p) -> void * {
    auto *j = static_cast<Job *>(p);
    try {
      (*j->fn)();
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  int rc = pthread_create(&thread, &attr, entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace lfk::detail

#endif  // LFK_SRC_STACK_HPP
