// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace perilap {

// Process-wide worker count used by assembly loops. 0 selects hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Calls body(i) for i in [begin, end), split into contiguous blocks across
// threads. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace perilap
