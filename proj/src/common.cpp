// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "perilap/error.hpp"
#include "perilap/parallel.hpp"

namespace perilap {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidCell: return "invalid-cell";
    case ErrorCode::kZeroFrequency: return "zero-frequency";
    case ErrorCode::kSingularity: return "singularity";
    case ErrorCode::kInvalidGeometry: return "invalid-geometry";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kSingularTarget: return "singular-target";
    case ErrorCode::kSingularOperator: return "singular-operator";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kFamilyInvalid: return "family-invalid";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  g_threads.store(n);
}

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * block;
    const std::size_t hi = std::min(end, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace perilap
