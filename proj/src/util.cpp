#include "psdspar/util.hpp"

#include "psdspar/errors.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psdspar {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("PSDSPAR_THREADS");
    long v = env ? std::strtol(env, nullptr, 10) : 0;
    if (v <= 0) v = static_cast<long>(std::thread::hardware_concurrency());
    if (v <= 0) v = 1;
    return static_cast<int>(v);
  }();
  return cap;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int k = thread_cap();
  if (k > n) k = n;
  if (k <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int t = 0; t < k; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += k) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroSum: return "ZeroSum";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::BadEps: return "BadEps";
    case ErrorCode::ExhaustedAttempts: return "ExhaustedAttempts";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ZeroWeights: return "ZeroWeights";
    case ErrorCode::NoCollision: return "NoCollision";
    case ErrorCode::DegenerateSize: return "DegenerateSize";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Precondition: return "Precondition";
  }
  return "Unknown";
}

}  // namespace psdspar
