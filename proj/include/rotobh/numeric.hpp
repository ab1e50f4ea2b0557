#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rotobh::numeric {

struct Minimum {
  double x;
  double value;
  int iterations;
};

// Golden-section search for a minimum of f on [lo, hi]. Stops when the
// bracket is narrower than tol.
Minimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                       double tol);

// Samples f at `points` uniformly spaced abscissae on [lo, hi], then refines
// the best sample's neighbourhood by golden section.
Minimum scan_then_golden(const std::function<double(double)>& f, double lo, double hi,
                         int points, double tol);

// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must differ in
// sign (zero counts as either). Runs until the bracket is narrower than tol or
// the midpoint no longer moves. Returns the midpoint of the final bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

// Evaluates body(i) for i in [0, count) on up to `workers` threads. Indices are
// split into contiguous blocks; each body call must write only to its own slot.
// Exceptions escaping body are rethrown on the calling thread (first by index).
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(count, begin + block);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rotobh::numeric
