#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

#include "fracparts/errors.hpp"

namespace fracparts::detail {

// Deterministic partition of [0, total) into nchunks contiguous ranges.
inline std::pair<size_t, size_t> chunk_range(size_t total, unsigned chunk, unsigned nchunks) {
  size_t lo = total * chunk / nchunks;
  size_t hi = total * (chunk + 1) / nchunks;
  return {lo, hi};
}

// Odometer over the full box |q_i| <= R[i].
template <class F>
void for_each_box(const std::vector<long>& R, bool skip_zero, F&& fn) {
  const int n = static_cast<int>(R.size());
  std::vector<long> q(n);
  for (int i = 0; i < n; ++i) {
    if (R[i] < 0) return;  // empty box
    q[i] = -R[i];
  }
  for (;;) {
    bool zero = true;
    for (int i = 0; i < n; ++i)
      if (q[i] != 0) {
        zero = false;
        break;
      }
    if (!(skip_zero && zero)) fn(q);
    int axis = n - 1;
    while (axis >= 0 && q[axis] == R[axis]) {
      q[axis] = -R[axis];
      --axis;
    }
    if (axis < 0) return;
    ++q[axis];
  }
}

// Canonical representatives of +-q pairs: first nonzero coordinate positive.
// The enumeration is flattened into "slots": slot = (lead axis i, lead value
// v in [1, R[i]]); axes before i are zero, axes after i range over the full
// box.  Slot ranges chunk the workload deterministically.
inline size_t half_slot_count(const std::vector<long>& R) {
  size_t total = 0;
  for (long r : R) total += r > 0 ? static_cast<size_t>(r) : 0;
  return total;
}

template <class F>
void for_half_slot_range(const std::vector<long>& R, size_t slot_begin, size_t slot_end,
                         F&& fn) {
  const int n = static_cast<int>(R.size());
  size_t base = 0;
  for (int axis = 0; axis < n; ++axis) {
    size_t here = R[axis] > 0 ? static_cast<size_t>(R[axis]) : 0;
    size_t lo = std::max(slot_begin, base);
    size_t hi = std::min(slot_end, base + here);
    for (size_t s = lo; s < hi; ++s) {
      long lead = static_cast<long>(s - base) + 1;
      std::vector<long> q(n, 0);
      q[axis] = lead;
      // odometer over axes axis+1..n-1
      for (int i = axis + 1; i < n; ++i) q[i] = -R[i];
      for (;;) {
        fn(q);
        int a = n - 1;
        while (a > axis && q[a] == R[a]) {
          q[a] = -R[a];
          --a;
        }
        if (a == axis) break;
        ++q[a];
      }
    }
    base += here;
  }
}

template <class F>
void for_each_half(const std::vector<long>& R, F&& fn) {
  for_half_slot_range(R, 0, half_slot_count(R), std::forward<F>(fn));
}

// Canonical half of the sup-norm shell |q|_inf = s, s >= 1.  Decomposed by
// the first axis k carrying |q_k| = s: axes before k lie in [-(s-1), s-1]
// and are either all zero (then q_k = +s, to stay canonical) or themselves a
// canonical representative (then q_k = +-s); axes after k are unconstrained
// in [-s, s].
template <class F>
void for_each_half_shell(int n, long s, F&& fn) {
  if (s < 1) return;
  std::vector<long> q(n);
  auto suffix = [&](int k) {
    for (int i = k + 1; i < n; ++i) q[i] = -s;
    for (;;) {
      fn(q);
      int a = n - 1;
      while (a > k && q[a] == s) {
        q[a] = -s;
        --a;
      }
      if (a == k) return;
      ++q[a];
    }
  };
  for (int k = 0; k < n; ++k) {
    std::fill(q.begin(), q.begin() + k, 0L);
    q[k] = s;
    suffix(k);
    if (k > 0 && s > 1) {
      std::vector<long> pre_radii(k, s - 1);
      for_each_half(pre_radii, [&](const std::vector<long>& pre) {
        std::copy(pre.begin(), pre.end(), q.begin());
        q[k] = s;
        suffix(k);
        q[k] = -s;
        suffix(k);
      });
    }
  }
}

// Runs fn(chunk) for every chunk index on a small thread pool; the first
// exception in chunk order is rethrown after all workers finish.
inline void run_chunked(unsigned nchunks, const std::function<void(unsigned)>& fn) {
  if (nchunks == 0) throw std::invalid_argument("chunks must be >= 1");
  if (nchunks == 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(nchunks);
  std::atomic<unsigned> next{0};
  unsigned nthreads = std::min(nchunks, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        unsigned c = next.fetch_add(1);
        if (c >= nchunks) return;
        try {
          fn(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fracparts::detail
