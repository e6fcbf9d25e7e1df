#pragma once

#include <functional>
#include <vector>

namespace glfrob {

// All length-n vectors of nonnegative ints summing to d, entries <= cap
// (cap < 0: unbounded).  First coordinate varies slowest, descending.
template <typename F>
void for_each_composition(int n, int d, int cap, F&& fn) {
  std::vector<int> a(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int rest) {
    if (i == n - 1) {
      if (cap >= 0 && rest > cap) return;
      a[static_cast<size_t>(i)] = rest;
      fn(a);
      return;
    }
    int hi = cap >= 0 && cap < rest ? cap : rest;
    for (int v = hi; v >= 0; --v) {
      a[static_cast<size_t>(i)] = v;
      rec(i + 1, rest - v);
    }
  };
  if (n == 0) {
    if (d == 0) fn(a);
    return;
  }
  rec(0, d);
}

// Partitions of exactly d (parts descending), largest part first.
template <typename F>
void for_each_partition(int d, F&& fn) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      fn(parts);
      return;
    }
    int hi = maxpart < rest ? maxpart : rest;
    for (int v = hi; v >= 1; --v) {
      parts.push_back(v);
      rec(rest - v, v);
      parts.pop_back();
    }
  };
  rec(d, d);
}

}  // namespace glfrob
