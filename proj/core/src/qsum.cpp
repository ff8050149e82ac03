// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#include "nores/qsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "nores/errors.hpp"
#include "nores/parallel.hpp"

namespace nores::qsum {
namespace {

constexpr std::string_view kModule = "qsum";

// Running sum in the order terms are added; plain or Neumaier-compensated.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x, bool compensated) {
    if (!compensated) {
      sum += x;
      return;
    }
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value(bool compensated) const { return compensated ? sum + carry : sum; }
};

// Advances `idx` to the next strictly increasing tuple over [0, n) while
// keeping idx[0] fixed; false once exhausted.
bool next_tail(std::vector<std::uint32_t>& idx, std::uint32_t n) {
  const std::size_t q = idx.size();
  for (std::size_t pos = q; pos-- > 1;) {
    if (idx[pos] < n - (q - pos)) {
      ++idx[pos];
      for (std::size_t j = pos + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t checked_count(std::size_t n, int q, std::uint64_t cap) {
  require(q >= 1, kModule, "q must be >= 1");
  require(static_cast<std::size_t>(q) <= n, kModule,
          "q=" + std::to_string(q) + " exceeds the spectrum length " + std::to_string(n));
  const auto count = binomial(n, static_cast<std::uint64_t>(q));
  require(count.has_value() && *count <= cap, kModule,
          "C(" + std::to_string(n) + ", " + std::to_string(q) + ") = " +
              (count ? std::to_string(*count) : std::string("overflow")) + " exceeds the cap of " +
              std::to_string(cap) + " sums");
  return *count;
}

std::vector<double> materialize(std::span<const double> e, int q, std::uint64_t count, bool compensated) {
  const auto n = static_cast<std::uint32_t>(e.size());
  std::vector<double> sums(count);
  // Partition by leading index; partition i holds C(n - 1 - i, q - 1) sums.
  std::vector<std::uint64_t> offset(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    offset[i + 1] = offset[i] + binomial(n - 1 - i, static_cast<std::uint64_t>(q - 1)).value_or(0);
  }
  parallel_for(n, [&](std::size_t lead) {
    const auto i = static_cast<std::uint32_t>(lead);
    if (offset[i + 1] == offset[i]) return;
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(q));
    std::iota(idx.begin(), idx.end(), i);
    std::uint64_t out = offset[i];
    do {
      sums[out++] = tuple_sum(e, idx, compensated);
    } while (next_tail(idx, n));
  });
  std::sort(sums.begin(), sums.end());
  return sums;
}

std::vector<double> heap_merge(std::span<const double> e, int q, std::uint64_t count, bool compensated) {
  const auto n = static_cast<std::uint32_t>(e.size());
  std::vector<double> sums;
  sums.reserve(count);
  if (q == 1) {
    sums.assign(e.begin(), e.end());
    return sums;
  }

  // One stream per increasing prefix (i1 < ... < i_{q-1}); the stream walks
  // the last index upwards, so its sums are non-decreasing.
  struct Stream {
    Accumulator prefix;
    std::uint32_t next;
  };
  std::vector<Stream> streams;
  std::vector<std::uint32_t> prefix(static_cast<std::size_t>(q - 1));
  std::iota(prefix.begin(), prefix.end(), 0U);
  const std::uint32_t prefix_n = n - 1;  // last index must still fit after the prefix
  while (true) {
    Accumulator acc;
    for (std::uint32_t i : prefix) acc.add(e[i], compensated);
    streams.push_back(Stream{acc, prefix.back() + 1});
    // Next increasing prefix over [0, prefix_n).
    std::size_t pos = prefix.size();
    bool advanced = false;
    while (pos-- > 0) {
      if (prefix[pos] < prefix_n - (prefix.size() - pos)) {
        ++prefix[pos];
        for (std::size_t j = pos + 1; j < prefix.size(); ++j) prefix[j] = prefix[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  auto current = [&](std::size_t s) {
    Accumulator acc = streams[s].prefix;
    acc.add(e[streams[s].next], compensated);
    return acc.value(compensated);
  };
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    if (streams[s].next < n) heap.emplace(current(s), s);
  }
  while (!heap.empty()) {
    const auto [value, s] = heap.top();
    heap.pop();
    sums.push_back(value);
    if (++streams[s].next < n) heap.emplace(current(s), s);
  }
  // Compensated streams are monotone only up to the final rounding.
  if (!std::is_sorted(sums.begin(), sums.end())) std::sort(sums.begin(), sums.end());
  return sums;
}

}  // namespace

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(result / g, factor, &next)) return std::nullopt;
    result = next;
  }
  return result;
}

double tuple_sum(std::span<const double> energies, std::span<const std::uint32_t> indices, bool compensated) {
  Accumulator acc;
  for (std::uint32_t i : indices) acc.add(energies[i], compensated);
  return acc.value(compensated);
}

QSumSpectrum build_qsum(const spectral::Spectrum& spectrum, int q, const QSumOptions& options) {
  const std::uint64_t count = checked_count(spectrum.size(), q, options.cap);
  QSumSpectrum out;
  out.q = q;
  out.base = spectrum.source;
  if (q == 1) {
    out.sums = spectrum.energies;
    return out;
  }
  out.sums = options.strategy == Strategy::kHeapMerge
                 ? heap_merge(spectrum.energies, q, count, options.compensated)
                 : materialize(spectrum.energies, q, count, options.compensated);
  return out;
}

std::vector<TupleSum> qsum_index_tuples(const spectral::Spectrum& spectrum, int q, double lo, double hi,
                                        bool compensated) {
  require(q >= 1, kModule, "q must be >= 1");
  require(std::isfinite(lo) && std::isfinite(hi), kModule, "window must be finite");
  std::vector<TupleSum> out;
  const auto& e = spectrum.energies;
  const std::size_t n = e.size();
  if (lo > hi || static_cast<std::size_t>(q) > n) return out;

  // Bounds on the remaining r terms are computed in a different order than
  // tuple_sum, so pruning allows a few ulps of slack; membership is decided on
  // the exact tuple_sum value.
  double magnitude = 0.0;
  for (double x : e) magnitude = std::max(magnitude, std::abs(x));
  const double slack = 8.0 * q * q * std::numeric_limits<double>::epsilon() * (magnitude + std::abs(lo) + std::abs(hi));

  // prefix_min[i][r]: sum of e[i..i+r) ; suffix_max[r]: sum of the r largest.
  std::vector<double> top(static_cast<std::size_t>(q) + 1, 0.0);
  for (int r = 1; r <= q; ++r) top[r] = top[r - 1] + e[n - static_cast<std::size_t>(r)];
  std::vector<double> window_prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) window_prefix[i + 1] = window_prefix[i] + e[i];
  auto lowest = [&](std::size_t start, std::size_t r) { return window_prefix[start + r] - window_prefix[start]; };

  IndexTuple idx(static_cast<std::size_t>(q));
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t start, double partial) -> void {
    const std::size_t remaining = static_cast<std::size_t>(q) - depth;
    if (partial + top[remaining] < lo - slack) return;
    if (remaining == 1) {
      // Last slot: the candidates form a sorted run, locate it directly.
      const auto first = std::lower_bound(e.begin() + static_cast<std::ptrdiff_t>(start), e.end(),
                                          lo - partial - slack);
      for (auto it = first; it != e.end(); ++it) {
        if (partial + *it > hi + slack) break;
        idx[depth] = static_cast<std::uint32_t>(it - e.begin());
        const double s = tuple_sum(e, idx, compensated);
        if (s >= lo && s <= hi) out.push_back(TupleSum{idx, s});
      }
      return;
    }
    for (std::size_t i = start; i + remaining <= n; ++i) {
      if (partial + lowest(i, remaining) > hi + slack) break;
      idx[depth] = static_cast<std::uint32_t>(i);
      self(self, depth + 1, i + 1, partial + e[i]);
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return out;
}

}  // namespace nores::qsum
