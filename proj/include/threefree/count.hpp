// Memoized top-down counting of 3-free permutations.
//
// theta(b) for a placement mask b is the number of orderings of b's unplaced
// integers in which every step is a legal placement; theta(n) is theta of the
// all-unplaced mask.  theta depends only on the mask, not on which prefix
// produced it, which is what makes memoization sound.  Recursion depth is
// bounded by n <= 127.
#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "threefree/bigcount.hpp"
#include "threefree/core.hpp"

namespace threefree {

inline constexpr std::uint64_t kDefaultMemoryCapBytes = 4ull << 30;

struct CountStats {
  std::uint64_t visited_states = 0;        // distinct masks whose value was computed
  std::uint64_t peak_resident_states = 0;  // most value entries held at once
  std::chrono::duration<double> elapsed{0};
};

// Structured abort when a run would exceed its memory budget.
class MemoryCapError : public std::runtime_error {
 public:
  MemoryCapError(std::uint64_t states, int layer)
      : std::runtime_error("memory cap exceeded after " + std::to_string(states) +
                           " states (layer " + std::to_string(layer) + ")"),
        states_reached(states),
        layer_reached(layer) {}

  std::uint64_t states_reached;
  int layer_reached;
};

// Map from mask key to theta(b).  With symmetry enabled, keys are canonical:
// the smaller of the mask and its reflection.  Canonicalization never changes
// a stored value, only which of the two mirror keys carries it.
class MemoTable {
 public:
  explicit MemoTable(int n, bool symmetry = false,
                     std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes)
      : n_(n), symmetry_(symmetry), cap_bytes_(memory_cap_bytes) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("MemoTable: n out of range");
  }

  int n() const { return n_; }
  bool symmetry_enabled() const { return symmetry_; }
  std::uint64_t size() const { return entries_.size(); }

  MaskBits canonical(const MaskBits& bits) const {
    if (!symmetry_) return bits;
    MaskBits mirrored = bits.reversed(n_);
    return mirrored < bits ? mirrored : bits;
  }

  const BigCount* find(const MaskBits& canonical_key) const {
    auto it = entries_.find(canonical_key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void insert(const MaskBits& canonical_key, BigCount value, int layer) {
    approx_bytes_ += kEntryOverheadBytes + value.heap_bytes();
    if (approx_bytes_ > cap_bytes_) {
      throw MemoryCapError(entries_.size(), layer);
    }
    entries_.emplace(canonical_key, std::move(value));
  }

 private:
  // Rough per-entry footprint: 16-byte key, value object, node and bucket
  // overhead of the hash map.
  static constexpr std::uint64_t kEntryOverheadBytes = 96;

  int n_;
  bool symmetry_;
  std::uint64_t cap_bytes_;
  std::uint64_t approx_bytes_ = 0;
  std::unordered_map<MaskBits, BigCount, MaskHash> entries_;
};

// Number of legal orderings of b's unplaced integers.  Defined for any valid
// mask, reachable or not.
inline BigCount theta_of_mask(const PlacementMask& b, MemoTable& memo) {
  MaskBits key = memo.canonical(b.bits());
  if (const BigCount* hit = memo.find(key)) return *hit;

  int remaining = b.unplaced_count();
  BigCount total;
  if (remaining == 0) {
    total = BigCount(1);
  } else {
    PlacementMask child = b;
    for (int j = 1; j <= b.n(); ++j) {
      if (!is_placement_allowed(child, j)) continue;
      child.place(j);
      total += theta_of_mask(child, memo);
      child.unplace(j);
    }
  }
  memo.insert(key, total, remaining);
  return *memo.find(key);
}

struct MemoizedOptions {
  bool symmetry = false;
  std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes;
};

// theta(n) by memoized recursion from the all-unplaced mask.
inline std::pair<BigCount, CountStats> count_memoized(int n,
                                                      const MemoizedOptions& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  MemoTable memo(n, opts.symmetry, opts.memory_cap_bytes);
  BigCount value = theta_of_mask(PlacementMask::all_unplaced(n), memo);
  CountStats stats;
  stats.visited_states = memo.size();
  stats.peak_resident_states = memo.size();
  stats.elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(value), stats};
}

}  // namespace threefree
