// Backtracking enumeration of 3-free permutations.
//
// Depth-first search over legal placements, emitting complete permutations in
// lexicographic order of the appended values.  Recursion depth is bounded by
// n <= 127, so native recursion is safe.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "threefree/bigcount.hpp"
#include "threefree/core.hpp"

namespace threefree {

struct EnumerationTask {
  int n = 0;
  std::vector<int> prefix;
  std::optional<std::uint64_t> emit_limit;
};

using PermutationSink = std::function<void(const Permutation&)>;

namespace detail {

struct EnumerationState {
  int n;
  PlacementMask mask;
  std::vector<int> current;
  const PermutationSink* sink;
  std::uint64_t emitted = 0;
  std::uint64_t limit;
};

// Returns false once the emit limit is reached, unwinding the search.
inline bool enumerate_from(EnumerationState& st) {
  if (static_cast<int>(st.current.size()) == st.n) {
    ++st.emitted;
    if (*st.sink) (*st.sink)(Permutation{st.n, st.current});
    return st.emitted < st.limit;
  }
  for (int j = 1; j <= st.n; ++j) {
    if (!is_placement_allowed(st.mask, j)) continue;
    st.mask.place(j);
    st.current.push_back(j);
    bool keep_going = enumerate_from(st);
    st.current.pop_back();
    st.mask.unplace(j);
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace detail

// Streams every 3-free permutation of [n] beginning with task.prefix into
// sink and returns how many were emitted.  Throws std::invalid_argument when
// the prefix itself is not a valid 3-free prefix.
inline BigCount enumerate(const EnumerationTask& task, const PermutationSink& sink) {
  auto prefix_check = validate_prefix(task.prefix, task.n);
  if (!prefix_check.ok()) {
    throw std::invalid_argument(std::string("enumerate: invalid prefix (") +
                                prefix_check.error_name() + " at position " +
                                std::to_string(prefix_check.position) + ")");
  }
  if (task.emit_limit && *task.emit_limit == 0) return BigCount(0);
  detail::EnumerationState st{
      task.n,
      PlacementMask(task.n, prefix_check.mask),
      task.prefix,
      &sink,
      0,
      task.emit_limit.value_or(UINT64_MAX)};
  detail::enumerate_from(st);
  return BigCount(st.emitted);
}

// Full count by exhaustive search; the independent slow oracle for the
// counting engines.  Practical up to n of roughly 14.
inline BigCount count_by_enumeration(int n) {
  return enumerate(EnumerationTask{n, {}, std::nullopt}, PermutationSink{});
}

}  // namespace threefree
