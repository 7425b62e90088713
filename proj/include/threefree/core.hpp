// Domain types and the 3-free predicate.
//
// A permutation (a_1, ..., a_n) of [n] = {1, ..., n} is 3-free when no index
// triple i < j < k satisfies a_i + a_k = 2 a_j, i.e. no 3-term arithmetic
// progression appears as a subsequence.  A placement mask records which
// integers are still unplaced while a permutation is being built up left to
// right; bit convention throughout is 1 = unplaced.  Indexing is 1-based at
// every API boundary.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace threefree {

// Masks are keyed by a fixed 128-bit encoding, which caps n at 127.
inline constexpr int kMaxN = 127;

namespace detail {

inline std::uint64_t reverse_u64(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
  v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
  v = ((v >> 4) & 0x0f0f0f0f0f0f0f0full) | ((v & 0x0f0f0f0f0f0f0f0full) << 4);
  return __builtin_bswap64(v);
}

}  // namespace detail

// Fixed-width 128-bit mask key; bit j-1 represents integer j.
struct MaskBits {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool test(int j) const {
    int b = j - 1;
    return b < 64 ? (lo >> b) & 1u : (hi >> (b - 64)) & 1u;
  }
  void set(int j) {
    int b = j - 1;
    if (b < 64) lo |= 1ull << b; else hi |= 1ull << (b - 64);
  }
  void clear(int j) {
    int b = j - 1;
    if (b < 64) lo &= ~(1ull << b); else hi &= ~(1ull << (b - 64));
  }
  int popcount() const {
    return __builtin_popcountll(lo) + __builtin_popcountll(hi);
  }

  // Reverses bits 1..n, i.e. bit j swaps with bit n+1-j.
  MaskBits reversed(int n) const {
    std::uint64_t rlo = detail::reverse_u64(hi);
    std::uint64_t rhi = detail::reverse_u64(lo);
    // Full 128-bit reversal done; shift right so bit n lands on bit position
    // n-1 instead of 127.
    int shift = 128 - n;
    if (shift >= 64) {
      rlo = shift == 128 ? 0 : (rhi >> (shift - 64));
      rhi = 0;
    } else if (shift > 0) {
      rlo = (rlo >> shift) | (rhi << (64 - shift));
      rhi >>= shift;
    }
    return {rlo, rhi};
  }

  friend bool operator==(const MaskBits&, const MaskBits&) = default;
  friend bool operator<(const MaskBits& a, const MaskBits& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }
};

struct MaskHash {
  std::size_t operator()(const MaskBits& m) const {
    // splitmix64 finalizer over both words
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ull;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
      return x ^ (x >> 31);
    };
    return static_cast<std::size_t>(mix(m.lo ^ mix(m.hi)));
  }
};

// n-bit placement state.  Bit j = 1 means integer j has not yet been placed.
class PlacementMask {
 public:
  PlacementMask(int n, MaskBits bits) : n_(n), bits_(bits) {
    check_n(n);
    if (high_garbage(n, bits)) {
      throw std::invalid_argument("PlacementMask: bits set beyond n");
    }
  }

  static PlacementMask all_unplaced(int n) {
    check_n(n);
    MaskBits bits;
    for (int j = 1; j <= n; ++j) bits.set(j);
    return PlacementMask(n, bits);
  }

  // Parses the serialized form: '0'/'1' characters, position 1 leftmost.
  static PlacementMask from_string(std::string_view text) {
    check_n(static_cast<int>(text.size()));
    MaskBits bits;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') bits.set(static_cast<int>(i) + 1);
      else if (text[i] != '0') throw std::invalid_argument("PlacementMask: bad character");
    }
    return PlacementMask(static_cast<int>(text.size()), bits);
  }

  int n() const { return n_; }
  const MaskBits& bits() const { return bits_; }
  bool unplaced(int j) const { return bits_.test(j); }
  int unplaced_count() const { return bits_.popcount(); }

  void place(int j) {
    if (!bits_.test(j)) throw std::logic_error("PlacementMask: integer already placed");
    bits_.clear(j);
  }
  void unplace(int j) { bits_.set(j); }

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int j = 1; j <= n_; ++j) {
      if (bits_.test(j)) out[static_cast<std::size_t>(j - 1)] = '1';
    }
    return out;
  }

  friend bool operator==(const PlacementMask&, const PlacementMask&) = default;

 private:
  static void check_n(int n) {
    if (n < 1 || n > kMaxN) {
      throw std::invalid_argument("PlacementMask: n must be in [1, 127]");
    }
  }
  static bool high_garbage(int n, const MaskBits& bits) {
    MaskBits valid;
    for (int j = 1; j <= n; ++j) valid.set(j);
    return (bits.lo & ~valid.lo) != 0 || (bits.hi & ~valid.hi) != 0;
  }

  int n_;
  MaskBits bits_;
};

// Ordered sequence of distinct integers from [n]; complete when length = n.
struct Permutation {
  int n = 0;
  std::vector<int> elements;

  bool is_complete() const { return static_cast<int>(elements.size()) == n; }

  // Distinctness plus range; does not check 3-freeness.
  bool is_valid() const {
    if (n < 1 || static_cast<int>(elements.size()) > n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int e : elements) {
      if (e < 1 || e > n || seen[static_cast<std::size_t>(e)]) return false;
      seen[static_cast<std::size_t>(e)] = true;
    }
    return true;
  }

  // Serialized form: comma-separated 1-based integers, e.g. "1,3,2".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i != 0) out.push_back(',');
      out += std::to_string(elements[i]);
    }
    return out;
  }

  static std::vector<int> parse_elements(std::string_view text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string_view token = text.substr(pos, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - pos);
      if (token.empty()) throw std::invalid_argument("Permutation: empty element");
      int value = 0;
      for (char c : token) {
        if (c < '0' || c > '9') throw std::invalid_argument("Permutation: bad element");
        value = value * 10 + (c - '0');
        if (value > 1000000) throw std::invalid_argument("Permutation: element too large");
      }
      out.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Legality of placing j next, given the placed/unplaced state b (j itself
// still unplaced).  Illegal when some placed i and unplaced k with i + k = 2j
// exist, i.e. when bits j-d and j+d disagree for some offset d.  Scanning
// offsets is O(n) per candidate; the k = j case needs no special treatment
// since i + j = 2j would force i = j, which is unplaced by assumption.
inline bool is_placement_allowed(const PlacementMask& b, int j) {
  if (j < 1 || j > b.n() || !b.unplaced(j)) return false;
  int max_d = std::min(j - 1, b.n() - j);
  for (int d = 1; d <= max_d; ++d) {
    if (b.unplaced(j - d) != b.unplaced(j + d)) return false;
  }
  return true;
}

// All integers that may legally be placed next, ascending.
inline std::vector<int> allowed_placements(const PlacementMask& b) {
  std::vector<int> out;
  for (int j = 1; j <= b.n(); ++j) {
    if (is_placement_allowed(b, j)) out.push_back(j);
  }
  return out;
}

namespace detail {
inline void require_complete(const Permutation& p, const char* who) {
  if (!p.is_valid() || !p.is_complete()) {
    throw std::invalid_argument(std::string(who) + ": requires a complete valid permutation");
  }
}
}  // namespace detail

// Reference oracle: the definitional O(n^3) triple scan.
inline bool is_three_free_definitional(const Permutation& p) {
  detail::require_complete(p, "is_three_free_definitional");
  const auto& a = p.elements;
  int n = p.n;
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 0; i < j; ++i) {
      for (int k = j + 1; k < n; ++k) {
        if (a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(k)] ==
            2 * a[static_cast<std::size_t>(j)]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Suffix-set form: walk left to right, maintaining the unplaced set, and
// check each element against the placement-legality condition.  O(n^2);
// agrees with the definitional form on every complete permutation.
inline bool is_three_free_suffix(const Permutation& p) {
  detail::require_complete(p, "is_three_free_suffix");
  PlacementMask mask = PlacementMask::all_unplaced(p.n);
  for (int e : p.elements) {
    if (!is_placement_allowed(mask, e)) return false;
    mask.place(e);
  }
  return true;
}

// Value map x -> n+1-x; preserves 3-term arithmetic progressions, hence the
// 3-free property.
inline Permutation reflect(const Permutation& p) {
  Permutation out{p.n, {}};
  out.elements.reserve(p.elements.size());
  for (int e : p.elements) out.elements.push_back(p.n + 1 - e);
  return out;
}

inline PlacementMask reflect(const PlacementMask& b) {
  return PlacementMask(b.n(), b.bits().reversed(b.n()));
}

struct PrefixResult {
  enum class Error { none, duplicate, out_of_range, not_three_free };

  MaskBits mask;              // meaningful only when ok()
  Error error = Error::none;
  int position = 0;           // 1-based index of the offending element

  bool ok() const { return error == Error::none; }

  const char* error_name() const {
    switch (error) {
      case Error::duplicate: return "duplicate element";
      case Error::out_of_range: return "element out of range";
      case Error::not_three_free: return "3-free violation";
      default: return "ok";
    }
  }
};

// Replays seq as successive placements from the all-unplaced state.  On
// success the returned mask has exactly seq's elements cleared; otherwise the
// result names the first offending position.
inline PrefixResult validate_prefix(std::span<const int> seq, int n) {
  PlacementMask mask = PlacementMask::all_unplaced(n);
  PrefixResult result;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int e = seq[i];
    result.position = static_cast<int>(i) + 1;
    if (e < 1 || e > n) {
      result.error = PrefixResult::Error::out_of_range;
      return result;
    }
    if (!mask.unplaced(e)) {
      result.error = PrefixResult::Error::duplicate;
      return result;
    }
    if (!is_placement_allowed(mask, e)) {
      result.error = PrefixResult::Error::not_three_free;
      return result;
    }
    mask.place(e);
  }
  result.mask = mask.bits();
  result.position = 0;
  return result;
}

}  // namespace threefree
