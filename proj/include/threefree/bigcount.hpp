// Exact non-negative integer counter.
//
// Values up to 2^64 - 1 are kept in a single machine word; arithmetic on the
// word path is checked with compiler overflow intrinsics and promotes to a
// base-2^32 limb vector the moment a result no longer fits.  Overflow is
// therefore detected, never silent.  The representation is canonical: a value
// is stored in limbs iff it exceeds 64 bits, so equality and ordering never
// need to reconcile mixed encodings of the same value.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace threefree {

class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t v) : small_(v) {}  // NOLINT: implicit by design

  // Parses a non-empty string of decimal digits.  Throws std::invalid_argument
  // on anything else.
  static BigCount from_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("BigCount: empty decimal string");
    BigCount result;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t chunk_len = std::min<std::size_t>(9, text.size() - pos);
      std::uint32_t chunk = 0;
      std::uint32_t scale = 1;
      for (std::size_t i = 0; i < chunk_len; ++i) {
        char c = text[pos + i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigCount: bad decimal digit");
        chunk = chunk * 10 + static_cast<std::uint32_t>(c - '0');
        scale *= 10;
      }
      result.mul_small(scale);
      result.add_small(chunk);
      pos += chunk_len;
    }
    return result;
  }

  bool is_zero() const { return limbs_.empty() && small_ == 0; }
  bool fits_u64() const { return limbs_.empty(); }
  std::uint64_t as_u64() const {
    if (!limbs_.empty()) throw std::overflow_error("BigCount: value exceeds 64 bits");
    return small_;
  }

  BigCount& operator+=(const BigCount& rhs) {
    if (limbs_.empty() && rhs.limbs_.empty()) {
      std::uint64_t sum;
      if (!__builtin_add_overflow(small_, rhs.small_, &sum)) {
        small_ = sum;
        return *this;
      }
    }
    // Limb path.  Aliasing-safe: operate on a copy of rhs's limb view.
    std::vector<std::uint32_t> other = rhs.limb_view();
    if (limbs_.empty()) limbs_ = limb_view();
    if (limbs_.size() < other.size()) limbs_.resize(other.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t sum = carry + limbs_[i] + (i < other.size() ? other[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(sum);
      carry = sum >> 32;
      if (carry == 0 && i >= other.size()) break;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    normalize();
    return *this;
  }

  friend BigCount operator+(BigCount lhs, const BigCount& rhs) {
    lhs += rhs;
    return lhs;
  }

  BigCount& operator*=(const BigCount& rhs) {
    if (limbs_.empty() && rhs.limbs_.empty()) {
      std::uint64_t prod;
      if (!__builtin_mul_overflow(small_, rhs.small_, &prod)) {
        small_ = prod;
        return *this;
      }
    }
    if (is_zero() || rhs.is_zero()) {
      *this = BigCount();
      return *this;
    }
    std::vector<std::uint32_t> a = limb_view();
    std::vector<std::uint32_t> b = rhs.limb_view();
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t cur = out[i + j] +
                            static_cast<std::uint64_t>(a[i]) * b[j] + carry;
        out[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      std::size_t k = i + b.size();
      while (carry != 0) {
        std::uint64_t cur = out[k] + carry;
        out[k] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    limbs_ = std::move(out);
    normalize();
    return *this;
  }

  friend BigCount operator*(BigCount lhs, const BigCount& rhs) {
    lhs *= rhs;
    return lhs;
  }

  static BigCount pow(const BigCount& base, unsigned exp) {
    BigCount result(1);
    BigCount factor = base;
    while (exp != 0) {
      if (exp & 1u) result *= factor;
      exp >>= 1;
      if (exp != 0) factor *= factor;
    }
    return result;
  }

  int compare(const BigCount& rhs) const {
    if (limbs_.empty() != rhs.limbs_.empty()) return limbs_.empty() ? -1 : 1;
    if (limbs_.empty()) return small_ < rhs.small_ ? -1 : (small_ > rhs.small_ ? 1 : 0);
    if (limbs_.size() != rhs.limbs_.size()) {
      return limbs_.size() < rhs.limbs_.size() ? -1 : 1;
    }
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i] ? -1 : 1;
    }
    return 0;
  }

  friend bool operator==(const BigCount& a, const BigCount& b) { return a.compare(b) == 0; }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_decimal() const {
    if (limbs_.empty()) return std::to_string(small_);
    std::vector<std::uint32_t> work = limbs_;
    std::string out;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      std::string chunk = std::to_string(rem);
      if (work.empty()) {
        out.insert(0, chunk);
      } else {
        out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
      }
    }
    return out;
  }

  // Minimal big-endian byte encoding of the magnitude; empty for zero.
  std::vector<std::uint8_t> to_bytes_be() const {
    std::vector<std::uint8_t> out;
    if (limbs_.empty()) {
      for (int shift = 56; shift >= 0; shift -= 8) {
        auto byte = static_cast<std::uint8_t>(small_ >> shift);
        if (!out.empty() || byte != 0) out.push_back(byte);
      }
      return out;
    }
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      for (int shift = 24; shift >= 0; shift -= 8) {
        auto byte = static_cast<std::uint8_t>(limbs_[i] >> shift);
        if (!out.empty() || byte != 0) out.push_back(byte);
      }
    }
    return out;
  }

  static BigCount from_bytes_be(const std::uint8_t* data, std::size_t len) {
    while (len > 0 && *data == 0) {
      ++data;
      --len;
    }
    BigCount result;
    if (len <= 8) {
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < len; ++i) v = (v << 8) | data[i];
      result.small_ = v;
      return result;
    }
    result.limbs_.assign((len + 3) / 4, 0);
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t byte_from_end = len - 1 - i;
      result.limbs_[byte_from_end / 4] |=
          static_cast<std::uint32_t>(data[i]) << (8 * (byte_from_end % 4));
    }
    result.normalize();
    return result;
  }

  std::size_t bit_length() const {
    if (limbs_.empty()) {
      return small_ == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(small_));
    }
    std::uint32_t top = limbs_.back();
    return 32 * (limbs_.size() - 1) + (32 - static_cast<std::size_t>(__builtin_clz(top)));
  }

  // Natural log.  Exact on the top 64 bits of the mantissa; precondition
  // value > 0.
  long double ln() const {
    if (is_zero()) throw std::domain_error("BigCount: ln(0)");
    if (limbs_.empty()) return std::log(static_cast<long double>(small_));
    std::size_t bits = bit_length();
    std::uint64_t top = top_bits_64();
    auto exponent = static_cast<long double>(bits - 64);
    return std::log(static_cast<long double>(top)) +
           exponent * 0.6931471805599453094172321214581766L;
  }

  // Heap bytes held by this value; used for memory-budget accounting.
  std::size_t heap_bytes() const { return limbs_.capacity() * sizeof(std::uint32_t); }

 private:
  void normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.size() <= 2) {
      std::uint64_t v = 0;
      if (limbs_.size() == 2) v = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
      else if (limbs_.size() == 1) v = limbs_[0];
      limbs_.clear();
      small_ = v;
    }
  }

  std::vector<std::uint32_t> limb_view() const {
    if (!limbs_.empty()) return limbs_;
    std::vector<std::uint32_t> v;
    if (small_ != 0) v.push_back(static_cast<std::uint32_t>(small_));
    if ((small_ >> 32) != 0) v.push_back(static_cast<std::uint32_t>(small_ >> 32));
    return v;
  }

  void mul_small(std::uint32_t factor) {
    if (limbs_.empty()) {
      std::uint64_t prod;
      if (!__builtin_mul_overflow(small_, static_cast<std::uint64_t>(factor), &prod)) {
        small_ = prod;
        return;
      }
      limbs_ = limb_view();
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    normalize();
  }

  void add_small(std::uint32_t addend) {
    if (limbs_.empty()) {
      std::uint64_t sum;
      if (!__builtin_add_overflow(small_, static_cast<std::uint64_t>(addend), &sum)) {
        small_ = sum;
        return;
      }
      limbs_ = limb_view();
    }
    std::uint64_t carry = addend;
    for (std::size_t i = 0; carry != 0 && i < limbs_.size(); ++i) {
      std::uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    normalize();
  }

  std::uint64_t top_bits_64() const {
    std::size_t bits = bit_length();
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < 64; ++i) {
      std::size_t bit = bits - 1 - i;
      std::uint32_t limb = limbs_[bit / 32];
      out = (out << 1) | ((limb >> (bit % 32)) & 1u);
    }
    return out;
  }

  std::uint64_t small_ = 0;
  std::vector<std::uint32_t> limbs_;  // base 2^32, little-endian, empty iff value fits u64
};

}  // namespace threefree
