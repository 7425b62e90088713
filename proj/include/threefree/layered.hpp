// Layered two-pass counting engine.
//
// The memoized recursion holds every visited mask in memory at once, which is
// what exhausts RAM first on large n.  This engine exploits the structure of
// the dependency graph instead: theta of a mask with m unplaced integers only
// needs values of masks with m-1 unplaced, so masks can be processed one
// popcount layer at a time.
//
//   pass 1  forward reachability: expand layer by layer downward from the
//           all-unplaced mask, recording the reachable mask set per popcount.
//   pass 2  backward accumulation: from popcount 0 upward, compute theta for
//           each reachable mask of layer m by summing the values of its
//           children in layer m-1.  Only two value layers are resident at a
//           time; completed layers can be spilled to disk and a run can be
//           resumed from any spilled layer.
//
// Within a layer every mask's value depends only on the completed previous
// layer, so masks can be evaluated concurrently; results are written to
// disjoint slots, which keeps the outcome independent of the schedule.
#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "threefree/bigcount.hpp"
#include "threefree/core.hpp"
#include "threefree/count.hpp"

namespace threefree {

// One popcount layer of theta values; keys sorted ascending.
struct LayerStore {
  int layer_index = 0;
  std::vector<MaskBits> keys;
  std::vector<BigCount> values;

  const BigCount* find(const MaskBits& key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || !(*it == key)) return nullptr;
    return &values[static_cast<std::size_t>(it - keys.begin())];
  }
};

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { io, checksum, version, malformed, mismatch };

  CheckpointError(Kind kind, const std::string& message)
      : std::runtime_error("checkpoint: " + message), kind(kind) {}

  Kind kind;
};

namespace detail {

inline std::uint32_t crc32(const std::uint8_t* data, std::size_t len,
                           std::uint32_t seed = 0) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int bit = 0; bit < 8; ++bit) {
        c = (c & 1u) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      }
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = ~seed;
  for (std::size_t i = 0; i < len; ++i) {
    crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
  }
  return ~crc;
}

inline void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

inline void put_u64_be(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

inline std::uint64_t read_u64_be(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointInfo {
  std::uint32_t version = kCheckpointVersion;
  int n = 0;
  bool symmetry = false;
};

// Layout: header {u32 version, u32 n, u32 layer_index, u8 symmetry,
// u64 record count, u32 crc32-of-records}, then per record a 16-byte
// big-endian mask key, a 4-byte big-endian magnitude length L, and L bytes of
// big-endian magnitude.  Records are sorted by key.
inline void write_checkpoint(const std::filesystem::path& path, int n, bool symmetry,
                             const LayerStore& store) {
  std::vector<std::uint8_t> records;
  records.reserve(store.keys.size() * 24);
  for (std::size_t i = 0; i < store.keys.size(); ++i) {
    detail::put_u64_be(records, store.keys[i].hi);
    detail::put_u64_be(records, store.keys[i].lo);
    std::vector<std::uint8_t> magnitude = store.values[i].to_bytes_be();
    detail::put_u32_be(records, static_cast<std::uint32_t>(magnitude.size()));
    records.insert(records.end(), magnitude.begin(), magnitude.end());
  }

  std::vector<std::uint8_t> header;
  detail::put_u32_be(header, kCheckpointVersion);
  detail::put_u32_be(header, static_cast<std::uint32_t>(n));
  detail::put_u32_be(header, static_cast<std::uint32_t>(store.layer_index));
  header.push_back(symmetry ? 1 : 0);
  detail::put_u64_be(header, store.keys.size());
  detail::put_u32_be(header, detail::crc32(records.data(), records.size()));

  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (f == nullptr) throw CheckpointError(CheckpointError::Kind::io, "cannot open " + path.string());
  bool ok = std::fwrite(header.data(), 1, header.size(), f) == header.size() &&
            (records.empty() ||
             std::fwrite(records.data(), 1, records.size(), f) == records.size());
  ok = std::fclose(f) == 0 && ok;
  if (!ok) throw CheckpointError(CheckpointError::Kind::io, "short write to " + path.string());
}

inline std::pair<CheckpointInfo, LayerStore> read_checkpoint(
    const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "rb");
  if (f == nullptr) throw CheckpointError(CheckpointError::Kind::io, "cannot open " + path.string());
  std::vector<std::uint8_t> data;
  std::array<std::uint8_t, 65536> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
    data.insert(data.end(), buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(got));
  }
  std::fclose(f);

  constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 1 + 8 + 4;
  if (data.size() < kHeaderBytes) {
    throw CheckpointError(CheckpointError::Kind::malformed, "truncated header");
  }
  const std::uint8_t* p = data.data();
  auto version = static_cast<std::uint32_t>(detail::read_u64_be(p, 4));
  auto n = static_cast<int>(detail::read_u64_be(p + 4, 4));
  auto layer = static_cast<int>(detail::read_u64_be(p + 8, 4));
  bool symmetry = p[12] != 0;
  std::uint64_t count = detail::read_u64_be(p + 13, 8);
  auto stored_crc = static_cast<std::uint32_t>(detail::read_u64_be(p + 21, 4));

  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::version,
                          "unsupported format version " + std::to_string(version));
  }
  if (n < 1 || n > kMaxN || layer < 0 || layer > n) {
    throw CheckpointError(CheckpointError::Kind::malformed, "header out of range");
  }

  const std::uint8_t* records = data.data() + kHeaderBytes;
  std::size_t records_len = data.size() - kHeaderBytes;
  if (detail::crc32(records, records_len) != stored_crc) {
    throw CheckpointError(CheckpointError::Kind::checksum, "checksum mismatch");
  }

  LayerStore store;
  store.layer_index = layer;
  store.keys.reserve(count);
  store.values.reserve(count);
  std::size_t pos = 0;
  for (std::uint64_t rec = 0; rec < count; ++rec) {
    if (records_len - pos < 20) {
      throw CheckpointError(CheckpointError::Kind::malformed, "truncated record");
    }
    MaskBits key{detail::read_u64_be(records + pos + 8, 8),
                 detail::read_u64_be(records + pos, 8)};
    auto len = static_cast<std::size_t>(detail::read_u64_be(records + pos + 16, 4));
    pos += 20;
    if (records_len - pos < len) {
      throw CheckpointError(CheckpointError::Kind::malformed, "truncated magnitude");
    }
    if (key.popcount() != layer) {
      throw CheckpointError(CheckpointError::Kind::malformed, "record popcount mismatch");
    }
    if (!store.keys.empty() && !(store.keys.back() < key)) {
      throw CheckpointError(CheckpointError::Kind::malformed, "records not sorted");
    }
    store.keys.push_back(key);
    store.values.push_back(BigCount::from_bytes_be(records + pos, len));
    pos += len;
  }
  if (pos != records_len) {
    throw CheckpointError(CheckpointError::Kind::malformed, "trailing bytes");
  }
  return {CheckpointInfo{version, n, symmetry}, std::move(store)};
}

struct LayeredOptions {
  bool symmetry = false;
  int parallelism = 1;
  std::optional<std::filesystem::path> spill_dir;
  std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes;
  // Stops the backward pass once this layer's values are complete and
  // spilled; requires spill_dir.  Used for staged runs and resume testing.
  std::optional<int> stop_after_layer;
  std::optional<std::filesystem::path> resume_from;
  // Invoked after each completed value layer with (layer, states in layer).
  std::function<void(int, std::uint64_t)> progress;
};

struct LayeredResult {
  BigCount value;
  CountStats stats;
  std::vector<std::uint64_t> layer_counts;  // reachable masks per popcount, index 0..n
  bool interrupted = false;
  std::optional<std::filesystem::path> checkpoint_path;
};

namespace detail {

template <typename Fn>
void parallel_chunks(std::size_t count, int degree, Fn&& fn) {
  if (degree <= 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(degree), count);
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

inline MaskBits canonical_bits(const MaskBits& bits, int n, bool symmetry) {
  if (!symmetry) return bits;
  MaskBits mirrored = bits.reversed(n);
  return mirrored < bits ? mirrored : bits;
}

// Legal next placements as raw child masks.
inline void append_children(const MaskBits& bits, int n, bool symmetry,
                            std::vector<MaskBits>& out) {
  PlacementMask mask(n, bits);
  for (int j = 1; j <= n; ++j) {
    if (!is_placement_allowed(mask, j)) continue;
    MaskBits child = bits;
    child.clear(j);
    out.push_back(canonical_bits(child, n, symmetry));
  }
}

}  // namespace detail

// Reachable mask sets per popcount layer, from the all-unplaced mask down.
// Layer index = popcount; result[i] holds layer i's keys.
inline std::vector<std::vector<MaskBits>> reachable_layers(
    int n, bool symmetry = false, int parallelism = 1,
    std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes) {
  std::vector<std::vector<MaskBits>> layers(static_cast<std::size_t>(n) + 1);
  layers[static_cast<std::size_t>(n)] = {PlacementMask::all_unplaced(n).bits()};
  std::uint64_t index_bytes = sizeof(MaskBits);
  std::uint64_t states = 1;
  for (int m = n; m >= 1; --m) {
    const auto& parents = layers[static_cast<std::size_t>(m)];
    std::size_t workers = std::max<std::size_t>(
        1, std::min<std::size_t>(static_cast<std::size_t>(std::max(parallelism, 1)),
                                 parents.size()));
    std::vector<std::vector<MaskBits>> partial(workers);
    std::size_t chunk = (parents.size() + workers - 1) / workers;
    detail::parallel_chunks(workers, static_cast<int>(workers),
                            [&](std::size_t wb, std::size_t we) {
      for (std::size_t w = wb; w < we; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(parents.size(), begin + chunk);
        auto& local = partial[w];
        for (std::size_t i = begin; i < end; ++i) {
          detail::append_children(parents[i], n, symmetry, local);
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
      }
    });
    std::vector<MaskBits> merged;
    std::size_t total = 0;
    for (const auto& part : partial) total += part.size();
    merged.reserve(total);
    for (auto& part : partial) {
      merged.insert(merged.end(), part.begin(), part.end());
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    layers[static_cast<std::size_t>(m - 1)] = std::move(merged);

    states += layers[static_cast<std::size_t>(m - 1)].size();
    index_bytes += layers[static_cast<std::size_t>(m - 1)].size() * sizeof(MaskBits);
    if (index_bytes > memory_cap_bytes) {
      throw MemoryCapError(states, m - 1);
    }
  }
  return layers;
}

// Per-layer reachable state counts for the non-symmetric engine; their sum is
// the engine's visited_states.
inline std::vector<std::uint64_t> visited_state_counts(int n) {
  auto layers = reachable_layers(n);
  std::vector<std::uint64_t> counts;
  counts.reserve(layers.size());
  for (const auto& layer : layers) counts.push_back(layer.size());
  return counts;
}

inline LayeredResult count_layered(int n, const LayeredOptions& opts = {}) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("count_layered: n out of range");
  if (opts.stop_after_layer && !opts.spill_dir) {
    throw std::invalid_argument("count_layered: stop_after_layer requires spill_dir");
  }
  auto start = std::chrono::steady_clock::now();

  auto layers = reachable_layers(n, opts.symmetry, opts.parallelism,
                                 opts.memory_cap_bytes);

  LayeredResult result;
  std::uint64_t index_bytes = 0;
  for (const auto& layer : layers) {
    result.layer_counts.push_back(layer.size());
    result.stats.visited_states += layer.size();
    index_bytes += layer.size() * sizeof(MaskBits);
  }

  // Value layers: prev holds layer m-1, cur is being filled for layer m.
  LayerStore prev;
  int first_layer = 0;
  if (opts.resume_from) {
    auto [info, store] = read_checkpoint(*opts.resume_from);
    if (info.n != n || info.symmetry != opts.symmetry) {
      throw CheckpointError(CheckpointError::Kind::mismatch,
                            "artifact was produced by a different configuration");
    }
    if (store.keys != layers[static_cast<std::size_t>(store.layer_index)]) {
      throw CheckpointError(CheckpointError::Kind::mismatch,
                            "artifact keys do not match the reachable set");
    }
    first_layer = store.layer_index + 1;
    prev = std::move(store);
  } else {
    prev.layer_index = 0;
    prev.keys = layers[0];
    prev.values.assign(prev.keys.size(), BigCount(1));
    first_layer = 1;
  }

  std::uint64_t prev_bytes = 0;
  for (const auto& v : prev.values) prev_bytes += sizeof(BigCount) + v.heap_bytes();

  for (int m = first_layer; m <= n; ++m) {
    const auto& keys = layers[static_cast<std::size_t>(m)];
    LayerStore cur;
    cur.layer_index = m;
    cur.keys = keys;
    cur.values.assign(keys.size(), BigCount());

    detail::parallel_chunks(keys.size(), opts.parallelism,
                            [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        PlacementMask mask(n, keys[i]);
        BigCount total;
        for (int j = 1; j <= n; ++j) {
          if (!is_placement_allowed(mask, j)) continue;
          MaskBits child = keys[i];
          child.clear(j);
          const BigCount* value =
              prev.find(detail::canonical_bits(child, n, opts.symmetry));
          if (value != nullptr) total += *value;
        }
        cur.values[i] = std::move(total);
      }
    });

    std::uint64_t cur_bytes = 0;
    for (const auto& v : cur.values) cur_bytes += sizeof(BigCount) + v.heap_bytes();
    std::uint64_t resident = prev.values.size() + cur.values.size();
    result.stats.peak_resident_states =
        std::max(result.stats.peak_resident_states, resident);
    if (index_bytes + prev_bytes + cur_bytes > opts.memory_cap_bytes) {
      throw MemoryCapError(result.stats.visited_states, m);
    }

    if (opts.spill_dir) {
      std::filesystem::create_directories(*opts.spill_dir);
      char name[32];
      std::snprintf(name, sizeof(name), "layer_%03d.tfck", m);
      std::filesystem::path path = *opts.spill_dir / name;
      write_checkpoint(path, n, opts.symmetry, cur);
      result.checkpoint_path = path;
    }

    prev = std::move(cur);
    prev_bytes = cur_bytes;
    if (opts.progress) opts.progress(m, prev.keys.size());

    if (opts.stop_after_layer && *opts.stop_after_layer == m && m < n) {
      result.interrupted = true;
      result.stats.elapsed = std::chrono::steady_clock::now() - start;
      return result;
    }
  }

  if (prev.keys.size() != 1) {
    throw std::logic_error("count_layered: top layer must hold exactly the full mask");
  }
  result.value = prev.values[0];
  result.stats.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace threefree
