// Acceptance suite: one line per criterion, pass/fail, nonzero exit on any
// failure.  Criteria marked "reported" print computed facts without gating.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "threefree/analysis.hpp"
#include "threefree/count.hpp"
#include "threefree/enumerate.hpp"
#include "threefree/export.hpp"
#include "threefree/layered.hpp"
#include "threefree/table.hpp"

using namespace threefree;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> run;
};

// 1. Exact table reproduction for 1 <= n <= 45 within the stated budgets.
bool table_reproduction(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 30; ++n) {
    if (!(count_memoized(n).first == ground_truth(n))) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
    if (!(count_layered(n).value == ground_truth(n))) {
      detail = "layered mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  double small_elapsed = seconds_since(start);
  for (int n = 31; n <= 45; ++n) {
    LayeredOptions opts;
    opts.parallelism = 2;
    if (!(count_layered(n, opts).value == ground_truth(n))) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  double total_elapsed = seconds_since(start);
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "n<=30 in " << small_elapsed << " s (budget 10), n<=45 in "
    << total_elapsed << " s (budget 600)";
  detail = s.str();
  if (small_elapsed >= 10.0 || total_elapsed >= 600.0) return false;

  if (std::getenv("THREEFREE_STRETCH") != nullptr) {
    LayeredOptions opts;
    opts.parallelism = 2;
    bool hit = count_layered(64, opts).value == ground_truth(64);
    detail += hit ? "; stretch theta(64) matched" : "; STRETCH MISMATCH at n=64";
  }
  return true;
}

// 2. All three engines agree for 1 <= n <= 13.
bool oracle_equivalence(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 13; ++n) {
    BigCount by_enum = count_by_enumeration(n);
    BigCount by_memo = count_memoized(n).first;
    BigCount by_layer = count_layered(n).value;
    if (!(by_enum == by_memo) || !(by_memo == by_layer)) {
      detail = "disagreement at n=" + std::to_string(n);
      return false;
    }
  }
  if (!(count_by_enumeration(13) == BigCount(12840))) {
    detail = "theta(13) != 12840";
    return false;
  }
  double elapsed = seconds_since(start);
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "engines agree through n=13 in " << elapsed << " s (budget 60)";
  detail = s.str();
  return elapsed < 60.0;
}

// 3. Memoization soundness: every valid prefix realizing a mask sees the same
// brute-force completion count, equal to theta of the mask; n <= 9.
bool memoization_soundness(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::uint64_t prefixes_checked = 0;
  for (int n = 1; n <= 9; ++n) {
    MemoTable memo(n);
    std::map<MaskBits, std::uint64_t> per_mask;
    for (const auto& prefix : oracles::all_valid_prefixes(n)) {
      auto validated = validate_prefix(prefix, n);
      if (!validated.ok()) {
        detail = "oracle produced an invalid prefix";
        return false;
      }
      oracles::PlacedSet placed(static_cast<std::size_t>(n) + 1, false);
      for (int e : prefix) placed[static_cast<std::size_t>(e)] = true;
      std::uint64_t completions = oracles::naive_completion_count(
          placed, n, n - static_cast<int>(prefix.size()));
      ++prefixes_checked;
      auto [it, inserted] = per_mask.emplace(validated.mask, completions);
      if (!inserted && it->second != completions) {
        detail = "prefix-dependent count at n=" + std::to_string(n);
        return false;
      }
      if (!(theta_of_mask(PlacementMask(n, validated.mask), memo) ==
            BigCount(completions))) {
        detail = "theta_of_mask mismatch at n=" + std::to_string(n);
        return false;
      }
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << prefixes_checked << " prefixes checked in " << elapsed
    << " s (budget 300)";
  detail = s.str();
  return elapsed < 300.0;
}

// 4. Constants reproduce the printed four significant figures.
bool constants(std::string& detail) {
  const std::pair<ConstantKind, std::string> expected[] = {
      {ConstantKind::c1, "2.201"},     {ConstantKind::c2, "2.364"},
      {ConstantKind::c3, "2.279"},     {ConstantKind::c4, "2.156"},
      {ConstantKind::degs16, "2.248"}, {ConstantKind::lsv10, "2.152"},
  };
  std::string rendered;
  for (const auto& [kind, digits] : expected) {
    BoundConstant c = compute_constant(kind);
    if (c.value.substr(0, 5) != digits) {
      detail = std::string(constant_name(kind)) + " = " + c.value.substr(0, 8) +
               ", expected leading " + digits;
      return false;
    }
    rendered += std::string(constant_name(kind)) + "=" + c.value.substr(0, 6) + " ";
  }
  detail = rendered;
  return true;
}

// 5. Theorem sweeps in exact arithmetic over the full table.
bool theorem_sweeps(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport degs = verify_degs_recurrences();
  VerificationReport sharma = verify_sharma_recurrence();
  MainBoundsReport main = verify_main_bounds();
  VerificationReport t12 = verify_theorem12_bases();
  double elapsed = seconds_since(start);

  bool upper_c2 = false;
  bool lower_c4 = false;
  for (const auto& check : main.checks) {
    if (check.check_name == "upper-c2") upper_c2 = check.overall;
    if (check.check_name == "lower-c4") lower_c4 = check.overall;
  }
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << "degs/sharma/upper-c2/lower-c4/theorem12 in " << elapsed
    << " s (budget 10)";
  detail = s.str();
  if (!degs.overall) detail += "; degs FAILED";
  if (!sharma.overall) detail += "; sharma FAILED";
  if (!upper_c2) detail += "; upper-c2 FAILED";
  if (!lower_c4) detail += "; lower-c4 FAILED";
  if (!t12.overall) detail += "; theorem12 FAILED";
  return degs.overall && sharma.overall && upper_c2 && lower_c4 && t12.overall &&
         elapsed < 10.0;
}

// 6. Extremal bases: argmax asserted at 64; argmin computed and reported.
bool extremal_bases(std::string& detail) {
  ExtremalBases extremal = verify_main_bounds().extremal;
  std::ostringstream s;
  s << "argmax n=" << extremal.argmax_n << " (required 64); argmin n="
    << extremal.argmin_n << ", value " << extremal.argmin_value.substr(0, 10)
    << "... (reported, not asserted)";
  detail = s.str();
  return extremal.argmax_n == 64;
}

// 7. Conjecture checker runs per k and matches the hand computation at n = 4.
bool conjecture(std::string& detail) {
  ConjectureReport report = check_conjecture();
  int segments_for_k[7] = {0};
  for (const auto& seg : report.segments) {
    if (seg.k >= 2 && seg.k <= 6 && seg.evaluated) segments_for_k[seg.k]++;
  }
  for (int k = 2; k <= 5; ++k) {
    if (segments_for_k[k] != 4) {
      detail = "missing segments for k=" + std::to_string(k);
      return false;
    }
  }
  if (segments_for_k[6] < 1) {
    detail = "missing partial k=6 evaluation";
    return false;
  }
  BigCount lhs = ground_truth(4) * ground_truth(6);
  BigCount rhs = ground_truth(5) * ground_truth(5);
  if (!(lhs == BigCount(480)) || !(rhs == BigCount(400)) || h_direction(4) <= 0) {
    detail = "n=4 comparison is not 480 > 400";
    return false;
  }
  detail = std::string("per-k reports complete; 480 > 400 confirmed; table verdict: ") +
           (report.overall ? "holds" : "violated") + " (reported, not asserted)";
  return true;
}

// 8. Six n = 25 layered runs across parallelism and symmetry agree.
bool determinism(std::string& detail) {
  const BigCount expected(198410168);
  std::vector<std::uint64_t> reference_counts;
  for (bool symmetry : {false, true}) {
    for (int degree : {1, 2, 8}) {
      LayeredOptions opts;
      opts.symmetry = symmetry;
      opts.parallelism = degree;
      LayeredResult result = count_layered(25, opts);
      if (!(result.value == expected)) {
        detail = "wrong value with symmetry=" + std::to_string(symmetry) +
                 " parallelism=" + std::to_string(degree);
        return false;
      }
      if (!symmetry) {
        if (reference_counts.empty()) {
          reference_counts = result.layer_counts;
        } else if (result.layer_counts != reference_counts) {
          detail = "visited_state_counts differ across parallelism degrees";
          return false;
        }
      }
    }
  }
  detail = "all six runs returned 198410168; symmetry-off layer counts identical";
  return true;
}

// 9. Interrupt/resume via checkpoint, plus checksum rejection.
bool checkpoint_roundtrip(std::string& detail) {
  fs::path dir = fs::temp_directory_path() /
                 ("threefree_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = false;
  try {
    LayeredOptions first;
    first.spill_dir = dir;
    first.stop_after_layer = 9;
    LayeredResult partial = count_layered(18, first);
    if (!partial.interrupted || !partial.checkpoint_path) {
      detail = "run did not interrupt";
    } else {
      LayeredOptions second;
      second.resume_from = partial.checkpoint_path;
      LayeredResult resumed = count_layered(18, second);
      if (!(resumed.value == BigCount(659296))) {
        detail = "resumed value is not 659296";
      } else {
        // Corrupt one payload byte and expect a checksum rejection.
        std::fstream f(*partial.checkpoint_path,
                       std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(40);
        char byte = 0x7f;
        f.write(&byte, 1);
        f.close();
        try {
          read_checkpoint(*partial.checkpoint_path);
          detail = "tampered checkpoint was accepted";
        } catch (const CheckpointError& e) {
          if (e.kind == CheckpointError::Kind::checksum) {
            detail = "interrupted at layer 9, resumed to 659296; tamper rejected";
            ok = true;
          } else {
            detail = "tamper rejected with the wrong kind";
          }
        }
      }
    }
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return ok;
}

// 10. Declared substitute for the out-of-reach n = 90 statistics: per-layer
// reachability agrees with brute force for n <= 12.
bool visited_counts_agreement(std::string& detail) {
  for (int n = 1; n <= 12; ++n) {
    if (visited_state_counts(n) != oracles::naive_layer_counts(n)) {
      detail = "layer counts disagree at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "per-layer reachability matches brute force for n <= 12 "
           "(n=90 totals declared not desk-reproducible)";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact table reproduction, n <= 45", table_reproduction},
      {2, "oracle equivalence, n <= 13", oracle_equivalence},
      {3, "memoization soundness, n <= 9", memoization_soundness},
      {4, "bound constants to four significant figures", constants},
      {5, "theorem sweeps over the full table", theorem_sweeps},
      {6, "extremal bases", extremal_bases},
      {7, "conjecture checker", conjecture},
      {8, "determinism and parallel safety at n = 25", determinism},
      {9, "checkpoint round trip at n = 18", checkpoint_roundtrip},
      {10, "visited-state agreement, n <= 12", visited_counts_agreement},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failures;
    std::cout << "criterion " << criterion.id << " (" << criterion.title
              << "): " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << std::endl;
  }
  if (failures != 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
