// Command-line front end: counting, enumeration, theorem verification,
// conjecture checking, state statistics, and sequence export.
//
// Results go to stdout; diagnostics and opt-in progress go to stderr.  Exit
// codes: 0 success (including passing verifications), 2 usage error,
// 3 verification failure, 4 memory cap exceeded, 5 I/O error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "threefree/analysis.hpp"
#include "threefree/count.hpp"
#include "threefree/core.hpp"
#include "threefree/enumerate.hpp"
#include "threefree/export.hpp"
#include "threefree/layered.hpp"
#include "threefree/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerificationFailed = 3;
constexpr int kExitMemoryCap = 4;
constexpr int kExitIo = 5;

using nlohmann::json;
using namespace threefree;

std::uint64_t parse_byte_quantity(const std::string& text) {
  if (text.empty()) throw CLI::ValidationError("memory-cap", "empty byte quantity");
  std::uint64_t multiplier = 1;
  std::string digits = text;
  switch (digits.back()) {
    case 'k': case 'K': multiplier = 1ull << 10; digits.pop_back(); break;
    case 'm': case 'M': multiplier = 1ull << 20; digits.pop_back(); break;
    case 'g': case 'G': multiplier = 1ull << 30; digits.pop_back(); break;
    default: break;
  }
  std::uint64_t value = 0;
  if (digits.empty()) throw CLI::ValidationError("memory-cap", "bad byte quantity");
  for (char c : digits) {
    if (c < '0' || c > '9') throw CLI::ValidationError("memory-cap", "bad byte quantity");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value * multiplier;
}

std::string approx_decimal(const std::string& exact) {
  if (exact.size() <= 15) return exact;
  return exact.substr(0, 1) + "." + exact.substr(1, 5) + "e" +
         std::to_string(exact.size() - 1);
}

json report_to_json(const VerificationReport& report, bool details) {
  json j;
  j["check"] = report.check_name;
  j["overall"] = report.overall ? "pass" : "fail";
  j["comparisons"] = report.per_n.size();
  j["witnesses"] = report.witnesses;
  if (!report.notes.empty()) j["notes"] = report.notes;
  if (details) {
    json entries = json::array();
    for (const auto& outcome : report.per_n) {
      entries.push_back({{"n", outcome.n},
                         {"pass", outcome.pass},
                         {"lhs", outcome.lhs},
                         {"rhs", outcome.rhs},
                         {"relation", outcome.relation}});
    }
    j["per_n"] = entries;
  }
  return j;
}

void print_report_plain(const VerificationReport& report, bool details) {
  std::cout << "check " << report.check_name << ": "
            << (report.overall ? "pass" : "fail") << " (" << report.per_n.size()
            << " comparisons)\n";
  for (const auto& note : report.notes) std::cout << "  note: " << note << "\n";
  if (!report.witnesses.empty()) {
    std::cout << "  failing n:";
    for (int n : report.witnesses) std::cout << ' ' << n;
    std::cout << "\n";
  }
  if (details) {
    for (const auto& outcome : report.per_n) {
      std::cout << "  n=" << outcome.n << ": " << approx_decimal(outcome.lhs) << ' '
                << outcome.relation << ' ' << approx_decimal(outcome.rhs) << " -> "
                << (outcome.pass ? "pass" : "FAIL") << "\n";
    }
  }
}

struct CommonCountFlags {
  int n = 0;
  std::string engine = "auto";
  bool symmetry = false;
  int parallelism = 1;
  std::string memory_cap = "4G";
  std::string spill_dir;
  std::string resume_from;
  int stop_after_layer = -1;
  bool stats = false;
  bool progress = false;
};

void add_count_flags(CLI::App* cmd, CommonCountFlags& flags, bool with_engine = true) {
  cmd->add_option("--n", flags.n, "ground-set size (1..127)")
      ->required()
      ->check(CLI::Range(1, kMaxN));
  if (with_engine) {
    cmd->add_option("--engine", flags.engine, "counting engine")
        ->check(CLI::IsMember({"auto", "memoized", "layered"}))
        ->capture_default_str();
    cmd->add_flag("--symmetry", flags.symmetry, "canonicalize mirror-image states");
    cmd->add_option("--parallelism", flags.parallelism, "worker threads per layer")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    cmd->add_option("--memory-cap", flags.memory_cap,
                    "resident-memory budget (bytes; K/M/G suffix)")
        ->capture_default_str();
    cmd->add_option("--spill-dir", flags.spill_dir,
                    "directory for per-layer spill/checkpoint files");
    cmd->add_option("--resume", flags.resume_from, "resume from a checkpoint file");
    cmd->add_option("--stop-after-layer", flags.stop_after_layer,
                    "stop once this layer is complete and spilled");
    cmd->add_flag("--stats", flags.stats, "print run statistics to stderr");
    cmd->add_flag("--progress", flags.progress, "report layer progress to stderr");
  }
}

int run_count(const CommonCountFlags& flags) {
  std::string engine = flags.engine;
  if (engine == "auto") engine = flags.n <= 30 ? "memoized" : "layered";

  BigCount value;
  CountStats stats;
  if (engine == "memoized") {
    MemoizedOptions opts;
    opts.symmetry = flags.symmetry;
    opts.memory_cap_bytes = parse_byte_quantity(flags.memory_cap);
    auto [v, s] = count_memoized(flags.n, opts);
    value = std::move(v);
    stats = s;
  } else {
    LayeredOptions opts;
    opts.symmetry = flags.symmetry;
    opts.parallelism = flags.parallelism;
    opts.memory_cap_bytes = parse_byte_quantity(flags.memory_cap);
    if (!flags.spill_dir.empty()) opts.spill_dir = flags.spill_dir;
    if (!flags.resume_from.empty()) opts.resume_from = flags.resume_from;
    if (flags.stop_after_layer >= 0) opts.stop_after_layer = flags.stop_after_layer;
    if (flags.progress) {
      opts.progress = [](int layer, std::uint64_t states) {
        std::cerr << "layer " << layer << ": " << states << " states\n";
      };
    }
    LayeredResult result = count_layered(flags.n, opts);
    if (result.interrupted) {
      std::cerr << "interrupted after layer " << flags.stop_after_layer
                << "; checkpoint at " << result.checkpoint_path->string() << "\n";
      return kExitOk;
    }
    value = std::move(result.value);
    stats = result.stats;
  }

  std::cout << value.to_decimal() << "\n";
  if (flags.stats) {
    std::cerr << "engine: " << engine << "\n"
              << "states visited: " << stats.visited_states << "\n"
              << "peak resident states: " << stats.peak_resident_states << "\n"
              << "elapsed: " << stats.elapsed.count() << " s\n";
  }
  return kExitOk;
}

int run_enumerate(int n, const std::string& prefix_text, std::uint64_t limit,
                  bool has_limit, bool count_only) {
  EnumerationTask task;
  task.n = n;
  task.prefix = Permutation::parse_elements(prefix_text);
  if (has_limit) task.emit_limit = limit;

  PermutationSink sink;
  if (!count_only) {
    sink = [](const Permutation& p) { std::cout << p.to_string() << "\n"; };
  }
  BigCount emitted = enumerate(task, sink);
  if (count_only) std::cout << emitted.to_decimal() << "\n";
  return kExitOk;
}

int run_verify(const std::string& check, bool details, const std::string& format) {
  std::vector<VerificationReport> reports;
  ExtremalBases extremal;
  bool have_extremal = false;

  if (check == "degs" || check == "all") reports.push_back(verify_degs_recurrences());
  if (check == "sharma" || check == "all") reports.push_back(verify_sharma_recurrence());
  if (check == "main-bounds" || check == "all") {
    MainBoundsReport main = verify_main_bounds();
    for (auto& r : main.checks) reports.push_back(std::move(r));
    extremal = main.extremal;
    have_extremal = true;
  }
  if (check == "theorem12" || check == "all") reports.push_back(verify_theorem12_bases());
  if (check == "literature" || check == "all") reports.push_back(verify_literature_bounds());

  bool overall = true;
  for (const auto& r : reports) overall = overall && r.overall;

  if (format == "json") {
    json j;
    j["overall"] = overall ? "pass" : "fail";
    json checks = json::array();
    for (const auto& r : reports) checks.push_back(report_to_json(r, details));
    j["checks"] = checks;
    if (have_extremal) {
      j["extremal"] = {{"argmin_n", extremal.argmin_n},
                       {"argmin_value", extremal.argmin_value},
                       {"argmax_n", extremal.argmax_n},
                       {"argmax_value", extremal.argmax_value},
                       {"lower_bound_holds_from", extremal.thm2_smallest_n},
                       {"upper_bound_holds_from", extremal.thm3_smallest_n}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) print_report_plain(r, details);
    if (have_extremal) {
      std::cout << "extremal bases over 42 <= n <= 83:\n"
                << "  argmin of (2 theta(n))^(1/n): n=" << extremal.argmin_n << ", value "
                << extremal.argmin_value.substr(0, 12) << "...\n"
                << "  argmax of (21 theta(n))^(1/n): n=" << extremal.argmax_n
                << ", value " << extremal.argmax_value.substr(0, 12) << "...\n"
                << "  lower bound holds for all table n >= " << extremal.thm2_smallest_n
                << "; upper bound for all table n >= " << extremal.thm3_smallest_n << "\n";
    }
    std::cout << "overall: " << (overall ? "pass" : "fail") << "\n";
  }

  if (!overall) {
    std::cerr << "error: verification-failed: " << check << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int run_bounds(const std::string& which, const std::string& format) {
  std::vector<ConstantKind> kinds;
  if (which == "all") {
    kinds = {ConstantKind::c1, ConstantKind::c2, ConstantKind::c3, ConstantKind::c4,
             ConstantKind::degs16, ConstantKind::lsv10, ConstantKind::sharma27};
  } else {
    const std::vector<std::pair<std::string, ConstantKind>> names = {
        {"c1", ConstantKind::c1},       {"c2", ConstantKind::c2},
        {"c3", ConstantKind::c3},       {"c4", ConstantKind::c4},
        {"degs16", ConstantKind::degs16}, {"lsv10", ConstantKind::lsv10},
        {"sharma27", ConstantKind::sharma27}};
    for (const auto& [name, kind] : names) {
      if (name == which) kinds.push_back(kind);
    }
    if (kinds.empty()) throw CLI::ValidationError("--constant", "unknown constant");
  }

  if (format == "json") {
    json j = json::array();
    for (ConstantKind kind : kinds) {
      BoundConstant c = compute_constant(kind);
      j.push_back({{"kind", constant_name(kind)},
                   {"value", c.value},
                   {"coefficient", c.coefficient},
                   {"defining_n", c.defining_n},
                   {"root_index", c.root_index}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (ConstantKind kind : kinds) {
      BoundConstant c = compute_constant(kind);
      std::cout << constant_name(kind) << " = " << c.value;
      if (c.defining_n != 0) {
        std::cout << "  (" << c.coefficient << "*theta(" << c.defining_n << "))^(1/"
                  << c.root_index << ")";
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int run_conjecture(const std::string& format, bool emit_h) {
  if (emit_h) {
    std::cout << "n,h\n";
    for (int n = 1; n < kTableMaxN; ++n) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.15Lg", h_value(n));
      std::cout << n << ',' << buf << "\n";
    }
    return kExitOk;
  }

  ConjectureReport report = check_conjecture();
  if (format == "json") {
    json segments = json::array();
    for (const auto& seg : report.segments) {
      json s = {{"k", seg.k},
                {"kind", seg.kind},
                {"from", seg.from_n},
                {"to", seg.to_n},
                {"truncated", seg.truncated},
                {"evaluated", seg.evaluated}};
      if (seg.evaluated) {
        s["pass"] = seg.pass;
        s["failing"] = seg.failing;
      }
      segments.push_back(s);
    }
    json j = {{"segments", segments},
              {"overall_on_table", report.overall ? "pass" : "fail"},
              {"complete", report.complete}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& seg : report.segments) {
      std::cout << "k=" << seg.k << " " << seg.kind << " [" << seg.from_n << ","
                << seg.to_n << "]";
      if (seg.truncated) std::cout << " (truncated)";
      if (!seg.evaluated) {
        std::cout << ": beyond table\n";
        continue;
      }
      std::cout << ": " << (seg.pass ? "holds" : "violated");
      if (!seg.failing.empty()) {
        std::cout << " at n =";
        for (int n : seg.failing) std::cout << ' ' << n;
      }
      std::cout << "\n";
    }
    std::cout << "conjecture on table data: " << (report.overall ? "holds" : "violated")
              << (report.complete ? "" : " (table covers k <= 6 only, partially)")
              << "\n";
  }
  return kExitOk;
}

int run_stats(int n, const std::string& format) {
  std::vector<std::uint64_t> counts = visited_state_counts(n);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (format == "csv") {
    std::cout << "layer,states\n";
    for (std::size_t m = 0; m < counts.size(); ++m) {
      std::cout << m << ',' << counts[m] << "\n";
    }
  } else {
    for (std::size_t m = 0; m < counts.size(); ++m) {
      std::cout << m << ' ' << counts[m] << "\n";
    }
    std::cout << "total " << total << "\n";
  }
  return kExitOk;
}

int run_export(const std::string& format_name, const std::string& source, int max_n,
               const CommonCountFlags& count_flags, const std::string& out_path) {
  ExportFormat format =
      (format_name == "csv") ? ExportFormat::csv : ExportFormat::bfile;
  SequenceRows rows;
  if (source == "table") {
    rows = table_rows(max_n);
  } else {
    rows = computed_rows(max_n, [&](int n) {
      if (count_flags.engine == "layered" ||
          (count_flags.engine == "auto" && n > 30)) {
        LayeredOptions opts;
        opts.symmetry = count_flags.symmetry;
        opts.parallelism = count_flags.parallelism;
        return count_layered(n, opts).value;
      }
      return count_memoized(n).first;
    });
  }
  std::string document = render_rows(format, rows);
  if (out_path.empty()) {
    std::cout << document;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << document)) {
      throw CheckpointError(CheckpointError::Kind::io, "cannot write " + out_path);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-free permutation counting, enumeration, and table analysis"};
  app.require_subcommand(1);
  app.set_config("--config")->envname("THREEFREE_CONFIG");

  CommonCountFlags count_flags;
  CLI::App* count_cmd = app.add_subcommand("count", "compute theta(n) exactly");
  add_count_flags(count_cmd, count_flags);

  int enum_n = 0;
  std::string enum_prefix;
  std::uint64_t enum_limit = 0;
  bool enum_count_only = false;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "stream 3-free permutations of [n]");
  enum_cmd->add_option("--n", enum_n, "ground-set size")->required()
      ->check(CLI::Range(1, kMaxN));
  enum_cmd->add_option("--prefix", enum_prefix,
                       "restrict to permutations beginning with this prefix (e.g. 1,4)");
  CLI::Option* limit_opt =
      enum_cmd->add_option("--limit", enum_limit, "stop after this many emissions");
  enum_cmd->add_flag("--count-only", enum_count_only, "print only the count");

  std::string verify_check = "all";
  bool verify_details = false;
  std::string verify_format = "plain";
  CLI::App* verify_cmd = app.add_subcommand("verify", "verify theorem sweeps on the table");
  verify_cmd->add_option("--check", verify_check, "which check to run")
      ->check(CLI::IsMember({"degs", "sharma", "main-bounds", "theorem12", "literature",
                             "all"}))
      ->capture_default_str();
  verify_cmd->add_flag("--details", verify_details, "include per-n outcomes");
  verify_cmd->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"plain", "json"}))->capture_default_str();

  std::string bounds_constant = "all";
  std::string bounds_format = "plain";
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "compute bound constants and extremal bases");
  bounds_cmd->add_option("--constant", bounds_constant,
                         "c1|c2|c3|c4|degs16|lsv10|sharma27|all")
      ->capture_default_str();
  bounds_cmd->add_option("--format", bounds_format, "output format")
      ->check(CLI::IsMember({"plain", "json"}))->capture_default_str();
  bool bounds_extremal = false;
  bounds_cmd->add_flag("--extremal", bounds_extremal,
                       "also report extremal bases over 42 <= n <= 83");

  std::string conj_format = "plain";
  bool conj_emit_h = false;
  CLI::App* conj_cmd =
      app.add_subcommand("conjecture", "check piecewise monotonicity of h(n)");
  conj_cmd->add_option("--format", conj_format, "output format")
      ->check(CLI::IsMember({"plain", "json"}))->capture_default_str();
  conj_cmd->add_flag("--emit-h", conj_emit_h, "print n,h CSV instead of the check");

  int stats_n = 0;
  std::string stats_format = "plain";
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "reachable state counts per popcount layer");
  stats_cmd->add_option("--n", stats_n, "ground-set size")->required()
      ->check(CLI::Range(1, kMaxN));
  stats_cmd->add_option("--format", stats_format, "output format")
      ->check(CLI::IsMember({"plain", "csv"}))->capture_default_str();

  std::string export_format = "b-file";
  std::string export_source = "table";
  int export_max_n = kTableMaxN;
  std::string export_out;
  CommonCountFlags export_count_flags;
  CLI::App* export_cmd = app.add_subcommand("export", "emit the sequence as b-file or CSV");
  export_cmd->add_option("--format", export_format, "b-file|bfile|csv")
      ->check(CLI::IsMember({"b-file", "bfile", "csv"}))->capture_default_str();
  export_cmd->add_option("--source", export_source,
                         "table, or computed (cross-checked against the table)")
      ->check(CLI::IsMember({"table", "computed"}))->capture_default_str();
  export_cmd->add_option("--max-n", export_max_n, "export rows 1..max-n")
      ->check(CLI::Range(1, kMaxN))->capture_default_str();
  export_cmd->add_option("--engine", export_count_flags.engine,
                         "engine for computed source")->capture_default_str();
  export_cmd->add_option("--out", export_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*count_cmd) return run_count(count_flags);
    if (*enum_cmd) {
      return run_enumerate(enum_n, enum_prefix, enum_limit, limit_opt->count() > 0,
                           enum_count_only);
    }
    if (*verify_cmd) return run_verify(verify_check, verify_details, verify_format);
    if (*bounds_cmd) {
      int rc = run_bounds(bounds_constant, bounds_format);
      if (rc == kExitOk && bounds_extremal) {
        ExtremalBases extremal = verify_main_bounds().extremal;
        std::cout << "argmin over [42,83] of (2 theta(n))^(1/n): n=" << extremal.argmin_n
                  << ", value " << extremal.argmin_value << "\n"
                  << "argmax over [42,83] of (21 theta(n))^(1/n): n=" << extremal.argmax_n
                  << ", value " << extremal.argmax_value << "\n";
      }
      return rc;
    }
    if (*conj_cmd) return run_conjecture(conj_format, conj_emit_h);
    if (*stats_cmd) return run_stats(stats_n, stats_format);
    if (*export_cmd) {
      return run_export(export_format, export_source, export_max_n, export_count_flags,
                        export_out);
    }
  } catch (const MemoryCapError& e) {
    std::cerr << "error: memory-cap: " << e.what() << "\n";
    return kExitMemoryCap;
  } catch (const ExportMismatchError& e) {
    std::cerr << "error: verification-failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const CheckpointError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
