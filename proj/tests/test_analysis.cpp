#include "doctest.h"

#include <cmath>
#include <string>

#include "threefree/analysis.hpp"
#include "threefree/count.hpp"
#include "threefree/export.hpp"
#include "threefree/table.hpp"

using namespace threefree;

TEST_CASE("ground truth table") {
  CHECK(ground_truth(1) == BigCount(1));
  CHECK(ground_truth(15) == BigCount(74904));    // corrected value
  CHECK(ground_truth(17) == BigCount(368016));   // corrected value
  CHECK(ground_truth(64).to_decimal() == "39911512393313043466768");
  CHECK(ground_truth(90).to_decimal() == "5963505178650560845887322154368");
  CHECK(ground_truth(90).to_decimal().size() == 31);
  CHECK(kThetaTableDecimal.size() == 90);
  CHECK_THROWS_AS(ground_truth(0), std::out_of_range);
  CHECK_THROWS_AS(ground_truth(91), std::out_of_range);
}

TEST_CASE("table agrees with the counting engine on small n") {
  for (int n = 1; n <= 14; ++n) {
    CHECK(count_memoized(n).first == ground_truth(n));
  }
}

TEST_CASE("bound constants reproduce the printed leading digits") {
  CHECK(compute_constant(ConstantKind::c1).value.substr(0, 5) == "2.201");
  CHECK(compute_constant(ConstantKind::c2).value.substr(0, 5) == "2.364");
  CHECK(compute_constant(ConstantKind::c3).value.substr(0, 5) == "2.279");
  CHECK(compute_constant(ConstantKind::c4).value.substr(0, 5) == "2.156");
  CHECK(compute_constant(ConstantKind::degs16).value.substr(0, 5) == "2.248");
  CHECK(compute_constant(ConstantKind::lsv10).value.substr(0, 5) == "2.152");
  CHECK(compute_constant(ConstantKind::sharma27).value == "2.7");
}

TEST_CASE("bound constants carry at least 30 significant digits and bracket exactly") {
  for (ConstantKind kind : {ConstantKind::c1, ConstantKind::c2, ConstantKind::c3,
                            ConstantKind::c4, ConstantKind::degs16, ConstantKind::lsv10}) {
    BoundConstant c = compute_constant(kind);
    CHECK(c.value.size() >= 32);  // "x." plus 40 digits
    // Defining power: scaled_root^r <= A * theta(m) * 10^(r*s) < (scaled_root+1)^r.
    BigCount x = BigCount(c.coefficient) * ground_truth(c.defining_n);
    x *= BigCount::pow(BigCount(10),
                       c.root_index * static_cast<unsigned>(c.scale_digits));
    CHECK(BigCount::pow(c.scaled_root, c.root_index) <= x);
    CHECK(x < BigCount::pow(c.scaled_root + BigCount(1), c.root_index));
  }
}

TEST_CASE("integer nth root") {
  CHECK(integer_nth_root(BigCount(0), 5) == BigCount(0));
  CHECK(integer_nth_root(BigCount(1), 7) == BigCount(1));
  CHECK(integer_nth_root(BigCount(63), 3) == BigCount(3));
  CHECK(integer_nth_root(BigCount(64), 3) == BigCount(4));
  CHECK(integer_nth_root(BigCount(65), 3) == BigCount(4));
  BigCount big = BigCount::pow(BigCount(123456789), 7);
  CHECK(integer_nth_root(big, 7) == BigCount(123456789));
  CHECK(integer_nth_root(big + BigCount(1), 7) == BigCount(123456789));
}

TEST_CASE("doubling recurrences hold across the table") {
  VerificationReport report = verify_degs_recurrences();
  CHECK(report.overall);
  CHECK(report.witnesses.empty());
  CHECK(report.per_n.size() == 45 + 44);
  // theta(10) = 1066 >= 2 * 20^2 = 800.
  const CheckOutcome& at5 = report.per_n[4];
  CHECK(at5.n == 5);
  CHECK(at5.lhs == "1066");
  CHECK(at5.rhs == "800");
  CHECK(at5.pass);
}

TEST_CASE("halving upper bound holds across the table") {
  VerificationReport report = verify_sharma_recurrence();
  CHECK(report.overall);
  CHECK(report.per_n.size() == 88);
  const CheckOutcome& at10 = report.per_n[7];
  CHECK(at10.n == 10);
  CHECK(at10.lhs == "1066");
  CHECK(at10.rhs == "8400");  // 21 * 20 * 20
}

TEST_CASE("main bounds sweep") {
  MainBoundsReport report = verify_main_bounds();
  CHECK(report.overall);
  REQUIRE(report.checks.size() == 4);

  const VerificationReport& c1 = report.checks[0];
  CHECK(c1.check_name == "lower-c1");
  CHECK(c1.overall);

  const VerificationReport& c2 = report.checks[1];
  CHECK(c2.overall);
  // Equality at the defining point n = 64.
  for (const auto& outcome : c2.per_n) {
    if (outcome.n == 64) CHECK(outcome.lhs == outcome.rhs);
  }

  const VerificationReport& c3 = report.checks[2];
  CHECK(c3.overall);
  CHECK(c3.per_n.size() == 1);
  CHECK(c3.per_n[0].lhs == c3.per_n[0].rhs);

  const VerificationReport& c4 = report.checks[3];
  CHECK(c4.overall);
  // Equality at the defining point n = 40.
  for (const auto& outcome : c4.per_n) {
    if (outcome.n == 40) CHECK(outcome.lhs == outcome.rhs);
  }

  CHECK(report.extremal.argmax_n == 64);
  CHECK(report.extremal.argmax_value.substr(0, 5) == "2.364");
  CHECK(report.extremal.argmin_n >= 42);
  CHECK(report.extremal.argmin_n <= 83);
  MESSAGE("argmin of (2 theta(n))^(1/n) over [42,83]: n = ",
          report.extremal.argmin_n, ", value ", report.extremal.argmin_value);
  MESSAGE("lower bound holds from n = ", report.extremal.thm2_smallest_n,
          "; upper bound from n = ", report.extremal.thm3_smallest_n);
  CHECK(report.extremal.thm2_smallest_n >= 1);
  CHECK(report.extremal.thm2_smallest_n <= 45);
  CHECK(report.extremal.thm3_smallest_n == 36);  // stated sharp threshold
}

TEST_CASE("strengthened lower-bound bases hold, with equality at n = 40") {
  VerificationReport report = verify_theorem12_bases();
  CHECK(report.overall);
  const CheckOutcome& at40 = report.per_n[0];
  CHECK(at40.n == 40);
  CHECK(at40.lhs == at40.rhs);
  // p = 3 slice covers [80, 90].
  bool found80 = false;
  for (const auto& outcome : report.per_n) {
    if (outcome.n == 80 && outcome.relation == ">=") found80 = true;
  }
  CHECK(found80);
}

TEST_CASE("literature bounds sweep") {
  VerificationReport report = verify_literature_bounds();
  CHECK(report.overall);
}

TEST_CASE("h direction at n = 4 is the hand-computed comparison") {
  BigCount lhs = ground_truth(4) * ground_truth(6);
  BigCount rhs = ground_truth(5) * ground_truth(5);
  CHECK(lhs == BigCount(480));
  CHECK(rhs == BigCount(400));
  CHECK(h_direction(4) > 0);
}

TEST_CASE("h sequence covers n = 1..88") {
  auto steps = h_sequence();
  REQUIRE(steps.size() == 88);
  CHECK(steps.front().n == 1);
  CHECK(steps.back().n == 88);
  // The boundary drop after 23 for k = 4.
  CHECK(h_direction(23) < 0);
  // h values for display: h(1) = ln 2.
  CHECK(std::abs(static_cast<double>(h_value(1)) - std::log(2.0)) < 1e-12);
}

TEST_CASE("conjecture report structure") {
  ConjectureReport report = check_conjecture();
  int evaluated_ks[7] = {0};
  for (const auto& seg : report.segments) {
    REQUIRE(seg.k >= 2);
    REQUIRE(seg.k <= 6);
    if (seg.evaluated) evaluated_ks[seg.k]++;
    if (seg.k <= 5) {
      CHECK(seg.evaluated);
      CHECK(!seg.truncated);
    }
  }
  for (int k = 2; k <= 5; ++k) CHECK(evaluated_ks[k] == 4);
  CHECK(evaluated_ks[6] >= 1);   // the rising run into the table edge
  CHECK(!report.complete);       // k = 6 is partial
  // Rising segment [4,5] for k = 2 rests on the 480 > 400 comparison.
  const ConjectureSegment& first = report.segments.front();
  CHECK(first.k == 2);
  CHECK(first.kind == "rising");
  CHECK(first.from_n == 4);
  CHECK(first.to_n == 5);
  CHECK(first.pass);
  MESSAGE("conjecture on table data: ",
          std::string(report.overall ? "holds" : "violated"));
}

TEST_CASE("export renders b-file and csv rows") {
  std::string bfile = render_rows(ExportFormat::bfile, table_rows(5));
  CHECK(bfile == "1 1\n2 2\n3 4\n4 10\n5 20\n");

  std::string csv = render_rows(ExportFormat::csv, table_rows(17));
  CHECK(csv.substr(0, 8) == "n,theta\n");
  CHECK(csv.find("17,368016\n") != std::string::npos);
}

TEST_CASE("b-file round trip is the identity on the table") {
  SequenceRows rows = table_rows();
  SequenceRows parsed = parse_bfile(render_rows(ExportFormat::bfile, rows));
  CHECK(parsed == rows);
  CHECK_THROWS_AS(parse_bfile("1\n"), std::invalid_argument);
  CHECK(parse_bfile("# comment\n\n2 2\n").size() == 1);
}

TEST_CASE("computed export cross-checks against the table") {
  SequenceRows rows = computed_rows(10, [](int n) { return count_memoized(n).first; });
  CHECK(rows.size() == 10);
  CHECK(rows[9].second == BigCount(1066));

  // Inject the historical wrong value for theta(15).
  try {
    computed_rows(15, [](int n) {
      if (n == 15) return BigCount(73904);
      return count_memoized(n).first;
    });
    FAIL("expected ExportMismatchError");
  } catch (const ExportMismatchError& e) {
    CHECK(e.n == 15);
  }
}
