#include "faultgan/table1.hpp"

#include <gtest/gtest.h>

namespace faultgan {
namespace {

// Oracle: direct truth-table count over 4 input bits, written independently.
double mismatch_fraction(bool (*f)(bool, bool, bool, bool), bool (*g)(bool, bool, bool, bool)) {
  int diff = 0;
  for (unsigned x = 0; x < 16; ++x) {
    const bool a = x & 1U, b = x & 2U, c = x & 4U, d = x & 8U;
    diff += f(a, b, c, d) != g(a, b, c, d);
  }
  return diff / 16.0;
}

TEST(Table1, RowsMatchReferenceExpressions) {
  const auto& rows = table1_rows();
  ASSERT_EQ(rows.size(), 10U);
  for (const auto& row : rows) {
    const unsigned assignments = 1U << row.composition.inputs();
    for (unsigned x = 0; x < assignments; ++x) {
      EXPECT_EQ(row.composition.eval(x), table1_expression(row.number, x)) << row.number << " " << x;
    }
  }
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(rows[static_cast<std::size_t>(k + 5)].composition, rows[static_cast<std::size_t>(k)].composition.interchanged());
  }
}

TEST(Table1, DeviationsAgainstTruthTableOracle) {
  const Composition and_not{GateKind::kAnd, GateKind::kNot};
  const Composition and_or{GateKind::kAnd, GateKind::kOr};
  const Composition and_nand{GateKind::kAnd, GateKind::kNand};
  const Composition and_nor{GateKind::kAnd, GateKind::kNor};
  const Composition and_xor{GateKind::kAnd, GateKind::kXor};

  EXPECT_EQ(table1_deviation(and_not, and_not.interchanged()),
            mismatch_fraction([](bool a, bool b, bool, bool) { return !(a && b); },
                              [](bool a, bool b, bool, bool) { return !a && !b; }));
  EXPECT_EQ(table1_deviation(and_or, and_or.interchanged()),
            mismatch_fraction([](bool a, bool b, bool c, bool d) { return (a && b) || (c && d); },
                              [](bool a, bool b, bool c, bool d) { return (a || b) && (c || d); }));
  EXPECT_EQ(table1_deviation(and_nand, and_nand.interchanged()),
            mismatch_fraction([](bool a, bool b, bool c, bool d) { return !((a && b) && (c && d)); },
                              [](bool a, bool b, bool c, bool d) { return !(a && b) && !(c && d); }));
  EXPECT_EQ(table1_deviation(and_nor, and_nor.interchanged()),
            mismatch_fraction([](bool a, bool b, bool c, bool d) { return !((a && b) || (c && d)); },
                              [](bool a, bool b, bool c, bool d) { return !(a || b) && !(c || d); }));
  EXPECT_EQ(table1_deviation(and_xor, and_xor.interchanged()),
            mismatch_fraction([](bool a, bool b, bool c, bool d) { return (a && b) != (c && d); },
                              [](bool a, bool b, bool c, bool d) { return (a != b) && (c != d); }));

  EXPECT_EQ(table1_deviation(and_not, and_not.interchanged()), 0.5);
  EXPECT_EQ(table1_deviation(and_or, and_or.interchanged()), 0.375);
  EXPECT_EQ(table1_deviation(and_nand, and_nand.interchanged()), 0.375);
  EXPECT_EQ(table1_deviation(and_nor, and_nor.interchanged()), 0.5);
  EXPECT_EQ(table1_deviation(and_xor, and_xor.interchanged()), 0.625);
}

TEST(Table1, DeviationIsSymmetricAndZeroOnSelf) {
  for (const auto& a : table1_rows()) {
    EXPECT_EQ(table1_deviation(a.composition, a.composition), 0.0);
    for (const auto& b : table1_rows()) {
      EXPECT_EQ(table1_deviation(a.composition, b.composition), table1_deviation(b.composition, a.composition));
    }
  }
}

TEST(Table1, ReportFlagsSeventyPercentClaims) {
  const auto report = table1_report();
  ASSERT_EQ(report.size(), 5U);
  for (const auto& r : report) {
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.reversed_row, r.row + 5);
  }
  EXPECT_EQ(report[0].name, "AND-NOT");
  EXPECT_EQ(report[0].reversed_name, "NOT-AND");
  EXPECT_TRUE(report[0].reproduced);   // 0.50 vs 0.50
  EXPECT_FALSE(report[1].reproduced);  // AND-OR 0.375 vs 0.70
  EXPECT_FALSE(report[2].reproduced);  // AND-NAND 0.375 vs 0.70
  EXPECT_TRUE(report[3].reproduced);   // AND-NOR 0.50 vs 0.50
  EXPECT_FALSE(report[4].reproduced);  // AND-XOR 0.625 vs 0.70
  const std::string text = format_table1_report(report);
  EXPECT_NE(text.find("NOT reproduced"), std::string::npos);
  EXPECT_NE(text.find("0.625"), std::string::npos);
}

}  // namespace
}  // namespace faultgan
