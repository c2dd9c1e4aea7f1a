#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "faultgan/circuit.hpp"

namespace faultgan {

// Two-stage gate composition named "<first>-<second>":
//   unary first   (NOT-AND):  second(first(A), first(B))        2 inputs
//   unary second  (AND-NOT):  second(first(A, B))               2 inputs
//   both binary   (AND-OR):   second(first(A, B), first(C, D))  4 inputs
struct Composition {
  GateKind first;
  GateKind second;

  int inputs() const noexcept;
  std::string name() const;
  // Input bit 0 is A, bit 1 is B, bit 2 is C, bit 3 is D.
  bool eval(unsigned assignment) const;
  // The same two devices in interchanged order.
  Composition interchanged() const noexcept { return {second, first}; }

  friend bool operator==(const Composition&, const Composition&) = default;
};

struct Table1Row {
  int number;  // 1..10
  Composition composition;
  std::string_view expression;  // reference Boolean form
};

const std::array<Table1Row, 10>& table1_rows();

// Boolean expression of a row written out directly with C++ operators; kept
// separate from Composition::eval so each can check the other.
bool table1_expression(int row, unsigned assignment);

// Fraction of the 2^k input assignments (k = max inputs) on which the two
// compositions disagree.
double table1_deviation(const Composition& first, const Composition& second);

struct Table1Comparison {
  int row;           // rows (1)..(5)
  int reversed_row;  // matching rows (6)..(10)
  std::string name;
  std::string reversed_name;
  double deviation;
  double claimed_bound;  // published upper bound, 0.50 or 0.70
  bool reproduced;       // deviation equals the claimed bound
  bool equivalent;       // both gate networks match their reference expression
};

std::vector<Table1Comparison> table1_report();
std::string format_table1_report(const std::vector<Table1Comparison>& rows);

}  // namespace faultgan
