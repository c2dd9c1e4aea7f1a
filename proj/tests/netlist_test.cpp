#include "faultgan/netlist.hpp"

#include <gtest/gtest.h>

#include <random>

#include "faultgan/error.hpp"
#include "test_support.hpp"

namespace faultgan {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_netlist(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "parsed";
}

TEST(Netlist, ParsesUnaryLayer) {
  const Circuit c = parse_netlist("width 4\nlayer\nnot 1\nnot 2\nnot 3\nnot 4\n");
  EXPECT_EQ(c, Circuit(4, {Circuit::uniform_layer(4, GateKind::kNot)}));
}

TEST(Netlist, ParsesBinaryLayerWithCommentsAndBlanks) {
  const Circuit c = parse_netlist("# two gates\n\nwidth 4   # bits\nlayer\n  and 1 2\n\tor 3 4\r\n");
  ASSERT_EQ(c.layer_count(), 1U);
  EXPECT_EQ(c.layers()[0].slots, (std::vector<GateSlot>{{GateKind::kAnd, 1}, {GateKind::kOr, 3}}));
}

TEST(Netlist, Diagnostics) {
  EXPECT_EQ(error_of("width 4\nlayer\nand 1 2\n"), "coverage: layer 1 leaves position 3 uncovered at line 3");
  EXPECT_EQ(error_of("width 2\nlayer\nfoo 1\n"), "unknown gate foo at line 3");
  EXPECT_NE(error_of("width 2\nlayer\nnot 3\nnot 1\n").find("position"), std::string::npos);
  EXPECT_NE(error_of("width 4\nlayer\nnot 1\nand 2 3\nnot 4\n").find("alignment"), std::string::npos);
  EXPECT_NE(error_of("width 4\nlayer\nand 1 3\nnot 2\nnot 4\n").find("alignment"), std::string::npos);
  EXPECT_NE(error_of("width 2\nlayer\nnot 1\nnot 1\nnot 2\n").find("coverage"), std::string::npos);
  EXPECT_NE(error_of("width 2\nlayer\nnot 1\nlayer\nnot 1\nnot 2\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("layer\nnot 1\n").find("before `width`"), std::string::npos);
  EXPECT_NE(error_of("width 2\n").find("no `layer`"), std::string::npos);
  EXPECT_NE(error_of("").find("missing `width`"), std::string::npos);
  EXPECT_NE(error_of("width 0\n").find("width"), std::string::npos);
  EXPECT_NE(error_of("width 2\nlayer\nand 1\n").find("arity"), std::string::npos);
  EXPECT_NE(error_of("width 2\nlayer\nAND 1 2\n").find("unknown gate AND"), std::string::npos);
  EXPECT_NE(error_of("width 2\nlayer\nnot 99999999999999999999\n").find("position"), std::string::npos);
}

TEST(Netlist, ParseErrorCarriesLine) {
  try {
    parse_netlist("width 2\nlayer\nnot 1\nbogus 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4U);
  }
}

TEST(Netlist, CanonicalSerialization) {
  const Circuit c(4, {Circuit::uniform_layer(4, GateKind::kNot)});
  EXPECT_EQ(serialize_netlist(c), "width 4\nlayer\nnot 1\nnot 2\nnot 3\nnot 4\n");
  const Circuit two = parse_netlist("width 2\nlayer\nnot 2\nnot 1\nlayer\nxor 1 2\n");
  EXPECT_EQ(serialize_netlist(two), "width 2\nlayer\nnot 1\nnot 2\nlayer\nxor 1 2\n");
}

TEST(Netlist, RoundTripIsFixpoint) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 500; ++i) {
    const Circuit c = testing_support::random_circuit(1 + static_cast<int>(gen() % 24), 1 + static_cast<int>(gen() % 3), gen);
    const std::string text = serialize_netlist(c);
    const Circuit back = parse_netlist(text);
    ASSERT_EQ(back, c);
    ASSERT_EQ(serialize_netlist(back), text);
  }
}

TEST(Netlist, ArbitraryBytesYieldCircuitOrLineDiagnostic) {
  std::mt19937_64 gen(99);
  const std::string alphabet = "width layer not and or xor nand nor xnor buffer 0123456789 \n\t#\r";
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t len = gen() % 80;
    for (std::size_t k = 0; k < len; ++k) {
      text.push_back(gen() % 4 == 0 ? static_cast<char>(gen() & 0xff) : alphabet[gen() % alphabet.size()]);
    }
    try {
      parse_netlist(text);
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(" at line "), std::string::npos) << e.what();
    }
  }
}

TEST(Netlist, LoadReportsMissingFile) {
  EXPECT_THROW(load_netlist("/nonexistent/dir/x.ckt"), Error);
}

}  // namespace
}  // namespace faultgan
