#include "faultgan/circuit.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "faultgan/error.hpp"
#include "test_support.hpp"

namespace faultgan {
namespace {

TEST(EvalGate, TruthTables) {
  EXPECT_TRUE(eval_gate(GateKind::kAnd, true, true));
  EXPECT_FALSE(eval_gate(GateKind::kNand, true, true));
  EXPECT_TRUE(eval_gate(GateKind::kXnor, false, false));
  for (int a = 0; a < 2; ++a) {
    EXPECT_EQ(eval_gate(GateKind::kNot, a), !a);
    EXPECT_EQ(eval_gate(GateKind::kBuffer, a), a == 1);
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(eval_gate(GateKind::kAnd, a, b == 1), (a & b) == 1);
      EXPECT_EQ(eval_gate(GateKind::kOr, a, b == 1), (a | b) == 1);
      EXPECT_EQ(eval_gate(GateKind::kXor, a, b == 1), (a ^ b) == 1);
      EXPECT_EQ(eval_gate(GateKind::kNand, a, b == 1), !eval_gate(GateKind::kAnd, a, b == 1));
      EXPECT_EQ(eval_gate(GateKind::kXnor, a, b == 1), !eval_gate(GateKind::kXor, a, b == 1));
    }
  }
}

TEST(EvalGate, ComplementIsNegationForBinaryGates) {
  for (GateKind g : {GateKind::kAnd, GateKind::kOr, GateKind::kXor}) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        EXPECT_EQ(eval_gate(complement(g), a, b == 1), !eval_gate(g, a, b == 1));
      }
    }
  }
}

TEST(EvalGate, ArityMismatch) {
  EXPECT_THROW(
      {
        try {
          eval_gate(GateKind::kAnd, true);
        } catch (const Error& e) {
          EXPECT_NE(std::string(e.what()).find("gate arity"), std::string::npos);
          throw;
        }
      },
      Error);
  EXPECT_THROW(eval_gate(GateKind::kNot, true, false), Error);
}

TEST(BitVector, StringConventionAndEquality) {
  const BitVector v = BitVector::from_string("1010");
  EXPECT_EQ(v.width(), 4);
  EXPECT_TRUE(v.bit(1));
  EXPECT_FALSE(v.bit(2));
  EXPECT_TRUE(v.bit(3));
  EXPECT_EQ(v.to_string(), "1010");
  EXPECT_EQ(v, BitVector::from_string("1010"));
  EXPECT_NE(v, BitVector::from_string("10100"));
  EXPECT_THROW(BitVector(0), Error);
  EXPECT_THROW(BitVector(kMaxWidth + 1), Error);
  EXPECT_THROW(BitVector::from_string("10x1"), Error);
  EXPECT_THROW(v.bit(5), Error);
}

TEST(EncodeInt, WeightsStartAtTwo) {
  EXPECT_EQ(encode_int(BitVector::from_string("1010")), 10U);
  EXPECT_EQ(encode_int(BitVector::from_string("0000")), 0U);
  EXPECT_EQ(encode_int(BitVector::from_string("1111")), 30U);
  EXPECT_EQ(full_scale(4), 30U);
}

TEST(EncodeInt, MatchesLiteralSumAndIsInjective) {
  for (int n = 1; n <= 12; ++n) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
      const BitVector v(n, p);
      std::uint64_t literal = 0;
      for (int j = 1; j <= n; ++j) literal += v.bit(j) ? (std::uint64_t{1} << j) : 0;
      ASSERT_EQ(encode_int(v), literal);
      ASSERT_LE(encode_int(v), full_scale(n));
      ASSERT_TRUE(seen.insert(encode_int(v)).second);
      ASSERT_EQ(decode_int(n, encode_int(v)), v);
    }
  }
  EXPECT_THROW(decode_int(4, 3), Error);
  EXPECT_THROW(decode_int(4, 32), Error);
}

TEST(Circuit, AllNotLayerComplements) {
  const Circuit c(4, {Circuit::uniform_layer(4, GateKind::kNot)});
  EXPECT_EQ(eval_circuit(c, BitVector::from_string("1010")), BitVector::from_string("0101"));
}

TEST(Circuit, BinarySlotWritesBothPositions) {
  const Circuit c(2, {Circuit::uniform_layer(2, GateKind::kAnd)});
  EXPECT_EQ(c.eval(BitVector::from_string("11")), BitVector::from_string("11"));
  EXPECT_EQ(c.eval(BitVector::from_string("10")), BitVector::from_string("00"));
}

TEST(Circuit, TwoLayersCompose) {
  // AND(1,1) = 1 on both bits, then NOT on both: 00.
  const Circuit c(2, {Circuit::uniform_layer(2, GateKind::kAnd), Circuit::uniform_layer(2, GateKind::kNot)});
  EXPECT_EQ(c.eval(BitVector::from_string("11")), BitVector::from_string("00"));
}

TEST(Circuit, BufferCircuitIsIdentity) {
  const Circuit c(8, {Circuit::uniform_layer(8, GateKind::kBuffer), Circuit::uniform_layer(8, GateKind::kBuffer)});
  for (std::uint64_t p = 0; p < 256; ++p) EXPECT_EQ(c.eval(BitVector(8, p)), BitVector(8, p));
}

TEST(Circuit, RejectsInvalidLayers) {
  auto message_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message_of([] { Circuit(4, {Layer{{{GateKind::kAnd, 1}}}}); }).find("coverage"), std::string::npos);
  EXPECT_NE(message_of([] {
              Circuit(4, {Layer{{{GateKind::kNot, 1}, {GateKind::kAnd, 2}, {GateKind::kNot, 4}}}});
            }).find("alignment"),
            std::string::npos);
  EXPECT_NE(message_of([] { Circuit(2, {Layer{{{GateKind::kNot, 1}, {GateKind::kNot, 3}}}}); }).find("position"),
            std::string::npos);
  EXPECT_NE(message_of([] {
              Circuit(2, {Layer{{{GateKind::kNot, 1}, {GateKind::kNot, 1}, {GateKind::kNot, 2}}}});
            }).find("coverage"),
            std::string::npos);
  EXPECT_NE(message_of([] { Circuit(3, {Circuit::uniform_layer(3, GateKind::kAnd)}); }).find("position"),
            std::string::npos);
  EXPECT_NE(message_of([] { Circuit(4, {Circuit::uniform_layer(4, GateKind::kNot)}).eval(BitVector(3)); })
                .find("width"),
            std::string::npos);
}

TEST(Circuit, PackedEvaluationMatchesSlotBySlotReference) {
  std::mt19937_64 gen(42);
  for (int round = 0; round < 300; ++round) {
    const int width = 1 + static_cast<int>(gen() % 20);
    const Circuit c = testing_support::random_circuit(width, 1 + static_cast<int>(gen() % 4), gen);
    for (int k = 0; k < 50; ++k) {
      const BitVector in(width, gen());
      const BitVector expected = testing_support::reference_eval(c, in);
      ASSERT_EQ(c.eval(in), expected) << "width " << width << " input " << in.to_string();
      ASSERT_EQ(c.eval(in), c.eval(in));
    }
  }
}

TEST(Circuit, GateSetAndSlotLookup) {
  const Circuit c(4, {Layer{{{GateKind::kAnd, 1}, {GateKind::kNot, 3}, {GateKind::kNot, 4}}}});
  EXPECT_EQ(c.gate_set(), (std::vector<std::string>{"and", "not"}));
  ASSERT_NE(c.find_slot(1, 3), nullptr);
  EXPECT_EQ(c.find_slot(1, 3)->kind, GateKind::kNot);
  EXPECT_EQ(c.find_slot(1, 2), nullptr);
  EXPECT_EQ(c.find_slot(2, 1), nullptr);
}

}  // namespace
}  // namespace faultgan
