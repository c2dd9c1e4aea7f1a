#include "faultgan/circuit.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "faultgan/error.hpp"

namespace faultgan {

namespace {

void check_width(int width) {
  if (width < 1 || width > kMaxWidth) {
    throw Error("width " + std::to_string(width) + " outside [1, " +
                std::to_string(kMaxWidth) + "]");
  }
}

void check_index(int j, int width) {
  if (j < 1 || j > width) {
    throw Error("bit index " + std::to_string(j) + " outside [1, " +
                std::to_string(width) + "]");
  }
}

std::size_t binary_index(GateKind kind) {
  return static_cast<std::size_t>(kind) - static_cast<std::size_t>(GateKind::kAnd);
}

}  // namespace

BitVector::BitVector(int width, std::uint64_t packed) : width_(width) {
  check_width(width);
  packed_ = packed & mask_for(width);
}

BitVector BitVector::from_string(std::string_view bits) {
  check_width(static_cast<int>(bits.size()));
  std::uint64_t packed = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      packed |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw Error("bit string contains non-binary character");
    }
  }
  return BitVector(static_cast<int>(bits.size()), packed);
}

bool BitVector::bit(int j) const {
  check_index(j, width_);
  return (packed_ >> (j - 1)) & 1U;
}

BitVector BitVector::with_bit(int j, bool value) const {
  check_index(j, width_);
  const std::uint64_t m = std::uint64_t{1} << (j - 1);
  return BitVector(width_, value ? (packed_ | m) : (packed_ & ~m));
}

int BitVector::popcount() const noexcept { return std::popcount(packed_); }

std::string BitVector::to_string() const {
  std::string s(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i) {
    if ((packed_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint64_t encode_int(const BitVector& v) noexcept { return v.packed() << 1; }

BitVector decode_int(int width, std::uint64_t encoded) {
  if ((encoded & 1U) != 0 || (encoded >> 1) > BitVector::mask_for(width)) {
    throw Error("encoding " + std::to_string(encoded) +
                " is not a valid width-" + std::to_string(width) + " value");
  }
  return BitVector(width, encoded >> 1);
}

std::uint64_t full_scale(int width) noexcept {
  return BitVector::mask_for(width) << 1;
}

int hamming_distance(const BitVector& x, const BitVector& y) {
  if (x.width() != y.width()) {
    throw Error("width mismatch: " + std::to_string(x.width()) + " vs " +
                std::to_string(y.width()));
  }
  return std::popcount(x.packed() ^ y.packed());
}

bool is_unary(GateKind kind) noexcept {
  return kind == GateKind::kNot || kind == GateKind::kBuffer;
}

int arity(GateKind kind) noexcept { return is_unary(kind) ? 1 : 2; }

GateKind complement(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::kNot: return GateKind::kBuffer;
    case GateKind::kBuffer: return GateKind::kNot;
    case GateKind::kAnd: return GateKind::kNand;
    case GateKind::kNand: return GateKind::kAnd;
    case GateKind::kOr: return GateKind::kNor;
    case GateKind::kNor: return GateKind::kOr;
    case GateKind::kXor: return GateKind::kXnor;
    case GateKind::kXnor: return GateKind::kXor;
  }
  return kind;
}

std::string_view gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::kNot: return "not";
    case GateKind::kBuffer: return "buffer";
    case GateKind::kAnd: return "and";
    case GateKind::kOr: return "or";
    case GateKind::kNand: return "nand";
    case GateKind::kNor: return "nor";
    case GateKind::kXor: return "xor";
    case GateKind::kXnor: return "xnor";
  }
  return "?";
}

std::optional<GateKind> parse_gate_name(std::string_view name) noexcept {
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

bool eval_gate(GateKind kind, bool a, std::optional<bool> b) {
  if (is_unary(kind) == b.has_value()) {
    throw Error("gate arity: " + std::string(gate_name(kind)) + " takes " +
                std::to_string(arity(kind)) + " input(s)");
  }
  switch (kind) {
    case GateKind::kNot: return !a;
    case GateKind::kBuffer: return a;
    case GateKind::kAnd: return a && *b;
    case GateKind::kOr: return a || *b;
    case GateKind::kNand: return !(a && *b);
    case GateKind::kNor: return !(a || *b);
    case GateKind::kXor: return a != *b;
    case GateKind::kXnor: return a == *b;
  }
  return false;
}

Circuit::Circuit(int width, std::vector<Layer> layers)
    : width_(width), layers_(std::move(layers)) {
  check_width(width);
  if (layers_.empty()) throw Error("circuit needs at least one layer");
  compiled_.reserve(layers_.size());
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    auto& slots = layers_[li].slots;
    std::sort(slots.begin(), slots.end(),
              [](const GateSlot& x, const GateSlot& y) { return x.position < y.position; });
    const std::string where = " in layer " + std::to_string(li + 1);
    CompiledLayer cl;
    std::uint64_t covered = 0;
    for (const GateSlot& s : slots) {
      const int last = s.position + s.span() - 1;
      if (s.position < 1 || last > width) {
        throw Error("position " + std::to_string(s.position) + " out of range" + where);
      }
      if (!is_unary(s.kind) && s.position % 2 == 0) {
        throw Error("alignment: binary gate at " + std::to_string(s.position) +
                    " must start on an odd position" + where);
      }
      const std::uint64_t bits = BitVector::mask_for(s.span()) << (s.position - 1);
      if (covered & bits) {
        throw Error("coverage: position " + std::to_string(s.position) +
                    " covered twice" + where);
      }
      covered |= bits;
      if (s.kind == GateKind::kNot) {
        cl.not_mask |= bits;
      } else if (s.kind == GateKind::kBuffer) {
        cl.buffer_mask |= bits;
      } else {
        cl.binary_mask[binary_index(s.kind)] |= std::uint64_t{1} << (s.position - 1);
      }
    }
    if (covered != BitVector::mask_for(width)) {
      const int missing = std::countr_zero(~covered) + 1;
      throw Error("coverage: position " + std::to_string(missing) +
                  " not covered" + where);
    }
    compiled_.push_back(cl);
  }
}

Layer Circuit::uniform_layer(int width, GateKind kind) {
  check_width(width);
  Layer layer;
  for (int p = 1; p <= width; p += arity(kind)) layer.slots.push_back({kind, p});
  return layer;
}

const GateSlot* Circuit::find_slot(int layer, int position) const {
  if (layer < 1 || static_cast<std::size_t>(layer) > layers_.size()) return nullptr;
  for (const GateSlot& s : layers_[static_cast<std::size_t>(layer - 1)].slots) {
    if (s.position == position) return &s;
  }
  return nullptr;
}

std::uint64_t Circuit::eval_packed(std::uint64_t in) const noexcept {
  for (const CompiledLayer& cl : compiled_) {
    // Pair partner aligned onto the first bit of each pair.
    const std::uint64_t hi = in >> 1;
    const std::uint64_t band = in & hi;
    const std::uint64_t bor = in | hi;
    const std::uint64_t bxor = in ^ hi;
    const std::uint64_t* m = cl.binary_mask;
    const std::uint64_t firsts = (band & m[0]) | (bor & m[1]) | (~band & m[2]) |
                                 (~bor & m[3]) | (bxor & m[4]) | (~bxor & m[5]);
    in = (in & cl.buffer_mask) | (~in & cl.not_mask) | firsts | (firsts << 1);
  }
  return in;
}

BitVector Circuit::eval(const BitVector& input) const {
  if (input.width() != width_) {
    throw Error("width mismatch: circuit is " + std::to_string(width_) +
                " bits, input is " + std::to_string(input.width()));
  }
  return BitVector(width_, eval_packed(input.packed()));
}

std::vector<std::string> Circuit::gate_set() const {
  std::set<std::string> names;
  for (const Layer& l : layers_) {
    for (const GateSlot& s : l.slots) names.emplace(gate_name(s.kind));
  }
  return {names.begin(), names.end()};
}

BitVector eval_circuit(const Circuit& c, const BitVector& input) { return c.eval(input); }

}  // namespace faultgan
