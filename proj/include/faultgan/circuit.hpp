#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faultgan {

// Widths are capped at 63 so that the 2^j-weighted encoding (weights start at
// 2^1) of a full vector still fits in a 64-bit word.
inline constexpr int kMaxWidth = 63;

// An N-bit binary signal. Bit j (1-based, j = 1 is the leftmost character of
// the string form) carries weight 2^j in encode_int and is stored at bit j-1
// of the packed word.
class BitVector {
 public:
  explicit BitVector(int width, std::uint64_t packed = 0);

  // "1010" -> a_1 = 1, a_2 = 0, a_3 = 1, a_4 = 0.
  static BitVector from_string(std::string_view bits);

  int width() const noexcept { return width_; }
  std::uint64_t packed() const noexcept { return packed_; }
  std::uint64_t mask() const noexcept { return mask_for(width_); }

  bool bit(int j) const;
  BitVector with_bit(int j, bool value) const;
  int popcount() const noexcept;
  std::string to_string() const;

  static std::uint64_t mask_for(int width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  int width_;
  std::uint64_t packed_;
};

// Sum_{j=1..N} a_j 2^j.
std::uint64_t encode_int(const BitVector& v) noexcept;
BitVector decode_int(int width, std::uint64_t encoded);
// 2^{N+1} - 2, the largest encoding of a width-N vector.
std::uint64_t full_scale(int width) noexcept;

int hamming_distance(const BitVector& x, const BitVector& y);

enum class GateKind { kNot, kBuffer, kAnd, kOr, kNand, kNor, kXor, kXnor };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::kNot, GateKind::kBuffer, GateKind::kAnd,  GateKind::kOr,
    GateKind::kNand, GateKind::kNor,   GateKind::kXor, GateKind::kXnor};

bool is_unary(GateKind kind) noexcept;
int arity(GateKind kind) noexcept;
// AND<->NAND, OR<->NOR, XOR<->XNOR, NOT<->BUFFER.
GateKind complement(GateKind kind) noexcept;
std::string_view gate_name(GateKind kind) noexcept;
std::optional<GateKind> parse_gate_name(std::string_view name) noexcept;

// Throws Error("gate arity ...") when b's presence does not match the arity.
bool eval_gate(GateKind kind, bool a, std::optional<bool> b = std::nullopt);

struct GateSlot {
  GateKind kind;
  int position;  // lowest covered bit, 1-based

  int span() const noexcept { return arity(kind); }
  friend bool operator==(const GateSlot&, const GateSlot&) = default;
};

struct Layer {
  std::vector<GateSlot> slots;  // sorted by position
  friend bool operator==(const Layer&, const Layer&) = default;
};

// Ordered layers of gate slots. Construction validates that every layer
// partitions {1..N}; binary slots must sit on aligned pairs (2k-1, 2k).
class Circuit {
 public:
  Circuit(int width, std::vector<Layer> layers);

  // Convenience builders for single-gate-kind layers.
  static Layer uniform_layer(int width, GateKind kind);

  int width() const noexcept { return width_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }

  // Slot covering `position` in 1-based `layer`, or nullptr.
  const GateSlot* find_slot(int layer, int position) const;

  BitVector eval(const BitVector& input) const;
  // Hot-path evaluation on packed words; no width check.
  std::uint64_t eval_packed(std::uint64_t input) const noexcept;

  // Sorted, de-duplicated gate names used anywhere in the circuit.
  std::vector<std::string> gate_set() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.width_ == b.width_ && a.layers_ == b.layers_;
  }

 private:
  // Bit masks per gate kind; binary masks mark the first bit of each pair.
  struct CompiledLayer {
    std::uint64_t not_mask = 0;
    std::uint64_t buffer_mask = 0;
    std::uint64_t binary_mask[6] = {};  // indexed by GateKind - kAnd
  };

  int width_;
  std::vector<Layer> layers_;
  std::vector<CompiledLayer> compiled_;
};

BitVector eval_circuit(const Circuit& c, const BitVector& input);

}  // namespace faultgan
