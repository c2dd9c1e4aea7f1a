#include "faultgan/faults.hpp"

#include <charconv>
#include <cmath>

#include "faultgan/error.hpp"

namespace faultgan {

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

[[noreturn]] void bad_spec(std::string_view spec, const std::string& why) {
  throw ParseError("fault spec `" + std::string(spec) + "`: " + why, 0);
}

int parse_positive(std::string_view spec, std::string_view tok) {
  int v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 1) bad_spec(spec, "slot index must be a positive integer");
  return v;
}

// "L<layer>.S<pos>"
SlotRef parse_slot(std::string_view spec, std::string_view tok) {
  const auto dot = tok.find('.');
  if (tok.size() < 5 || tok[0] != 'L' || dot == std::string_view::npos ||
      dot + 1 >= tok.size() || tok[dot + 1] != 'S') {
    bad_spec(spec, "slot must look like L<layer>.S<pos>");
  }
  return {parse_positive(spec, tok.substr(1, dot - 1)), parse_positive(spec, tok.substr(dot + 2))};
}

FaultSpec parse_one(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view kind = parts[0];
  if (kind == "missing" && parts.size() == 2) return Missing{parse_slot(spec, parts[1])};
  if (kind == "reverse" && parts.size() == 2) return ReversedPolarity{parse_slot(spec, parts[1])};
  if (kind == "swap" && parts.size() == 3) {
    const auto gate = parse_gate_name(parts[2]);
    if (!gate) bad_spec(spec, "unknown gate " + std::string(parts[2]));
    return Swap{parse_slot(spec, parts[1]), *gate};
  }
  if (kind == "flip" && parts.size() == 2) {
    double p = 0;
    const auto* end = parts[1].data() + parts[1].size();
    const auto [ptr, ec] = std::from_chars(parts[1].data(), end, p);
    if (ec != std::errc() || ptr != end || !(p >= 0.0 && p <= 1.0)) {
      bad_spec(spec, "flip probability must be a number in [0, 1]");
    }
    return InputPerturbation{p};
  }
  bad_spec(spec, "expected missing:L<l>.S<p>, swap:L<l>.S<p>:<gate>, reverse:L<l>.S<p> or flip:<p>");
}

std::string format_slot(const SlotRef& s) {
  return "L" + std::to_string(s.layer) + ".S" + std::to_string(s.position);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const GateSlot& resolve(const Circuit& c, const SlotRef& ref) {
  const GateSlot* slot = c.find_slot(ref.layer, ref.position);
  if (slot == nullptr) {
    throw Error("slot " + format_slot(ref) + " does not name a gate of the circuit");
  }
  return *slot;
}

Circuit replace_slot(const Circuit& c, const SlotRef& ref, const std::vector<GateSlot>& with) {
  std::vector<Layer> layers = c.layers();
  auto& slots = layers[static_cast<std::size_t>(ref.layer - 1)].slots;
  std::erase_if(slots, [&](const GateSlot& s) { return s.position == ref.position; });
  slots.insert(slots.end(), with.begin(), with.end());
  return Circuit(c.width(), std::move(layers));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::vector<FaultSpec> parse_faults(std::string_view text) {
  std::vector<FaultSpec> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto spec = text.substr(start, comma - start);
    if (spec.empty()) throw ParseError("fault spec list contains an empty entry", 0);
    out.push_back(parse_one(spec));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_fault(const FaultSpec& f) {
  return std::visit(
      Overloaded{
          [](const Missing& m) { return "missing:" + format_slot(m.slot); },
          [](const Swap& s) {
            return "swap:" + format_slot(s.slot) + ":" + std::string(gate_name(s.replacement));
          },
          [](const ReversedPolarity& r) { return "reverse:" + format_slot(r.slot); },
          [](const InputPerturbation& p) { return "flip:" + format_double(p.flip_probability); },
      },
      f);
}

std::string format_faults(const std::vector<FaultSpec>& faults) {
  std::string out;
  for (const auto& f : faults) {
    if (!out.empty()) out += ',';
    out += format_fault(f);
  }
  return out;
}

Circuit inject(const Circuit& c, const FaultSpec& f) {
  return std::visit(
      Overloaded{
          [&](const Missing& m) {
            const GateSlot& slot = resolve(c, m.slot);
            std::vector<GateSlot> wires;
            for (int k = 0; k < slot.span(); ++k) {
              wires.push_back({GateKind::kBuffer, slot.position + k});
            }
            return replace_slot(c, m.slot, wires);
          },
          [&](const Swap& s) {
            const GateSlot& slot = resolve(c, s.slot);
            if (arity(slot.kind) != arity(s.replacement)) {
              throw Error("arity: cannot swap " + std::string(gate_name(slot.kind)) + " for " +
                          std::string(gate_name(s.replacement)));
            }
            return replace_slot(c, s.slot, {{s.replacement, slot.position}});
          },
          [&](const ReversedPolarity& r) {
            const GateSlot& slot = resolve(c, r.slot);
            return replace_slot(c, r.slot, {{complement(slot.kind), slot.position}});
          },
          [&](const InputPerturbation&) -> Circuit {
            throw Error("slot: input perturbation does not reference a circuit slot");
          },
      },
      f);
}

Circuit inject_all(const Circuit& c, const std::vector<FaultSpec>& faults) {
  Circuit out = c;
  for (const auto& f : faults) {
    if (!std::holds_alternative<InputPerturbation>(f)) out = inject(out, f);
  }
  return out;
}

std::vector<double> perturbations(const std::vector<FaultSpec>& faults) {
  std::vector<double> out;
  for (const auto& f : faults) {
    if (const auto* p = std::get_if<InputPerturbation>(&f)) out.push_back(p->flip_probability);
  }
  return out;
}

std::uint64_t perturb_packed(std::uint64_t packed, int width, double p, Rng& rng) {
  for (int i = 0; i < width; ++i) {
    if (uniform01(rng) < p) packed ^= std::uint64_t{1} << i;
  }
  return packed;
}

BitVector perturb_input(const BitVector& v, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("flip probability outside [0, 1]");
  return BitVector(v.width(), perturb_packed(v.packed(), v.width(), p, rng));
}

}  // namespace faultgan
