#pragma once

#include <string>
#include <string_view>

#include "faultgan/circuit.hpp"

namespace faultgan {

// Line-oriented `.ckt` format:
//
//   # comment
//   width 4
//   layer
//   and 1 2
//   not 3
//   not 4
//
// `width` appears once before any layer; each `layer` opens a block of slot
// lines `<gate> <pos>` (unary) or `<gate> <pos> <pos+1>` (binary). Positions
// are 1-based. Failures throw ParseError carrying the offending line.
Circuit parse_netlist(std::string_view text);

// Canonical form: no comments, slots sorted by position, '\n' line endings.
std::string serialize_netlist(const Circuit& c);

Circuit load_netlist(const std::string& path);

}  // namespace faultgan
