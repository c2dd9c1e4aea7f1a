#include "faultgan/netlist.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "faultgan/error.hpp"

namespace faultgan {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  throw ParseError(what + " at line " + std::to_string(line), line);
}

std::string printable(std::string_view tok) {
  std::string out;
  for (char c : tok) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) {
      out.push_back(c);
    } else {
      static const char* hex = "0123456789abcdef";
      out += "\\x";
      out.push_back(hex[u >> 4]);
      out.push_back(hex[u & 0xf]);
    }
    if (out.size() > 40) {
      out += "...";
      break;
    }
  }
  return out;
}

std::optional<long long> parse_int(std::string_view tok) {
  long long v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

struct LayerBuilder {
  Layer layer;
  std::uint64_t covered = 0;
};

}  // namespace

Circuit parse_netlist(std::string_view text) {
  std::optional<int> width;
  std::vector<Layer> layers;
  std::optional<LayerBuilder> current;
  std::size_t line_no = 0;
  std::size_t last_content = 0;

  // Coverage of a finished layer is reported at its last content line.
  auto close_layer = [&](std::size_t at_line) {
    if (!current) return;
    if (current->covered != BitVector::mask_for(*width)) {
      int missing = 1;
      while ((current->covered >> (missing - 1)) & 1U) ++missing;
      fail("coverage: layer " + std::to_string(layers.size() + 1) +
               " leaves position " + std::to_string(missing) + " uncovered",
           at_line);
    }
    layers.push_back(std::move(current->layer));
    current.reset();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line);
    if (words.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const std::string_view head = words[0];
    if (head == "width") {
      if (width) fail("width declared twice", line_no);
      if (words.size() != 2) fail("syntax: expected `width <N>`", line_no);
      const auto n = parse_int(words[1]);
      if (!n || *n < 1 || *n > kMaxWidth) {
        fail("width must be an integer in [1, " + std::to_string(kMaxWidth) + "]", line_no);
      }
      width = static_cast<int>(*n);
    } else if (head == "layer") {
      if (!width) fail("syntax: `layer` before `width`", line_no);
      if (words.size() != 1) fail("syntax: `layer` takes no arguments", line_no);
      close_layer(last_content);
      current.emplace();
    } else {
      const auto kind = parse_gate_name(head);
      if (!kind) fail("unknown gate " + printable(head), line_no);
      if (!width) fail("syntax: gate before `width`", line_no);
      if (!current) fail("syntax: gate outside a `layer` block", line_no);
      const std::size_t expected = 1 + static_cast<std::size_t>(arity(*kind));
      if (words.size() != expected) {
        fail("arity: " + std::string(head) + " expects " +
                 std::to_string(arity(*kind)) + " position(s)",
             line_no);
      }
      std::vector<long long> positions;
      for (std::size_t w = 1; w < words.size(); ++w) {
        const auto p = parse_int(words[w]);
        if (!p || *p < 1 || *p > *width) {
          fail("position " + printable(words[w]) + " outside [1, " +
                   std::to_string(*width) + "]",
               line_no);
        }
        positions.push_back(*p);
      }
      const int first = static_cast<int>(positions[0]);
      if (!is_unary(*kind) && (first % 2 == 0 || positions[1] != first + 1)) {
        fail("alignment: binary gate must occupy a pair (2k-1, 2k)", line_no);
      }
      const std::uint64_t bits = BitVector::mask_for(arity(*kind)) << (first - 1);
      if (current->covered & bits) {
        fail("coverage: position " + std::to_string(first) + " already covered", line_no);
      }
      current->covered |= bits;
      current->layer.slots.push_back({*kind, first});
    }
    last_content = line_no;
    if (eol == text.size()) break;
  }

  if (!width) fail("syntax: missing `width` declaration", line_no);
  close_layer(last_content);
  if (layers.empty()) fail("syntax: no `layer` blocks", line_no);
  return Circuit(*width, std::move(layers));
}

std::string serialize_netlist(const Circuit& c) {
  std::ostringstream out;
  out << "width " << c.width() << '\n';
  for (const Layer& layer : c.layers()) {
    out << "layer\n";
    for (const GateSlot& s : layer.slots) {
      out << gate_name(s.kind) << ' ' << s.position;
      if (!is_unary(s.kind)) out << ' ' << s.position + 1;
      out << '\n';
    }
  }
  return out.str();
}

Circuit load_netlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open netlist " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_netlist(buf.str());
}

}  // namespace faultgan
