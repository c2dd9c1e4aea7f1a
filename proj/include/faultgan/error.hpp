#pragma once

#include <stdexcept>
#include <string>

namespace faultgan {

// Every library failure is reported through this type. The message always
// contains the short category keyword ("width", "coverage", "slot", ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Netlist and fault-grammar diagnostics; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace faultgan
