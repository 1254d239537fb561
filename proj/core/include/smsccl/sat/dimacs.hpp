#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "smsccl/sat/types.hpp"

namespace smsccl::sat {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses DIMACS CNF. Comment lines (`c ...`) are skipped; the header is
/// mandatory and every literal must lie within the declared variable range.
Formula parseDimacs(std::string_view text);

std::string emitDimacs(const Formula& formula);

}  // namespace smsccl::sat
