#include "smsccl/sat/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace smsccl::sat {

namespace {

bool parseInt(std::string_view token, long long& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Formula parseDimacs(std::string_view text) {
  Formula formula;
  bool haveHeader = false;
  long long declaredClauses = 0;
  Clause current;
  int lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "c" || tokens[0][0] == 'c') continue;
    if (tokens[0] == "p") {
      if (haveHeader) throw DimacsError(lineNo, "duplicate header");
      long long vars = 0;
      if (tokens.size() != 4 || tokens[1] != "cnf" || !parseInt(tokens[2], vars) ||
          !parseInt(tokens[3], declaredClauses) || vars < 0 || declaredClauses < 0) {
        throw DimacsError(lineNo, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      formula.variableCount = static_cast<int>(vars);
      haveHeader = true;
      continue;
    }
    if (!haveHeader) throw DimacsError(lineNo, "clause before header");
    for (std::string_view token : tokens) {
      long long value = 0;
      if (!parseInt(token, value)) throw DimacsError(lineNo, "malformed literal '" + std::string(token) + "'");
      if (value == 0) {
        formula.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (value > formula.variableCount || -value > formula.variableCount) {
        throw DimacsError(lineNo, "variable " + std::to_string(value < 0 ? -value : value) +
                                      " exceeds declared count " + std::to_string(formula.variableCount));
      }
      current.push_back(Lit::fromDimacs(static_cast<int>(value)));
    }
    if (end == text.size()) break;
  }
  if (!haveHeader) throw DimacsError(lineNo, "missing header");
  if (!current.empty()) throw DimacsError(lineNo, "last clause is not terminated by 0");
  return formula;
}

std::string emitDimacs(const Formula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variableCount << ' ' << formula.clauses.size() << '\n';
  for (const Clause& c : formula.clauses) {
    for (Lit l : c) out << l.toDimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace smsccl::sat
