#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "smsccl/sat/types.hpp"

namespace smsccl::sat {

/// Text-mode DRAT addition log. Each clause becomes one line of DIMACS
/// literals terminated by `0`; witnesses for externally justified clauses
/// are written as `c ...` comment lines directly above the clause, so DRAT
/// tools skip them while `smsccl verify` can replay them.
class ClauseLog {
 public:
  /// Logs into a caller-owned stream.
  explicit ClauseLog(std::ostream& out);
  /// Opens (truncates) a file; throws std::runtime_error on failure.
  explicit ClauseLog(const std::string& path);
  ~ClauseLog();

  ClauseLog(const ClauseLog&) = delete;
  ClauseLog& operator=(const ClauseLog&) = delete;

  void addClause(const Clause& clause);
  void comment(std::string_view text);
  void flush();

 private:
  void checkStream();

  std::unique_ptr<std::ostream> owned_;
  std::ostream* out_;
};

/// Appends `clause` to `log` as one DRAT addition line.
void logLearnedClause(ClauseLog& log, const Clause& clause);

/// Formats a clause as a DRAT/DIMACS line including the terminating `0`.
std::string formatClauseLine(const Clause& clause);

}  // namespace smsccl::sat
