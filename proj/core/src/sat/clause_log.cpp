#include "smsccl/sat/clause_log.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace smsccl::sat {

std::string formatClauseLine(const Clause& clause) {
  std::string line;
  for (Lit l : clause) {
    line += std::to_string(l.toDimacs());
    line += ' ';
  }
  line += '0';
  return line;
}

ClauseLog::ClauseLog(std::ostream& out) : out_(&out) {}

ClauseLog::ClauseLog(const std::string& path) {
  auto file = std::make_unique<std::ofstream>(path, std::ios::trunc);
  if (!*file) throw std::runtime_error("cannot open clause log '" + path + "'");
  out_ = file.get();
  owned_ = std::move(file);
}

ClauseLog::~ClauseLog() {
  if (out_) out_->flush();
}

void ClauseLog::addClause(const Clause& clause) {
  *out_ << formatClauseLine(clause) << '\n';
  checkStream();
}

void ClauseLog::comment(std::string_view text) {
  *out_ << "c " << text << '\n';
  checkStream();
}

void ClauseLog::flush() {
  out_->flush();
  checkStream();
}

void ClauseLog::checkStream() {
  if (!*out_) throw std::runtime_error("clause log write failed");
}

void logLearnedClause(ClauseLog& log, const Clause& clause) { log.addClause(clause); }

}  // namespace smsccl::sat
