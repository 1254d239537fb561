#include "smsccl/sat/types.hpp"

#include <algorithm>

namespace smsccl::sat {

void Formula::add(Clause clause) {
  for (Lit l : clause) variableCount = std::max(variableCount, l.var());
  clauses.push_back(std::move(clause));
}

bool normalizeClause(Clause& clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i) {
    if (clause[i] == ~clause[i - 1]) return true;
  }
  return false;
}

LBool evaluate(const Clause& clause, const std::vector<LBool>& assignment) {
  bool open = false;
  for (Lit l : clause) {
    const LBool v = assignment.at(l.var()) ^ l.isNegative();
    if (v == LBool::True) return LBool::True;
    if (v == LBool::Undef) open = true;
  }
  return open ? LBool::Undef : LBool::False;
}

}  // namespace smsccl::sat
