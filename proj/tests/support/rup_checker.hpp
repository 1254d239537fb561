#pragma once

#include <iosfwd>
#include <string>

#include "smsccl/sat/types.hpp"

namespace smsccl::testing {

struct RupReplay {
  bool ok = false;
  bool derivedEmpty = false;
  std::size_t axioms = 0;
  std::size_t checked = 0;
  std::string error;
};

/// Replays a clause log against `base`. A clause directly preceded by a
/// witness comment ("c perm", "c col", "c col010", "c sol", "c cube") is
/// taken as an axiom; every other clause must follow from the clauses so far
/// by unit propagation (RUP).
RupReplay replayClauseLog(const sat::Formula& base, std::istream& log);

}  // namespace smsccl::testing
