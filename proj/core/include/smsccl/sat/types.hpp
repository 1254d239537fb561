#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace smsccl::sat {

/// A literal over a 1-based variable index. The code packs the variable and
/// the sign as `2 * var + negative`, so negation is a single xor.
class Lit {
 public:
  constexpr Lit() = default;

  static constexpr Lit positive(int var) { return Lit(static_cast<uint32_t>(var) << 1); }
  static constexpr Lit negative(int var) { return Lit((static_cast<uint32_t>(var) << 1) | 1u); }
  static constexpr Lit make(int var, bool isNegative) {
    return isNegative ? negative(var) : positive(var);
  }
  static constexpr Lit fromDimacs(int value) {
    return value < 0 ? negative(-value) : positive(value);
  }
  static constexpr Lit fromCode(uint32_t code) { return Lit(code); }

  constexpr int var() const { return static_cast<int>(code_ >> 1); }
  constexpr bool isNegative() const { return (code_ & 1u) != 0; }
  constexpr uint32_t code() const { return code_; }
  constexpr int toDimacs() const { return isNegative() ? -var() : var(); }

  constexpr Lit operator~() const { return Lit(code_ ^ 1u); }

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  constexpr explicit Lit(uint32_t code) : code_(code) {}
  uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

/// Three-valued truth. The numeric layout lets `value(lit)` be computed as
/// `assignment(var) ^ sign` for assigned variables.
enum class LBool : uint8_t { True = 0, False = 1, Undef = 2 };

constexpr LBool operator^(LBool b, bool flip) {
  if (b == LBool::Undef) return b;
  return static_cast<LBool>(static_cast<uint8_t>(b) ^ static_cast<uint8_t>(flip));
}

constexpr LBool toLBool(bool b) { return b ? LBool::True : LBool::False; }

/// A CNF formula with a declared variable count.
struct Formula {
  int variableCount = 0;
  std::vector<Clause> clauses;

  /// Grows the declared variable count if needed and appends the clause.
  void add(Clause clause);
  /// Allocates a fresh variable and returns its index.
  int newVar() { return ++variableCount; }
};

/// Sorts, removes duplicate literals and reports whether the clause is a
/// tautology (contains a literal and its negation).
bool normalizeClause(Clause& clause);

/// Evaluates a clause under a total or partial assignment given as a
/// per-variable vector (index 0 unused).
LBool evaluate(const Clause& clause, const std::vector<LBool>& assignment);

}  // namespace smsccl::sat
