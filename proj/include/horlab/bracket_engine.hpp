#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "horlab/execution.hpp"
#include "horlab/operator_model.hpp"
#include "horlab/weighted_symbol.hpp"

namespace horlab {

/// I = (i₁,…,i_r) with 1-based letters into an alphabet of symbols.
struct BracketWord {
  std::vector<std::uint32_t> letters;

  std::size_t length() const { return letters.size(); }
  std::string to_string() const;
  static BracketWord parse(std::string_view text);  // "3,1,1"

  auto operator<=>(const BracketWord&) const = default;
};

struct TypeResult {
  struct Finite {
    unsigned type;
    BracketWord witness;
    WeightedSymbol witness_symbol;
    AlgebraicValue witness_value;
  };
  struct ExceedsCap {
    unsigned cap;
  };

  std::variant<Finite, ExceedsCap> outcome;
  /// Number of distinct symbols kept at each explored level (diagnostic only).
  std::vector<std::size_t> frontier_sizes;

  bool is_finite() const { return std::holds_alternative<Finite>(outcome); }
  std::optional<unsigned> type() const;
  const Finite& finite() const { return std::get<Finite>(outcome); }
};

struct TypeOptions {
  unsigned cap = 12;
  /// Per-level deduplication of symbols equal up to a nonzero scalar.
  bool dedup = true;
  Execution execution = Execution::Parallel;
};

/// Left-nested bracket {…{{q_{i₁}, q_{i₂}}, q_{i₃}}…, q_{i_r}}.
WeightedSymbol iterated_bracket(std::span<const WeightedSymbol> alphabet, const BracketWord& word);
WeightedSymbol iterated_bracket(const SymbolFamily& family, const BracketWord& word);

/// Minimal word length r ≤ cap with a bracket nonvanishing at the point,
/// witnessed by the lexicographically least such word.
///
/// Breadth-first over word length. Symbols are re-centred at x₀ and terms of
/// x-degree above the remaining depth are dropped: each further bracket
/// lowers the x-degree by at most one, so they cannot reach the point.
/// Identically-zero brackets are pruned, which prunes all their extensions.
TypeResult type_at(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point,
                   const TypeOptions& options = {});
TypeResult type_at(const SymbolFamily& family, const CotangentPoint& point,
                   const TypeOptions& options = {});

/// Reference oracle: evaluates every word of every length up to cap in
/// lexicographic order, with no pruning or deduplication. Brackets are taken
/// on exact Taylor jets at the point (coefficients in ℚ(√(1+|ξ₀|²))) instead
/// of global symbols; the left fold of the common prefix is reused.
TypeResult type_at_bruteforce(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point,
                              unsigned cap);
TypeResult type_at_bruteforce(const SymbolFamily& family, const CotangentPoint& point, unsigned cap);

struct DirectionReport {
  std::vector<std::vector<Rational>> directions;
  std::vector<TypeResult> results;
  /// Largest finite type seen. A lower bound for the supremum over all ξ.
  std::optional<unsigned> lower_bound;
  bool any_exceeds_cap = false;
};

DirectionReport type_over_directions(std::span<const WeightedSymbol> alphabet,
                                     const std::vector<Rational>& x0,
                                     const std::vector<std::vector<Rational>>& directions,
                                     const TypeOptions& options = {});
DirectionReport type_over_directions(const SymbolFamily& family, const std::vector<Rational>& x0,
                                     const std::vector<std::vector<Rational>>& directions,
                                     const TypeOptions& options = {});

}  // namespace horlab
