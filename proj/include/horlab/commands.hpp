#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "horlab/bracket_engine.hpp"
#include "horlab/conic.hpp"
#include "horlab/cutoff.hpp"
#include "horlab/dsl.hpp"
#include "horlab/report.hpp"

namespace horlab {

// One function per command-line verb. Each parses its inputs, calls the
// matching library operation and packages the result; errors propagate as
// ParseError / PreconditionError / DimensionError.

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int parse_error = 2;
inline constexpr int precondition = 3;
inline constexpr int cap_exceeded = 4;
}  // namespace exit_code

struct CommandResult {
  Json json;
  std::string text;
  int exit_code = exit_code::ok;
};

struct OperatorInput {
  std::string text;                // DSL source
  std::optional<std::string> at;   // "(x0…; xi0…)", overrides the source's "at"
};

struct TypeArgs {
  OperatorInput input;
  TypeOptions options;
  bool strict = false;
  bool bruteforce = false;
  /// Covector directions "a,b;c,d" swept at the point's x.
  std::optional<std::string> directions;
};

/// type-at: τ(ρ;𝒫) of the operator's symbol family.
CommandResult run_type_at(const TypeArgs& args);
/// lie-type-at: τ(ρ;X) of an sos system.
CommandResult run_lie_type_at(const TypeArgs& args);
/// family: p¹…p²ⁿ.
CommandResult run_family(const OperatorInput& input);

struct BracketArgs {
  OperatorInput input;
  std::string word;  // "3,1,1"
};

/// brackets: one iterated bracket of the family, with its value at the point if given.
CommandResult run_brackets(const BracketArgs& args);
/// sos-convert: the second-order operator of an sos system, rendered in the DSL.
CommandResult run_sos_convert(const OperatorInput& input);
/// render: the canonical DSL text of the operator and its point.
CommandResult run_render(const OperatorInput& input);
/// compare: both types of an sos system at the point.
CommandResult run_compare(const TypeArgs& args);

struct CharArgs {
  OperatorInput input;
  /// Sample values per axis for the positivity check; empty skips it.
  std::vector<Rational> psd_values;
};

/// char-check: whether p⁰ vanishes at the point, plus an optional positivity sample.
CommandResult run_char_check(const CharArgs& args);

struct CutoffArgs {
  CutoffParams params;
  std::size_t grid_points = 1 << 17;  // per axis, on [−L, L)
  double half_width = 2;
  unsigned alpha_max = 8;
  std::optional<std::string> csv_path;
};

/// cutoff-build: φ_N on the grid and its support properties.
CommandResult run_cutoff_build(const CutoffArgs& args);
/// cutoff-verify: the derivative bounds of φ_N.
CommandResult run_cutoff_verify(const CutoffArgs& args);

struct ConicArgs {
  ConicParams params;
  std::vector<unsigned> Ns;        // replaces params.N when non-empty
  std::size_t grid_points = 4097;  // per axis on [−4N, 4N]
  unsigned alpha_max = 4;
  std::optional<std::string> csv_path;
};

/// conic-build: Θ_N on the ξ grid and its cone properties.
CommandResult run_conic_build(const ConicArgs& args);
/// conic-verify: the conic derivative bound for each N and one uniform constant.
CommandResult run_conic_verify(const ConicArgs& args);

struct FaaArgs {
  std::string f;       // polynomial in t (one inner map) or t1…tm
  std::string g;       // ';'-separated polynomials in x, y, …
  std::string beta;    // "2,1"
  bool list_terms = false;
};

/// faa-check: composite_derivative against direct differentiation.
CommandResult run_faa_check(const FaaArgs& args);

struct LemmaArgs {
  unsigned N = 200;
  unsigned M = 10;
  /// Check every N' ≤ N and M' ≤ M instead of the single pair.
  bool sweep = false;
};

/// lemma-check: k^j ≤ B^j N^{(k−M)⁺} exhaustively, plus superadditivity.
CommandResult run_lemma_check(const LemmaArgs& args);

/// Parses "a,b;c,d" into vectors of rationals.
std::vector<std::vector<Rational>> parse_directions(const std::string& text);

}  // namespace horlab
