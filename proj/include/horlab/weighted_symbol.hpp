#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "horlab/polynomial.hpp"
#include "horlab/rational.hpp"

namespace horlab {

/// Names one coordinate of phase space: a position x_j or a covector ξ_j.
struct PhaseVariable {
  enum class Kind { Position, Covector };
  Kind kind;
  std::size_t index;  // 0-based

  static PhaseVariable x(std::size_t j) { return {Kind::Position, j}; }
  static PhaseVariable xi(std::size_t j) { return {Kind::Covector, j}; }
};

/// A point (x₀, ξ₀) of the cotangent space with rational coordinates.
struct CotangentPoint {
  std::vector<Rational> x;
  std::vector<Rational> xi;

  std::size_t dim() const { return x.size(); }
  bool covector_is_zero() const;
  /// Concatenation (x₀, ξ₀) in phase-space variable order.
  std::vector<Rational> coordinates() const;
  std::string to_string() const;

  /// Parses "(x01,...,x0n; xi01,...,xi0n)".
  static CotangentPoint parse(std::string_view text);
};

/// Exact value  rational_part + radical_part·√radicand.
struct AlgebraicValue {
  Rational rational_part;
  Rational radical_part;
  Rational radicand = 1;

  bool is_zero() const;
  int sign() const;
  double to_double() const;
  AlgebraicValue operator+(const AlgebraicValue& other) const;
  AlgebraicValue operator*(const AlgebraicValue& other) const;
  bool operator==(const AlgebraicValue& other) const;
  std::string to_string() const;
};

/// Element λ^{-e}(A + Bλ) of the ring of phase-space polynomials extended by
/// λ = (1+|ξ|²)^{1/2}. A and B are polynomials in (x₁…x_n, ξ₁…ξ_n).
///
/// Canonical form: λ² is always reduced, and e is minimal (no factor of
/// λ can be cancelled from A + Bλ). Equal functions have equal canonical
/// forms, so operator== is exact symbol equality.
class WeightedSymbol {
 public:
  WeightedSymbol() = default;
  /// The zero symbol on ℝⁿ × ℝⁿ.
  explicit WeightedSymbol(std::size_t dim);
  /// A plain polynomial in 2·dim phase-space variables.
  explicit WeightedSymbol(Polynomial polynomial);
  /// λ^{-denominator}(even + odd·λ), normalized.
  WeightedSymbol(Polynomial even, Polynomial odd, unsigned denominator);

  /// λ itself.
  static WeightedSymbol lambda(std::size_t dim);
  /// λ^k for any integer k.
  static WeightedSymbol lambda_power(std::size_t dim, int k);
  static WeightedSymbol variable(std::size_t dim, PhaseVariable v);
  /// 1 + |ξ|² as a phase-space polynomial.
  static Polynomial weight_square(std::size_t dim);
  /// Lifts a polynomial in x₁…x_n into phase space.
  static Polynomial lift_position_polynomial(const Polynomial& p);

  std::size_t dim() const { return dim_; }
  const Polynomial& even_part() const { return even_; }
  const Polynomial& odd_part() const { return odd_; }
  unsigned denominator_exponent() const { return denominator_; }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }
  /// No λ anywhere (odd part zero and no denominator).
  bool is_polynomial() const { return odd_.is_zero() && denominator_ == 0; }

  WeightedSymbol operator-() const;
  WeightedSymbol operator+(const WeightedSymbol& other) const;
  WeightedSymbol operator-(const WeightedSymbol& other) const;
  WeightedSymbol operator*(const WeightedSymbol& other) const;
  WeightedSymbol operator*(const Rational& c) const;

  WeightedSymbol derivative(PhaseVariable v) const;

  AlgebraicValue evaluate(const CotangentPoint& point) const;

  /// Degree under the grading deg ξ_j = deg λ = 1, deg x_j = 0.
  struct Homogeneity {
    enum class Kind { Homogeneous, Zero, Mixed };
    Kind kind;
    int degree;  // meaningful for Homogeneous; 1 for Zero by convention
  };
  Homogeneity homogeneity() const;
  /// The common degree, the conventional 1 for the zero symbol, or nullopt.
  std::optional<int> homogeneity_degree() const;

  /// Drops terms of x-degree above max_degree (both parts).
  WeightedSymbol truncated_in_x(long max_degree) const;
  /// Substitutes x ↦ x + shift.
  WeightedSymbol translated(std::span<const Rational> shift) const;
  /// The same symbol divided by its leading coefficient (zero stays zero).
  WeightedSymbol normalized_scale() const;

  bool operator==(const WeightedSymbol& other) const = default;
  std::size_t hash() const;

  /// Deterministic text with variables x1..xn, xi1..xin and "lambda".
  std::string to_string() const;

 private:
  void normalize();
  /// Same value with denominator exponent raised by one.
  void raise_denominator();

  std::size_t dim_ = 0;
  unsigned denominator_ = 0;
  Polynomial even_;
  Polynomial odd_;
};

struct WeightedSymbolHash {
  std::size_t operator()(const WeightedSymbol& s) const { return s.hash(); }
};

/// {q₁,q₂} = Σ_j (∂_{ξ_j}q₁ ∂_{x_j}q₂ − ∂_{x_j}q₁ ∂_{ξ_j}q₂).
WeightedSymbol poisson_bracket(const WeightedSymbol& q1, const WeightedSymbol& q2);

/// Names x1..xn, xi1..xin in phase-space variable order.
std::vector<std::string> phase_space_names(std::size_t dim);

}  // namespace horlab
