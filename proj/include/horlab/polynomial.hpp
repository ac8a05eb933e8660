#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "horlab/multi_index.hpp"
#include "horlab/rational.hpp"

namespace horlab {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so two polynomials are equal iff their term lists are.
class Polynomial {
 public:
  struct Term {
    MultiIndex exponents;
    Rational coefficient;
    bool operator==(const Term&) const = default;
  };

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t var);
  static Polynomial monomial(MultiIndex exponents, const Rational& c);
  /// Builds from arbitrary (possibly repeated / zero) terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(const MultiIndex& exponents) const;
  /// First term in canonical order; polynomial must be nonzero.
  const Term& leading_term() const { return terms_.front(); }

  /// Maximal |α| over the terms, -1 for the zero polynomial.
  long total_degree() const;
  /// Maximal Σ_{i in [first, first+count)} α_i over the terms, -1 for zero.
  long degree_in(std::size_t first, std::size_t count) const;
  /// True when every term has the same degree in the selected variables.
  std::optional<long> homogeneous_degree_in(std::size_t first, std::size_t count) const;
  /// Drops terms whose degree in the selected variables exceeds max_degree.
  Polynomial truncated(std::size_t first, std::size_t count, long max_degree) const;
  /// True when no term involves the selected variables.
  bool free_of(std::size_t first, std::size_t count) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& other) { return *this = *this + other; }
  Polynomial& operator-=(const Polynomial& other) { return *this = *this - other; }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }
  Polynomial pow(unsigned k) const;

  Polynomial derivative(std::size_t var) const;
  Polynomial derivative(const MultiIndex& orders) const;

  Rational evaluate(std::span<const Rational> point) const;
  /// Substitutes variable i by replacements[i]; all replacements share one
  /// ambient dimension, which becomes the result's.
  Polynomial compose(std::span<const Polynomial> replacements) const;
  /// Re-embeds into a ring of new_nvars variables, variable i -> i + offset.
  Polynomial embedded(std::size_t new_nvars, std::size_t offset) const;

  /// Exact quotient when divisor divides *this, nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  bool operator==(const Polynomial& other) const = default;
  std::size_t hash() const;

  /// Deterministic rendering, e.g. "x^3*y^2 + x*y^2 - 1/2".
  std::string to_string(std::span<const std::string> names) const;
  /// Rendering with default names v1..vk.
  std::string to_string() const;

 private:
  void check_same_ring(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

/// Descending graded-lex comparator used for the canonical term order.
struct GrlexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return a.grlex(b) == std::strong_ordering::greater;
  }
};

}  // namespace horlab
