#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "horlab/polynomial.hpp"
#include "horlab/weighted_symbol.hpp"

namespace horlab {

/// P(x,D) = Σ a_{ℓj}(x) D_ℓ D_j + i Σ b_ℓ(x) D_ℓ + c(x) with polynomial
/// coefficients in x₁…x_n. The matrix a is stored row-major and must be
/// exactly symmetric.
class SecondOrderOperator {
 public:
  SecondOrderOperator(std::size_t dim, std::vector<Polynomial> a, std::vector<Polynomial> b,
                      Polynomial c);

  /// Operator with the given principal matrix and no lower-order terms.
  static SecondOrderOperator principal(std::size_t dim, std::vector<Polynomial> a);

  std::size_t dim() const { return dim_; }
  const Polynomial& a(std::size_t row, std::size_t col) const { return a_[row * dim_ + col]; }
  const std::vector<Polynomial>& a_matrix() const { return a_; }
  const std::vector<Polynomial>& b() const { return b_; }
  const Polynomial& c() const { return c_; }

  bool operator==(const SecondOrderOperator&) const = default;

 private:
  std::size_t dim_;
  std::vector<Polynomial> a_;
  std::vector<Polynomial> b_;
  Polynomial c_;
};

/// The family p¹…p²ⁿ: p^k = ∂_{ξ_k}p⁰ and p^{n+k} = λ⁻¹·∂_{x_k}p⁰.
struct SymbolFamily {
  std::vector<WeightedSymbol> members;

  std::size_t size() const { return members.size(); }
  const WeightedSymbol& operator[](std::size_t one_based) const { return members.at(one_based - 1); }
};

/// Coefficient lists of P^k = 2Σ_ℓ a_{ℓk} D_ℓ and P_k = Σ a^{(k)}_{ℓj} D_ℓ D_j.
struct DerivedOperators {
  std::vector<Polynomial> first_order;   // n coefficients of D_ℓ
  std::vector<Polynomial> second_order;  // n×n row-major coefficients of D_ℓ D_j
};

struct PsdViolation {
  std::vector<Rational> x;
  std::vector<Rational> probe;
  Rational quadratic_form;
};

struct PsdReport {
  std::size_t checked = 0;
  std::vector<PsdViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// p⁰(x,ξ) = Σ a_{ℓj}(x) ξ_ℓ ξ_j
WeightedSymbol principal_symbol(const SecondOrderOperator& op);

SymbolFamily symbol_family(const SecondOrderOperator& op);

/// k is 1-based.
DerivedOperators derived_operators(const SecondOrderOperator& op, std::size_t k);

/// Exact test p⁰(x₀,ξ₀) = 0. Throws PreconditionError for ξ₀ = 0.
bool is_characteristic(const SecondOrderOperator& op, const CotangentPoint& point);

/// Samples ⟨A(x)v,v⟩ over the given points and probe vectors. Passing is
/// evidence of positivity, not a proof.
PsdReport psd_sample_check(const SecondOrderOperator& op,
                           const std::vector<std::vector<Rational>>& sample_points,
                           const std::vector<std::vector<Rational>>& probes);

/// Cartesian grid values^dim, e.g. {-1,0,1}².
std::vector<std::vector<Rational>> sample_grid(std::size_t dim, const std::vector<Rational>& values);

/// Coordinate axes e₁…e_n plus the pairwise sums e_i + e_j and differences e_i − e_j.
std::vector<std::vector<Rational>> axis_probes(std::size_t dim);

}  // namespace horlab
