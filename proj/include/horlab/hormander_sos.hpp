#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "horlab/bracket_engine.hpp"
#include "horlab/operator_model.hpp"

namespace horlab {

/// X = Σ_ℓ ã_ℓ(x) D_ℓ, coefficients polynomial in x₁…x_n.
struct VectorField {
  std::vector<Polynomial> coefficients;

  std::size_t dim() const { return coefficients.size(); }
  bool operator==(const VectorField&) const = default;
};

/// Σ_j X_j² + X₀ + c with X₀ = Σ_j w_j(x) X_j.
class VectorFieldSystem {
 public:
  VectorFieldSystem(std::size_t dim, std::vector<VectorField> fields,
                    std::optional<std::vector<Polynomial>> drift_weights = std::nullopt,
                    std::optional<Polynomial> zero_order = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return fields_.size(); }
  const std::vector<VectorField>& fields() const { return fields_; }
  const std::optional<std::vector<Polynomial>>& drift_weights() const { return drift_; }
  const Polynomial& zero_order() const { return zero_order_; }

  bool operator==(const VectorFieldSystem&) const = default;

 private:
  std::size_t dim_;
  std::vector<VectorField> fields_;
  std::optional<std::vector<Polynomial>> drift_;
  Polynomial zero_order_;
};

/// X_j(x,ξ) = Σ_ℓ ã_{ℓj}(x) ξ_ℓ
std::vector<WeightedSymbol> field_symbols(const VectorFieldSystem& sys);

/// Type of the point with respect to the system {X₁,…,X_m}; X₀ is ignored.
TypeResult lie_type_at(const VectorFieldSystem& sys, const CotangentPoint& point,
                       const TypeOptions& options = {});

/// a_{ℓ₁ℓ} = Σ_j ã_{ℓ₁j} ã_{ℓj}. First-order terms: b_ℓ = Σ_j w_j ã_{ℓj} minus
/// the terms X_j(ã_{ℓj}) produced by expanding the squares.
SecondOrderOperator to_hor_operator(const VectorFieldSystem& sys);

/// [X, Y] = Σ_ℓ (X(Y_ℓ) − Y(X_ℓ)) ∂_ℓ
VectorField commutator(const VectorField& x, const VectorField& y);

/// Symbol Σ_ℓ c_ℓ(x) ξ_ℓ of a single field.
WeightedSymbol field_symbol(const VectorField& field);

struct TypeComparison {
  TypeResult lie;     // τ((x,ξ);X)
  TypeResult family;  // τ((x,ξ);𝒫) for the converted operator
  bool conclusive = false;
  std::optional<bool> dp1_holds;  // τ_X ≤ τ_𝒫
  std::optional<bool> dp2_holds;  // τ_X ≤ 2 ⇒ τ_X = τ_𝒫
};

TypeComparison compare_types(const VectorFieldSystem& sys, const CotangentPoint& point,
                             const TypeOptions& options = {});

}  // namespace horlab
