#include "horlab/hormander_sos.hpp"

#include "horlab/error.hpp"

namespace horlab {

VectorFieldSystem::VectorFieldSystem(std::size_t dim, std::vector<VectorField> fields,
                                     std::optional<std::vector<Polynomial>> drift_weights,
                                     std::optional<Polynomial> zero_order)
    : dim_(dim),
      fields_(std::move(fields)),
      drift_(std::move(drift_weights)),
      zero_order_(zero_order ? std::move(*zero_order) : Polynomial(dim)) {
  if (dim_ == 0) throw DimensionError("system dimension must be positive");
  if (fields_.empty()) throw PreconditionError("a system needs at least one vector field");
  for (const auto& f : fields_) {
    if (f.dim() != dim_) throw DimensionError("vector field has the wrong number of components");
    for (const auto& c : f.coefficients) {
      if (c.nvars() != dim_) throw DimensionError("field coefficients must be polynomials in x");
    }
  }
  if (drift_) {
    if (drift_->size() != fields_.size()) {
      throw DimensionError("drift needs one weight per vector field");
    }
    for (const auto& w : *drift_) {
      if (w.nvars() != dim_) throw DimensionError("drift weights must be polynomials in x");
    }
  }
  if (zero_order_.nvars() != dim_) throw DimensionError("zero-order term must be a polynomial in x");
}

WeightedSymbol field_symbol(const VectorField& field) {
  std::size_t n = field.dim();
  Polynomial s(2 * n);
  for (std::size_t l = 0; l < n; ++l) {
    if (field.coefficients[l].is_zero()) continue;
    s += WeightedSymbol::lift_position_polynomial(field.coefficients[l]) *
         Polynomial::variable(2 * n, n + l);
  }
  return WeightedSymbol(std::move(s));
}

std::vector<WeightedSymbol> field_symbols(const VectorFieldSystem& sys) {
  std::vector<WeightedSymbol> out;
  for (const auto& f : sys.fields()) out.push_back(field_symbol(f));
  return out;
}

TypeResult lie_type_at(const VectorFieldSystem& sys, const CotangentPoint& point,
                       const TypeOptions& options) {
  if (point.dim() != sys.dim()) throw DimensionError("point dimension does not match system");
  return type_at(field_symbols(sys), point, options);
}

namespace {

// X(f) = Σ_ℓ c_ℓ ∂_ℓ f
Polynomial apply(const VectorField& x, const Polynomial& f) {
  Polynomial out(f.nvars());
  for (std::size_t l = 0; l < x.dim(); ++l) {
    if (!x.coefficients[l].is_zero()) out += x.coefficients[l] * f.derivative(l);
  }
  return out;
}

}  // namespace

SecondOrderOperator to_hor_operator(const VectorFieldSystem& sys) {
  std::size_t n = sys.dim();
  std::vector<Polynomial> a(n * n, Polynomial(n));
  std::vector<Polynomial> b(n, Polynomial(n));
  for (std::size_t l1 = 0; l1 < n; ++l1) {
    for (std::size_t l = 0; l < n; ++l) {
      for (const auto& f : sys.fields()) a[l1 * n + l] += f.coefficients[l1] * f.coefficients[l];
    }
  }
  // With D = −i∂, X_j² = Σ ã ã' D D − i Σ_ℓ X̃_j(ã_{ℓj}) D_ℓ where X̃_j is the
  // real field Σ ã_{ℓj}∂_ℓ; in the form i Σ b_ℓ D_ℓ this contributes −X̃_j(ã_{ℓj}).
  for (const auto& f : sys.fields()) {
    for (std::size_t l = 0; l < n; ++l) b[l] -= apply(f, f.coefficients[l]);
  }
  if (sys.drift_weights()) {
    const auto& w = *sys.drift_weights();
    for (std::size_t j = 0; j < sys.size(); ++j) {
      for (std::size_t l = 0; l < n; ++l) b[l] += w[j] * sys.fields()[j].coefficients[l];
    }
  }
  return SecondOrderOperator(n, std::move(a), std::move(b), sys.zero_order());
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw DimensionError("commutator of fields on different spaces");
  VectorField out;
  for (std::size_t l = 0; l < x.dim(); ++l) {
    out.coefficients.push_back(apply(x, y.coefficients[l]) - apply(y, x.coefficients[l]));
  }
  return out;
}

TypeComparison compare_types(const VectorFieldSystem& sys, const CotangentPoint& point,
                             const TypeOptions& options) {
  TypeComparison cmp{lie_type_at(sys, point, options),
                     type_at(symbol_family(to_hor_operator(sys)), point, options)};
  auto tx = cmp.lie.type();
  auto tp = cmp.family.type();
  cmp.conclusive = tx.has_value() && tp.has_value();
  if (cmp.conclusive) {
    cmp.dp1_holds = *tx <= *tp;
    cmp.dp2_holds = *tx > 2 || *tx == *tp;
  }
  return cmp;
}

}  // namespace horlab
