#include "horlab/operator_model.hpp"

#include "horlab/error.hpp"

namespace horlab {

SecondOrderOperator::SecondOrderOperator(std::size_t dim, std::vector<Polynomial> a,
                                         std::vector<Polynomial> b, Polynomial c)
    : dim_(dim), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (dim_ == 0) throw DimensionError("operator dimension must be positive");
  if (a_.size() != dim_ * dim_) throw DimensionError("coefficient matrix must be n x n");
  if (b_.size() != dim_) throw DimensionError("drift vector must have n entries");
  auto check = [&](const Polynomial& p) {
    if (p.nvars() != dim_) {
      throw DimensionError("coefficients must be polynomials in x1..xn only");
    }
  };
  for (const auto& p : a_) check(p);
  for (const auto& p : b_) check(p);
  check(c_);
  for (std::size_t l = 0; l < dim_; ++l) {
    for (std::size_t j = l + 1; j < dim_; ++j) {
      if (a_[l * dim_ + j] != a_[j * dim_ + l]) {
        throw PreconditionError("coefficient matrix is not symmetric at (" + std::to_string(l + 1) +
                                "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

SecondOrderOperator SecondOrderOperator::principal(std::size_t dim, std::vector<Polynomial> a) {
  return SecondOrderOperator(dim, std::move(a), std::vector<Polynomial>(dim, Polynomial(dim)),
                             Polynomial(dim));
}

WeightedSymbol principal_symbol(const SecondOrderOperator& op) {
  std::size_t n = op.dim();
  Polynomial p0(2 * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      if (op.a(l, j).is_zero()) continue;
      MultiIndex m(2 * n);
      m[n + l] += 1;
      m[n + j] += 1;
      p0 += WeightedSymbol::lift_position_polynomial(op.a(l, j)) * Polynomial::monomial(m, 1);
    }
  }
  return WeightedSymbol(std::move(p0));
}

SymbolFamily symbol_family(const SecondOrderOperator& op) {
  std::size_t n = op.dim();
  WeightedSymbol p0 = principal_symbol(op);
  WeightedSymbol inv_lambda = WeightedSymbol::lambda_power(n, -1);
  SymbolFamily family;
  for (std::size_t k = 0; k < n; ++k) family.members.push_back(p0.derivative(PhaseVariable::xi(k)));
  for (std::size_t k = 0; k < n; ++k) {
    family.members.push_back(inv_lambda * p0.derivative(PhaseVariable::x(k)));
  }
  return family;
}

DerivedOperators derived_operators(const SecondOrderOperator& op, std::size_t k) {
  std::size_t n = op.dim();
  if (k < 1 || k > n) {
    throw PreconditionError("derived operator index " + std::to_string(k) + " outside 1.." +
                            std::to_string(n));
  }
  DerivedOperators out;
  for (std::size_t l = 0; l < n; ++l) out.first_order.push_back(op.a(l, k - 1) * Rational(2));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) out.second_order.push_back(op.a(l, j).derivative(k - 1));
  }
  return out;
}

bool is_characteristic(const SecondOrderOperator& op, const CotangentPoint& point) {
  if (point.dim() != op.dim()) throw DimensionError("point dimension does not match operator");
  if (point.covector_is_zero()) throw PreconditionError("characteristic test needs a nonzero covector");
  return principal_symbol(op).evaluate(point).is_zero();
}

PsdReport psd_sample_check(const SecondOrderOperator& op,
                           const std::vector<std::vector<Rational>>& sample_points,
                           const std::vector<std::vector<Rational>>& probes) {
  std::size_t n = op.dim();
  PsdReport report;
  for (const auto& x : sample_points) {
    if (x.size() != n) throw DimensionError("sample point dimension mismatch");
    std::vector<Rational> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = op.a_matrix()[i].evaluate(x);
    for (const auto& v : probes) {
      if (v.size() != n) throw DimensionError("probe dimension mismatch");
      Rational q = 0;
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < n; ++j) q += a[l * n + j] * v[l] * v[j];
      }
      ++report.checked;
      if (sgn(q) < 0) report.violations.push_back({x, v, q});
    }
  }
  return report;
}

std::vector<std::vector<Rational>> sample_grid(std::size_t dim, const std::vector<Rational>& values) {
  std::vector<std::vector<Rational>> out{{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<std::vector<Rational>> next;
    for (const auto& prefix : out) {
      for (const auto& v : values) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<Rational>> axis_probes(std::size_t dim) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rational> e(dim, 0);
    e[i] = 1;
    out.push_back(e);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      std::vector<Rational> s(dim, 0), d(dim, 0);
      s[i] = 1;
      s[j] = 1;
      d[i] = 1;
      d[j] = -1;
      out.push_back(s);
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace horlab
