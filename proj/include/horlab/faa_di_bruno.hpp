#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "horlab/multi_index.hpp"
#include "horlab/polynomial.hpp"

namespace horlab {

/// One element of p(β,γ): slots (k_j, ℓ_j) with Σ k_j = γ, Σ |k_j| ℓ_j = β,
/// |k_j| > 0 and 0 ≺ ℓ₁ ≺ ℓ₂ ≺ … in graded-lex order.
struct FaaTerm {
  MultiIndex gamma;
  std::vector<std::pair<MultiIndex, MultiIndex>> partition;  // (k_j, ℓ_j)
  /// weight(β), filled in by the enumeration.
  Rational coefficient;

  /// β!/Π_j (k_j! (ℓ_j!)^{|k_j|})
  Rational weight(const MultiIndex& beta) const;
  bool operator==(const FaaTerm&) const = default;
};

/// Exhaustive enumeration of p(β,γ). β indexes the inner variables, γ the
/// components of the inner map. Empty when |γ| > |β| or γ = 0.
std::vector<FaaTerm> faa_di_bruno_partitions(const MultiIndex& beta, const MultiIndex& gamma);

/// p(β,γ) for every γ of size m with 1 ≤ |γ| ≤ |β|.
std::vector<FaaTerm> faa_di_bruno_terms(const MultiIndex& beta, std::size_t m);

/// D^β (f∘g) = Σ_γ (D^γ f)(g) Σ_{p(β,γ)} weight · Π_j Π_i (D^{ℓ_j} g_i)^{(k_j)_i},
/// summed over precomputed terms (faa_di_bruno_terms(β, m)).
///
/// f_at(γ) returns (D^γ f)(g(x)), g_at(i, ℓ) returns D^ℓ g_i(x) and weight
/// converts the rational weight of a term to T. T needs + and *.
template <class T, class FAt, class GAt, class Weight>
T faa_di_bruno_sum(std::span<const FaaTerm> terms, std::size_t m, T zero, FAt&& f_at, GAt&& g_at,
                   Weight&& weight) {
  T total = zero;
  for (const auto& term : terms) {
    T prod = weight(term.coefficient);
    for (const auto& [k, l] : term.partition) {
      for (std::size_t i = 0; i < m; ++i) {
        if (k[i] == 0) continue;
        T g = g_at(i, l);
        for (unsigned e = 0; e < k[i]; ++e) prod = prod * g;
      }
    }
    total = total + f_at(term.gamma) * prod;
  }
  return total;
}

template <class T, class FAt, class GAt, class Weight>
T faa_di_bruno_apply(const MultiIndex& beta, std::size_t m, T zero, FAt&& f_at, GAt&& g_at,
                     Weight&& weight) {
  auto terms = faa_di_bruno_terms(beta, m);
  return faa_di_bruno_sum<T>(std::span<const FaaTerm>(terms), m, std::move(zero), f_at, g_at, weight);
}

/// D^β (f∘g) by the Faà di Bruno sum. f has one variable per entry of g;
/// the entries of g share a ring, which is the ring of the result.
Polynomial composite_derivative(const Polynomial& f, std::span<const Polynomial> g,
                                const MultiIndex& beta);

}  // namespace horlab
