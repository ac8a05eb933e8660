#include "horlab/faa_di_bruno.hpp"

#include <map>

#include "horlab/error.hpp"

namespace horlab {

namespace {

bool fits(const MultiIndex& a, const MultiIndex& bound) { return a.dominated_by(bound); }

void enumerate(const std::vector<MultiIndex>& cand, std::size_t start, const MultiIndex& beta_rem,
               const MultiIndex& gamma_rem, const MultiIndex& gamma, FaaTerm& cur,
               std::vector<FaaTerm>& out) {
  if (beta_rem.is_zero()) {
    if (gamma_rem.is_zero()) out.push_back(cur);
    return;
  }
  std::uint64_t left = gamma_rem.total();
  for (std::size_t c = start; c < cand.size(); ++c) {
    const MultiIndex& l = cand[c];
    for (unsigned t = 1; t <= left; ++t) {
      MultiIndex used = l.scaled(t);
      if (!fits(used, beta_rem)) break;
      for (const auto& k : multi_indices_of_degree(gamma_rem.size(), t)) {
        if (!fits(k, gamma_rem)) continue;
        cur.partition.emplace_back(k, l);
        enumerate(cand, c + 1, beta_rem - used, gamma_rem - k, gamma, cur, out);
        cur.partition.pop_back();
      }
    }
  }
}

}  // namespace

Rational FaaTerm::weight(const MultiIndex& beta) const {
  Rational w(beta.factorial());
  for (const auto& [k, l] : partition) {
    Integer lf = l.factorial(), den = k.factorial();
    for (std::uint64_t e = 0; e < k.total(); ++e) den *= lf;
    w /= Rational(den);
  }
  w.canonicalize();
  return w;
}

std::vector<FaaTerm> faa_di_bruno_partitions(const MultiIndex& beta, const MultiIndex& gamma) {
  std::vector<FaaTerm> out;
  if (gamma.is_zero() || gamma.total() > beta.total()) return out;
  std::vector<MultiIndex> cand;
  for (auto& l : multi_indices_below(beta)) {
    if (!l.is_zero()) cand.push_back(std::move(l));
  }
  FaaTerm cur{gamma, {}, 0};
  enumerate(cand, 0, beta, gamma, gamma, cur, out);
  for (auto& t : out) t.coefficient = t.weight(beta);
  return out;
}

std::vector<FaaTerm> faa_di_bruno_terms(const MultiIndex& beta, std::size_t m) {
  std::vector<FaaTerm> out;
  for (unsigned d = 1; d <= beta.total(); ++d) {
    for (const auto& gamma : multi_indices_of_degree(m, d)) {
      auto part = faa_di_bruno_partitions(beta, gamma);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  return out;
}

Polynomial composite_derivative(const Polynomial& f, std::span<const Polynomial> g,
                                const MultiIndex& beta) {
  if (g.size() != f.nvars()) throw DimensionError("need one inner polynomial per variable of f");
  if (g.empty()) throw DimensionError("composition needs at least one inner polynomial");
  std::size_t d = g.front().nvars();
  for (const auto& gi : g) {
    if (gi.nvars() != d) throw DimensionError("inner polynomials must share a ring");
  }
  if (beta.size() != d) throw DimensionError("derivative order has the wrong dimension");
  if (beta.is_zero()) return f.compose(g);

  std::map<std::vector<std::uint32_t>, Polynomial> outer;
  auto f_at = [&](const MultiIndex& gamma) -> const Polynomial& {
    std::vector<std::uint32_t> key(gamma.begin(), gamma.end());
    auto it = outer.find(key);
    if (it == outer.end()) it = outer.emplace(key, f.derivative(gamma).compose(g)).first;
    return it->second;
  };
  auto g_at = [&](std::size_t i, const MultiIndex& l) { return g[i].derivative(l); };
  auto weight = [d](const Rational& w) { return Polynomial::constant(d, w); };
  return faa_di_bruno_apply<Polynomial>(beta, f.nvars(), Polynomial(d), f_at, g_at, weight);
}

}  // namespace horlab
