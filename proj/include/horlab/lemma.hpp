#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "horlab/rational.hpp"

namespace horlab {

/// (k − M)⁺
unsigned nplus(long k, long M);

struct LemmaReport {
  unsigned N = 0;
  unsigned M = 0;
  unsigned B = 0;                // max(M, 3)
  std::size_t checked = 0;       // pairs 1 ≤ j ≤ k ≤ N
  std::size_t equalities = 0;    // pairs where both sides agree
  std::size_t checked_at_M = 0;  // pairs with k = M
  std::size_t equalities_at_M = 0;
  std::vector<std::pair<unsigned, unsigned>> failures;  // (j, k)

  bool passed() const { return failures.empty(); }
};

/// k^j ≤ B^j N^{(k−M)⁺} for every 1 ≤ j ≤ k ≤ N, exact integers.
LemmaReport lemma_l1_check(unsigned N, unsigned M);

struct SuperadditivityReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

/// N^{(p₁−M)⁺}⋯N^{(p_ℓ−M)⁺} ≤ N^{(p₁+⋯+p_ℓ−M)⁺} for all ℓ ≤ max_parts,
/// 0 ≤ p_i ≤ max_p, M ≤ max_M and 1 ≤ N ≤ max_N, exact integers.
SuperadditivityReport superadditivity_check(unsigned max_parts, unsigned max_p, unsigned max_M,
                                            unsigned max_N);

}  // namespace horlab
