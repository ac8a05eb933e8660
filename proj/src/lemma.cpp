#include "horlab/lemma.hpp"

#include <algorithm>

#include "horlab/error.hpp"

namespace horlab {

unsigned nplus(long k, long M) { return k > M ? static_cast<unsigned>(k - M) : 0u; }

LemmaReport lemma_l1_check(unsigned N, unsigned M) {
  if (N < 1) throw PreconditionError("lemma check needs N >= 1");
  LemmaReport rep;
  rep.N = N;
  rep.M = M;
  rep.B = std::max(M, 3u);
  Integer n(N), b(rep.B);
  for (unsigned k = 1; k <= N; ++k) {
    Integer nk;
    mpz_pow_ui(nk.get_mpz_t(), n.get_mpz_t(), nplus(k, M));
    Integer lhs = 1, rhs = nk;
    for (unsigned j = 1; j <= k; ++j) {
      lhs *= k;
      rhs *= b;
      int c = cmp(lhs, rhs);
      ++rep.checked;
      if (k == M) ++rep.checked_at_M;
      if (c == 0) {
        ++rep.equalities;
        if (k == M) ++rep.equalities_at_M;
      }
      if (c > 0) rep.failures.emplace_back(j, k);
    }
  }
  return rep;
}

SuperadditivityReport superadditivity_check(unsigned max_parts, unsigned max_p, unsigned max_M,
                                            unsigned max_N) {
  SuperadditivityReport rep;
  for (unsigned parts = 1; parts <= max_parts; ++parts) {
    std::vector<unsigned> p(parts, 0);
    while (true) {
      unsigned sum = 0;
      for (unsigned v : p) sum += v;
      for (unsigned M = 0; M <= max_M; ++M) {
        for (unsigned N = 1; N <= max_N; ++N) {
          Integer n(N), lhs = 1, rhs, t;
          for (unsigned v : p) {
            mpz_pow_ui(t.get_mpz_t(), n.get_mpz_t(), nplus(v, M));
            lhs *= t;
          }
          mpz_pow_ui(rhs.get_mpz_t(), n.get_mpz_t(), nplus(sum, M));
          ++rep.checked;
          if (lhs > rhs) ++rep.failures;
        }
      }
      std::size_t i = 0;
      while (i < parts && p[i] == max_p) p[i++] = 0;
      if (i == parts) break;
      ++p[i];
    }
  }
  return rep;
}

}  // namespace horlab
