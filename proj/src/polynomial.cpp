#include "horlab/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "horlab/error.hpp"

namespace horlab {

namespace {

bool term_before(const Polynomial::Term& a, const Polynomial::Term& b) {
  return GrlexDescending{}(a.exponents, b.exponents);
}

// Sorts, merges equal monomials and drops zeros.
void canonicalize(std::vector<Polynomial::Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_before);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].exponents == terms[i].exponents) {
      terms[i].coefficient += terms[j].coefficient;
      ++j;
    }
    if (sgn(terms[i].coefficient) != 0) {
      if (out != i) terms[out] = std::move(terms[i]);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (sgn(c) != 0) p.terms_.push_back({MultiIndex(nvars), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw DimensionError("variable index out of range");
  Polynomial p(nvars);
  p.terms_.push_back({MultiIndex::unit(nvars, var), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(MultiIndex exponents, const Rational& c) {
  Polynomial p(exponents.size());
  if (sgn(c) != 0) p.terms_.push_back({std::move(exponents), c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponents.size() != nvars) throw DimensionError("term arity does not match ring");
  }
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  canonicalize(p.terms_);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponents.is_zero());
}

Rational Polynomial::coefficient(const MultiIndex& exponents) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponents,
                             [](const Term& t, const MultiIndex& m) {
                               return GrlexDescending{}(t.exponents, m);
                             });
  if (it != terms_.end() && it->exponents == exponents) return it->coefficient;
  return 0;
}

long Polynomial::total_degree() const {
  // Canonical order puts the highest total degree first.
  return terms_.empty() ? -1 : static_cast<long>(terms_.front().exponents.total());
}

long Polynomial::degree_in(std::size_t first, std::size_t count) const {
  long best = -1;
  for (const auto& t : terms_) {
    long d = 0;
    for (std::size_t i = first; i < first + count; ++i) d += t.exponents[i];
    best = std::max(best, d);
  }
  return best;
}

std::optional<long> Polynomial::homogeneous_degree_in(std::size_t first, std::size_t count) const {
  std::optional<long> deg;
  for (const auto& t : terms_) {
    long d = 0;
    for (std::size_t i = first; i < first + count; ++i) d += t.exponents[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

Polynomial Polynomial::truncated(std::size_t first, std::size_t count, long max_degree) const {
  Polynomial out(nvars_);
  for (const auto& t : terms_) {
    long d = 0;
    for (std::size_t i = first; i < first + count; ++i) d += t.exponents[i];
    if (d <= max_degree) out.terms_.push_back(t);
  }
  return out;
}

bool Polynomial::free_of(std::size_t first, std::size_t count) const {
  return degree_in(first, count) <= 0;
}

void Polynomial::check_same_ring(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw DimensionError("polynomial ring mismatch: " + std::to_string(nvars_) + " vs " +
                         std::to_string(other.nvars_) + " variables");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  check_same_ring(other);
  Polynomial out(nvars_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (term_before(*a, *b)) {
      out.terms_.push_back(*a++);
    } else if (term_before(*b, *a)) {
      out.terms_.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (sgn(c) != 0) out.terms_.push_back({a->exponents, std::move(c)});
      ++a;
      ++b;
    }
  }
  out.terms_.insert(out.terms_.end(), a, terms_.end());
  out.terms_.insert(out.terms_.end(), b, other.terms_.end());
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_same_ring(other);
  Polynomial out(nvars_);
  if (terms_.empty() || other.terms_.empty()) return out;
  out.terms_.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      out.terms_.push_back({a.exponents + b.exponents, a.coefficient * b.coefficient});
    }
  }
  canonicalize(out.terms_);
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (sgn(c) == 0) return Polynomial(nvars_);
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DimensionError("derivative variable out of range");
  Polynomial out(nvars_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto e = t.exponents[var];
    if (e == 0) continue;
    Term d{t.exponents, t.coefficient * e};
    d.exponents[var] = e - 1;
    out.terms_.push_back(std::move(d));
  }
  // Subtracting the same unit vector from every survivor preserves grlex order.
  return out;
}

Polynomial Polynomial::derivative(const MultiIndex& orders) const {
  if (orders.size() != nvars_) throw DimensionError("derivative order arity mismatch");
  Polynomial out = *this;
  for (std::size_t v = 0; v < nvars_; ++v) {
    for (unsigned k = 0; k < orders[v]; ++k) out = out.derivative(v);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point arity mismatch");
  Rational sum = 0;
  Rational term, power;
  for (const auto& t : terms_) {
    term = t.coefficient;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exponents[i] == 0) continue;
      mpz_pow_ui(mpq_numref(power.get_mpq_t()), point[i].get_num_mpz_t(), t.exponents[i]);
      mpz_pow_ui(mpq_denref(power.get_mpq_t()), point[i].get_den_mpz_t(), t.exponents[i]);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::compose(std::span<const Polynomial> replacements) const {
  if (replacements.size() != nvars_) throw DimensionError("composition arity mismatch");
  std::size_t target = replacements.empty() ? 0 : replacements[0].nvars();
  for (const auto& r : replacements) {
    if (r.nvars() != target) throw DimensionError("composition replacements live in different rings");
  }
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power_of = [&](std::size_t var, unsigned e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * replacements[var]);
    return cache[e];
  };
  Polynomial out(target);
  for (const auto& t : terms_) {
    Polynomial term = constant(target, t.coefficient);
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (t.exponents[v]) term = term * power_of(v, t.exponents[v]);
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::embedded(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) throw DimensionError("embedding does not fit target ring");
  Polynomial out(new_nvars);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    MultiIndex m(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) m[offset + i] = t.exponents[i];
    out.terms_.push_back({std::move(m), t.coefficient});
  }
  canonicalize(out.terms_);
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  check_same_ring(divisor);
  if (divisor.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (is_zero()) return Polynomial(nvars_);
  // A single polynomial is a Gröbner basis of the ideal it generates, so the
  // division algorithm leaves a zero remainder iff the division is exact.
  const Term& lead = divisor.leading_term();
  std::map<MultiIndex, Rational, GrlexDescending> rest;
  for (const auto& t : terms_) rest.emplace(t.exponents, t.coefficient);
  std::vector<Term> quotient;
  while (!rest.empty()) {
    auto top = rest.begin();
    if (!lead.exponents.dominated_by(top->first)) return std::nullopt;
    MultiIndex qm = top->first - lead.exponents;
    Rational qc = top->second / lead.coefficient;
    for (const auto& d : divisor.terms_) {
      MultiIndex m = qm + d.exponents;
      auto [it, inserted] = rest.try_emplace(m, 0);
      it->second -= qc * d.coefficient;
      if (sgn(it->second) == 0) rest.erase(it);
    }
    quotient.push_back({std::move(qm), std::move(qc)});
  }
  return from_terms(nvars_, std::move(quotient));
}

std::size_t Polynomial::hash() const {
  std::size_t h = nvars_;
  for (const auto& t : terms_) {
    h = h * 31 + t.exponents.hash();
    h ^= hash_value(t.coefficient) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw DimensionError("variable name count mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coefficient;
    if (first) {
      if (sgn(c) < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    bool has_vars = !t.exponents.is_zero();
    bool need_star = false;
    if (c != 1 || !has_vars) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exponents[i] == 0) continue;
      if (need_star) os << '*';
      os << names[i];
      if (t.exponents[i] > 1) os << '^' << t.exponents[i];
      need_star = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars_; ++i) names.push_back("v" + std::to_string(i + 1));
  return to_string(names);
}

}  // namespace horlab
