#include "horlab/bracket_engine.hpp"

#include <sstream>
#include <unordered_set>

#include "horlab/error.hpp"

namespace horlab {

std::string BracketWord::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? "," : "") << letters[i];
  os << ')';
  return os.str();
}

BracketWord BracketWord::parse(std::string_view text) {
  BracketWord w;
  std::string s(text);
  auto open = s.find('(');
  auto close = s.rfind(')');
  std::string body = s;
  if (open != std::string::npos || close != std::string::npos) {
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw PreconditionError("malformed bracket word '" + s + "'");
    }
    body = s.substr(open + 1, close - open - 1);
  }
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::logic_error&) {
      throw PreconditionError("malformed bracket word '" + s + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw PreconditionError("malformed bracket word '" + s + "'");
    }
    if (v < 1) throw PreconditionError("bracket letters are 1-based");
    w.letters.push_back(static_cast<std::uint32_t>(v));
  }
  if (w.letters.empty()) throw PreconditionError("bracket word must be nonempty");
  return w;
}

std::optional<unsigned> TypeResult::type() const {
  if (auto* f = std::get_if<Finite>(&outcome)) return f->type;
  return std::nullopt;
}

namespace {

void check_alphabet(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point) {
  if (alphabet.empty()) throw PreconditionError("empty symbol alphabet");
  for (const auto& s : alphabet) {
    if (s.dim() != point.dim()) throw DimensionError("symbol and point dimensions differ");
  }
  if (point.covector_is_zero()) throw PreconditionError("type requires a nonzero covector");
}

TypeResult finite_result(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point,
                         BracketWord word, std::vector<std::size_t> sizes) {
  WeightedSymbol full = iterated_bracket(alphabet, word);
  AlgebraicValue value = full.evaluate(point);
  auto type = static_cast<unsigned>(word.length());
  return TypeResult{TypeResult::Finite{type, std::move(word), std::move(full), std::move(value)},
                    std::move(sizes)};
}

struct Node {
  BracketWord word;
  WeightedSymbol symbol;
};

// Truncated Taylor series P + Q·√R at a cotangent point, in the local
// variables u = (x − x₀, ξ − ξ₀), R = 1 + |ξ₀|². Exact up to total degree `order`.
struct Jet {
  Polynomial rational;
  Polynomial radical;
  long order;
};

class JetBuilder {
 public:
  JetBuilder(const CotangentPoint& point, long order) : n_(point.dim()), order_(order), radicand_(1) {
    for (const auto& v : point.xi) radicand_ += v * v;
    auto coords = point.coordinates();
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      shift_.push_back(Polynomial::variable(2 * n_, i) + Polynomial::constant(2 * n_, coords[i]));
    }
    // 1 + |ξ|² = R + w with w(0) = 0
    w_ = local(WeightedSymbol::weight_square(n_)) - Polynomial::constant(2 * n_, radicand_);
  }

  Jet of(const WeightedSymbol& s) const {
    Jet even = times(lambda_power(-static_cast<int>(s.denominator_exponent())), local(s.even_part()));
    Jet odd = times(lambda_power(1 - static_cast<int>(s.denominator_exponent())), local(s.odd_part()));
    return {even.rational + odd.rational, even.radical + odd.radical, order_};
  }

  Jet bracket(const Jet& q, const Jet& p) const {
    long k = std::min(q.order, p.order) - 1;
    Jet out{Polynomial(2 * n_), Polynomial(2 * n_), k};
    for (std::size_t j = 0; j < n_; ++j) {
      add(out, product(derivative(q, n_ + j), derivative(p, j), k), 1);
      add(out, product(derivative(q, j), derivative(p, n_ + j), k), -1);
    }
    return out;
  }

  AlgebraicValue value(const Jet& j) const {
    MultiIndex zero(2 * n_);
    return {j.rational.coefficient(zero), j.radical.coefficient(zero), radicand_};
  }

 private:
  Polynomial local(const Polynomial& p) const { return cut(p.compose(shift_), order_); }
  Polynomial cut(const Polynomial& p, long k) const { return p.truncated(0, 2 * n_, k); }

  // λ^s = R^{s/2}·Σ_k C(s/2, k)(w/R)^k
  Jet lambda_power(int s) const {
    Polynomial series(2 * n_);
    Polynomial term = Polynomial::constant(2 * n_, 1);
    Polynomial ratio = w_ * (Rational(1) / radicand_);
    Rational half(s, 2);
    half.canonicalize();
    Rational binom = 1;
    for (long k = 0; k <= order_; ++k) {
      series += term * binom;
      binom *= (half - Rational(k)) / Rational(k + 1);
      term = cut(term * ratio, order_);
    }
    // R^{s/2} = R^{⌊s/2⌋}·(1 or √R)
    int whole = s >= 0 ? s / 2 : -((-s + 1) / 2);
    Rational scale = 1;
    for (int i = 0; i < std::abs(whole); ++i) scale *= radicand_;
    if (whole < 0) scale = Rational(1) / scale;
    Polynomial scaled = series * scale;
    if (s - 2 * whole == 0) return {scaled, Polynomial(2 * n_), order_};
    return {Polynomial(2 * n_), scaled, order_};
  }

  Jet times(const Jet& a, const Polynomial& p) const {
    return {cut(a.rational * p, order_), cut(a.radical * p, order_), order_};
  }

  Jet derivative(const Jet& j, std::size_t var) const {
    return {j.rational.derivative(var), j.radical.derivative(var), j.order - 1};
  }

  Jet product(const Jet& a, const Jet& b, long k) const {
    Polynomial rat = cut(a.rational * b.rational, k) + cut(a.radical * b.radical, k) * radicand_;
    Polynomial rad = cut(a.rational * b.radical, k) + cut(a.radical * b.rational, k);
    return {std::move(rat), std::move(rad), k};
  }

  static void add(Jet& out, const Jet& term, int sign) {
    if (sign > 0) {
      out.rational += term.rational;
      out.radical += term.radical;
    } else {
      out.rational -= term.rational;
      out.radical -= term.radical;
    }
  }

  std::size_t n_;
  long order_;
  Rational radicand_;
  std::vector<Polynomial> shift_;
  Polynomial w_;
};

}  // namespace

WeightedSymbol iterated_bracket(std::span<const WeightedSymbol> alphabet, const BracketWord& word) {
  if (word.letters.empty()) throw PreconditionError("bracket word must be nonempty");
  for (auto letter : word.letters) {
    if (letter < 1 || letter > alphabet.size()) {
      throw PreconditionError("bracket letter " + std::to_string(letter) + " outside 1.." +
                              std::to_string(alphabet.size()));
    }
  }
  WeightedSymbol acc = alphabet[word.letters[0] - 1];
  for (std::size_t i = 1; i < word.letters.size(); ++i) {
    acc = poisson_bracket(acc, alphabet[word.letters[i] - 1]);
  }
  return acc;
}

WeightedSymbol iterated_bracket(const SymbolFamily& family, const BracketWord& word) {
  return iterated_bracket(family.members, word);
}

TypeResult type_at(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point,
                   const TypeOptions& options) {
  check_alphabet(alphabet, point);
  if (options.cap < 1) throw PreconditionError("cap must be at least 1");
  const std::size_t m = alphabet.size();
  const long cap = options.cap;

  // Re-centre at x₀ so that evaluation happens at x = 0.
  CotangentPoint centred{std::vector<Rational>(point.dim(), 0), point.xi};
  std::vector<WeightedSymbol> letters;
  letters.reserve(m);
  for (const auto& s : alphabet) letters.push_back(s.translated(point.x).truncated_in_x(cap));

  std::vector<std::size_t> sizes;
  std::vector<Node> frontier;
  std::unordered_set<WeightedSymbol, WeightedSymbolHash> seen;
  for (std::size_t k = 0; k < m; ++k) {
    BracketWord w{{static_cast<std::uint32_t>(k + 1)}};
    if (!letters[k].evaluate(centred).is_zero()) {
      sizes.push_back(k + 1);
      return finite_result(alphabet, point, std::move(w), std::move(sizes));
    }
    WeightedSymbol s = letters[k].truncated_in_x(cap - 1);
    if (s.is_zero()) continue;
    if (options.dedup) {
      s = s.normalized_scale();
      if (!seen.insert(s).second) continue;
    }
    frontier.push_back({std::move(w), std::move(s)});
  }
  sizes.push_back(frontier.size());

  for (long level = 2; level <= cap && !frontier.empty(); ++level) {
    const long budget = cap - level;
    const std::size_t count = frontier.size() * m;
    std::vector<WeightedSymbol> children(count);
    std::vector<char> nonzero(count, 0);
    const bool parallel = options.execution == Execution::Parallel;

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (std::size_t idx = 0; idx < count; ++idx) {
      const Node& parent = frontier[idx / m];
      WeightedSymbol child = poisson_bracket(parent.symbol, letters[idx % m]);
      nonzero[idx] = child.evaluate(centred).is_zero() ? 0 : 1;
      child = child.truncated_in_x(budget);
      if (options.dedup) child = child.normalized_scale();
      children[idx] = std::move(child);
    }

    // Children are produced in lexicographic word order, so the first
    // nonvanishing one is the least witness at this length.
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (!nonzero[idx]) continue;
      BracketWord w = frontier[idx / m].word;
      w.letters.push_back(static_cast<std::uint32_t>(idx % m + 1));
      sizes.push_back(count);
      return finite_result(alphabet, point, std::move(w), std::move(sizes));
    }

    std::vector<Node> next;
    seen.clear();
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (children[idx].is_zero()) continue;
      if (options.dedup && !seen.insert(children[idx]).second) continue;
      BracketWord w = frontier[idx / m].word;
      w.letters.push_back(static_cast<std::uint32_t>(idx % m + 1));
      next.push_back({std::move(w), std::move(children[idx])});
    }
    frontier = std::move(next);
    sizes.push_back(frontier.size());
  }
  return TypeResult{TypeResult::ExceedsCap{options.cap}, std::move(sizes)};
}

TypeResult type_at(const SymbolFamily& family, const CotangentPoint& point, const TypeOptions& options) {
  return type_at(family.members, point, options);
}

TypeResult type_at_bruteforce(std::span<const WeightedSymbol> alphabet, const CotangentPoint& point,
                              unsigned cap) {
  check_alphabet(alphabet, point);
  if (cap < 1) throw PreconditionError("cap must be at least 1");
  const auto m = static_cast<std::uint32_t>(alphabet.size());
  // a word of length r needs its first letter to order r − 1, so cap − 1 covers all
  JetBuilder jets(point, static_cast<long>(cap) - 1);
  std::vector<Jet> letters;
  for (const auto& s : alphabet) letters.push_back(jets.of(s));
  std::vector<std::size_t> sizes;
  for (unsigned r = 1; r <= cap; ++r) {
    BracketWord w{std::vector<std::uint32_t>(r, 1)};
    // folds[i] = bracket of the first i+1 letters; only the changed suffix is redone
    std::vector<Jet> folds(r);
    std::size_t valid = 0;
    std::size_t words = 0;
    while (true) {
      ++words;
      for (std::size_t i = valid; i < r; ++i) {
        const Jet& next = letters[w.letters[i] - 1];
        folds[i] = i == 0 ? next : jets.bracket(folds[i - 1], next);
      }
      if (!jets.value(folds[r - 1]).is_zero()) {
        sizes.push_back(words);
        return finite_result(alphabet, point, std::move(w), std::move(sizes));
      }
      // Next word in lexicographic order.
      std::size_t pos = r;
      while (pos > 0 && w.letters[pos - 1] == m) {
        w.letters[pos - 1] = 1;
        --pos;
      }
      if (pos == 0) break;
      ++w.letters[pos - 1];
      valid = pos - 1;
    }
    sizes.push_back(words);
  }
  return TypeResult{TypeResult::ExceedsCap{cap}, std::move(sizes)};
}

TypeResult type_at_bruteforce(const SymbolFamily& family, const CotangentPoint& point, unsigned cap) {
  return type_at_bruteforce(family.members, point, cap);
}

DirectionReport type_over_directions(std::span<const WeightedSymbol> alphabet,
                                     const std::vector<Rational>& x0,
                                     const std::vector<std::vector<Rational>>& directions,
                                     const TypeOptions& options) {
  if (directions.empty()) throw PreconditionError("direction list must be nonempty");
  DirectionReport report;
  for (const auto& xi : directions) {
    CotangentPoint point{x0, xi};
    if (point.covector_is_zero()) throw PreconditionError("directions must be nonzero covectors");
    TypeResult r = type_at(alphabet, point, options);
    if (auto t = r.type()) {
      report.lower_bound = report.lower_bound ? std::max(*report.lower_bound, *t) : *t;
    } else {
      report.any_exceeds_cap = true;
    }
    report.directions.push_back(xi);
    report.results.push_back(std::move(r));
  }
  return report;
}

DirectionReport type_over_directions(const SymbolFamily& family, const std::vector<Rational>& x0,
                                     const std::vector<std::vector<Rational>>& directions,
                                     const TypeOptions& options) {
  return type_over_directions(family.members, x0, directions, options);
}

}  // namespace horlab
