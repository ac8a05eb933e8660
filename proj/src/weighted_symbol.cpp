#include "horlab/weighted_symbol.hpp"

#include <cmath>
#include <sstream>

#include "horlab/error.hpp"

namespace horlab {

namespace {

void check_even(const Polynomial& p) {
  if (p.nvars() % 2 != 0) {
    throw DimensionError("phase-space polynomial needs an even number of variables");
  }
}

Rational rational_pow(const Rational& base, unsigned k) {
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), base.get_num_mpz_t(), k);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), base.get_den_mpz_t(), k);
  return out;
}

}  // namespace

bool CotangentPoint::covector_is_zero() const {
  for (const auto& v : xi) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

std::vector<Rational> CotangentPoint::coordinates() const {
  std::vector<Rational> out(x);
  out.insert(out.end(), xi.begin(), xi.end());
  return out;
}

std::string CotangentPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].get_str();
  os << ';';
  for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? "," : "") << xi[i].get_str();
  os << ')';
  return os.str();
}

CotangentPoint CotangentPoint::parse(std::string_view text) {
  std::string s(text);
  auto open = s.find('(');
  auto close = s.rfind(')');
  if (open != std::string::npos && close != std::string::npos && close > open) {
    s = s.substr(open + 1, close - open - 1);
  }
  auto semi = s.find(';');
  if (semi == std::string::npos) {
    throw PreconditionError("cotangent point needs the form (x...; xi...)");
  }
  CotangentPoint p;
  p.x = parse_rational_list(s.substr(0, semi));
  p.xi = parse_rational_list(s.substr(semi + 1));
  if (p.x.size() != p.xi.size()) {
    throw DimensionError("cotangent point: position and covector lengths differ");
  }
  return p;
}

bool AlgebraicValue::is_zero() const {
  int a = sgn(rational_part);
  int b = sgn(radical_part);
  if (a == 0 && b == 0) return true;
  if (sgn(radicand) == 0) return a == 0;
  // a + b√R = 0 iff a² = b²R with opposite signs.
  if (a == 0 || b == 0) return false;
  if (a == b) return false;
  return rational_part * rational_part == radical_part * radical_part * radicand;
}

int AlgebraicValue::sign() const {
  if (is_zero()) return 0;
  int a = sgn(rational_part);
  int b = sgn(radical_part);
  if (a >= 0 && b >= 0) return 1;
  if (a <= 0 && b <= 0) return -1;
  Rational lhs = rational_part * rational_part;
  Rational rhs = radical_part * radical_part * radicand;
  return lhs > rhs ? a : b;
}

double AlgebraicValue::to_double() const {
  return rational_part.get_d() + radical_part.get_d() * std::sqrt(radicand.get_d());
}

AlgebraicValue AlgebraicValue::operator+(const AlgebraicValue& other) const {
  if (radicand != other.radicand) throw DimensionError("algebraic values over different radicands");
  return {rational_part + other.rational_part, radical_part + other.radical_part, radicand};
}

AlgebraicValue AlgebraicValue::operator*(const AlgebraicValue& other) const {
  if (radicand != other.radicand) throw DimensionError("algebraic values over different radicands");
  return {rational_part * other.rational_part + radical_part * other.radical_part * radicand,
          rational_part * other.radical_part + radical_part * other.rational_part, radicand};
}

bool AlgebraicValue::operator==(const AlgebraicValue& other) const {
  if (radicand != other.radicand) return false;
  AlgebraicValue diff{rational_part - other.rational_part, radical_part - other.radical_part,
                      radicand};
  return diff.is_zero();
}

std::string AlgebraicValue::to_string() const {
  auto radical = [&](const Rational& c) {
    std::string root = "sqrt(" + radicand.get_str() + ")";
    if (c == 1) return root;
    if (c == -1) return "-" + root;
    return c.get_str() + "*" + root;
  };
  if (sgn(radical_part) == 0) return rational_part.get_str();
  if (sgn(rational_part) == 0) return radical(radical_part);
  return rational_part.get_str() + (sgn(radical_part) < 0 ? " - " : " + ") + radical(abs(radical_part));
}

WeightedSymbol::WeightedSymbol(std::size_t dim)
    : dim_(dim), even_(2 * dim), odd_(2 * dim) {}

WeightedSymbol::WeightedSymbol(Polynomial polynomial)
    : dim_(polynomial.nvars() / 2), even_(std::move(polynomial)), odd_(even_.nvars()) {
  check_even(even_);
}

WeightedSymbol::WeightedSymbol(Polynomial even, Polynomial odd, unsigned denominator)
    : dim_(even.nvars() / 2), denominator_(denominator), even_(std::move(even)), odd_(std::move(odd)) {
  check_even(even_);
  if (odd_.nvars() != even_.nvars()) throw DimensionError("symbol parts live in different rings");
  normalize();
}

WeightedSymbol WeightedSymbol::lambda(std::size_t dim) {
  return WeightedSymbol(Polynomial(2 * dim), Polynomial::constant(2 * dim, 1), 0);
}

WeightedSymbol WeightedSymbol::lambda_power(std::size_t dim, int k) {
  if (k >= 0) {
    // λ^{2m} = L^m, λ^{2m+1} = L^m·λ
    Polynomial lm = weight_square(dim).pow(static_cast<unsigned>(k / 2));
    if (k % 2 == 0) return WeightedSymbol(std::move(lm));
    return WeightedSymbol(Polynomial(2 * dim), std::move(lm), 0);
  }
  return WeightedSymbol(Polynomial::constant(2 * dim, 1), Polynomial(2 * dim),
                        static_cast<unsigned>(-k));
}

WeightedSymbol WeightedSymbol::variable(std::size_t dim, PhaseVariable v) {
  if (v.index >= dim) throw DimensionError("phase variable out of range");
  std::size_t id = v.kind == PhaseVariable::Kind::Position ? v.index : dim + v.index;
  return WeightedSymbol(Polynomial::variable(2 * dim, id));
}

Polynomial WeightedSymbol::weight_square(std::size_t dim) {
  Polynomial l = Polynomial::constant(2 * dim, 1);
  for (std::size_t j = 0; j < dim; ++j) {
    MultiIndex m(2 * dim);
    m[dim + j] = 2;
    l += Polynomial::monomial(std::move(m), 1);
  }
  return l;
}

Polynomial WeightedSymbol::lift_position_polynomial(const Polynomial& p) {
  return p.embedded(2 * p.nvars(), 0);
}

void WeightedSymbol::normalize() {
  if (denominator_ == 0) return;
  if (is_zero()) {
    denominator_ = 0;
    return;
  }
  Polynomial l = weight_square(dim_);
  // λ^{-e}(A + Bλ) = λ^{-(e-1)}(B + (A/L)λ) whenever L divides A.
  while (denominator_ > 0) {
    auto q = even_.divide_exact(l);
    if (!q) break;
    even_ = std::move(odd_);
    odd_ = std::move(*q);
    --denominator_;
  }
}

void WeightedSymbol::raise_denominator() {
  // λ·(A + Bλ) = L·B + A·λ
  Polynomial new_even = odd_ * weight_square(dim_);
  odd_ = std::move(even_);
  even_ = std::move(new_even);
  ++denominator_;
}

WeightedSymbol WeightedSymbol::operator-() const {
  WeightedSymbol out(*this);
  out.even_ = -even_;
  out.odd_ = -odd_;
  return out;
}

WeightedSymbol WeightedSymbol::operator+(const WeightedSymbol& other) const {
  if (dim_ != other.dim_) throw DimensionError("symbols on different phase spaces");
  if (denominator_ == other.denominator_) {
    WeightedSymbol out(*this);
    out.even_ += other.even_;
    out.odd_ += other.odd_;
    out.normalize();
    return out;
  }
  WeightedSymbol a(*this), b(other);
  while (a.denominator_ < b.denominator_) a.raise_denominator();
  while (b.denominator_ < a.denominator_) b.raise_denominator();
  a.even_ += b.even_;
  a.odd_ += b.odd_;
  a.normalize();
  return a;
}

WeightedSymbol WeightedSymbol::operator-(const WeightedSymbol& other) const {
  return *this + (-other);
}

WeightedSymbol WeightedSymbol::operator*(const WeightedSymbol& other) const {
  if (dim_ != other.dim_) throw DimensionError("symbols on different phase spaces");
  WeightedSymbol out(dim_);
  out.denominator_ = denominator_ + other.denominator_;
  if (odd_.is_zero() && other.odd_.is_zero()) {
    out.even_ = even_ * other.even_;
  } else {
    out.even_ = even_ * other.even_ + odd_ * other.odd_ * weight_square(dim_);
    out.odd_ = even_ * other.odd_ + odd_ * other.even_;
  }
  out.normalize();
  return out;
}

WeightedSymbol WeightedSymbol::operator*(const Rational& c) const {
  if (sgn(c) == 0) return WeightedSymbol(dim_);
  WeightedSymbol out(*this);
  out.even_ = even_ * c;
  out.odd_ = odd_ * c;
  return out;
}

WeightedSymbol WeightedSymbol::derivative(PhaseVariable v) const {
  if (v.index >= dim_) throw DimensionError("phase variable out of range");
  if (v.kind == PhaseVariable::Kind::Position) {
    WeightedSymbol out(dim_);
    out.denominator_ = denominator_;
    out.even_ = even_.derivative(v.index);
    out.odd_ = odd_.derivative(v.index);
    out.normalize();
    return out;
  }
  std::size_t id = dim_ + v.index;
  if (denominator_ == 0 && odd_.is_zero()) {
    return WeightedSymbol(even_.derivative(id));
  }
  // ∂_ξ[λ^{-e}(A + Bλ)] = λ^{-(e+2)}[(L∂A − eξA) + (L∂B + (1−e)ξB)λ]
  Polynomial l = weight_square(dim_);
  Polynomial xi = Polynomial::variable(2 * dim_, id);
  Rational e(denominator_);
  Polynomial even = l * even_.derivative(id) - xi * even_ * e;
  Polynomial odd = l * odd_.derivative(id) + xi * odd_ * (Rational(1) - e);
  return WeightedSymbol(std::move(even), std::move(odd), denominator_ + 2);
}

AlgebraicValue WeightedSymbol::evaluate(const CotangentPoint& point) const {
  if (point.dim() != dim_) throw DimensionError("evaluation point has the wrong dimension");
  auto coords = point.coordinates();
  Rational l0 = 1;
  for (const auto& v : point.xi) l0 += v * v;
  Rational a = even_.evaluate(coords);
  Rational b = odd_.evaluate(coords);
  // λ₀^{-e} = L₀^{-e/2} for even e, λ₀·L₀^{-(e+1)/2} for odd e.
  if (denominator_ % 2 == 0) {
    Rational scale = rational_pow(l0, denominator_ / 2);
    return {a / scale, b / scale, l0};
  }
  Rational scale = rational_pow(l0, (denominator_ + 1) / 2);
  return {b * l0 / scale, a / scale, l0};
}

WeightedSymbol::Homogeneity WeightedSymbol::homogeneity() const {
  if (is_zero()) return {Homogeneity::Kind::Zero, 1};
  std::optional<int> degree;
  auto merge = [&](const Polynomial& part, int shift) {
    if (part.is_zero()) return true;
    auto d = part.homogeneous_degree_in(dim_, dim_);
    if (!d) return false;
    int total = static_cast<int>(*d) + shift - static_cast<int>(denominator_);
    if (degree && *degree != total) return false;
    degree = total;
    return true;
  };
  if (!merge(even_, 0) || !merge(odd_, 1)) return {Homogeneity::Kind::Mixed, 0};
  return {Homogeneity::Kind::Homogeneous, *degree};
}

std::optional<int> WeightedSymbol::homogeneity_degree() const {
  auto h = homogeneity();
  if (h.kind == Homogeneity::Kind::Mixed) return std::nullopt;
  return h.degree;
}

WeightedSymbol WeightedSymbol::truncated_in_x(long max_degree) const {
  WeightedSymbol out(*this);
  out.even_ = even_.truncated(0, dim_, max_degree);
  out.odd_ = odd_.truncated(0, dim_, max_degree);
  out.normalize();
  return out;
}

WeightedSymbol WeightedSymbol::translated(std::span<const Rational> shift) const {
  if (shift.size() != dim_) throw DimensionError("translation has the wrong dimension");
  bool trivial = true;
  for (const auto& s : shift) trivial = trivial && sgn(s) == 0;
  if (trivial) return *this;
  std::vector<Polynomial> subs;
  for (std::size_t i = 0; i < 2 * dim_; ++i) {
    Polynomial v = Polynomial::variable(2 * dim_, i);
    if (i < dim_) v += Polynomial::constant(2 * dim_, shift[i]);
    subs.push_back(std::move(v));
  }
  return WeightedSymbol(even_.compose(subs), odd_.compose(subs), denominator_);
}

WeightedSymbol WeightedSymbol::normalized_scale() const {
  if (is_zero()) return *this;
  const Rational& lead = even_.is_zero() ? odd_.leading_term().coefficient
                                         : even_.leading_term().coefficient;
  if (lead == 1) return *this;
  return *this * (Rational(1) / lead);
}

std::size_t WeightedSymbol::hash() const {
  std::size_t h = even_.hash();
  h ^= odd_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 31 + denominator_;
}

std::vector<std::string> phase_space_names(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < dim; ++j) names.push_back("x" + std::to_string(j + 1));
  for (std::size_t j = 0; j < dim; ++j) names.push_back("xi" + std::to_string(j + 1));
  return names;
}

std::string WeightedSymbol::to_string() const {
  auto names = phase_space_names(dim_);
  std::string core;
  if (odd_.is_zero()) {
    core = even_.to_string(names);
  } else {
    std::string odd;
    if (odd_ == Polynomial::constant(2 * dim_, 1)) {
      odd = "lambda";
    } else if (odd_ == Polynomial::constant(2 * dim_, -1)) {
      odd = "-lambda";
    } else {
      odd = "(" + odd_.to_string(names) + ")*lambda";
    }
    if (even_.is_zero()) {
      core = odd;
    } else if (odd[0] == '-') {
      core = even_.to_string(names) + " - " + odd.substr(1);
    } else {
      core = even_.to_string(names) + " + " + odd;
    }
  }
  if (denominator_ == 0) return core;
  return "(" + core + ")*lambda^-" + std::to_string(denominator_);
}

WeightedSymbol poisson_bracket(const WeightedSymbol& q1, const WeightedSymbol& q2) {
  if (q1.dim() != q2.dim()) throw DimensionError("Poisson bracket of symbols on different phase spaces");
  WeightedSymbol out(q1.dim());
  for (std::size_t j = 0; j < q1.dim(); ++j) {
    auto xj = PhaseVariable::x(j);
    auto xij = PhaseVariable::xi(j);
    WeightedSymbol dx2 = q2.derivative(xj);
    WeightedSymbol dx1 = q1.derivative(xj);
    if (!dx2.is_zero()) out = out + q1.derivative(xij) * dx2;
    if (!dx1.is_zero()) out = out - dx1 * q2.derivative(xij);
  }
  return out;
}

}  // namespace horlab
