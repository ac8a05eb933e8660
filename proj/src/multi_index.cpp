#include "horlab/multi_index.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "horlab/error.hpp"

namespace horlab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw PreconditionError("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos) {
      throw PreconditionError("unsupported rational literal '" + s + "'");
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw PreconditionError("malformed rational literal '" + s + "'");
    }
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
      throw PreconditionError("malformed rational literal '" + s + "'");
    }
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (s[0] == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0) throw PreconditionError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw PreconditionError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::size_t hash_value(const Rational& q) {
  // Low limbs are enough for hashing; equality is checked separately.
  auto limb = [](const mpz_class& z) -> std::size_t {
    const auto* raw = z.get_mpz_t();
    if (raw->_mp_size == 0) return 0;
    return static_cast<std::size_t>(raw->_mp_d[0]) ^ static_cast<std::size_t>(raw->_mp_size);
  };
  std::size_t h = limb(q.get_num());
  h ^= limb(q.get_den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t MultiIndex::total() const {
  std::uint64_t t = 0;
  for (auto e : exps_) t += e;
  return t;
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index size mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index size mismatch");
  MultiIndex out(*this);
  for (std::size_t i = 0; i < size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.dominated_by(*this)) throw PreconditionError("multi-index difference would be negative");
  MultiIndex out(*this);
  for (std::size_t i = 0; i < size(); ++i) out.exps_[i] -= other.exps_[i];
  return out;
}

MultiIndex MultiIndex::scaled(value_type k) const {
  MultiIndex out(*this);
  for (auto& e : out.exps_) e *= k;
  return out;
}

Integer MultiIndex::factorial() const {
  Integer f = 1;
  for (auto e : exps_) {
    Integer t;
    mpz_fac_ui(t.get_mpz_t(), e);
    f *= t;
  }
  return f;
}

std::strong_ordering MultiIndex::grlex(const MultiIndex& other) const {
  auto ta = total(), tb = other.total();
  if (ta != tb) return ta <=> tb;
  for (std::size_t i = 0; i < std::min(size(), other.size()); ++i) {
    if (exps_[i] != other.exps_[i]) return exps_[i] <=> other.exps_[i];
  }
  return size() <=> other.size();
}

std::size_t MultiIndex::hash() const {
  std::size_t h = exps_.size();
  for (auto e : exps_) h = h * 1000003u ^ std::hash<value_type>{}(e);
  return h;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) os << (i ? "," : "") << exps_[i];
  os << ')';
  return os.str();
}

namespace {

void degree_rec(std::size_t pos, unsigned remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  // Ascending ≺: smaller leading coordinates first.
  for (unsigned e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    degree_rec(pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(std::size_t size, unsigned total) {
  std::vector<MultiIndex> out;
  if (size == 0) {
    if (total == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex cur(size);
  degree_rec(0, total, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t size, unsigned max_total) {
  std::vector<MultiIndex> out;
  for (unsigned t = 0; t <= max_total; ++t) {
    auto level = multi_indices_of_degree(size, t);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<MultiIndex> multi_indices_below(const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  for (const auto& m : multi_indices_up_to(bound.size(), static_cast<unsigned>(bound.total()))) {
    if (m.dominated_by(bound)) out.push_back(m);
  }
  return out;
}

Integer binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!beta.dominated_by(alpha)) return 0;
  Integer b = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Integer t;
    mpz_bin_uiui(t.get_mpz_t(), alpha[i], beta[i]);
    b *= t;
  }
  return b;
}

}  // namespace horlab
