#include "horlab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "horlab/error.hpp"

namespace horlab {

namespace {

// Polynomials are parsed in a ring with this many slots and shrunk once the
// dimension is known.
constexpr std::size_t kSlots = 32;

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::Kind::Number, std::string(s.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::string_view("{}[]();,=+-*/^").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

// Position variable index for x, y, z, x1, x2, …
std::optional<std::size_t> variable_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name.size() >= 2 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); })) {
    unsigned long k = std::stoul(name.substr(1));
    if (k >= 1 && k <= kSlots) return k - 1;
  }
  return std::nullopt;
}

std::optional<std::size_t> suffix_index(const std::string& name, char head) {
  if (name.size() < 2 || name[0] != head) return std::nullopt;
  if (!std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); })) {
    return std::nullopt;
  }
  if (name.size() > 4) return std::nullopt;
  return std::stoul(name.substr(1));
}

// Linear combination over {1, D_ℓ, X_j} with polynomial coefficients.
// Key 0 is the scalar slot, ℓ+1 is D_ℓ, −j is the field X_j.
struct Form {
  std::map<int, Polynomial> parts;

  static Form scalar(Polynomial p) {
    Form f;
    if (!p.is_zero()) f.parts.emplace(0, std::move(p));
    return f;
  }
  static Form basis(int key) {
    Form f;
    f.parts.emplace(key, Polynomial::constant(kSlots, 1));
    return f;
  }

  bool scalar_only() const { return parts.empty() || (parts.size() == 1 && parts.begin()->first == 0); }
  Polynomial scalar_part() const {
    auto it = parts.find(0);
    return it == parts.end() ? Polynomial(kSlots) : it->second;
  }
  bool has_derivations() const {
    return std::any_of(parts.begin(), parts.end(), [](const auto& kv) { return kv.first > 0; });
  }
  bool has_fields() const {
    return std::any_of(parts.begin(), parts.end(), [](const auto& kv) { return kv.first < 0; });
  }

  void add(const Form& o, const Rational& sign) {
    for (const auto& [k, p] : o.parts) {
      auto it = parts.find(k);
      Polynomial sum = (it == parts.end() ? Polynomial(kSlots) : it->second) + p * sign;
      if (sum.is_zero()) {
        if (it != parts.end()) parts.erase(it);
      } else {
        parts[k] = std::move(sum);
      }
    }
  }
  Form times(const Polynomial& p) const {
    Form out;
    for (const auto& [k, q] : parts) {
      Polynomial r = q * p;
      if (!r.is_zero()) out.parts.emplace(k, std::move(r));
    }
    return out;
  }
};

Polynomial shrink(const Polynomial& p, std::size_t n) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : p.terms()) {
    MultiIndex e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.exponents[i];
    terms.push_back({std::move(e), t.coefficient});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

// Largest variable index used, -1 if none.
long max_variable(const Polynomial& p) {
  long m = -1;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] != 0) m = std::max(m, static_cast<long>(i));
    }
  }
  return m;
}

class Parser {
 public:
  explicit Parser(std::string_view text, std::vector<std::string> names = {})
      : toks_(tokenize(text)), names_(std::move(names)) {}

  Polynomial polynomial() {
    const Token& start = peek();
    Form f = expr();
    if (peek().kind != Token::Kind::End) fail("unexpected trailing input", peek());
    if (!f.scalar_only()) fail("expected a polynomial", start);
    return shrink(f.scalar_part(), names_.size());
  }

  OperatorDocument document() {
    const Token& kind = expect_ident();
    OperatorDocument doc{parse_body(kind), std::nullopt};
    if (peek().kind == Token::Kind::Ident && peek().text == "at") {
      next();
      doc.at = point();
      if (doc.at->dim() != std::visit([](const auto& o) { return o.dim(); }, doc.op)) {
        fail("point dimension does not match the operator", toks_[pos_ - 1]);
      }
    }
    if (peek().kind != Token::Kind::End) fail("unexpected trailing input", peek());
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_punct(const char* p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  const Token& expect(const char* p) {
    if (!is_punct(p)) {
      fail(std::string("expected '") + p + "'" + found(), peek());
    }
    return next();
  }
  const Token& expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected an identifier" + found(), peek());
    return next();
  }
  std::string found() const {
    if (peek().kind == Token::Kind::End) return " but reached end of input";
    return " but found '" + peek().text + "'";
  }

  ParsedOperator parse_body(const Token& kind) {
    if (kind.text == "hor") return hor_body();
    if (kind.text == "sos") return sos_body();
    fail("operator kind must be 'hor' or 'sos', not '" + kind.text + "'", kind);
  }

  // Statements inside braces; calls handler(key token) positioned after '='.
  template <class F>
  void statements(F&& handler) {
    expect("{");
    while (!is_punct("}")) {
      const Token& key = expect_ident();
      expect("=");
      handler(key);
      if (is_punct(";")) {
        next();
      } else if (!is_punct("}")) {
        fail("expected ';'" + found(), peek());
      }
    }
    expect("}");
  }

  std::size_t dimension_literal() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos) {
      fail("dimension must be a positive integer", t);
    }
    next();
    unsigned long d = std::stoul(t.text);
    if (d == 0 || d > kSlots) fail("dimension out of range", t);
    return d;
  }

  SecondOrderOperator hor_body() {
    std::optional<std::vector<std::vector<Form>>> a;
    std::optional<std::vector<Form>> b;
    std::optional<Form> c;
    std::optional<std::size_t> dim;
    Token a_tok{}, b_tok{}, c_tok{};
    std::vector<std::vector<Token>> entry_toks;
    statements([&](const Token& key) {
      auto once = [&](bool seen) {
        if (seen) fail("duplicate definition of '" + key.text + "'", key);
      };
      if (key.text == "a") {
        once(a.has_value());
        a_tok = key;
        a = matrix(entry_toks);
      } else if (key.text == "b") {
        once(b.has_value());
        b_tok = key;
        b = vector();
      } else if (key.text == "c") {
        once(c.has_value());
        c_tok = key;
        c = expr();
      } else if (key.text == "dim") {
        once(dim.has_value());
        dim = dimension_literal();
      } else {
        fail("unknown hor field '" + key.text + "' (expected a, b, c or dim)", key);
      }
    });
    if (!a) fail("hor operator needs a principal matrix 'a'", toks_[pos_ - 1]);
    std::size_t n = a->size();
    if (dim && *dim != n) fail("matrix size does not match dim", a_tok);
    auto coefficient = [&](const Form& f, const Token& where) {
      if (!f.scalar_only()) fail("coefficient contains a derivation or field", where);
      Polynomial p = f.scalar_part();
      if (max_variable(p) >= static_cast<long>(n)) {
        fail("variable out of range for dimension " + std::to_string(n), where);
      }
      return shrink(p, n);
    };
    std::vector<Polynomial> am;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) am.push_back(coefficient((*a)[i][j], entry_toks[i][j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (am[i * n + j] != am[j * n + i]) {
          fail("matrix is not symmetric: entries (" + std::to_string(j + 1) + "," +
                   std::to_string(i + 1) + ") and (" + std::to_string(i + 1) + "," +
                   std::to_string(j + 1) + ") differ",
               entry_toks[i][j]);
        }
      }
    }
    std::vector<Polynomial> bv(n, Polynomial(n));
    if (b) {
      if (b->size() != n) fail("b must have one entry per variable", b_tok);
      for (std::size_t i = 0; i < n; ++i) bv[i] = coefficient((*b)[i], b_tok);
    }
    Polynomial cv = c ? coefficient(*c, c_tok) : Polynomial(n);
    return SecondOrderOperator(n, std::move(am), std::move(bv), std::move(cv));
  }

  VectorFieldSystem sos_body() {
    std::map<std::size_t, std::pair<Form, Token>> fields;
    std::optional<std::pair<Form, Token>> drift, c;
    std::optional<std::size_t> dim;
    statements([&](const Token& key) {
      auto idx = suffix_index(key.text, 'X');
      if (idx) {
        bool seen = *idx == 0 ? drift.has_value() : fields.count(*idx) > 0;
        if (seen) fail("duplicate definition of '" + key.text + "'", key);
        Form f = expr();
        if (*idx == 0) {
          drift.emplace(std::move(f), key);
        } else {
          fields.emplace(*idx, std::make_pair(std::move(f), key));
        }
      } else if (key.text == "c") {
        if (c) fail("duplicate definition of 'c'", key);
        c.emplace(expr(), key);
      } else if (key.text == "dim") {
        if (dim) fail("duplicate definition of 'dim'", key);
        dim = dimension_literal();
      } else {
        fail("unknown sos field '" + key.text + "' (expected X0, X1, ..., c or dim)", key);
      }
    });
    if (fields.empty()) fail("sos system needs at least one field X1", toks_[pos_ - 1]);
    std::size_t m = fields.size();
    if (fields.rbegin()->first != m) {
      std::size_t missing = 1;
      while (fields.count(missing)) ++missing;
      fail("fields must be numbered X1..Xm without gaps; X" + std::to_string(missing) + " is missing",
           fields.rbegin()->second.second);
    }

    long need = -1;
    auto scan = [&](const Form& f) {
      for (const auto& [k, p] : f.parts) {
        if (k > 0) need = std::max(need, static_cast<long>(k - 1));
        need = std::max(need, max_variable(p));
      }
    };
    for (const auto& [j, ft] : fields) scan(ft.first);
    if (drift) scan(drift->first);
    if (c) scan(c->first);
    std::size_t n = dim ? *dim : static_cast<std::size_t>(std::max(need, 0L) + 1);
    if (need >= static_cast<long>(n)) {
      fail("a variable or derivation exceeds dim = " + std::to_string(n), toks_[pos_ - 1]);
    }

    std::vector<VectorField> vf;
    for (const auto& [j, ft] : fields) {
      const auto& [f, tok] = ft;
      if (f.has_fields()) fail("a vector field cannot refer to other fields", tok);
      if (f.parts.count(0)) fail("vector field has a zero-order term", tok);
      VectorField v;
      for (std::size_t l = 0; l < n; ++l) {
        auto it = f.parts.find(static_cast<int>(l + 1));
        v.coefficients.push_back(it == f.parts.end() ? Polynomial(n) : shrink(it->second, n));
      }
      vf.push_back(std::move(v));
    }
    std::optional<std::vector<Polynomial>> weights;
    if (drift) {
      const auto& [f, tok] = *drift;
      if (f.parts.count(0) || f.has_derivations()) {
        fail("X0 must be a combination of the fields X1..Xm", tok);
      }
      std::vector<Polynomial> w(m, Polynomial(n));
      for (const auto& [k, p] : f.parts) {
        std::size_t j = static_cast<std::size_t>(-k);
        if (j == 0 || j > m) fail("X0 refers to undefined field X" + std::to_string(j), tok);
        w[j - 1] = shrink(p, n);
      }
      weights = std::move(w);
    }
    std::optional<Polynomial> zero;
    if (c) {
      if (!c->first.scalar_only()) fail("c must be a polynomial", c->second);
      zero = shrink(c->first.scalar_part(), n);
    }
    return VectorFieldSystem(n, std::move(vf), std::move(weights), std::move(zero));
  }

  std::vector<std::vector<Form>> matrix(std::vector<std::vector<Token>>& toks) {
    const Token& open = expect("[");
    std::vector<std::vector<Form>> rows;
    toks.clear();
    do {
      if (!rows.empty()) next();
      toks.emplace_back();
      expect("[");
      std::vector<Form> row;
      do {
        if (!row.empty()) next();
        toks.back().push_back(peek());
        row.push_back(expr());
      } while (is_punct(","));
      expect("]");
      rows.push_back(std::move(row));
    } while (is_punct(","));
    expect("]");
    for (const auto& r : rows) {
      if (r.size() != rows.size()) fail("matrix must be square", open);
    }
    return rows;
  }

  std::vector<Form> vector() {
    expect("[");
    std::vector<Form> out;
    do {
      if (!out.empty()) next();
      out.push_back(expr());
    } while (is_punct(","));
    expect("]");
    return out;
  }

  CotangentPoint point() {
    expect("(");
    CotangentPoint p;
    auto list = [&](std::vector<Rational>& into) {
      do {
        if (!into.empty()) next();
        const Token& t = peek();
        Form f = expr();
        Polynomial s = f.scalar_part();
        if (!f.scalar_only() || !s.is_constant()) fail("point coordinates must be rational numbers", t);
        into.push_back(s.is_zero() ? Rational(0) : s.leading_term().coefficient);
      } while (is_punct(","));
    };
    list(p.x);
    expect(";");
    list(p.xi);
    expect(")");
    if (p.x.size() != p.xi.size()) fail("point needs as many xi entries as x entries", toks_[pos_ - 1]);
    return p;
  }

  Form expr() {
    Form f = term();
    while (is_punct("+") || is_punct("-")) {
      Rational sign = next().text == "+" ? 1 : -1;
      f.add(term(), sign);
    }
    return f;
  }

  Form term() {
    Form f = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token& op = next();
      const Token& at = peek();
      Form g = unary();
      if (op.text == "*") {
        if (f.scalar_only()) {
          f = g.times(f.scalar_part());
        } else if (g.scalar_only()) {
          f = f.times(g.scalar_part());
        } else {
          fail("product of two derivations is not a first-order term", op);
        }
      } else {
        Polynomial d = g.scalar_part();
        if (!g.scalar_only() || !d.is_constant()) {
          fail("non-polynomial coefficient: division by a non-constant", at);
        }
        if (d.is_zero()) fail("division by zero", at);
        Rational inv = 1 / d.leading_term().coefficient;
        f = f.times(Polynomial::constant(kSlots, inv));
      }
    }
    return f;
  }

  Form unary() {
    if (is_punct("-")) {
      next();
      Form f = unary();
      return f.times(Polynomial::constant(kSlots, -1));
    }
    if (is_punct("+")) {
      next();
      return unary();
    }
    return power();
  }

  Form power() {
    const Token& start = peek();
    Form base = atom();
    if (!is_punct("^")) return base;
    const Token& caret = next();
    const Token& e = peek();
    if (e.kind == Token::Kind::Punct && e.text == "-") {
      fail("non-polynomial coefficient: negative exponent", e);
    }
    if (e.kind != Token::Kind::Number || e.text.find('.') != std::string::npos) {
      fail("exponent must be a nonnegative integer", e);
    }
    next();
    if (!base.scalar_only()) fail("cannot raise a derivation to a power", caret);
    if (e.text.size() > 4) fail("exponent too large", e);
    (void)start;
    return Form::scalar(base.scalar_part().pow(static_cast<unsigned>(std::stoul(e.text))));
  }

  Form atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      return Form::scalar(Polynomial::constant(kSlots, parse_rational(t.text)));
    }
    if (is_punct("(")) {
      next();
      Form f = expr();
      expect(")");
      return f;
    }
    if (t.kind != Token::Kind::Ident) fail("expected an expression" + found(), t);
    next();
    if (is_punct("(")) fail("non-polynomial coefficient: function '" + t.text + "'", t);
    if (!names_.empty()) {
      auto it = std::find(names_.begin(), names_.end(), t.text);
      if (it == names_.end()) fail("unknown variable '" + t.text + "'", t);
      return Form::scalar(Polynomial::variable(kSlots, static_cast<std::size_t>(it - names_.begin())));
    }
    if (t.text == "D") {
      expect("[");
      const Token& v = expect_ident();
      auto idx = variable_index(v.text);
      if (!idx) fail("unknown variable '" + v.text + "' in derivation", v);
      expect("]");
      return Form::basis(static_cast<int>(*idx + 1));
    }
    if (auto idx = variable_index(t.text)) {
      return Form::scalar(Polynomial::variable(kSlots, *idx));
    }
    if (auto k = suffix_index(t.text, 'D'); k && *k >= 1 && *k <= kSlots) {
      return Form::basis(static_cast<int>(*k));
    }
    if (auto k = suffix_index(t.text, 'X'); k && *k >= 1) {
      return Form::basis(-static_cast<int>(*k));
    }
    fail("unknown identifier '" + t.text + "'", t);
  }

  std::vector<Token> toks_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

std::string poly(const Polynomial& p) {
  auto names = position_names(p.nvars());
  return p.to_string(names);
}

std::string join_terms(const std::vector<std::string>& pieces) {
  if (pieces.empty()) return "0";
  std::string out = pieces.front();
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].front() == '-') {
      out += " - " + pieces[i].substr(1);
    } else {
      out += " + " + pieces[i];
    }
  }
  return out;
}

std::string scaled(const Polynomial& p, const std::string& base) {
  if (p == Polynomial::constant(p.nvars(), 1)) return base;
  if (p == Polynomial::constant(p.nvars(), -1)) return "-" + base;
  if (p.size() == 1) return poly(p) + "*" + base;
  return "(" + poly(p) + ")*" + base;
}

}  // namespace

std::vector<std::string> position_names(std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) {
    out.push_back(dim <= 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1));
  }
  return out;
}

OperatorDocument parse_document(std::string_view text) { return Parser(text).document(); }

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  if (names.empty() || names.size() > kSlots) throw DimensionError("need 1 to 32 variable names");
  return Parser(text, std::vector<std::string>(names.begin(), names.end())).polynomial();
}

ParsedOperator parse_operator(std::string_view text) { return parse_document(text).op; }

std::string render_operator(const SecondOrderOperator& op) {
  std::size_t n = op.dim();
  std::string out = "hor {\n  a = [";
  for (std::size_t i = 0; i < n; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < n; ++j) out += (j ? ", " : "") + poly(op.a(i, j));
    out += "]";
  }
  out += "];\n  b = [";
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : "") + poly(op.b()[i]);
  out += "];\n  c = " + poly(op.c()) + ";\n}\n";
  return out;
}

std::string render_operator(const VectorFieldSystem& sys) {
  std::size_t n = sys.dim();
  auto names = position_names(n);
  std::string out = "sos {\n  dim = " + std::to_string(n) + ";\n";
  for (std::size_t j = 0; j < sys.size(); ++j) {
    std::vector<std::string> pieces;
    for (std::size_t l = 0; l < n; ++l) {
      const Polynomial& p = sys.fields()[j].coefficients[l];
      if (!p.is_zero()) pieces.push_back(scaled(p, "D[" + names[l] + "]"));
    }
    out += "  X" + std::to_string(j + 1) + " = " + join_terms(pieces) + ";\n";
  }
  if (const auto& w = sys.drift_weights()) {
    std::vector<std::string> pieces;
    for (std::size_t j = 0; j < w->size(); ++j) {
      if (!(*w)[j].is_zero()) pieces.push_back(scaled((*w)[j], "X" + std::to_string(j + 1)));
    }
    out += "  X0 = " + join_terms(pieces) + ";\n";
  }
  if (!sys.zero_order().is_zero()) out += "  c = " + poly(sys.zero_order()) + ";\n";
  out += "}\n";
  return out;
}

std::string render_operator(const ParsedOperator& op) {
  return std::visit([](const auto& o) { return render_operator(o); }, op);
}

std::string render_document(const OperatorDocument& doc) {
  std::string out = render_operator(doc.op);
  if (doc.at) {
    std::string pt = "(";
    for (std::size_t i = 0; i < doc.at->x.size(); ++i) pt += (i ? ", " : "") + to_string(doc.at->x[i]);
    pt += "; ";
    for (std::size_t i = 0; i < doc.at->xi.size(); ++i) pt += (i ? ", " : "") + to_string(doc.at->xi[i]);
    out += "at " + pt + ")\n";
  }
  return out;
}

SecondOrderOperator as_hor_operator(const ParsedOperator& op) {
  if (const auto* h = std::get_if<SecondOrderOperator>(&op)) return *h;
  return to_hor_operator(std::get<VectorFieldSystem>(op));
}

}  // namespace horlab
