#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "horlab/hormander_sos.hpp"
#include "horlab/operator_model.hpp"

namespace horlab {

// Operator description language.
//
//   hor { a = [[1,0],[0,x^2]]; b = [0,0]; c = 0; }
//   sos { X1 = D[x]; X2 = x^3*D[y]; X3 = x*y*D[y]; X0 = x*X1; c = 1; }
//
// Variables are x, y, z or x1…xn; derivations D[x], D[x2] or D1…Dn.
// Coefficients are polynomials with integer or rational literals; '/' is
// allowed only by a nonzero constant. '#' starts a comment. An optional
// "dim = n;" fixes the dimension, otherwise it is inferred (matrix size for
// hor, largest variable or derivation index for sos). Matrices must be
// exactly symmetric.

using ParsedOperator = std::variant<SecondOrderOperator, VectorFieldSystem>;

/// Throws ParseError with the 1-based line/column of the offending token.
/// A trailing "at (...)" clause is accepted and ignored.
ParsedOperator parse_operator(std::string_view text);

/// An operator with the optional evaluation point "at (x0…; xi0…)".
struct OperatorDocument {
  ParsedOperator op;
  std::optional<CotangentPoint> at;
};

OperatorDocument parse_document(std::string_view text);
std::string render_document(const OperatorDocument& doc);

std::string render_operator(const SecondOrderOperator& op);
std::string render_operator(const VectorFieldSystem& sys);
std::string render_operator(const ParsedOperator& op);

/// A polynomial in the given variable names, e.g. "t^3 - 2*t" over {"t"}.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

/// x, y, z for dimensions up to three, x1…xn beyond.
std::vector<std::string> position_names(std::size_t dim);

/// The second-order operator behind either kind of description.
SecondOrderOperator as_hor_operator(const ParsedOperator& op);

}  // namespace horlab
