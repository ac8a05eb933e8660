#pragma once

#include <string>

#include <json.hpp>

#include "horlab/bracket_engine.hpp"
#include "horlab/conic.hpp"
#include "horlab/cutoff.hpp"
#include "horlab/faa_di_bruno.hpp"
#include "horlab/hormander_sos.hpp"
#include "horlab/lemma.hpp"
#include "horlab/operator_model.hpp"

namespace horlab {

using Json = nlohmann::ordered_json;

/// {"type":6,"witness":[…],"symbol":"…","value":"…"} or {"type":null,"cap":12}
Json to_json(const TypeResult& result);
/// {"family":["2*xi1",…],"lambda":[false,…]}; lambda marks members carrying λ.
Json to_json(const SymbolFamily& family);
Json to_json(const DirectionReport& report);
Json to_json(const TypeComparison& cmp);
Json to_json(const PsdReport& report);
Json to_json(const CutoffProperties& props);
/// {"c0":…,"tolerance":…,"entries":[{"alpha":[…],"measured":…,"bound":…,"pass":…},…]}
Json to_json(const BoundReport& report);
Json to_json(const ConicProperties& props);
Json to_json(const ConicReport& report);
Json to_json(const UniformConstant& fit);
Json to_json(const FaaTerm& term);
Json to_json(const LemmaReport& report);
Json to_json(const SuperadditivityReport& report);

std::string to_text(const TypeResult& result);
std::string to_text(const SymbolFamily& family);
std::string to_text(const BoundReport& report);
std::string to_text(const ConicReport& report);

}  // namespace horlab
