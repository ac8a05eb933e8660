#include "horlab/report.hpp"

#include <sstream>

namespace horlab {

namespace {

Json multi_index_json(const MultiIndex& m) {
  Json a = Json::array();
  for (auto v : m) a.push_back(v);
  return a;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace

Json to_json(const TypeResult& result) {
  Json j;
  if (result.is_finite()) {
    const auto& f = result.finite();
    j["type"] = f.type;
    Json w = Json::array();
    for (auto l : f.witness.letters) w.push_back(l);
    j["witness"] = w;
    j["symbol"] = f.witness_symbol.to_string();
    j["value"] = f.witness_value.to_string();
  } else {
    j["type"] = nullptr;
    j["cap"] = std::get<TypeResult::ExceedsCap>(result.outcome).cap;
  }
  return j;
}

Json to_json(const SymbolFamily& family) {
  Json names = Json::array(), lambda = Json::array();
  // the second half of the family is λ⁻¹∂_x p⁰ even when a member vanishes
  for (std::size_t k = 0; k < family.size(); ++k) {
    names.push_back(family.members[k].to_string());
    lambda.push_back(2 * k >= family.size());
  }
  return Json{{"family", names}, {"lambda", lambda}};
}

Json to_json(const DirectionReport& report) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < report.directions.size(); ++i) {
    Json d = Json::array();
    for (const auto& q : report.directions[i]) d.push_back(to_string(q));
    Json row = to_json(report.results[i]);
    row["xi"] = d;
    rows.push_back(row);
  }
  return Json{{"directions", rows},
              {"lower_bound", report.lower_bound ? Json(*report.lower_bound) : Json(nullptr)},
              {"any_exceeds_cap", report.any_exceeds_cap}};
}

Json to_json(const TypeComparison& cmp) {
  return Json{{"lie", to_json(cmp.lie)},
              {"family", to_json(cmp.family)},
              {"conclusive", cmp.conclusive},
              {"lie_le_family", optional_bool(cmp.dp1_holds)},
              {"equal_when_lie_le_2", optional_bool(cmp.dp2_holds)}};
}

Json to_json(const PsdReport& report) {
  Json v = Json::array();
  for (const auto& viol : report.violations) {
    Json x = Json::array(), p = Json::array();
    for (const auto& q : viol.x) x.push_back(to_string(q));
    for (const auto& q : viol.probe) p.push_back(to_string(q));
    v.push_back(Json{{"x", x}, {"probe", p}, {"form", to_string(viol.quadratic_form)}});
  }
  return Json{{"checked", report.checked}, {"passed", report.passed()}, {"violations", v}};
}

Json to_json(const CutoffProperties& props) {
  return Json{{"max_deviation_on_sigma", props.max_deviation_on_sigma},
              {"max_outside", props.max_outside},
              {"min", props.min_value},
              {"max", props.max_value}};
}

Json to_json(const BoundReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"alpha", multi_index_json(e.alpha)},
                           {"measured", e.measured},
                           {"bound", e.bound},
                           {"pass", e.pass},
                           {"crosscheck", e.crosscheck},
                           {"resolved", e.resolved}});
  }
  return Json{{"c0", report.c0},
              {"tolerance", report.tolerance},
              {"pass", report.passed()},
              {"entries", entries}};
}

Json to_json(const ConicProperties& props) {
  return Json{{"max_deviation_inside", props.max_deviation_inside},
              {"max_outside", props.max_outside},
              {"inside_samples", props.inside_samples},
              {"outside_samples", props.outside_samples}};
}

Json to_json(const ConicReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"alpha", multi_index_json(e.alpha)}, {"measured", e.measured}});
  }
  return Json{{"N", report.N},
              {"c_fit", report.c_fit},
              {"growth_rate", report.growth_rate},
              {"max_log_excess", report.max_log_excess},
              {"entries", entries}};
}

Json to_json(const UniformConstant& fit) {
  return Json{{"C", fit.c}, {"drift", fit.drift}, {"drift_limit", fit.drift_limit}, {"pass", fit.pass}};
}

Json to_json(const FaaTerm& term) {
  Json slots = Json::array();
  for (const auto& [k, l] : term.partition) {
    slots.push_back(Json{{"k", multi_index_json(k)}, {"l", multi_index_json(l)}});
  }
  return Json{{"gamma", multi_index_json(term.gamma)},
              {"partition", slots},
              {"weight", to_string(term.coefficient)}};
}

Json to_json(const LemmaReport& report) {
  Json fails = Json::array();
  for (const auto& [j, k] : report.failures) fails.push_back(Json{{"j", j}, {"k", k}});
  return Json{{"N", report.N},
              {"M", report.M},
              {"B", report.B},
              {"checked", report.checked},
              {"equalities", report.equalities},
              {"checked_at_M", report.checked_at_M},
              {"equalities_at_M", report.equalities_at_M},
              {"pass", report.passed()},
              {"failures", fails}};
}

Json to_json(const SuperadditivityReport& report) {
  return Json{{"checked", report.checked}, {"failures", report.failures}, {"pass", report.passed()}};
}

std::string to_text(const TypeResult& result) {
  std::ostringstream os;
  if (result.is_finite()) {
    const auto& f = result.finite();
    os << "type " << f.type << "\nwitness " << f.witness.to_string() << "\nsymbol "
       << f.witness_symbol.to_string() << "\nvalue " << f.witness_value.to_string() << '\n';
  } else {
    os << "type exceeds cap " << std::get<TypeResult::ExceedsCap>(result.outcome).cap << '\n';
  }
  return os.str();
}

std::string to_text(const SymbolFamily& family) {
  std::ostringstream os;
  for (std::size_t k = 1; k <= family.size(); ++k) {
    os << "p" << k << " = " << family[k].to_string() << '\n';
  }
  return os.str();
}

std::string to_text(const BoundReport& report) {
  std::ostringstream os;
  os << "C0 = " << report.c0 << '\n';
  for (const auto& e : report.entries) {
    os << "alpha " << e.alpha.to_string() << "  measured " << e.measured << "  bound " << e.bound
       << (e.resolved ? "" : "  (under-resolved)") << (e.pass ? "  ok" : "  FAIL") << '\n';
  }
  return os.str();
}

std::string to_text(const ConicReport& report) {
  std::ostringstream os;
  os << "N = " << report.N << "  C = " << report.c_fit << "  growth " << report.growth_rate << '\n';
  for (const auto& e : report.entries) {
    os << "alpha " << e.alpha.to_string() << "  measured " << e.measured << '\n';
  }
  return os.str();
}

}  // namespace horlab
