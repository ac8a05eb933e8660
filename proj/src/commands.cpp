#include "horlab/commands.hpp"

#include <fstream>
#include <sstream>

#include "horlab/error.hpp"
#include "horlab/faa_di_bruno.hpp"
#include "horlab/hormander_sos.hpp"
#include "horlab/lemma.hpp"

namespace horlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

OperatorDocument load(const OperatorInput& in) {
  OperatorDocument doc = parse_document(in.text);
  if (in.at) {
    doc.at = CotangentPoint::parse(*in.at);
    std::size_t n = std::visit([](const auto& o) { return o.dim(); }, doc.op);
    if (doc.at->dim() != n) throw DimensionError("point dimension does not match the operator");
  }
  return doc;
}

const CotangentPoint& require_point(const OperatorDocument& doc) {
  if (!doc.at) throw PreconditionError("no evaluation point: pass --at or end the source with at (...)");
  return *doc.at;
}

const VectorFieldSystem& require_system(const OperatorDocument& doc, const char* verb) {
  const auto* sys = std::get_if<VectorFieldSystem>(&doc.op);
  if (!sys) throw PreconditionError(std::string(verb) + " needs an sos system");
  return *sys;
}

std::vector<Rational> base_x(const OperatorDocument& doc, std::size_t n) {
  return doc.at ? doc.at->x : std::vector<Rational>(n, Rational(0));
}

CommandResult type_command(std::span<const WeightedSymbol> alphabet, const OperatorDocument& doc,
                           std::size_t n, const TypeArgs& args, bool cap_exit) {
  CommandResult out;
  bool exceeded = false;
  if (args.directions) {
    auto report = type_over_directions(alphabet, base_x(doc, n), parse_directions(*args.directions),
                                       args.options);
    out.json = to_json(report);
    std::ostringstream os;
    for (std::size_t i = 0; i < report.results.size(); ++i) {
      os << "xi =";
      for (const auto& q : report.directions[i]) os << ' ' << to_string(q);
      auto t = report.results[i].type();
      os << "  type " << (t ? std::to_string(*t) : "> cap") << '\n';
    }
    os << "lower bound " << (report.lower_bound ? std::to_string(*report.lower_bound) : "none") << '\n';
    out.text = os.str();
    exceeded = report.any_exceeds_cap;
  } else {
    const auto& pt = require_point(doc);
    TypeResult r = args.bruteforce ? type_at_bruteforce(alphabet, pt, args.options.cap)
                                   : type_at(alphabet, pt, args.options);
    out.json = to_json(r);
    out.text = to_text(r);
    exceeded = !r.is_finite();
  }
  if (cap_exit && args.strict && exceeded) out.exit_code = exit_code::cap_exceeded;
  return out;
}

Grid symmetric_grid(std::size_t dim, double half_width, std::size_t points) {
  Rational L(half_width);
  return Grid(dim, GridAxis::periodic(-L, L, points));
}

void maybe_csv(const std::optional<std::string>& path, const GridFunction& f) {
  if (!path) return;
  std::ofstream os(*path);
  if (!os) throw PreconditionError("cannot write " + *path);
  f.write_csv(os);
}

Json params_json(const CutoffParams& p) {
  return Json{{"sigma", p.sigma.to_string()}, {"r", p.r}, {"M", p.M}, {"N", p.N}};
}

}  // namespace

std::vector<std::vector<Rational>> parse_directions(const std::string& text) {
  std::vector<std::vector<Rational>> out;
  for (const auto& part : split(text, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_rational_list(part));
  }
  if (out.empty()) throw PreconditionError("no directions given");
  return out;
}

CommandResult run_type_at(const TypeArgs& args) {
  auto doc = load(args.input);
  auto op = as_hor_operator(doc.op);
  auto fam = symbol_family(op);
  return type_command(fam.members, doc, op.dim(), args, true);
}

CommandResult run_lie_type_at(const TypeArgs& args) {
  auto doc = load(args.input);
  const auto& sys = require_system(doc, "lie-type-at");
  auto symbols = field_symbols(sys);
  return type_command(symbols, doc, sys.dim(), args, false);
}

CommandResult run_family(const OperatorInput& input) {
  auto doc = load(input);
  auto fam = symbol_family(as_hor_operator(doc.op));
  return {to_json(fam), to_text(fam)};
}

CommandResult run_brackets(const BracketArgs& args) {
  auto doc = load(args.input);
  auto fam = symbol_family(as_hor_operator(doc.op));
  BracketWord word = BracketWord::parse(args.word);
  for (auto l : word.letters) {
    if (l < 1 || l > fam.size()) throw PreconditionError("bracket letter out of range 1.." + std::to_string(fam.size()));
  }
  WeightedSymbol s = iterated_bracket(fam, word);
  CommandResult out;
  out.json = Json{{"word", word.to_string()}, {"symbol", s.to_string()}};
  out.text = "p^" + word.to_string() + " = " + s.to_string() + "\n";
  if (doc.at) {
    auto v = s.evaluate(*doc.at);
    out.json["value"] = v.to_string();
    out.json["vanishes"] = v.is_zero();
    out.text += "at " + doc.at->to_string() + ": " + v.to_string() + "\n";
  }
  return out;
}

CommandResult run_sos_convert(const OperatorInput& input) {
  auto doc = load(input);
  auto op = to_hor_operator(require_system(doc, "sos-convert"));
  std::string text = render_operator(op);
  return {Json{{"operator", text}}, text};
}

CommandResult run_render(const OperatorInput& input) {
  auto doc = load(input);
  std::string text = render_document(doc);
  const char* kind = std::holds_alternative<SecondOrderOperator>(doc.op) ? "hor" : "sos";
  return {Json{{"kind", kind}, {"operator", text}}, text};
}

CommandResult run_compare(const TypeArgs& args) {
  auto doc = load(args.input);
  const auto& sys = require_system(doc, "compare");
  auto cmp = compare_types(sys, require_point(doc), args.options);
  std::ostringstream os;
  auto show = [](const TypeResult& r) {
    auto t = r.type();
    return t ? std::to_string(*t) : std::string("> cap");
  };
  os << "lie type " << show(cmp.lie) << "\nfamily type " << show(cmp.family) << '\n';
  if (cmp.conclusive) {
    os << "lie <= family: " << (*cmp.dp1_holds ? "yes" : "NO") << '\n'
       << "equal when lie <= 2: " << (*cmp.dp2_holds ? "yes" : "NO") << '\n';
  } else {
    os << "inconclusive (cap reached)\n";
  }
  return {to_json(cmp), os.str()};
}

CommandResult run_char_check(const CharArgs& args) {
  auto doc = load(args.input);
  auto op = as_hor_operator(doc.op);
  const auto& pt = require_point(doc);
  bool ch = is_characteristic(op, pt);
  auto p0 = principal_symbol(op).evaluate(pt);
  CommandResult out;
  out.json = Json{{"characteristic", ch}, {"principal_value", p0.to_string()}};
  out.text = std::string(ch ? "characteristic" : "not characteristic") + " at " + pt.to_string() +
             " (p0 = " + p0.to_string() + ")\n";
  if (!args.psd_values.empty()) {
    auto rep = psd_sample_check(op, sample_grid(op.dim(), args.psd_values), axis_probes(op.dim()));
    out.json["psd"] = to_json(rep);
    out.text += "positivity sample: " + std::to_string(rep.checked) + " checks, " +
                std::to_string(rep.violations.size()) + " violations\n";
  }
  return out;
}

CommandResult run_cutoff_build(const CutoffArgs& args) {
  auto grid = symmetric_grid(args.params.sigma.dim(), args.half_width, args.grid_points);
  auto phi = build_eh_cutoff(args.params, grid);
  maybe_csv(args.csv_path, phi);
  auto props = cutoff_properties(phi, args.params);
  CommandResult out;
  out.json = Json{{"params", params_json(args.params)},
                  {"grid_points", args.grid_points},
                  {"properties", to_json(props)},
                  {"holds", props.holds(1e-8)}};
  std::ostringstream os;
  os << "phi_N with N = " << args.params.N << ", M = " << args.params.M << ", r = " << args.params.r
     << "\nmax |phi - 1| on sigma " << props.max_deviation_on_sigma << "\nmax |phi| outside "
     << props.max_outside << "\nrange [" << props.min_value << ", " << props.max_value << "]\n";
  out.text = os.str();
  return out;
}

CommandResult run_cutoff_verify(const CutoffArgs& args) {
  auto grid = symmetric_grid(args.params.sigma.dim(), args.half_width, args.grid_points);
  auto phi = build_eh_cutoff(args.params, grid);
  maybe_csv(args.csv_path, phi);
  auto rep = verify_eh_bound(phi, args.params, args.alpha_max);
  CommandResult out;
  out.json = to_json(rep);
  out.json["params"] = params_json(args.params);
  out.text = to_text(rep);
  if (!rep.resolved()) out.exit_code = exit_code::precondition;
  return out;
}

CommandResult run_conic_build(const ConicArgs& args) {
  ConicParams p = args.params;
  if (!args.Ns.empty()) p.N = args.Ns.front();
  auto sym = build_conic_symbol(p, 0);
  auto theta = sym.sample(conic_xi_grid(p.N, p.xi0.size(), args.grid_points));
  maybe_csv(args.csv_path, theta);
  auto props = conic_properties(sym, theta);
  CommandResult out;
  out.json = Json{{"N", p.N}, {"r", p.r}, {"M", p.M}, {"properties", to_json(props)}, {"holds", props.holds(1e-8)}};
  std::ostringstream os;
  os << "Theta_N with N = " << p.N << "\nmax |Theta - 1| on the inner cone " << props.max_deviation_inside
     << "\nmax |Theta| off the outer cone " << props.max_outside << '\n';
  out.text = os.str();
  return out;
}

CommandResult run_conic_verify(const ConicArgs& args) {
  std::vector<unsigned> Ns = args.Ns.empty() ? std::vector<unsigned>{args.params.N} : args.Ns;
  std::vector<ConicReport> reports;
  Json rows = Json::array();
  std::string text;
  for (unsigned N : Ns) {
    ConicParams p = args.params;
    p.N = N;
    auto sym = build_conic_symbol(p, args.alpha_max);
    auto grid = conic_xi_grid(N, p.xi0.size(), args.grid_points);
    reports.push_back(verify_conic_bound(sym, grid, args.alpha_max));
    rows.push_back(to_json(reports.back()));
    text += to_text(reports.back());
  }
  auto fit = fit_uniform_constant(reports);
  text += "uniform C = " + std::to_string(fit.c) + ", drift " + std::to_string(fit.drift) +
          (fit.pass ? "  ok\n" : "  FAIL\n");
  return {Json{{"reports", rows}, {"uniform", to_json(fit)}}, text};
}

CommandResult run_faa_check(const FaaArgs& args) {
  std::vector<MultiIndex::value_type> b;
  for (const auto& q : parse_rational_list(args.beta)) {
    if (q.get_den() != 1 || sgn(q) < 0) throw PreconditionError("beta entries must be nonnegative integers");
    b.push_back(static_cast<MultiIndex::value_type>(q.get_num().get_ui()));
  }
  MultiIndex beta(b);
  auto inner_names = position_names(beta.size());
  std::vector<Polynomial> g;
  for (const auto& part : split(args.g, ';')) g.push_back(parse_polynomial(part, inner_names));
  if (g.empty()) throw PreconditionError("need at least one inner polynomial");
  std::vector<std::string> outer_names;
  if (g.size() == 1) {
    outer_names = {"t"};
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) outer_names.push_back("t" + std::to_string(i + 1));
  }
  Polynomial f = parse_polynomial(args.f, outer_names);
  Polynomial lhs = composite_derivative(f, g, beta);
  Polynomial rhs = f.compose(g).derivative(beta);
  CommandResult out;
  out.json = Json{{"beta", beta.to_string()},
                  {"faa_di_bruno", lhs.to_string(inner_names)},
                  {"direct", rhs.to_string(inner_names)},
                  {"equal", lhs == rhs}};
  out.text = "Faa di Bruno: " + lhs.to_string(inner_names) + "\ndirect:       " +
             rhs.to_string(inner_names) + "\n" + (lhs == rhs ? "equal\n" : "DIFFERENT\n");
  if (args.list_terms) {
    Json terms = Json::array();
    for (const auto& t : faa_di_bruno_terms(beta, g.size())) terms.push_back(to_json(t));
    out.json["terms"] = terms;
    out.text += std::to_string(terms.size()) + " terms\n";
  }
  return out;
}

CommandResult run_lemma_check(const LemmaArgs& args) {
  CommandResult out;
  std::size_t checked = 0, equalities = 0, eq_at_M = 0, failures = 0;
  Json bad = Json::array();
  unsigned n_lo = args.sweep ? 1 : args.N, m_lo = args.sweep ? 0 : args.M;
  for (unsigned N = n_lo; N <= args.N; ++N) {
    for (unsigned M = m_lo; M <= args.M; ++M) {
      auto rep = lemma_l1_check(N, M);
      checked += rep.checked;
      equalities += rep.equalities;
      eq_at_M += rep.equalities_at_M;
      failures += rep.failures.size();
      if (!rep.passed()) bad.push_back(to_json(rep));
    }
  }
  auto sup = superadditivity_check(4, 8, 6, 5);
  out.json = Json{{"N", args.N},
                  {"M", args.M},
                  {"sweep", args.sweep},
                  {"checked", checked},
                  {"equalities", equalities},
                  {"equalities_at_M", eq_at_M},
                  {"failures", failures},
                  {"failing", bad},
                  {"superadditivity", to_json(sup)},
                  {"pass", failures == 0 && sup.passed()}};
  std::ostringstream os;
  os << checked << " pairs checked, " << failures << " failures, " << equalities << " equalities ("
     << eq_at_M << " at k = M)\nsuperadditivity: " << sup.checked << " cases, " << sup.failures
     << " failures\n";
  out.text = os.str();
  return out;
}

}  // namespace horlab
