// horlab command-line front end. Every verb forwards to one run_* function
// of the library; this file only parses flags and prints.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "horlab/commands.hpp"
#include "horlab/error.hpp"

using namespace horlab;

namespace {

struct Globals {
  unsigned cap = 12;
  bool json = false;
  bool strict = false;
  bool serial = false;
  std::string at;
  std::string directions;
  std::size_t grid = 0;
  unsigned alpha_max = 0;
};

std::string read_source(const std::string& source, const std::string& inline_text) {
  if (!inline_text.empty()) return inline_text;
  if (source.empty()) throw PreconditionError("no operator given: pass a file or -e '<dsl>'");
  if (source == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(source);
  if (!in) throw PreconditionError("cannot read " + source);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<double> doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& q : parse_rational_list(text)) out.push_back(q.get_d());
  return out;
}

// "lo1,lo2;hi1,hi2"
Region parse_box(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw PreconditionError("box must be 'lo,...;hi,...'");
  return Region::box(doubles(text.substr(0, semi)), doubles(text.substr(semi + 1)));
}

// "c1,c2;R"
Region parse_ball(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw PreconditionError("ball must be 'c,...;radius'");
  return Region::ball(doubles(text.substr(0, semi)), parse_rational(text.substr(semi + 1)).get_d());
}

std::vector<unsigned> unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& q : parse_rational_list(text)) {
    if (q.get_den() != 1 || sgn(q) <= 0) throw PreconditionError("expected positive integers: " + text);
    out.push_back(static_cast<unsigned>(q.get_num().get_ui()));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bracket types, sum-of-squares operators and cutoff sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; flags given on the command line win");

  Globals g;
  app.add_option("--cap", g.cap, "Maximal bracket length")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--strict", g.strict, "type-at exits with 4 when the cap is exceeded");
  app.add_flag("--serial", g.serial, "Use the serial reference kernels");
  app.add_option("--at", g.at, "Point \"(x0...; xi0...)\"");
  app.add_option("--directions", g.directions, "Covector directions \"a,b;c,d\"");
  app.add_option("--grid", g.grid, "Grid points per axis");
  app.add_option("--alpha-max", g.alpha_max, "Highest derivative order");

  std::string source, inline_text;
  auto operator_verb = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("source", source, "DSL file, or - for stdin");
    sub->add_option("-e,--expr", inline_text, "DSL text given inline");
    return sub;
  };

  bool bruteforce = false, no_dedup = false;
  auto* type_at = operator_verb("type-at", "Type of a point for the operator's symbol family");
  auto* lie_type = operator_verb("lie-type-at", "Type of a point for an sos system");
  auto* compare = operator_verb("compare", "Both types of an sos system at a point");
  for (auto* sub : {type_at, lie_type, compare}) {
    sub->add_flag("--bruteforce", bruteforce, "Exhaustive reference search, no dedup or pruning");
    sub->add_flag("--no-dedup", no_dedup, "Keep symbols equal up to a scalar");
  }
  auto* family = operator_verb("family", "The symbol family p1..p2n");
  auto* sos_convert = operator_verb("sos-convert", "Expand an sos system into a hor operator");
  auto* render = operator_verb("render", "Print the operator in canonical form");
  std::string word;
  auto* brackets = operator_verb("brackets", "One iterated bracket of the family");
  brackets->add_option("--word", word, "Letters, e.g. 3,1,1")->required();
  std::string psd;
  auto* char_check = operator_verb("char-check", "Is the point characteristic");
  char_check->add_option("--psd", psd, "Sample values per axis for a positivity check, e.g. -1,0,1");

  CutoffArgs cutoff;
  std::string box = "-1/2;1/2", ball;
  auto cutoff_verb = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--box", box, "Sigma as a box 'lo,...;hi,...'")->capture_default_str();
    sub->add_option("--ball", ball, "Sigma as a ball 'c,...;radius'");
    sub->add_option("--r", cutoff.params.r)->capture_default_str();
    sub->add_option("--M", cutoff.params.M)->capture_default_str();
    sub->add_option("--N", cutoff.params.N)->capture_default_str();
    sub->add_option("--half-width", cutoff.half_width, "Grid covers [-L, L) per axis")->capture_default_str();
    sub->add_option("--csv", cutoff.csv_path, "Write the samples as CSV");
    return sub;
  };
  auto* cutoff_build = cutoff_verb("cutoff-build", "Build the cutoff phi_N");
  auto* cutoff_verify = cutoff_verb("cutoff-verify", "Check the derivative bounds of phi_N");

  ConicArgs conic;
  std::string xi0 = "1", ns = "16";
  conic.params.r = 1;
  auto conic_verb = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--xi0", xi0, "Cone axis")->capture_default_str();
    sub->add_option("--r", conic.params.r)->capture_default_str();
    sub->add_option("--M", conic.params.M)->capture_default_str();
    sub->add_option("--N", ns, "One or more N, e.g. 16,32")->capture_default_str();
    sub->add_option("--csv", conic.csv_path, "Write the samples as CSV");
    return sub;
  };
  auto* conic_build = conic_verb("conic-build", "Build the conic symbol Theta_N");
  auto* conic_verify = conic_verb("conic-verify", "Fit one constant for the conic bounds");

  FaaArgs faa;
  auto* faa_check = app.add_subcommand("faa-check", "Faa di Bruno sum against direct differentiation");
  faa_check->add_option("--f", faa.f, "Outer polynomial in t (or t1..tm)")->required();
  faa_check->add_option("--g", faa.g, "Inner polynomials in x, y, ... separated by ';'")->required();
  faa_check->add_option("--beta", faa.beta, "Derivative order, e.g. 1,1")->required();
  faa_check->add_flag("--terms", faa.list_terms, "List the partitions");

  LemmaArgs lemma;
  auto* lemma_check = app.add_subcommand("lemma-check", "Exhaustive integer check of k^j <= B^j N^(k-M)+");
  lemma_check->add_option("--N", lemma.N)->capture_default_str();
  lemma_check->add_option("--M", lemma.M)->capture_default_str();
  lemma_check->add_flag("--sweep", lemma.sweep, "All N' <= N and M' <= M");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    OperatorInput input;
    auto operator_input = [&] {
      input.text = read_source(source, inline_text);
      if (!g.at.empty()) input.at = g.at;
      return input;
    };
    TypeArgs targs;
    auto type_args = [&] {
      targs.input = operator_input();
      targs.options.cap = g.cap;
      targs.options.dedup = !no_dedup;
      targs.options.execution = g.serial ? Execution::Serial : Execution::Parallel;
      targs.strict = g.strict;
      targs.bruteforce = bruteforce;
      if (!g.directions.empty()) targs.directions = g.directions;
      return targs;
    };
    auto cutoff_args = [&] {
      cutoff.params.sigma = ball.empty() ? parse_box(box) : parse_ball(ball);
      if (g.grid) cutoff.grid_points = g.grid;
      if (g.alpha_max) cutoff.alpha_max = g.alpha_max;
      return cutoff;
    };
    auto conic_args = [&] {
      conic.params.xi0 = doubles(xi0);
      conic.Ns = unsigned_list(ns);
      if (g.grid) conic.grid_points = g.grid;
      if (g.alpha_max) conic.alpha_max = g.alpha_max;
      return conic;
    };

    CommandResult result;
    if (*type_at) {
      result = run_type_at(type_args());
    } else if (*lie_type) {
      result = run_lie_type_at(type_args());
    } else if (*compare) {
      result = run_compare(type_args());
    } else if (*family) {
      result = run_family(operator_input());
    } else if (*sos_convert) {
      result = run_sos_convert(operator_input());
    } else if (*render) {
      result = run_render(operator_input());
    } else if (*brackets) {
      result = run_brackets({operator_input(), word});
    } else if (*char_check) {
      CharArgs c{operator_input(), {}};
      if (!psd.empty()) c.psd_values = parse_rational_list(psd);
      result = run_char_check(c);
    } else if (*cutoff_build) {
      result = run_cutoff_build(cutoff_args());
    } else if (*cutoff_verify) {
      result = run_cutoff_verify(cutoff_args());
    } else if (*conic_build) {
      result = run_conic_build(conic_args());
    } else if (*conic_verify) {
      result = run_conic_verify(conic_args());
    } else if (*faa_check) {
      result = run_faa_check(faa);
    } else if (*lemma_check) {
      result = run_lemma_check(lemma);
    }
    if (g.json) {
      std::cout << result.json.dump() << '\n';
    } else {
      std::cout << result.text;
    }
    return result.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::precondition;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::precondition;
  }
}
