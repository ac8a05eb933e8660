#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(HORLAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(HORLAB_TEST_DATA) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("type-at golden output") {
  auto r = cli("--json type-at " + data("degenerate_n1_m1.dsl"));
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["type"] == 6);
  CHECK(j["witness"] == Json::array({1, 3, 1, 1, 1, 1}));
  CHECK(j["value"] == "11520*sqrt(2)");
  CHECK(j.contains("symbol"));
}

TEST_CASE("cap exceeded output and strict exit code") {
  auto r = cli("--json --cap 5 type-at " + data("degenerate_n1_m1.dsl"));
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out) == Json::parse(R"({"type":null,"cap":5})"));
  CHECK(cli("--strict --cap 5 type-at " + data("degenerate_n1_m1.dsl")).code == 4);
  CHECK(cli("--strict type-at " + data("degenerate_n1_m1.dsl")).code == 0);
}

TEST_CASE("lie-type-at and compare") {
  auto r = cli("--json lie-type-at " + data("degenerate_n1_m1.dsl"));
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["type"] == 4);
  auto c = Json::parse(cli("--json compare " + data("grushin_sos.dsl")).out);
  CHECK(c["lie"]["type"] == 2);
  CHECK(c["family"]["type"] == 2);
  CHECK(c["lie_le_family"] == true);
  CHECK(c["equal_when_lie_le_2"] == true);
}

TEST_CASE("family listing for the Laplacian") {
  auto j = Json::parse(cli("--json family " + data("laplacian_2d.dsl")).out);
  CHECK(j["family"] == Json::array({"2*xi1", "2*xi2", "0", "0"}));
  CHECK(j["lambda"] == Json::array({false, false, true, true}));
}

TEST_CASE("inline text, stdin and the at flag") {
  auto inline_run = cli("--json --at '(0,0;0,1)' type-at -e 'sos { X1 = D[x]; X2 = x*D[y]; }'");
  CHECK(inline_run.code == 0);
  CHECK(Json::parse(inline_run.out)["type"] == 2);
  auto piped = cli("--json type-at - < " + data("grushin_sos.dsl"));
  CHECK(Json::parse(piped.out)["type"] == 2);
}

TEST_CASE("directions sweep") {
  auto j = Json::parse(cli("--json --directions '0,1;1,0;1,1' type-at " + data("degenerate_n1_m1.dsl")).out);
  CHECK(j["lower_bound"] == 6);
  CHECK(j["directions"].size() == 3);
}

TEST_CASE("brackets, char-check and sos-convert") {
  auto b = Json::parse(cli("--json brackets --word 1 " + data("degenerate_n1_m1.dsl")).out);
  CHECK(b["symbol"] == "2*xi1");
  auto c = Json::parse(cli("--json char-check --psd=-1,0,1 " + data("degenerate_n1_m1.dsl")).out);
  CHECK(c["characteristic"] == true);
  auto s = cli("sos-convert " + data("grushin_sos.dsl"));
  CHECK(s.out == "hor {\n  a = [[1, 0], [0, x^2]];\n  b = [0, 0];\n  c = 0;\n}\n");
}

TEST_CASE("render is idempotent through the binary") {
  for (const auto& e : std::filesystem::directory_iterator(HORLAB_TEST_DATA)) {
    if (e.path().extension() != ".dsl") continue;
    INFO(e.path().filename().string());
    auto once = cli("render " + e.path().string());
    CHECK(once.code == 0);
    auto tmp = temp_file("horlab_render.dsl", once.out);
    CHECK(cli("render " + tmp.string()).out == once.out);
  }
}

TEST_CASE("faa-check and lemma-check") {
  auto f = Json::parse(cli("--json faa-check --f 't^3' --g 'x^2' --beta 2").out);
  CHECK(f["equal"] == true);
  CHECK(f["faa_di_bruno"] == "30*x^4");
  CHECK(f["direct"] == "30*x^4");
  auto l = Json::parse(cli("--json lemma-check --N 10 --M 3").out);
  CHECK(l["pass"] == true);
  CHECK(l["checked"] == 55);
}

TEST_CASE("cutoff and conic verbs") {
  auto b = cli("--json --grid 16384 cutoff-build --N 8");
  CHECK(b.code == 0);
  auto j = Json::parse(b.out);
  CHECK(j["properties"]["max_deviation_on_sigma"].get<double>() < 1e-10);
  auto csv = std::filesystem::temp_directory_path() / "horlab_phi.csv";
  CHECK(cli("--grid 4096 cutoff-build --N 2 --csv " + csv.string()).code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x1,value");

  auto v = Json::parse(cli("--json --grid 16384 --alpha-max 4 cutoff-verify --N 8").out);
  CHECK(v["pass"] == true);
  CHECK(v["entries"].size() == 5);
  CHECK(v["entries"][0].contains("measured"));
  CHECK(v["entries"][0].contains("bound"));

  auto c = Json::parse(cli("--json --grid 1025 --alpha-max 2 conic-verify --N 16").out);
  CHECK(c["uniform"]["pass"] == true);
}

TEST_CASE("config file supplies defaults and flags win") {
  auto cfg = temp_file("horlab.cfg", "cap=5\njson=true\n");
  auto r = cli("--config " + cfg.string() + " type-at " + data("degenerate_n1_m1.dsl"));
  CHECK(Json::parse(r.out)["type"].is_null());
  auto r2 = cli("--config " + cfg.string() + " --cap 7 type-at " + data("degenerate_n1_m1.dsl"));
  CHECK(Json::parse(r2.out)["type"] == 6);
}

TEST_CASE("exit codes") {
  CHECK(cli("type-at " + data("invalid/asymmetric.dsl")).code == 2);
  CHECK(cli("type-at -e 'hor { a = [[1]] '").code == 2);
  CHECK(cli("--at '(0,0;0,0)' type-at " + data("grushin_sos.dsl")).code == 3);
  CHECK(cli("type-at " + data("grushin_hor.dsl")).code == 3);  // no point given
  CHECK(cli("lie-type-at " + data("grushin_hor.dsl")).code == 3);
  CHECK(cli("cutoff-build --N 0").code == 3);
  CHECK(cli("--grid 64 cutoff-build").code == 3);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("").code == 1);
  CHECK(cli("--help").code == 0);
}
