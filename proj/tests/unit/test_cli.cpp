#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <unistd.h>

#include "cbl/version.hpp"
#include "cbl_cli/cli.hpp"
#include "cbl_cli/output.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cbl");
  std::ostringstream out, err;
  const int code = cbl::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("cbl_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name) << content;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const char* kCriticalJson = R"({"alpha": 0.5, "j11": 1.5, "j22": 1.5, "j12": 0.5})";
const char* kSubcriticalJson = R"({"alpha": 0.5, "j11": 0.5, "j22": 0.5, "j12": 0.1})";

}  // namespace

TEST_CASE("analyze") {
  TempDir dir;
  SUBCASE("critical parameters") {
    const auto r = run({"analyze", "--params", dir.file("p.json", kCriticalJson)});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["spectral"]["lambda_max"].get<double>() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(j["transformed"]["xi1"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(j["transformed"]["xi2"].get<double>() == doctest::Approx(1.0 / 24).epsilon(1e-12));
    CHECK(j["criticality"]["all_hold"] == true);
    CHECK(j["mean_field_solutions"] == 1);
  }
  SUBCASE("vanishing cross coupling") {
    const auto r = run({"analyze", "--params",
                        dir.file("z.json", R"({"alpha": 0.5, "j11": 1.5, "j22": 1.5, "j12": 0})")});
    CHECK(r.code == 2);
    CHECK(r.err.find("J12 != 0") != std::string::npos);
    CHECK(json::parse(r.out)["criticality"]["j12_nonzero"] == false);
  }
  SUBCASE("malformed input") {
    const auto r = run({"analyze", "--params", dir.file("bad.json", R"({"alpha": 0.5,)")});
    CHECK(r.code == 1);
    CHECK(r.err.find("malformed JSON") != std::string::npos);
    CHECK(run({"analyze", "--params", dir.file("m.json", R"({"alpha": 0.5})")}).code == 1);
    CHECK(run({"analyze", "--params", dir.file("a.json", R"({"alpha": 1.5, "j11": 1, "j22": 1, "j12": 0})")}).code == 1);
    CHECK(run({"analyze", "--params", (dir.path() / "missing.json").string()}).code == 1);
  }
  SUBCASE("usage errors") {
    CHECK(run({"analyze"}).code == 1);
    CHECK(run({"no-such-command"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"analyze", "--params", dir.file("p.json", kCriticalJson), "--format", "xml"}).code == 1);
  }
  SUBCASE("help and version") {
    const auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("converge") != std::string::npos);
    const auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(cbl::kVersion) != std::string::npos);
  }
  SUBCASE("flat csv output") {
    const auto r = run({"analyze", "--params", dir.file("p.json", kCriticalJson), "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("key,value\n", 0) == 0);
    CHECK(r.out.find("transformed.d,2\n") != std::string::npos);
  }
}

TEST_CASE("find-critical") {
  auto r = run({"find-critical", "--alpha", "0.5", "--j11", "1.5", "--j22", "1.5"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["j12"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  r = run({"find-critical", "--alpha", "0.5", "--j11", "1.5", "--j22", "1.5", "--sign", "-1"});
  CHECK(json::parse(r.out)["j12"].get<double>() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(run({"find-critical", "--alpha", "0.5", "--j11", "0.9", "--j22", "0.9"}).code == 2);
  CHECK(run({"find-critical", "--alpha", "0.5", "--j11", "1.5", "--j22", "1.5", "--sign", "0"}).code == 1);
}

TEST_CASE("exact-dist") {
  TempDir dir;
  const std::string params = dir.file("p.json", kCriticalJson);

  SUBCASE("N1 = N2 = 3 matches the spin-configuration oracle") {
    const auto r = run({"exact-dist", "--params", params, "--sizes", "3:3", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == std::vector<std::string>{"S1", "S2", "probability"});
    const auto bf = oracle::brute_force_pmf({0.5, 1.5, 1.5, 0.5}, 3, 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const int s1 = std::stoi(rows[i][0]), s2 = std::stoi(rows[i][1]);
      CHECK(std::fabs(std::stod(rows[i][2]) - bf.prob.at({s1, s2})) <= 1e-12);
    }
  }

  SUBCASE("files with sidecars") {
    const fs::path out = dir.path() / "exact";
    const auto r = run({"exact-dist", "--params", params, "--sizes", "10,6:4", "--out", out.string(),
                        "--what", "rescaled"});
    REQUIRE(r.code == 0);
    for (const char* name : {"exact_5_5.csv", "exact_5_5.json", "exact_6_4.csv", "exact_6_4.json"}) {
      CHECK(fs::exists(out / name));
      const json meta = json::parse(slurp(out / (std::string(name) + ".meta.json")));
      CHECK(meta["version"] == cbl::kVersion);
      CHECK(meta["command"] == "exact-dist");
      CHECK(meta["config"]["what"] == "rescaled");
    }
    CHECK(parse_csv(slurp(out / "exact_6_4.csv"))[0] == std::vector<std::string>{"x1", "x2", "probability"});
  }

  SUBCASE("budget and argument errors") {
    CHECK(run({"exact-dist", "--params", params, "--sizes", "30000:30000"}).code == 3);
    CHECK(run({"exact-dist", "--params", params, "--sizes", "0:4"}).code == 1);
    CHECK(run({"exact-dist", "--params", params, "--sizes", "ten"}).code == 1);
    CHECK(run({"exact-dist", "--params", params, "--sizes", "4,6", "--format", "csv"}).code == 1);
  }

  SUBCASE("pressure in the summary") {
    const auto r = run({"exact-dist", "--params", params, "--sizes", "1:1"});
    REQUIRE(r.code == 0);
    const double z = 2 * std::exp(1.0) + 2 * std::exp(0.5);
    CHECK(json::parse(r.out)[0]["pressure"].get<double>() == doctest::Approx(0.5 * std::log(z)).epsilon(1e-14));
  }
}

TEST_CASE("simulate") {
  TempDir dir;
  const std::string params = dir.file("p.json", kCriticalJson);
  const std::vector<std::string> args{"simulate", "--params", params, "--sizes", "20:20", "--seed", "17",
                                      "--sweeps", "300", "--burn-in", "100", "--chains", "3"};

  SUBCASE("reruns are byte-identical") {
    auto a = args, b = args;
    a.insert(a.end(), {"--out", (dir.path() / "a").string()});
    b.insert(b.end(), {"--out", (dir.path() / "b").string()});
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    for (const char* name : {"simulate_20_20.csv", "simulate_20_20.json", "simulate_20_20.csv.meta.json",
                             "simulate_20_20.json.meta.json"}) {
      const std::string fa = slurp(dir.path() / "a" / name);
      CHECK(!fa.empty());
      CHECK(fa == slurp(dir.path() / "b" / name));
    }
    const auto rows = parse_csv(slurp(dir.path() / "a" / "simulate_20_20.csv"));
    CHECK(rows[0] == std::vector<std::string>{"chain", "sweep", "S1", "S2"});
    CHECK(rows.size() == 1 + 3 * 200);
  }

  SUBCASE("direct sampling") {
    const auto r = run({"simulate", "--params", params, "--sizes", "20:20", "--seed", "5", "--method",
                        "direct", "--draws", "20000"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["draws"] == 20000);
    CHECK(j["tv_to_exact"].get<double>() < 0.1);
  }

  SUBCASE("errors") {
    CHECK(run({"simulate", "--params", params, "--sizes", "20:20"}).code == 1);
    CHECK(run({"simulate", "--params", params, "--sizes", "20:20", "--seed", "1", "--sweeps", "10",
               "--burn-in", "10"}).code == 1);
    CHECK(run({"simulate", "--params", params, "--sizes", "20,30", "--seed", "1"}).code == 1);
  }
}

TEST_CASE("converge") {
  TempDir dir;
  const std::string crit = dir.file("c.json", kCriticalJson);

  SUBCASE("critical trend passes") {
    const auto r = run({"converge", "--params", crit, "--sizes", "200,800,3200"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "PASS");
    const auto& rows = j["rows"];
    REQUIRE(rows.size() == 3);
    for (int i = 1; i < 3; ++i) {
      CHECK(rows[i]["summary"]["ks_x1"].get<double>() < rows[i - 1]["summary"]["ks_x1"].get<double>());
      CHECK(rows[i]["summary"]["ks_x2"].get<double>() < rows[i - 1]["summary"]["ks_x2"].get<double>());
    }
  }

  SUBCASE("single size") {
    const auto r = run({"converge", "--params", crit, "--sizes", "100"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["verdict"] == "insufficient points");
  }

  SUBCASE("subcritical parameters fail the critical-law fit") {
    const auto r = run({"converge", "--params", dir.file("s.json", kSubcriticalJson), "--sizes",
                        "200,800,3200", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("verdict: FAIL") != std::string::npos);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][4] == "kurtosis_x2");
    double prev = 0;
    for (int i = 1; i <= 3; ++i) {
      const double k = std::stod(rows[i][4]);
      CHECK(k > prev);
      CHECK(std::fabs(k - 3) < 0.05);
      prev = k;
    }
  }
}

TEST_CASE("limit-law") {
  const auto r = run({"limit-law", "--xi1", "0.25", "--xi2", "0.041666666666666664"});
  REQUIRE(r.code == 0);
  const json m = json::parse(r.out)["moments"];
  CHECK(m["var_x1"].get<double>() == doctest::Approx(2).epsilon(1e-14));
  CHECK(m["var_x2"].get<double>() == doctest::Approx(1.65580).epsilon(1e-5));
  CHECK(m["fourth_x2"].get<double>() == doctest::Approx(6).epsilon(1e-13));
  CHECK(m["kurtosis_x2"].get<double>() == doctest::Approx(2.18844).epsilon(1e-5));

  const auto t = run({"limit-law", "--xi1", "0.25", "--xi2", "0.5", "--points", "11", "--format", "csv"});
  REQUIRE(t.code == 0);
  const auto rows = parse_csv(t.out);
  CHECK(rows.size() == 12);
  CHECK(rows[6][0] == "0");
  CHECK(rows[6][2] == "0.5");

  CHECK(run({"limit-law"}).code == 1);
  CHECK(run({"limit-law", "--xi1", "1", "--xi2", "-1"}).code == 1);
  TempDir dir;
  CHECK(run({"limit-law", "--params", dir.file("s.json", kSubcriticalJson)}).code == 2);
}

TEST_CASE("curves") {
  TempDir dir;
  const std::string params = dir.file("p.json", kCriticalJson);
  const auto r = run({"curves", "--params", params, "--points", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"x", "f1", "f2"});
  CHECK(std::stod(rows[3][1]) == 0.0);
  CHECK(std::stod(rows[1][1]) == -std::stod(rows[5][1]));
  CHECK(json::parse(run({"curves", "--params", params}).out)["mean_field_solutions"] == 1);
  CHECK(run({"curves", "--params", dir.file("z.json", R"({"alpha": 0.5, "j11": 1.5, "j22": 1.5, "j12": 0})")}).code == 2);
}

TEST_CASE("17-digit floats round-trip") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, double(int(rng() % 40)) - 20);
    CHECK(std::stod(cbl::cli::format_double(v)) == v);
  }
  CHECK(cbl::cli::format_double(0.1) == "0.10000000000000001");
}
