#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "odba/io.hpp"

using namespace odba;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ODBA_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "odba_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write_json(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  write_file(p.string(), dump(j));
  return p.string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& l) {
  std::vector<std::string> out;
  std::istringstream in(l);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!l.empty() && l.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("verify --config /nonexistent.json").code == 2);
}

TEST_CASE("verify on the benchmark config") {
  const Run r = run("verify --suite all --json -");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == kSchema);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() >= 40);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("suite"));
    CHECK(c.contains("check"));
    CHECK(c["residual"].is_number());
    CHECK(c["pass"].is_boolean());
  }
  CHECK(run("verify --suite bulk").code == 0);
}

TEST_CASE("verify fails on an impossible tolerance") {
  CHECK(run("verify --suite boundary --tol 1e-30").code == 1);
}

TEST_CASE("eta = 0 is a config error") {
  json cfg = config_to_json(reference_config());
  cfg["eta"] = 0.0;
  CHECK(run("verify --suite bulk --config " + write_json("eta0.json", cfg)).code == 2);
  cfg = config_to_json(reference_config());
  cfg["unknown"] = 1;
  CHECK(run("spectrum --hamiltonian --config " + write_json("unknown.json", cfg)).code == 2);
}

TEST_CASE("spectrum") {
  const Run h = run("spectrum --hamiltonian");
  REQUIRE(h.code == 0);
  const json j = json::parse(h.out);
  CHECK(j["count"] == 9);
  CHECK(j["eigenvalues"].size() == 9);
  const Run t = run("spectrum --at 0");
  REQUIRE(t.code == 0);
  const json e = json::parse(t.out)["eigenvalues"];
  const cplx first = complex_from_json(e[0]["value"], "value");
  for (const auto& v : e) CHECK(std::abs(complex_from_json(v["value"], "value") - first) < 1e-12 * std::abs(first));
  CHECK(json::parse(run("spectrum --at 0.2,0.1").out)["count"] == 9);
  CHECK(run("spectrum").code == 2);
  CHECK(run("spectrum --at abc").code == 2);
}

TEST_CASE("commands are deterministic") {
  CHECK(run("spectrum --at 0.3").out == run("spectrum --at 0.3").out);
  CHECK(run("solve-bae --sector 2 --starts 4 --mode coefficient").out ==
        run("solve-bae --sector 2 --starts 4 --mode coefficient").out);
}

TEST_CASE("table1 and the seed pipeline") {
  const std::string seeds = (scratch() / "table1.json").string();
  const std::string roots = (scratch() / "roots.json").string();
  const Run t = run("table1 --write-seeds " + seeds + " --write-roots " + roots);
  CHECK(t.code == 0);
  CHECK(t.out.find("coverage 9/9") != std::string::npos);

  const Run s = run("solve-bae --seeds " + seeds);
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["states"].size() == 9);
  CHECK(j["coverage"]["reproduced"] == 9);
  for (const auto& st : j["states"]) CHECK(st["residual"].get<double>() <= 1e-12);

  const Run scan = run("lambda-scan --roots " + roots + " --index 0 --from -1 --to 1 --points 101");
  REQUIRE(scan.code == 0);
  const auto rows = lines(scan.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "u,re_lambda,im_lambda,re_exact,im_exact,abs_diff,flag");
  double worst = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    REQUIRE(f.size() == 7);
    worst = std::max(worst, std::stod(f[5]));
  }
  CHECK(worst <= 1e-6);

  // a grid point on a real root of row 1
  const auto states = load_states(roots, 2);
  double root = 0.0;
  for (cplx z : states[0].lambda1)
    if (std::abs(z.imag()) < 1e-12) root = z.real();
  REQUIRE(root != 0.0);
  char args[256];
  std::snprintf(args, sizeof args, "lambda-scan --roots %s --index 0 --from %.17g --to %.17g --points 3 --offset 0",
                roots.c_str(), root, root + 0.2);
  const Run pole = run(args);
  REQUIRE(pole.code == 0);
  CHECK(pole.out.find("nan") == std::string::npos);
  CHECK(lines(pole.out)[1].find(",pole") != std::string::npos);
  std::snprintf(args, sizeof args, "lambda-scan --roots %s --index 0 --from %.17g --to %.17g --points 3", roots.c_str(),
                root, root + 0.2);
  CHECK(lines(run(args).out)[1].find(",shifted") != std::string::npos);
}

TEST_CASE("solve-bae errors and empty budgets") {
  CHECK(run("solve-bae --sector 3").code == 2);
  CHECK(run("solve-bae --sector -1").code == 2);
  CHECK(run("solve-bae").code == 2);
  const Run r = run("solve-bae --sector 1 --starts 0");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["states"].empty());
  CHECK(j["coverage"]["reproduced"] == 0);
}

TEST_CASE("lambda-scan rejects a root file with the wrong cardinality") {
  json bad = json::array({{{"M", 1}, {"lambda1", json::array({0.1, 0.2})}, {"lambda2", json::array({0.3})}}});
  CHECK(run("lambda-scan --roots " + write_json("bad_roots.json", bad)).code == 2);
}
