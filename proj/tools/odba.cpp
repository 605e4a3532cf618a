#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "odba/bae.hpp"
#include "odba/benchmark.hpp"
#include "odba/identities.hpp"
#include "odba/io.hpp"

using namespace odba;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

RunConfig config_or_reference(const std::string& path) { return path.empty() ? reference_config() : load_config(path); }

// "re" or "re,im"
cplx parse_point(const std::string& s) {
  const auto comma = s.find(',');
  try {
    size_t used = 0;
    const double re = std::stod(s.substr(0, comma), &used);
    if (comma == std::string::npos) {
      if (used != s.size()) throw std::invalid_argument(s);
      return re;
    }
    const std::string rest = s.substr(comma + 1);
    const double im = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("bad spectral point \"" + s + "\" (expected re or re,im)");
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file(out, text);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- verify

struct VerifyArgs {
  std::string config, suite = "all", json_out;
  std::optional<double> tol;
  std::uint64_t seed = 1;
};

Report run_suite(const std::string& suite, const RunConfig& cfg, Rng& rng) {
  const auto& spec = cfg.spec;
  const auto& pair = cfg.pair;
  Report r;
  if (suite == "bulk") return bulk_suite(rng);
  if (suite == "boundary") return boundary_suite(pair, spec.eta, rng);
  if (suite == "fusion") {
    append(r, check_fusion_projectors(spec.eta));
    append(r, check_monodromy(spec, rng));
    append(r, check_commutativity(spec, pair, rng));
    append(r, check_quantum_determinant(spec, pair, rng));
    append(r, check_sector_structure(spec, pair, rng));
    return r;
  }
  if (suite == "identities") {
    // the production identities live at u = +-theta_j; use small distinct theta when homogeneous
    ChainSpec inh = spec;
    if (spec.is_homogeneous())
      for (int j = 0; j < spec.n_sites; ++j) inh.theta[j] = random_point(rng, 0.1, 0.1) + 0.05 * (j + 1);
    append(r, check_production_identities(inh, pair));
    append(r, check_special_points(spec, pair));
    return r;
  }
  if (suite == "asymptotics") return check_asymptotics(spec, pair);
  throw ConfigError("unknown suite " + suite);
}

int cmd_verify(const VerifyArgs& a) {
  const RunConfig cfg = config_or_reference(a.config);
  Rng rng(a.seed);
  const std::vector<std::string> suites =
      a.suite == "all" ? std::vector<std::string>{"bulk", "boundary", "fusion", "identities", "asymptotics"}
                       : std::vector<std::string>{a.suite};
  Report rep;
  for (const auto& s : suites) append(rep, run_suite(s, cfg, rng));
  if (a.tol)
    for (auto& c : rep) {
      c.tolerance = *a.tol;
      c.pass = c.residual <= *a.tol;
    }
  const bool ok = all_pass(rep);
  if (a.json_out != "-") {
    std::printf("%-12s %-52s %10s %10s  %s\n", "suite", "check", "residual", "tol", "result");
    for (const auto& c : rep)
      std::printf("%-12s %-52s %10.2e %10.2e  %s%s\n", c.suite.c_str(), c.name.c_str(), c.residual, c.tolerance,
                  c.pass ? "PASS" : "FAIL", c.note.empty() ? "" : ("  (" + c.note + ")").c_str());
    std::printf("%zu checks, %s\n", rep.size(), ok ? "all pass" : "FAILURES");
  }
  if (!a.json_out.empty()) {
    json j = {{"schema", kSchema}, {"command", "verify"}, {"suite", a.suite}, {"seed", a.seed},
              {"config", config_to_json(cfg)}, {"checks", report_to_json(rep)}, {"pass", ok}};
    emit(a.json_out, dump(j));
  }
  return ok ? kPass : kFail;
}

// ---- spectrum

struct SpectrumArgs {
  std::string config, at, out;
  bool hamiltonian = false;
};

int cmd_spectrum(const SpectrumArgs& a) {
  RunConfig cfg = config_or_reference(a.config);
  if (a.at.empty() == !a.hamiltonian) throw ConfigError("spectrum needs exactly one of --at or --hamiltonian");
  if (a.hamiltonian) std::fill(cfg.spec.theta.begin(), cfg.spec.theta.end(), cplx(0.0));
  const auto basis = common_eigenbasis(cfg.spec, cfg.pair);
  const Eigen::VectorXd charges = basis.charges(cfg.pair.kind());
  Vector values;
  json j = {{"schema", kSchema}, {"command", "spectrum"}, {"config", config_to_json(cfg)}};
  if (a.hamiltonian) {
    values = basis.eigenvalues(hamiltonian(cfg.spec, cfg.pair).data());
    j["operator"] = "hamiltonian";
  } else {
    const cplx u = parse_point(a.at);
    values = basis.eigenvalues(transfer_matrix(u, cfg.spec, cfg.pair).data());
    j["operator"] = "transfer";
    j["at"] = complex_to_json(u);
  }
  std::vector<Index> order(values.size());
  for (Index i = 0; i < values.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    const long cx = std::lround(charges(x)), cy = std::lround(charges(y));
    if (cx != cy) return cx < cy;
    if (values(x).real() != values(y).real()) return values(x).real() < values(y).real();
    return values(x).imag() < values(y).imag();
  });
  json ev = json::array();
  for (Index i : order)
    ev.push_back({{"value", complex_to_json(values(i))}, {"sector", std::lround(charges(i))}, {"charge", charges(i)}});
  j["count"] = values.size();
  j["eigenvalues"] = ev;
  emit(a.out, dump(j));
  return kPass;
}

// ---- solve-bae

struct SolveArgs {
  std::string config, seeds, out, mode = "uniform";
  std::optional<int> sector;
  int starts = 0, threads = 0;
  bool table_aware = false;
};

int cmd_solve(const SolveArgs& a) {
  const RunConfig cfg = config_or_reference(a.config);
  const int n = cfg.spec.n_sites;
  if (a.sector && (*a.sector < 0 || *a.sector > n))
    throw ConfigError("--sector must lie in [0, " + std::to_string(n) + "]");
  if (!a.sector && a.seeds.empty()) throw ConfigError("solve-bae needs --sector or --seeds");
  if (a.starts < 0) throw ConfigError("--starts must be non-negative");
  StartMode mode = StartMode::uniform;
  if (a.table_aware || a.mode == "table-aware") mode = StartMode::table_aware;
  else if (a.mode == "coefficient") mode = StartMode::coefficient;
  else if (a.mode != "uniform") throw ConfigError("unknown --mode " + a.mode);

  std::map<int, std::vector<BetheState>> by_sector;
  if (!a.seeds.empty())
    for (auto& s : load_states(a.seeds, n)) by_sector[s.sector].push_back(s);
  if (a.sector) by_sector[*a.sector];

  SolveOptions opt;
  opt.tol = cfg.tolerances.newton;
  const SpectrumReference ref(cfg.spec, cfg.pair);
  const auto grid = linear_grid(-1.0, 1.0, 101);
  json sectors = json::array(), states = json::array();
  std::map<int, int> hit;
  int total_attempts = 0;
  for (auto& [m, seeds] : by_sector) {
    SolveTask task{SpectralContext(cfg.spec, cfg.pair, m), {}, 0, 1, StartMode::uniform, {}, 0};
    task.seeds = seeds;
    task.starts = a.sector && *a.sector == m ? a.starts : 0;
    task.rng_seed = cfg.rng_seed;
    task.mode = mode;
    task.options = opt;
    task.threads = a.threads;
    const auto sum = newton_solve(task);
    std::vector<BetheState> found;
    for (const auto& r : sum.results) found.push_back(r.state);
    const auto ver = verify_against_spectrum(found, ref, grid, cfg.tolerances.match);
    int dim = 0;
    for (Index i = 0; i < ref.charges().size(); ++i) dim += std::lround(ref.charges()(i)) == m;
    for (size_t i = 0; i < found.size(); ++i) {
      const auto& r = sum.results[i];
      const auto& mt = ver.matches[i];
      json s = state_to_json(r.state);
      s["residual"] = r.residual_norm;
      s["iterations"] = r.iterations;
      s["origin"] = r.origin;
      s["energy"] = r.energy ? complex_to_json(*r.energy) : json(nullptr);
      s["matched_eigenvalue_index"] = mt.index ? json(*mt.index) : json(nullptr);
      s["sup_error"] = mt.sup_error;
      s["ambiguous"] = mt.ambiguous;
      if (mt.index) ++hit[*mt.index];
      states.push_back(s);
    }
    total_attempts += sum.attempts;
    sectors.push_back({{"M", m},
                       {"seeds", seeds.size()},
                       {"starts", task.starts},
                       {"attempts", sum.attempts},
                       {"converged", sum.converged},
                       {"duplicates", sum.duplicates},
                       {"rejected_seeds", sum.rejected_seeds},
                       {"degenerate", sum.degenerate},
                       {"seed_failures", sum.seed_failures},
                       {"distinct", found.size()},
                       {"coverage", ver.coverage},
                       {"sector_dimension", dim}});
  }
  const char* mode_name = mode == StartMode::coefficient ? "coefficient" : mode == StartMode::table_aware ? "table-aware" : "uniform";
  json j = {{"schema", kSchema},
            {"command", "solve-bae"},
            {"config", config_to_json(cfg)},
            {"mode", mode_name},
            {"sectors", sectors},
            {"states", states},
            {"coverage", {{"reproduced", hit.size()}, {"dimension", ref.dimension()}, {"attempts", total_attempts}}}};
  emit(a.out, dump(j));
  return kPass;
}

// ---- lambda-scan

struct ScanArgs {
  std::string config, roots, out, plot;
  int index = 0, points = 101;
  double from = -1.0, to = 1.0, offset = 1e-3;
};

int cmd_scan(const ScanArgs& a) {
  const RunConfig cfg = config_or_reference(a.config);
  if (a.roots.empty()) throw ConfigError("lambda-scan needs --roots");
  if (a.points < 1) throw ConfigError("--points must be positive");
  const auto states = load_states(a.roots, cfg.spec.n_sites);
  if (a.index < 0 || a.index >= static_cast<int>(states.size())) throw ConfigError("--index outside the root file");
  const BetheState& s = states[a.index];
  const SpectralContext ctx(cfg.spec, cfg.pair, s.sector);
  const SpectrumReference ref(cfg.spec, cfg.pair);
  const auto grid = linear_grid(a.from, a.to, a.points);

  // Compare against the exact curve closest in sup norm; poles are stepped around for the choice.
  Eigen::VectorXd sup = Eigen::VectorXd::Zero(ref.dimension());
  for (double g : grid) {
    const cplx u = pole_distance(g, s, ctx) < 1e-6 ? cplx(g + 1e-3) : cplx(g);
    const cplx lam = lambda1(u, s, ctx);
    const Vector ev = ref.eigenvalues_at(u);
    for (Index k = 0; k < ev.size(); ++k) sup(k) = std::max(sup(k), std::abs(ev(k) - lam));
  }
  Index curve = 0;
  sup.minCoeff(&curve);
  std::ostringstream os;
  os << "u,re_lambda,im_lambda,re_exact,im_exact,abs_diff,flag\n";
  auto num = [](double v) { return fmt("%.17g", v); };
  for (double g : grid) {
    cplx u = g;
    std::string flag = "ok";
    if (pole_distance(u, s, ctx) < 1e-6) {
      if (a.offset != 0.0) {
        u += a.offset;
        flag = "shifted";
      } else {
        flag = "pole";
      }
    }
    const cplx ex = ref.eigenvalues_at(u)(curve);
    os << num(u.real()) << ",";
    if (flag == "pole") {
      os << ",," << num(ex.real()) << "," << num(ex.imag()) << ",," << flag << "\n";
      continue;
    }
    const cplx lam = lambda1(u, s, ctx);
    os << num(lam.real()) << "," << num(lam.imag()) << "," << num(ex.real()) << "," << num(ex.imag()) << ","
       << num(std::abs(lam - ex)) << "," << flag << "\n";
  }
  emit(a.out, os.str());
  if (!a.plot.empty()) {
    if (a.out.empty() || a.out == "-") throw ConfigError("--plot needs --out");
    std::ostringstream gp;
    gp << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'u'\n"
       << "plot '" << a.out << "' using 1:2 with points pt 7 title 'Re Lambda', '' using 1:4 with lines title 'Re exact', "
       << "'' using 1:3 with points pt 6 title 'Im Lambda', '' using 1:5 with lines title 'Im exact'\n";
    write_file(a.plot, gp.str());
  }
  return kPass;
}

// ---- table1

struct TableArgs {
  std::string json_out, write_seeds, write_roots;
};

int cmd_table1(const TableArgs& a) {
  if (!a.write_seeds.empty()) {
    std::vector<BetheState> seeds;
    for (const auto& r : reference_states()) seeds.push_back(r.state);
    write_file(a.write_seeds, dump(states_to_json(seeds)));
  }
  const auto rep = run_benchmark();
  if (!a.write_roots.empty()) {
    std::vector<BetheState> roots;
    for (const auto& r : rep.rows) roots.push_back(r.refined);
    write_file(a.write_roots, dump(states_to_json(roots)));
  }
  std::printf("exact energies:");
  for (double e : rep.exact_energies) std::printf(" %.6f", e);
  std::printf("\n%3s %2s %12s %12s %9s %12s %9s %9s %9s %5s %9s  %s\n", "row", "M", "E_printed", "E_exact", "dev",
              "E_bethe", "dev", "residual", "root_dev", "curve", "sup", "result");
  json rows = json::array();
  for (const auto& r : rep.rows) {
    std::printf("%3d %2d %12.6f %12.6f %9.1e %12.6f %9.1e %9.1e %9.1e %5s %9.1e  %s\n", r.row, r.refined.sector,
                r.printed.energy, r.energy_exact, r.printed_deviation, r.energy_bethe, r.bethe_deviation, r.residual,
                r.root_deviation, r.eigen_index ? std::to_string(*r.eigen_index).c_str() : "-", r.sup_error,
                r.pass ? "PASS" : "FAIL");
    json row = {{"row", r.row},
                {"state", state_to_json(r.refined)},
                {"printed_energy", r.printed.energy},
                {"exact_energy", r.energy_exact},
                {"bethe_energy", r.energy_bethe},
                {"residual", r.residual},
                {"root_deviation", r.root_deviation},
                {"matched_eigenvalue_index", r.eigen_index ? json(*r.eigen_index) : json(nullptr)},
                {"sup_error", r.sup_error},
                {"pass", r.pass}};
    rows.push_back(row);
  }
  std::printf("coverage %d/%zu, %s\n", rep.coverage, rep.rows.size(), rep.pass ? "all rows pass" : "FAILURES");
  if (!a.json_out.empty()) {
    json exact = json::array();
    for (double e : rep.exact_energies) exact.push_back(e);
    json j = {{"schema", kSchema}, {"command", "table1"}, {"config", config_to_json(reference_config())},
              {"exact_energies", exact}, {"rows", rows}, {"coverage", rep.coverage}, {"pass", rep.pass}};
    write_file(a.json_out, dump(j));
  }
  return rep.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open SU_q(3) chain with off-diagonal boundaries: checks, spectra and Bethe roots"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run algebraic property suites");
  verify->add_option("--config", va.config, "Run configuration (JSON); default is the benchmark configuration");
  verify->add_option("--suite", va.suite, "Suite to run")
      ->check(CLI::IsMember({"bulk", "boundary", "fusion", "identities", "asymptotics", "all"}));
  verify->add_option("--tol", va.tol, "Override every check tolerance");
  verify->add_option("--seed", va.seed, "Random seed for sample points");
  verify->add_option("--json", va.json_out, "Write the JSON report to a file, or - for stdout only");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Exact eigenvalues of t(u) or of H");
  spectrum->add_option("--config", sa.config, "Run configuration (JSON)");
  spectrum->add_option("--at", sa.at, "Spectral point: re or re,im");
  spectrum->add_flag("--hamiltonian", sa.hamiltonian, "Diagonalize H (theta forced to zero)");
  spectrum->add_option("--out", sa.out, "Output file (default stdout)");

  SolveArgs ba;
  auto* solve = app.add_subcommand("solve-bae", "Solve the Bethe ansatz equations");
  solve->add_option("--config", ba.config, "Run configuration (JSON)");
  solve->add_option("--sector", ba.sector, "Sector M for random starts");
  solve->add_option("--seeds", ba.seeds, "Seed file");
  solve->add_option("--starts", ba.starts, "Number of random starts");
  solve->add_flag("--table-aware", ba.table_aware, "Bias random roots toward the benchmark patterns");
  solve->add_option("--mode", ba.mode, "Start mode")->check(CLI::IsMember({"uniform", "table-aware", "coefficient"}));
  solve->add_option("--threads", ba.threads, "Worker threads (default ODBA_THREADS or all cores)");
  solve->add_option("--out", ba.out, "Output file (default stdout)");

  ScanArgs ca;
  auto* scan = app.add_subcommand("lambda-scan", "Lambda(u) of a root set against the exact curve (CSV)");
  scan->add_option("--config", ca.config, "Run configuration (JSON)");
  scan->add_option("--roots", ca.roots, "Root file (seed-file format)")->required();
  scan->add_option("--index", ca.index, "State within the root file");
  scan->add_option("--from", ca.from, "Grid start");
  scan->add_option("--to", ca.to, "Grid end");
  scan->add_option("--points", ca.points, "Grid points");
  scan->add_option("--offset", ca.offset, "Shift applied to grid points within 1e-6 of a pole");
  scan->add_option("--out", ca.out, "Output file (default stdout)");
  scan->add_option("--plot", ca.plot, "Also write a gnuplot script for the CSV");

  TableArgs ta;
  auto* table = app.add_subcommand("table1", "Reproduce the N = 2 benchmark table");
  table->add_option("--json", ta.json_out, "Also write a JSON report");
  table->add_option("--write-seeds", ta.write_seeds, "Write the embedded benchmark roots as a seed file");
  table->add_option("--write-roots", ta.write_roots, "Write the refined roots as a seed file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    if (*verify) return cmd_verify(va);
    if (*spectrum) return cmd_spectrum(sa);
    if (*solve) return cmd_solve(ba);
    if (*scan) return cmd_scan(ca);
    if (*table) return cmd_table1(ta);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kUsage;
}
