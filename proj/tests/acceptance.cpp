// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "odba/bae.hpp"
#include "odba/benchmark.hpp"
#include "odba/identities.hpp"
#include "odba/reference_states.hpp"
#include "odba/tq.hpp"

using namespace odba;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double worst(const Report& r) {
  double w = 0.0;
  for (const auto& c : r) w = std::max(w, c.residual / std::max(c.tolerance, 1e-300));
  return w;
}

std::string failures(const Report& r) {
  std::string s;
  for (const auto& c : r)
    if (!c.pass) s += " [" + c.suite + ": " + c.name + " " + std::to_string(c.residual) + "]";
  return s;
}

char buf[512];

Outcome bulk() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  const Report r = bulk_suite(rng, 100, 1e-12);
  const double dt = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "%zu checks, worst residual/tol %.2e, %.2f s", r.size(), worst(r), dt);
  return {all_pass(r) && dt < 5.0, buf + failures(r)};
}

Outcome boundary() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(202);
  Report r;
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const cplx eta = random_eta(rng);
    append(r, boundary_suite(random_boundary_pair(kind, rng), eta, rng, 50, 1e-12));
  }
  const double dt = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "%zu checks, worst residual/tol %.2e, %.2f s", r.size(), worst(r), dt);
  return {all_pass(r) && dt < 10.0, buf + failures(r)};
}

Outcome fusion() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(303);
  Report r;
  int special = 0;
  for (int n : {2, 3})
    for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III})
      for (int draw = 0; draw < 3; ++draw) {
        const ChainSpec spec = random_chain(n, rng);
        const BoundaryPair pair = random_boundary_pair(kind, rng);
        append(r, check_fusion_projectors(spec.eta, 1e-9));
        append(r, check_commutativity(spec, pair, rng, 2, 1e-9));
        append(r, check_production_identities(spec, pair, 1e-9));
        append(r, check_quantum_determinant(spec, pair, rng, 3, 1e-9));
        const Report sp = check_special_points(spec, pair, 1e-9);
        special = static_cast<int>(sp.size());
        append(r, sp);
      }
  const double dt = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "%zu checks (%d special-point relations per draw), worst residual/tol %.2e, %.1f s",
                r.size(), special, worst(r), dt);
  return {all_pass(r) && dt < 180.0 && special >= 16, buf + failures(r)};
}

Outcome asymptotics() {
  Rng rng(404);
  Report r = check_asymptotics(reference_chain(), reference_pair(), 1e-8);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const ChainSpec spec = ChainSpec::homogeneous(2, random_eta(rng));
    append(r, check_asymptotics(spec, random_boundary_pair(kind, rng), 1e-8));
  }
  std::snprintf(buf, sizeof buf, "%zu coefficient checks over kinds I/II/III, worst residual/tol %.2e", r.size(),
                worst(r));
  return {all_pass(r), buf + failures(r)};
}

const BenchmarkReport& benchmark() {
  static const BenchmarkReport rep = run_benchmark();
  return rep;
}

Outcome table() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& rep = benchmark();
  const double dt = seconds_since(t0);
  double printed = 0, bethe = 0, roots = 0, res = 0;
  bool ok = rep.rows.size() == 9 && rep.exact_energies.size() == 9;
  for (const auto& row : rep.rows) {
    printed = std::max(printed, row.printed_deviation);
    bethe = std::max(bethe, row.bethe_deviation);
    roots = std::max(roots, row.root_deviation);
    res = std::max(res, row.residual);
    ok = ok && row.converged;
  }
  ok = ok && printed <= 1e-5 && bethe <= 1e-6 && roots <= 5e-5 && res <= 1e-12 && dt < 60.0;
  std::snprintf(buf, sizeof buf,
                "(a) |E_printed-E_exact| <= %.1e  (b) residual <= %.1e, |E_bethe-E_exact| <= %.1e  (c) roots <= %.2e, "
                "%.1f s",
                printed, res, bethe, roots, dt);
  return {ok, buf};
}

Outcome curves() {
  const auto& rep = benchmark();
  double sup = 0;
  bool matched = true;
  for (const auto& row : rep.rows) {
    sup = std::max(sup, row.sup_error);
    matched = matched && row.eigen_index.has_value();
  }
  std::snprintf(buf, sizeof buf, "max sup |Lambda - lambda_exact| = %.2e on 101 points, coverage %d/9", sup,
                rep.coverage);
  return {matched && sup <= 1e-6 && rep.coverage == 9, buf};
}

Outcome diagonal() {
  Rng rng(707);
  Report r;
  for (int n : {2, 3}) {
    const ChainSpec spec = random_chain(n, rng);
    const BoundaryPair pair =
        make_pair(make_diagonal_boundary(random_point(rng, 0.5, 0.3)), make_diagonal_boundary(random_point(rng, 0.5, 0.3)));
    append(r, vacuum_eigenvalue_check(spec, pair, rng, 10, 1e-9));
    append(r, vacuum_eigenvalue_check(ChainSpec::homogeneous(n, spec.eta), pair, rng, 10, 1e-9));
  }
  std::snprintf(buf, sizeof buf, "%zu checks at N = 2, 3, worst residual/tol %.2e", r.size(), worst(r));
  return {all_pass(r), buf + failures(r)};
}

Outcome kinds() {
  // Starts per sector M = 0, 1, 2; 1800 per kind.
  const int budget[3] = {500, 1000, 300};
  bool ok = true;
  std::string detail;
  for (auto kind : {BoundaryKind::II, BoundaryKind::III}) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1);
    const ChainSpec spec = reference_chain();
    const BoundaryPair pair = random_boundary_pair(kind, rng);
    const SpectrumReference ref(spec, pair);
    std::vector<BetheState> states;
    std::string per_sector;
    int attempts = 0;
    for (int m = 0; m <= 2; ++m) {
      SolveTask task{SpectralContext(spec, pair, m), {}, budget[m], 7, StartMode::coefficient, {}, 0};
      const SolveSummary sum = newton_solve(task);
      attempts += sum.attempts;
      int dim = 0;
      for (Index i = 0; i < ref.charges().size(); ++i) dim += std::lround(ref.charges()(i)) == m;
      std::vector<BetheState> found;
      for (const auto& s : sum.results) found.push_back(s.state);
      const auto v = verify_against_spectrum(found, ref, linear_grid(-1.0, 1.0, 101));
      per_sector += " M=" + std::to_string(m) + ":" + std::to_string(v.coverage) + "/" + std::to_string(dim);
      states.insert(states.end(), found.begin(), found.end());
    }
    const auto v = verify_against_spectrum(states, ref, linear_grid(-1.0, 1.0, 101));
    double residue = 0.0;
    int recovered = 0;
    for (size_t i = 0; i < states.size(); ++i) {
      if (!v.matches[i].index) continue;
      ++recovered;
      const auto rr = polynomiality_residues(states[i], SpectralContext(spec, pair, states[i].sector));
      residue = std::max(residue, rr.degenerate ? 1.0 : rr.residues.cwiseAbs().maxCoeff());
    }
    const bool kind_ok = v.coverage >= 7 && residue <= 1e-8;
    ok = ok && kind_ok;
    std::snprintf(buf, sizeof buf, " kind %s: %d/9 (%s ) with %d starts, %zu distinct solutions, %d matched, max residue %.1e, %.0f s;",
                  to_string(kind).c_str(), v.coverage, per_sector.c_str(), attempts, states.size(), recovered, residue,
                  seconds_since(t0));
    detail += buf;
  }
  return {ok, detail};
}

Outcome consistency() {
  Rng rng(909);
  double det = 0, kdec = 0, cross = 0;
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    ChainSpec spec = random_chain(2, rng);
    const BoundaryPair pair = random_boundary_pair(kind, rng);
    const cplx e = spec.eta;
    const SpectralContext ctx(spec, pair, 1);
    for (int i = 0; i < 10; ++i) {
      const cplx u = random_point(rng, 1.0, 1.0);
      const cplx a = lambda3(u, ctx), b = quantum_determinant(u, spec, pair);
      det = std::max(det, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
      cross = std::max(cross, std::abs(f1(u, ctx) - f1(-u - e, ctx)) / std::max(1e-300, std::abs(f1(u, ctx))));
    }
    for (int i = 0; i < 20; ++i) {
      const cplx u = random_point(rng, 1.0, 1.0);
      auto k = [&](int m, cplx x) { return k_decomposition(m, x, pair, e); };
      auto rel = [](cplx x, cplx y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
      kdec = std::max(kdec, rel(k(1, u) * k(1, -u - e), k(2, u) * k(2, -u - e)));
      kdec = std::max(kdec, rel(k(2, u) * k(2, -u - 2.0 * e), k(3, u) * k(3, -u - 2.0 * e)));
      cplx den = 1.0;
      for (int m = 1; m <= 3; ++m) den *= sinh(2.0 * u + double(m) * e) * sinh(2.0 * u - double(m + 1) * e);
      const cplx rhs = -delta_q_k_minus(u, pair.minus, e) * delta_q_k_plus(u, pair.plus, e) / den;
      kdec = std::max(kdec, rel(k(1, u) * k(2, u - e) * k(3, u - 2.0 * e), rhs));
    }
  }
  // Both BAE formulations on the refined benchmark states, and on perturbed copies.
  const ChainSpec spec = reference_chain();
  const BoundaryPair pair = reference_pair();
  double solved_cleared = 0, solved_residue = 0, off_cleared = 1e300, off_residue = 1e300;
  for (const auto& row : benchmark().rows) {
    const SpectralContext ctx(spec, pair, row.refined.sector);
    solved_cleared = std::max(solved_cleared, bae_residuals(row.refined, ctx).norm());
    solved_residue = std::max(solved_residue, polynomiality_residues(row.refined, ctx).residues.cwiseAbs().maxCoeff());
    BetheState bent = row.refined;
    bent.lambda1[0] += cplx(1e-3, 5e-4);
    off_cleared = std::min(off_cleared, bae_residuals(bent, ctx).norm());
    off_residue = std::min(off_residue, polynomiality_residues(bent, ctx).residues.cwiseAbs().maxCoeff());
  }
  const bool same_set = solved_cleared <= 1e-12 && solved_residue <= 1e-8 && off_cleared > 1e-6 && off_residue > 1e-6;
  std::snprintf(buf, sizeof buf,
                "Lambda3 vs Delta_q %.1e; K decompositions %.1e; f1 crossing %.1e; BAE residuals on solutions "
                "cleared %.1e residue %.1e, on perturbed states >= %.1e / %.1e",
                det, kdec, cross, solved_cleared, solved_residue, off_cleared, off_residue);
  return {det <= 1e-10 && kdec <= 1e-12 && cross <= 1e-14 && same_set, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"bulk algebra suite", bulk},
      {"boundary suite", boundary},
      {"fusion and identity suite", fusion},
      {"sector-resolved asymptotics", asymptotics},
      {"benchmark table reproduction", table},
      {"Lambda(u) curves", curves},
      {"diagonal reduction", diagonal},
      {"kinds II and III end to end", kinds},
      {"consistency cross-checks", consistency},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
