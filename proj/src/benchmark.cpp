#include "odba/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace odba {

std::vector<double> hamiltonian_energies(const ChainSpec& spec, const BoundaryPair& pair) {
  const auto eig = eig_general(hamiltonian(spec, pair).data());
  std::vector<double> e;
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i).imag()) > 1e-8) throw std::runtime_error("complex Hamiltonian eigenvalue");
    e.push_back(eig.values(i).real());
  }
  std::sort(e.begin(), e.end());
  return e;
}

BenchmarkReport run_benchmark(const BenchmarkTolerances& tol, int grid_points) {
  const ChainSpec spec = reference_chain();
  const BoundaryPair pair = reference_pair();
  BenchmarkReport rep;
  rep.exact_energies = hamiltonian_energies(spec, pair);
  const SpectrumReference ref(spec, pair);
  const auto grid = linear_grid(-1.0, 1.0, grid_points);
  SolveOptions opt;
  opt.tol = tol.residual;

  std::vector<BetheState> refined;
  int row = 0;
  for (const auto& printed : reference_states()) {
    BenchmarkRow r;
    r.row = ++row;
    r.printed = printed;
    const SpectralContext ctx(spec, pair, printed.state.sector);
    const RefineResult rr = refine(printed.state, ctx, opt);
    r.refined = canonicalize(rr.state);
    r.converged = rr.converged;
    r.residual = rr.residual_norm;
    r.root_deviation = state_distance(r.refined, canonicalize(printed.state), spec.eta);
    r.energy_bethe = energy(r.refined, ctx).real();
    auto nearest = [&](double x) {
      return *std::min_element(rep.exact_energies.begin(), rep.exact_energies.end(),
                               [&](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
    };
    r.energy_exact = nearest(printed.energy);
    r.printed_deviation = std::abs(printed.energy - r.energy_exact);
    r.bethe_deviation = std::abs(r.energy_bethe - nearest(r.energy_bethe));
    refined.push_back(r.refined);
    rep.rows.push_back(r);
  }
  const auto ver = verify_against_spectrum(refined, ref, grid, tol.curve);
  rep.coverage = ver.coverage;
  rep.pass = ver.coverage == static_cast<int>(rep.rows.size());
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    auto& r = rep.rows[i];
    r.eigen_index = ver.matches[i].index;
    r.sup_error = ver.matches[i].sup_error;
    r.charge = ver.matches[i].charge;
    r.pass = r.converged && r.printed_deviation <= tol.printed_energy && r.bethe_deviation <= tol.bethe_energy &&
             r.root_deviation <= tol.roots && r.eigen_index && !ver.matches[i].ambiguous &&
             std::abs(r.charge - r.refined.sector) <= 1e-8;
    rep.pass = rep.pass && r.pass;
  }
  return rep;
}

}  // namespace odba
