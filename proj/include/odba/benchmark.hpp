#pragma once

#include <optional>
#include <vector>

#include "odba/bae.hpp"
#include "odba/reference_states.hpp"

namespace odba {

// Sorted real parts of the Hamiltonian spectrum; throws if an imaginary part exceeds 1e-8.
std::vector<double> hamiltonian_energies(const ChainSpec& spec, const BoundaryPair& pair);

struct BenchmarkRow {
  int row = 0;  // 1-based
  ReferenceState printed;
  BetheState refined;  // canonical
  bool converged = false;
  double residual = 0.0;
  double root_deviation = 0.0;  // componentwise, after canonical matching
  double energy_bethe = 0.0;
  double energy_exact = 0.0;     // nearest Hamiltonian eigenvalue to the printed energy
  double printed_deviation = 0.0;  // |E_printed - E_exact|
  double bethe_deviation = 0.0;    // |E_bethe - E_exact|
  std::optional<int> eigen_index;  // matched curve of t(u)
  double sup_error = 0.0;
  double charge = 0.0;
  bool pass = false;
};

struct BenchmarkTolerances {
  double printed_energy = 1e-5;
  double bethe_energy = 1e-6;
  double roots = 5e-5;
  double residual = 1e-12;
  double curve = 1e-6;
};

struct BenchmarkReport {
  std::vector<double> exact_energies;
  std::vector<BenchmarkRow> rows;
  int coverage = 0;
  bool pass = false;
};

// Refines the nine printed states, compares energies and roots, and matches Lambda(u)
// against the exact curves of t(u) on `grid_points` points of [-1, 1].
BenchmarkReport run_benchmark(const BenchmarkTolerances& tol = {}, int grid_points = 101);

}  // namespace odba
