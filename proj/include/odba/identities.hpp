#pragma once

#include <random>
#include <string>
#include <vector>

#include "odba/boundary.hpp"
#include "odba/transfer.hpp"

namespace odba {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};
using Report = std::vector<CheckResult>;

bool all_pass(const Report& r);
void append(Report& dst, const Report& src);
CheckResult make_check(std::string suite, std::string name, double residual, double tol, std::string note = {});

using Rng = std::mt19937_64;

// Random complex with |Re| <= re, |Im| <= im.
cplx random_point(Rng& rng, double re = 2.0, double im = 2.0);
cplx random_eta(Rng& rng);
ChainSpec random_chain(int n_sites, Rng& rng);
BoundaryPair random_boundary_pair(BoundaryKind kind, Rng& rng);

// QYBE, unitarity, crossing unitarity, PT symmetry, periodicity and M-invariance;
// `samples` random points spread over 5 random eta.
Report bulk_suite(Rng& rng, int samples = 100, double tol = 1e-12);
// RE and dual RE over `samples` random (u1, u2) for one pair, plus K(u)K(-u) ~ id,
// K periodicity, constraint residuals and the two quantum-determinant forms.
Report boundary_suite(const BoundaryPair& pair, cplx eta, Rng& rng, int samples = 50, double tol = 1e-12);

Report check_fusion_projectors(cplx eta, double tol = 1e-12);
Report check_monodromy(const ChainSpec& spec, Rng& rng, int points = 5, double tol = 1e-10);
Report check_commutativity(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, int points = 2,
                           double tol = 1e-10);
Report check_quantum_determinant(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, int points = 3,
                                 double tol = 1e-9);
// t(x)t_m(x - eta) = t_{m+1}(x)/prod_k rho2(2x - k eta) at x = +-theta_j, m = 1, 2,
// and t_2(+-theta_j + eta) = 0.
Report check_production_identities(const ChainSpec& spec, const BoundaryPair& pair, double tol = 1e-9);
// The sixteen special-point relations (t, t_2 values, proportionalities and zeros).
Report check_special_points(const ChainSpec& spec, const BoundaryPair& pair, double tol = 1e-9);
// [t, Q] = [t_2, Q] = 0 and block structure in the charge basis.
Report check_sector_structure(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, double tol = 1e-10);
// Top/bottom coefficients of t and t_2 per charge sector.
Report check_asymptotics(const ChainSpec& spec, const BoundaryPair& pair, double tol = 1e-8);
// Diagonal boundaries: |3...3> is an eigenvector of t(u) with the homogeneous T-Q eigenvalue.
Report vacuum_eigenvalue_check(const ChainSpec& spec, const BoundaryPair& diagonal_pair, Rng& rng, int points = 10,
                               double tol = 1e-9);

// Residual ||t_2(x)|| / max ||t_2(x + r e^{i phi})|| over a small circle, used for the zero checks.
double zero_residual(int m, cplx x, const ChainSpec& spec, const BoundaryPair& pair, double radius = 1e-2);

}  // namespace odba
