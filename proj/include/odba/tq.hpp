#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "odba/boundary.hpp"
#include "odba/transfer.hpp"

namespace odba {

struct BetheState {
  int sector = 0;
  std::vector<cplx> lambda1;  // N + M + 6 roots
  std::vector<cplx> lambda2;  // M roots
};

// Throws std::invalid_argument on wrong cardinalities.
void validate(const BetheState& state, int n_sites);

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binds the sector M and the constant h for one (spec, pair).
class SpectralContext {
 public:
  SpectralContext(ChainSpec spec, BoundaryPair pair, int sector);
  const ChainSpec& spec() const { return spec_; }
  const BoundaryPair& pair() const { return pair_; }
  int sector() const { return sector_; }
  int l1() const { return spec_.n_sites + sector_ + 6; }
  cplx h() const { return h_; }
  cplx eta() const { return spec_.eta; }

 private:
  ChainSpec spec_;
  BoundaryPair pair_;
  int sector_;
  cplx h_;
};

cplx b0(cplx u, const ChainSpec& spec);
cplx a0(cplx u, const ChainSpec& spec);

// Q^(k) for k = 1, 2 from the state's roots; k = 0 is b0 and k = 3 is 1.
cplx q_function(int k, cplx u, const BetheState& state, const ChainSpec& spec);
cplx q_product(const std::vector<cplx>& roots, int k, cplx u, cplx eta);

// K^(m)(u), m = 1, 2, 3 (K^(3) = K^(2)).
cplx k_decomposition(int m, cplx u, const BoundaryPair& pair, cplx eta);
// Diagonal-boundary decomposition.
cplx k_decomposition_diagonal(int m, cplx u, const BoundaryPair& pair, cplx eta);

// Requires c != 0 and c' != 0.
cplx h_constant(BoundaryKind kind, int sector, const ChainSpec& spec, const BoundaryPair& pair);
cplx f1(cplx u, const SpectralContext& ctx);

// Terms of the inhomogeneous T-Q relation for Lambda(u).
struct TqTerms {
  cplx z1, z2, z3, x;
  cplx sum() const { return z1 + z2 + z3 + x; }
};
TqTerms lambda_terms(cplx u, const BetheState& state, const SpectralContext& ctx);

// Throw PoleError within 1e-6 of a pole.
cplx lambda1(cplx u, const BetheState& state, const SpectralContext& ctx);
cplx lambda2(cplx u, const BetheState& state, const SpectralContext& ctx);
// prod_k rho2(2u - k eta) z1(u) z2(u-eta) z3(u-2eta); independent of the roots.
cplx lambda3(cplx u, const SpectralContext& ctx);

// Distance from u to the nearest pole of Lambda (level 1) or Lambda_2 (level 2), modulo i*pi.
double pole_distance(cplx u, const BetheState& state, const SpectralContext& ctx, int level = 1);

// Homogeneous T-Q with diagonal boundaries; Qbar^(k) from the state's roots.
cplx diagonal_lambda(cplx u, const BetheState& state, const ChainSpec& spec, const BoundaryPair& pair);
cplx diagonal_lambda2(cplx u, const BetheState& state, const ChainSpec& spec, const BoundaryPair& pair);

struct RelationResidual {
  std::string name;
  double residual;
};
// Lambda(x)Lambda_m(x - eta) = Lambda_{m+1}(x)/prod rho2(2x - k eta) and Lambda_2(x + eta) = 0
// at x = +-theta_j. Needs distinct nonzero theta.
std::vector<RelationResidual> check_functional_relations(const BetheState& state, const SpectralContext& ctx);

// Normalized residues of Lambda at each lambda1 root, then of Lambda at each lambda2 root.
struct ResidueReport {
  Vector residues;  // residue / scale
  bool degenerate = false;
};
ResidueReport polynomiality_residues(const BetheState& state, const SpectralContext& ctx);

// sinh(eta) Lambda'(0)/Lambda(0) by Richardson-extrapolated 6th order central differences.
cplx energy(const BetheState& state, const SpectralContext& ctx);
// Same quantity from the exact trig-polynomial reconstruction of Lambda.
cplx energy_polynomial(const BetheState& state, const SpectralContext& ctx);

// Im reduced to (-pi/2, pi/2]; each multiset sorted by (Re, Im).
BetheState canonicalize(const BetheState& state);
// Equal up to i*pi shifts, lambda -> -lambda - k eta per root, and ordering.
bool states_equivalent(const BetheState& a, const BetheState& b, cplx eta, double tol = 1e-8);
// Distance between two roots under the symmetries of Q^(k).
double root_distance(cplx a, cplx b, int k, cplx eta);
// Max over matched roots of the componentwise (max of |dRe|, |dIm|) distance; optimal assignment.
double state_distance(const BetheState& a, const BetheState& b, cplx eta);

}  // namespace odba
