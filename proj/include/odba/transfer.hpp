#pragma once

#include <vector>

#include "odba/boundary.hpp"
#include "odba/tensor.hpp"

namespace odba {

struct ChainSpec {
  int n_sites = 0;
  cplx eta;
  std::vector<cplx> theta;

  static ChainSpec homogeneous(int n, cplx eta) { return ChainSpec{n, eta, std::vector<cplx>(n, 0.0)}; }
  bool is_homogeneous() const;
};

void validate(const ChainSpec& spec);

// Legs [aux, q_1..q_N]. T_0 = R_0N(u-th_N)...R_01(u-th_1); That_0 = R_10(u+th_1)...R_N0(u+th_N).
Operator monodromy(cplx u, const ChainSpec& spec);
Operator hat_monodromy(cplx u, const ChainSpec& spec);

// tr_0{K+_0 T_0 K-_0 That_0}, legs [q_1..q_N].
Operator transfer_matrix(cplx u, const ChainSpec& spec, const BoundaryPair& pair);

struct FusionProjectors {
  Operator p12, p123, s12, s123;
  Vector phi123;
};
FusionProjectors fusion_projectors(cplx eta);

// m = 1, 2, 3; m = 1 is transfer_matrix. Fused objects live in the full
// (3^m)-dimensional auxiliary space.
Operator fused_transfer(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair);
inline Operator fused_transfer_2(cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  return fused_transfer(2, u, spec, pair);
}
inline Operator fused_transfer_3(cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  return fused_transfer(3, u, spec, pair);
}

// Fused boundary matrices on m auxiliary legs (projected).
Operator fused_k_plus(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair);
Operator fused_k_minus(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair);

cplx delta_q_t(cplx u, const ChainSpec& spec);
cplx delta_q_t_hat(cplx u, const ChainSpec& spec);
cplx quantum_determinant(cplx u, const ChainSpec& spec, const BoundaryPair& pair);

// Sum_l E^{kk}_l with k the boundary kind (diagonal in the product basis).
Operator conserved_charge(BoundaryKind kind, int n_sites);

// sinh(eta) t'(0)/t(0); requires theta = 0.
Operator hamiltonian(const ChainSpec& spec, const BoundaryPair& pair);

// Eigenvectors of t(u0) shared by the whole commuting family.
struct CommonEigenbasis {
  cplx probe;
  Matrix vectors;
  Matrix inverse;
  Vector eigenvalues(const Matrix& op) const { return (inverse * op * vectors).diagonal(); }
  // <v|Q|v>/<v|v> per eigenvector
  Eigen::VectorXd charges(BoundaryKind kind) const;
};

inline constexpr cplx kDefaultProbe{0.31, 0.17};
CommonEigenbasis common_eigenbasis(const ChainSpec& spec, const BoundaryPair& pair, cplx probe = kDefaultProbe);

}  // namespace odba
