#pragma once

#include "odba/tensor.hpp"

namespace odba {

struct BulkParams {
  cplx eta;
};

// Throws std::invalid_argument for eta = 0 or eta = i*pi/2 (mod i*pi).
void validate_generic(const BulkParams& p);

// 9x9 R-matrix, basis |ij> -> 3i+j.
Operator r_matrix(cplx u, cplx eta);
// diag(e^{4 eta}, e^{2 eta}, 1)
Operator crossing_matrix(cplx eta);
Operator permutation_matrix();

cplx rho1(cplx u, cplx eta);
cplx rho2(cplx u, cplx eta);

// Relative residuals (Frobenius, scale max(1, |lhs|, |rhs|)).
double check_qybe(cplx u1, cplx u2, cplx u3, cplx eta);
double check_unitarity(cplx u, cplx eta);
double check_crossing_unitarity(cplx u, cplx eta);
double check_pt_symmetry(cplx u, cplx eta);
double check_periodicity(cplx u, cplx eta);
double check_m_invariance(cplx u, cplx eta);

}  // namespace odba
