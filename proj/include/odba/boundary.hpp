#pragma once

#include <string>

#include "odba/tensor.hpp"

namespace odba {

enum class BoundaryKind { I = 1, II = 2, III = 3 };

std::string to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(const std::string& s);

struct BoundaryParams {
  BoundaryKind kind = BoundaryKind::I;
  cplx zeta, c, c1, c2;
};

// Primed parameters live in `plus`.
struct BoundaryPair {
  BoundaryParams minus, plus;
  BoundaryKind kind() const { return minus.kind; }
};

// c2 from the kind's constraint; throws if c1 == 0.
cplx resolve_constraint(BoundaryKind kind, cplx zeta, cplx c, cplx c1);
double constraint_residual(const BoundaryParams& bp);

BoundaryParams make_boundary(BoundaryKind kind, cplx zeta, cplx c, cplx c1);
BoundaryParams make_diagonal_boundary(cplx zeta);
BoundaryPair make_pair(const BoundaryParams& minus, const BoundaryParams& plus);
bool is_diagonal(const BoundaryParams& bp);
bool is_diagonal(const BoundaryPair& pair);

Operator k_minus(cplx u, const BoundaryParams& bp);
// M K^-(-u - 3 eta/2) with the primed parameters.
Operator k_plus(cplx u, const BoundaryParams& plus, cplx eta);
inline Operator k_plus(cplx u, const BoundaryPair& pair, cplx eta) { return k_plus(u, pair.plus, eta); }

// Factored quantum determinant of K^-.
cplx delta_q_k_minus(cplx u, const BoundaryParams& bp, cplx eta);
// Kind I only: the first (unfactored-middle) printed form.
cplx delta_q_k_minus_first_form(cplx u, const BoundaryParams& bp, cplx eta);
// e^{6 eta} Delta_q{K^-}(-u + eta/2) with the primed parameters.
cplx delta_q_k_plus(cplx u, const BoundaryParams& plus, cplx eta);

// K^-(u) K^-(-u) = rho id; throws std::runtime_error if not proportional to id.
cplx rho_k_scalar(cplx u, const BoundaryParams& bp);

double check_reflection_equation(cplx u1, cplx u2, const BoundaryParams& bp, cplx eta);
double check_dual_reflection_equation(cplx u1, cplx u2, const BoundaryParams& plus, cplx eta);

}  // namespace odba
