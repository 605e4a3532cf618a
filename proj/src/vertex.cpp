#include "odba/vertex.hpp"

#include <cmath>

namespace odba {

void validate_generic(const BulkParams& p) {
  if (std::abs(p.eta) < 1e-12) throw std::invalid_argument("eta must be nonzero");
  // eta = i*pi/2 mod i*pi makes sinh(2 eta) vanish
  if (std::abs(std::sinh(2.0 * p.eta)) < 1e-12 && std::abs(std::sinh(p.eta)) > 1e-12)
    throw std::invalid_argument("eta = i*pi/2 (mod i*pi) is degenerate");
  if (std::abs(std::sinh(p.eta)) < 1e-12) throw std::invalid_argument("eta = 0 (mod i*pi) is degenerate");
}

Operator r_matrix(cplx u, cplx eta) {
  const cplx a = std::sinh(u + eta), b = std::sinh(u);
  const cplx c = std::exp(u) * std::sinh(eta), d = std::exp(-u) * std::sinh(eta);
  Matrix r = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(3 * i + j, 3 * i + j) = (i == j) ? a : b;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      r(3 * i + j, 3 * j + i) = c;
      r(3 * j + i, 3 * i + j) = d;
    }
  return Operator(std::move(r), {3, 3});
}

Operator crossing_matrix(cplx eta) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = std::exp(4.0 * eta);
  m(1, 1) = std::exp(2.0 * eta);
  m(2, 2) = 1.0;
  return Operator(std::move(m), {3});
}

Operator permutation_matrix() {
  Matrix p = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(3 * i + j, 3 * j + i) = 1.0;
  return Operator(std::move(p), {3, 3});
}

cplx rho1(cplx u, cplx eta) { return -std::sinh(u - eta) * std::sinh(u + eta); }
cplx rho2(cplx u, cplx eta) { return -std::sinh(u) * std::sinh(u + 3.0 * eta); }

namespace {

Operator r21(cplx u, cplx eta) { return embed(r_matrix(u, eta), {1, 0}, 2); }

}  // namespace

double check_qybe(cplx u1, cplx u2, cplx u3, cplx eta) {
  const auto r12 = embed(r_matrix(u1 - u2, eta), {0, 1}, 3);
  const auto r13 = embed(r_matrix(u1 - u3, eta), {0, 2}, 3);
  const auto r23 = embed(r_matrix(u2 - u3, eta), {1, 2}, 3);
  return relative_residual(r12 * r13 * r23, r23 * r13 * r12);
}

double check_unitarity(cplx u, cplx eta) {
  const auto lhs = r_matrix(u, eta) * r21(-u, eta);
  return relative_residual(lhs, Operator::identity({3, 3}) * rho1(u, eta));
}

double check_crossing_unitarity(cplx u, cplx eta) {
  const auto m1 = embed(crossing_matrix(eta), {0}, 2);
  const auto m1inv = embed(Operator(crossing_matrix(eta).data().inverse(), {3}), {0}, 2);
  const auto lhs = partial_transpose(r_matrix(u, eta), {0}) * m1 *
                   partial_transpose(r21(-u - 3.0 * eta, eta), {0}) * m1inv;
  return relative_residual(lhs, Operator::identity({3, 3}) * rho2(u, eta));
}

double check_pt_symmetry(cplx u, cplx eta) {
  return relative_residual(r21(u, eta), partial_transpose(r_matrix(u, eta), {0, 1}));
}

double check_periodicity(cplx u, cplx eta) {
  return relative_residual(r_matrix(u + cplx(0, M_PI), eta), r_matrix(u, eta) * cplx(-1.0));
}

double check_m_invariance(cplx u, cplx eta) {
  const auto m = crossing_matrix(eta);
  const auto mm = kron(m, m);
  const Operator mminv(mm.data().inverse(), {3, 3});
  return relative_residual(mm * r_matrix(u, eta) * mminv, r_matrix(u, eta));
}

}  // namespace odba
