#include "odba/boundary.hpp"

#include <cmath>

#include "odba/vertex.hpp"

namespace odba {

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::I: return "I";
    case BoundaryKind::II: return "II";
    case BoundaryKind::III: return "III";
  }
  return "?";
}

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "I" || s == "1") return BoundaryKind::I;
  if (s == "II" || s == "2") return BoundaryKind::II;
  if (s == "III" || s == "3") return BoundaryKind::III;
  throw std::invalid_argument("unknown boundary kind '" + s + "' (expected I, II or III)");
}

cplx resolve_constraint(BoundaryKind kind, cplx zeta, cplx c, cplx c1) {
  if (std::abs(c1) == 0.0) throw std::invalid_argument("c1 must be nonzero to resolve c2");
  switch (kind) {
    case BoundaryKind::I: return (c * c - c * std::exp(zeta)) / c1;
    case BoundaryKind::II: return (c * c - c * std::exp(-zeta)) / c1;
    case BoundaryKind::III: return (c * c + c * std::exp(zeta)) / c1;
  }
  throw std::invalid_argument("bad boundary kind");
}

double constraint_residual(const BoundaryParams& bp) {
  const cplx c = bp.c;
  cplx lhs = c * c, rhs;
  switch (bp.kind) {
    case BoundaryKind::I: rhs = bp.c1 * bp.c2 + c * std::exp(bp.zeta); break;
    case BoundaryKind::II: rhs = bp.c1 * bp.c2 + c * std::exp(-bp.zeta); break;
    case BoundaryKind::III: rhs = bp.c1 * bp.c2 - c * std::exp(bp.zeta); break;
  }
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

BoundaryParams make_boundary(BoundaryKind kind, cplx zeta, cplx c, cplx c1) {
  return BoundaryParams{kind, zeta, c, c1, resolve_constraint(kind, zeta, c, c1)};
}

BoundaryParams make_diagonal_boundary(cplx zeta) { return BoundaryParams{BoundaryKind::I, zeta, 0.0, 0.0, 0.0}; }

BoundaryPair make_pair(const BoundaryParams& minus, const BoundaryParams& plus) {
  if (minus.kind != plus.kind) throw std::invalid_argument("K- and K+ must be the same kind");
  return BoundaryPair{minus, plus};
}

bool is_diagonal(const BoundaryParams& bp) { return bp.c == 0.0 && bp.c1 == 0.0 && bp.c2 == 0.0; }
bool is_diagonal(const BoundaryPair& pair) { return is_diagonal(pair.minus) && is_diagonal(pair.plus); }

Operator k_minus(cplx u, const BoundaryParams& bp) {
  const cplx s = std::sinh(2.0 * u);
  const cplx em = std::exp(u) * std::sinh(bp.zeta - u);
  const cplx ep = std::exp(-u) * std::sinh(bp.zeta + u);
  Matrix k = Matrix::Zero(3, 3);
  switch (bp.kind) {
    case BoundaryKind::I:
      k << em + bp.c * std::exp(2.0 * u) * s, 0, 0,
           0, em, bp.c1 * s,
           0, bp.c2 * s, ep;
      break;
    case BoundaryKind::II:
      k << em, 0, bp.c1 * s,
           0, em + bp.c * s, 0,
           bp.c2 * s, 0, ep;
      break;
    case BoundaryKind::III:
      k << em, bp.c1 * s, 0,
           bp.c2 * s, ep, 0,
           0, 0, ep + bp.c * std::exp(-2.0 * u) * s;
      break;
  }
  return Operator(std::move(k), {3});
}

Operator k_plus(cplx u, const BoundaryParams& plus, cplx eta) {
  return crossing_matrix(eta) * k_minus(-u - 1.5 * eta, plus);
}

namespace {

cplx dq_head(cplx u, const BoundaryParams& bp, cplx eta) {
  const cplx z = bp.zeta, c = bp.c;
  switch (bp.kind) {
    case BoundaryKind::I:
      return std::exp(u - eta) * std::sinh(z - u + eta) + c * std::exp(2.0 * u - 2.0 * eta) * std::sinh(2.0 * u - 2.0 * eta);
    case BoundaryKind::II:
      return std::exp(u - eta) * std::sinh(z - u + eta) + c * std::sinh(2.0 * u - 2.0 * eta);
    case BoundaryKind::III:
      return std::exp(-u + eta) * std::sinh(z + u - eta) + c * std::exp(-2.0 * u + 2.0 * eta) * std::sinh(2.0 * u - 2.0 * eta);
  }
  return 0.0;
}

cplx dq_tail(cplx u, cplx eta) {
  return std::sinh(2.0 * u - 2.0 * eta) * std::sinh(2.0 * u - 3.0 * eta) * std::sinh(2.0 * u - 4.0 * eta);
}

}  // namespace

cplx delta_q_k_minus(cplx u, const BoundaryParams& bp, cplx eta) {
  const cplx z = bp.zeta, c = bp.c, s = std::sinh(2.0 * u);
  cplx f1, f2;
  switch (bp.kind) {
    case BoundaryKind::I:
      f1 = std::exp(u) * std::sinh(z - u) + c * std::exp(2.0 * u) * s;
      f2 = std::exp(-u) * std::sinh(z + u) - c * std::exp(-2.0 * u) * s;
      break;
    case BoundaryKind::II:
      f1 = std::exp(u) * std::sinh(z - u) + c * s;
      f2 = std::exp(-u) * std::sinh(z + u) - c * s;
      break;
    case BoundaryKind::III:
      f1 = std::exp(u) * std::sinh(z - u) - c * std::exp(2.0 * u) * s;
      f2 = std::exp(-u) * std::sinh(z + u) + c * std::exp(-2.0 * u) * s;
      break;
  }
  return -dq_head(u, bp, eta) * f1 * f2 * dq_tail(u, eta);
}

cplx delta_q_k_minus_first_form(cplx u, const BoundaryParams& bp, cplx eta) {
  const cplx s = std::sinh(2.0 * u);
  const cplx mid = std::sinh(bp.zeta - u) * std::sinh(bp.zeta + u) - bp.c1 * bp.c2 * s * s;
  return -dq_head(u, bp, eta) * mid * dq_tail(u, eta);
}

cplx delta_q_k_plus(cplx u, const BoundaryParams& plus, cplx eta) {
  return std::exp(6.0 * eta) * delta_q_k_minus(-u + 0.5 * eta, plus, eta);
}

cplx rho_k_scalar(cplx u, const BoundaryParams& bp) {
  const Matrix p = (k_minus(u, bp) * k_minus(-u, bp)).data();
  const cplx rho = p(0, 0);
  const double r = (p - rho * Matrix::Identity(3, 3)).norm() / std::max(1.0, p.norm());
  if (!(r <= 1e-10)) throw std::runtime_error("K(u)K(-u) is not proportional to the identity");
  return rho;
}

double check_reflection_equation(cplx u1, cplx u2, const BoundaryParams& bp, cplx eta) {
  const auto k1 = embed(k_minus(u1, bp), {0}, 2);
  const auto k2 = embed(k_minus(u2, bp), {1}, 2);
  const auto r12 = [&](cplx u) { return r_matrix(u, eta); };
  const auto r21 = [&](cplx u) { return embed(r_matrix(u, eta), {1, 0}, 2); };
  return relative_residual(r12(u1 - u2) * k1 * r21(u1 + u2) * k2, k2 * r12(u1 + u2) * k1 * r21(u1 - u2));
}

double check_dual_reflection_equation(cplx u1, cplx u2, const BoundaryParams& plus, cplx eta) {
  const auto k1 = embed(k_plus(u1, plus, eta), {0}, 2);
  const auto k2 = embed(k_plus(u2, plus, eta), {1}, 2);
  const Operator minv(crossing_matrix(eta).data().inverse(), {3});
  const auto m1 = embed(crossing_matrix(eta), {0}, 2), m1i = embed(minv, {0}, 2);
  const auto m2 = embed(crossing_matrix(eta), {1}, 2), m2i = embed(minv, {1}, 2);
  const auto r12 = [&](cplx u) { return r_matrix(u, eta); };
  const auto r21 = [&](cplx u) { return embed(r_matrix(u, eta), {1, 0}, 2); };
  const auto lhs = r12(u2 - u1) * k1 * m1i * r21(-u1 - u2 - 3.0 * eta) * m1 * k2;
  const auto rhs = k2 * m2i * r12(-u1 - u2 - 3.0 * eta) * m2 * k1 * r21(u2 - u1);
  return relative_residual(lhs, rhs);
}

}  // namespace odba
