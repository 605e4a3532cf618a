#include <doctest.h>

#include "odba/boundary.hpp"
#include "odba/identities.hpp"
#include "odba/reference_states.hpp"

using namespace odba;

TEST_CASE("boundary kinds parse and print") {
  for (auto k : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) CHECK(parse_boundary_kind(to_string(k)) == k);
  CHECK(parse_boundary_kind("2") == BoundaryKind::II);
  CHECK_THROWS(parse_boundary_kind("IV"));
}

TEST_CASE("constraint is resolved for every kind") {
  Rng rng(5);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto bp = make_boundary(kind, random_point(rng, 0.5, 0.3), cplx(0.8, 0.1), cplx(-0.6, 0.2));
    CHECK(constraint_residual(bp) < 1e-14);
  }
  CHECK_THROWS(make_boundary(BoundaryKind::I, 0.1, 1.0, 0.0));
}

TEST_CASE("reflection equations for the benchmark boundaries") {
  const auto pair = reference_pair();
  const cplx eta = reference_chain().eta;
  CHECK(check_reflection_equation(cplx(0.3, 0.2), cplx(-0.5, 0.4), pair.minus, eta) < 1e-12);
  CHECK(check_dual_reflection_equation(cplx(0.3, 0.2), cplx(-0.5, 0.4), pair.plus, eta) < 1e-12);
}

TEST_CASE("K(u) K(-u) is proportional to the identity") {
  Rng rng(6);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto pair = random_boundary_pair(kind, rng);
    const cplx u(0.41, -0.23);
    const cplx rho = rho_k_scalar(u, pair.minus);
    CHECK(relative_residual((k_minus(u, pair.minus) * k_minus(-u, pair.minus)).data(),
                            (rho * Operator::identity({3})).data()) < 1e-12);
  }
}

TEST_CASE("diagonal boundary") {
  const auto bp = make_diagonal_boundary(0.2);
  CHECK(is_diagonal(bp));
  const Operator k = k_minus(cplx(0.3, 0.1), bp);
  CHECK((k.data() - Matrix(k.data().diagonal().asDiagonal())).norm() == 0.0);
  CHECK_FALSE(is_diagonal(reference_pair()));
}

TEST_CASE("kinds must agree on both ends") {
  const auto a = make_boundary(BoundaryKind::I, 0.1, 1.0, -0.5);
  const auto b = make_boundary(BoundaryKind::II, 0.1, 1.0, -0.5);
  CHECK_THROWS_AS(make_pair(a, b), std::invalid_argument);
}

TEST_CASE("quantum determinant forms agree for kind I") {
  const auto pair = reference_pair();
  const cplx eta = 0.3;
  for (cplx u : {cplx(0.2, 0.1), cplx(-0.7, 0.4)}) {
    const cplx a = delta_q_k_minus(u, pair.minus, eta), b = delta_q_k_minus_first_form(u, pair.minus, eta);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("boundary suite for all kinds") {
  Rng rng(12);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const cplx eta = random_eta(rng);
    const Report r = boundary_suite(random_boundary_pair(kind, rng), eta, rng, 50, 1e-12);
    CHECK(all_pass(r));
  }
}
