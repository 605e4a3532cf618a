#include <doctest.h>

#include "odba/identities.hpp"
#include "odba/vertex.hpp"

using namespace odba;

TEST_CASE("R-matrix sparsity pattern") {
  const Operator r = r_matrix(cplx(0.37, 0.21), cplx(0.3, 0.1));
  int zeros = 0;
  for (Index i = 0; i < 9; ++i)
    for (Index j = 0; j < 9; ++j) zeros += r(i, j) == 0.0;
  CHECK(zeros == 66);
  // weight-conserving: |ij> -> |kl> only when {i,j} = {k,l} as multisets
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (r(3 * i + j, 3 * k + l) != 0.0) CHECK(((i == k && j == l) || (i == l && j == k)));
}

TEST_CASE("R(0) is proportional to the permutation") {
  const cplx eta(0.3, 0.1);
  const Operator r = r_matrix(0.0, eta);
  const Operator p = permutation_matrix();
  const cplx s = r(0, 0) / p(0, 0);
  CHECK(std::abs(s) > 1e-3);
  CHECK(relative_residual(r.data(), (s * p).data()) < 1e-14);
}

TEST_CASE("bulk identities at fixed points") {
  const cplx eta(0.3, 0.1);
  CHECK(check_qybe(0.2, cplx(-0.4, 0.3), cplx(0.7, -0.2), eta) < 1e-12);
  CHECK(check_unitarity(cplx(0.13, 0.5), eta) < 1e-12);
  CHECK(check_crossing_unitarity(cplx(0.13, 0.5), eta) < 1e-12);
  CHECK(check_crossing_unitarity(0.0, eta) < 1e-12);
  CHECK(check_pt_symmetry(cplx(-0.6, 0.2), eta) < 1e-12);
  CHECK(check_periodicity(cplx(0.4, 0.9), eta) < 1e-12);
  CHECK(check_m_invariance(cplx(0.4, 0.9), eta) < 1e-12);
}

TEST_CASE("unitarity scalar vanishes at u = +-eta") {
  const cplx eta(0.3, 0.1);
  CHECK(std::abs(rho1(eta, eta)) < 1e-14);
  CHECK(std::abs(rho1(-eta, eta)) < 1e-14);
  CHECK(std::abs(rho1(cplx(0.5, 0.2), eta)) > 1e-3);
}

TEST_CASE("crossing matrix") {
  const cplx eta(0.3, 0.1);
  const Operator m = crossing_matrix(eta);
  CHECK(std::abs(m(0, 0) - std::exp(4.0 * eta)) < 1e-14);
  CHECK(std::abs(m(1, 1) - std::exp(2.0 * eta)) < 1e-14);
  CHECK(std::abs(m(2, 2) - 1.0) < 1e-14);
  CHECK((m.data() - Matrix(m.data().diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("degenerate eta is rejected") {
  CHECK_THROWS_AS(validate_generic(BulkParams{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_generic(BulkParams{cplx(0.0, M_PI / 2)}), std::invalid_argument);
  CHECK_THROWS_AS(validate_generic(BulkParams{cplx(0.0, 3 * M_PI / 2)}), std::invalid_argument);
  CHECK_NOTHROW(validate_generic(BulkParams{0.3}));
}

TEST_CASE("bulk suite on random samples") {
  Rng rng(11);
  const Report r = bulk_suite(rng, 100, 1e-12);
  CHECK(r.size() == 7);
  CHECK(all_pass(r));
}
