#include <doctest.h>

#include <algorithm>

#include "odba/asymptotics.hpp"
#include "odba/benchmark.hpp"
#include "odba/identities.hpp"
#include "odba/reference_states.hpp"
#include "odba/trig_polynomial.hpp"

using namespace odba;

namespace {

bool is_scalar(const Matrix& m, double tol) {
  const cplx s = m.diagonal().mean();
  return (m - s * Matrix::Identity(m.rows(), m.cols())).norm() <= tol * std::max(1.0, m.norm());
}

}  // namespace

TEST_CASE("transfer matrix dimension is 3^N") {
  const auto pair = reference_pair();
  for (int n : {1, 2, 3}) CHECK(transfer_matrix(0.3, ChainSpec::homogeneous(n, 0.3), pair).dim() == Index(std::pow(3, n)));
}

TEST_CASE("t(u) is scalar at the special points") {
  const auto spec = reference_chain();
  const auto pair = reference_pair();
  const cplx e = spec.eta;
  for (cplx u : {cplx(0.0), -1.5 * e, cplx(0.0, M_PI / 2), -1.5 * e + cplx(0.0, M_PI / 2)})
    CHECK(is_scalar(transfer_matrix(u, spec, pair).data(), 1e-10));
  CHECK_FALSE(is_scalar(transfer_matrix(cplx(0.3, 0.2), spec, pair).data(), 1e-6));
}

TEST_CASE("commuting family and quantum determinant") {
  Rng rng(21);
  const auto spec = random_chain(2, rng);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto pair = random_boundary_pair(kind, rng);
    CHECK(all_pass(check_commutativity(spec, pair, rng, 2, 1e-9)));
    CHECK(all_pass(check_quantum_determinant(spec, pair, rng, 2, 1e-9)));
    CHECK(all_pass(check_sector_structure(spec, pair, rng)));
  }
}

TEST_CASE("fusion projectors") {
  const Report r = check_fusion_projectors(cplx(0.3, 0.1));
  CHECK(all_pass(r));
  const auto fp = fusion_projectors(0.3);
  CHECK(std::abs(fp.p12.data().trace() - 3.0) < 1e-12);
  CHECK(std::abs(fp.p123.data().trace() - 1.0) < 1e-12);
}

TEST_CASE("production identities and special points with inhomogeneities") {
  Rng rng(22);
  const auto spec = random_chain(2, rng);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto pair = random_boundary_pair(kind, rng);
    CHECK(all_pass(check_production_identities(spec, pair)));
    const Report sp = check_special_points(spec, pair);
    CHECK(sp.size() >= 16);
    CHECK(all_pass(sp));
  }
}

TEST_CASE("t(u) is a trig polynomial of degree N + 2") {
  const auto spec = reference_chain();
  const auto pair = reference_pair();
  const int d = spec.n_sites + 2;
  auto f = [&](cplx u) { return Matrix(transfer_matrix(u, spec, pair).data()); };
  const auto poly = reconstruct_trig_polynomial(f, -d, d);
  CHECK((poly(cplx(0.2, 0.7)) - f(cplx(0.2, 0.7))).norm() < 1e-9 * f(cplx(0.2, 0.7)).norm());
  CHECK_THROWS_AS(reconstruct_trig_polynomial(f, -d + 1, d - 1), ReconstructionError);
}

TEST_CASE("sector asymptotics for all kinds") {
  Rng rng(23);
  CHECK(all_pass(check_asymptotics(reference_chain(), reference_pair())));
  for (auto kind : {BoundaryKind::II, BoundaryKind::III})
    CHECK(all_pass(check_asymptotics(ChainSpec::homogeneous(2, random_eta(rng)), random_boundary_pair(kind, rng))));
}

TEST_CASE("charges are integers and sector sizes are binomial") {
  const auto spec = reference_chain();
  const auto pair = reference_pair();
  const auto basis = common_eigenbasis(spec, pair);
  const Eigen::VectorXd q = basis.charges(pair.kind());
  int count[3] = {0, 0, 0};
  for (Index i = 0; i < q.size(); ++i) {
    CHECK(std::abs(q(i) - std::round(q(i))) < 1e-8);
    ++count[std::lround(q(i))];
  }
  // N = 2: sector M has C(2, M) 2^(2-M) states
  CHECK(count[0] == 4);
  CHECK(count[1] == 4);
  CHECK(count[2] == 1);
}

TEST_CASE("Hamiltonian energies of the benchmark chain") {
  const auto e = hamiltonian_energies(reference_chain(), reference_pair());
  REQUIRE(e.size() == 9);
  CHECK(std::is_sorted(e.begin(), e.end()));
  const auto refs = reference_states();
  for (const auto& r : refs) {
    double best = 1e300;
    for (double x : e) best = std::min(best, std::abs(x - r.energy));
    CHECK(best <= 1e-5);
  }
}

TEST_CASE("Hamiltonian requires a homogeneous chain") {
  Rng rng(24);
  CHECK_THROWS(hamiltonian(random_chain(2, rng), reference_pair()));
}

TEST_CASE("diagonal boundaries: vacuum eigenstate") {
  Rng rng(25);
  const auto pair = make_pair(make_diagonal_boundary(0.2), make_diagonal_boundary(cplx(-0.1, 0.3)));
  for (int n : {2, 3}) CHECK(all_pass(vacuum_eigenvalue_check(random_chain(n, rng), pair, rng)));
}
