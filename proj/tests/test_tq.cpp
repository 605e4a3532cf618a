#include <doctest.h>

#include "odba/bae.hpp"
#include "odba/identities.hpp"
#include "odba/reference_states.hpp"
#include "odba/tq.hpp"

using namespace odba;

namespace {

BetheState refined_row(int row) {
  const auto r = reference_states().at(row);
  const SpectralContext ctx(reference_chain(), reference_pair(), r.state.sector);
  return refine(r.state, ctx).state;
}

BetheState random_state(int n, int m, Rng& rng) {
  BetheState s;
  s.sector = m;
  for (int i = 0; i < n + m + 6; ++i) s.lambda1.push_back(random_point(rng, 1.0, 1.0));
  for (int i = 0; i < m; ++i) s.lambda2.push_back(random_point(rng, 1.0, 1.0));
  return s;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("a0 and b0") {
  const auto spec = ChainSpec::homogeneous(2, 0.3);
  CHECK(std::abs(b0(0.0, spec)) == 0.0);
  CHECK(rel(a0(0.0, spec), std::pow(std::sinh(0.3), 4)) < 1e-14);
  CHECK(rel(b0(cplx(0.2, 0.1), spec), std::pow(std::sinh(cplx(0.2, 0.1)), 4)) < 1e-14);
  Rng rng(31);
  const auto inh = random_chain(2, rng);
  CHECK(std::abs(b0(inh.theta[0], inh)) < 1e-14);
  CHECK(rel(a0(cplx(0.3, 0.2), inh), b0(cplx(0.3, 0.2) + inh.eta, inh)) < 1e-14);
}

TEST_CASE("Q-functions") {
  Rng rng(32);
  const auto spec = ChainSpec::homogeneous(2, cplx(0.3, 0.1));
  const BetheState s = random_state(2, 1, rng);
  CHECK(q_product({}, 1, cplx(0.4, 0.2), spec.eta) == 1.0);
  CHECK(std::abs(q_function(1, s.lambda1[0], s, spec)) < 1e-14);
  CHECK(std::abs(q_function(2, s.lambda2[0], s, spec)) < 1e-14);
  CHECK(q_function(3, cplx(0.4, 0.2), s, spec) == 1.0);
  const cplx u(0.37, -0.42);
  for (int k : {1, 2}) {
    CHECK(rel(q_function(k, u, s, spec), q_function(k, -u - double(k) * spec.eta, s, spec)) < 1e-12);
    CHECK(rel(q_function(k, u, s, spec), q_function(k, u + cplx(0.0, M_PI), s, spec)) < 1e-12);
  }
}

TEST_CASE("K decompositions") {
  Rng rng(33);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto pair = random_boundary_pair(kind, rng);
    const cplx e = random_eta(rng);
    auto k = [&](int m, cplx x) { return k_decomposition(m, x, pair, e); };
    for (int i = 0; i < 20; ++i) {
      const cplx u = random_point(rng, 1.0, 1.0);
      CHECK(rel(k(1, u) * k(1, -u - e), k(2, u) * k(2, -u - e)) < 1e-12);
      CHECK(k(3, u) == k(2, u));
      cplx den = 1.0;
      for (int m = 1; m <= 3; ++m) den *= sinh(2.0 * u + double(m) * e) * sinh(2.0 * u - double(m + 1) * e);
      const cplx rhs = -delta_q_k_minus(u, pair.minus, e) * delta_q_k_plus(u, pair.plus, e) / den;
      CHECK(rel(k(1, u) * k(2, u - e) * k(3, u - 2.0 * e), rhs) < 1e-12);
    }
  }
}

TEST_CASE("diagonal K decomposition is the c -> 0 limit of kind I") {
  const cplx e = 0.3, z(0.1, 0.05), zp(-0.2, 0.1);
  const auto diag = make_pair(make_diagonal_boundary(z), make_diagonal_boundary(zp));
  const cplx u(0.23, -0.31);
  CHECK(rel(k_decomposition_diagonal(1, u, diag, e), std::exp(1.5 * e) * sinh(z + u) * sinh(zp - u + 0.5 * e)) < 1e-14);
  const auto small = make_pair(make_boundary(BoundaryKind::I, z, 1e-7, 1e-7), make_boundary(BoundaryKind::I, zp, 1e-7, 1e-7));
  for (int m = 1; m <= 3; ++m)
    CHECK(rel(k_decomposition(m, u, small, e), k_decomposition_diagonal(m, u, diag, e)) < 1e-5);
}

TEST_CASE("f1 crossing symmetry and zeros") {
  Rng rng(34);
  const auto spec = reference_chain();
  const SpectralContext ctx(spec, reference_pair(), 0);
  CHECK(std::abs(ctx.h()) > 0.0);
  for (int i = 0; i < 10; ++i) {
    const cplx u = random_point(rng, 1.0, 1.0);
    CHECK(rel(f1(u, ctx), f1(-u - spec.eta, ctx)) < 1e-14);
  }
  CHECK(std::abs(f1(0.0, ctx)) == 0.0);
  CHECK(std::abs(f1(-1.5 * spec.eta, ctx)) < 1e-14 * std::abs(ctx.h()));
}

TEST_CASE("c = 0 has no h constant") {
  const auto pair = make_pair(make_diagonal_boundary(0.1), make_diagonal_boundary(-0.1));
  CHECK_THROWS(h_constant(BoundaryKind::I, 0, reference_chain(), pair));
}

TEST_CASE("Lambda3 equals the quantum determinant for any roots") {
  Rng rng(35);
  for (auto kind : {BoundaryKind::I, BoundaryKind::II, BoundaryKind::III}) {
    const auto spec = random_chain(2, rng);
    const auto pair = random_boundary_pair(kind, rng);
    const SpectralContext ctx(spec, pair, 1);
    for (int i = 0; i < 10; ++i) {
      const cplx u = random_point(rng, 1.0, 1.0);
      CHECK(rel(lambda3(u, ctx), quantum_determinant(u, spec, pair)) < 1e-10);
    }
  }
}

TEST_CASE("Lambda is i pi periodic") {
  Rng rng(36);
  const auto spec = reference_chain();
  const SpectralContext ctx(spec, reference_pair(), 1);
  const BetheState s = random_state(2, 1, rng);
  const cplx u(0.31, 0.17);
  CHECK(rel(lambda1(u, s, ctx), lambda1(u + cplx(0.0, M_PI), s, ctx)) < 1e-10);
  CHECK(rel(lambda2(u, s, ctx), lambda2(u + cplx(0.0, M_PI), s, ctx)) < 1e-10);
}

TEST_CASE("Lambda at a pole is reported") {
  Rng rng(37);
  const SpectralContext ctx(reference_chain(), reference_pair(), 0);
  const BetheState s = random_state(2, 0, rng);
  CHECK_THROWS_AS(lambda1(s.lambda1[0], s, ctx), PoleError);
  CHECK(pole_distance(s.lambda1[0], s, ctx) < 1e-12);
}

TEST_CASE("invalid root counts are rejected") {
  BetheState s;
  s.sector = 1;
  s.lambda1.assign(8, 0.1);
  s.lambda2.assign(1, 0.2);
  CHECK_THROWS(validate(s, 2));
  s.lambda1.assign(9, 0.1);
  CHECK_NOTHROW(validate(s, 2));
  s.sector = 3;
  CHECK_THROWS(validate(s, 2));
}

TEST_CASE("energies of benchmark rows") {
  const auto refs = reference_states();
  for (int row : {0, 8}) {
    const BetheState s = refined_row(row);
    const SpectralContext ctx(reference_chain(), reference_pair(), s.sector);
    const cplx e = energy(s, ctx);
    CHECK(std::abs(e.real() - refs[row].energy) < 1e-5);
    CHECK(std::abs(e.imag()) < 1e-8);
    CHECK(std::abs(e - energy_polynomial(s, ctx)) < 1e-8);
  }
}

TEST_CASE("residue form and cleared form vanish together") {
  const BetheState s = refined_row(0);
  const SpectralContext ctx(reference_chain(), reference_pair(), s.sector);
  const auto rr = polynomiality_residues(s, ctx);
  CHECK_FALSE(rr.degenerate);
  CHECK(rr.residues.size() == Index(s.lambda1.size() + s.lambda2.size()));
  CHECK(rr.residues.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(bae_residuals(s, ctx).norm() <= 1e-12);

  Rng rng(38);
  for (int trial = 0; trial < 5; ++trial) {
    BetheState near = s;
    const size_t i = size_t(trial) % near.lambda1.size();
    near.lambda1[i] += 1e-5 * random_point(rng, 1.0, 1.0);
    const double a = polynomiality_residues(near, ctx).residues.cwiseAbs().maxCoeff();
    const double b = bae_residuals(near, ctx).cwiseAbs().maxCoeff();
    CHECK(a > 1e-9);
    CHECK(b > 1e-9);
    BetheState nearer = s;
    nearer.lambda1[i] += (near.lambda1[i] - s.lambda1[i]) * 1e-2;
    CHECK(polynomiality_residues(nearer, ctx).residues.cwiseAbs().maxCoeff() < 0.05 * a);
    CHECK(bae_residuals(nearer, ctx).cwiseAbs().maxCoeff() < 0.05 * b);
  }
}

TEST_CASE("random roots fail the residue check") {
  Rng rng(39);
  const SpectralContext ctx(reference_chain(), reference_pair(), 1);
  const auto rr = polynomiality_residues(random_state(2, 1, rng), ctx);
  CHECK(rr.residues.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("coincident roots are flagged degenerate") {
  BetheState s = refined_row(0);
  s.lambda1[1] = s.lambda1[0] + 1e-10;
  const SpectralContext ctx(reference_chain(), reference_pair(), s.sector);
  CHECK(polynomiality_residues(s, ctx).degenerate);
}

TEST_CASE("canonical form and equivalence") {
  const cplx eta = 0.3;
  BetheState s = refined_row(3);
  const BetheState c = canonicalize(s);
  for (cplx z : c.lambda1) {
    CHECK(z.imag() > -M_PI / 2);
    CHECK(z.imag() <= M_PI / 2);
  }
  BetheState t = s;
  t.lambda1[0] = -t.lambda1[0] - eta;
  t.lambda1[1] += cplx(0.0, M_PI);
  if (!t.lambda2.empty()) t.lambda2[0] = -t.lambda2[0] - 2.0 * eta;
  std::reverse(t.lambda1.begin(), t.lambda1.end());
  CHECK(states_equivalent(s, t, eta));
  t.lambda1[2] += 1e-6;
  CHECK_FALSE(states_equivalent(s, t, eta));
  CHECK(root_distance(0.2, -0.2 - eta, 1, eta) < 1e-15);
}
