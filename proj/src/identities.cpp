#include "odba/identities.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "odba/asymptotics.hpp"
#include "odba/tq.hpp"
#include "odba/trig_polynomial.hpp"
#include "odba/vertex.hpp"

namespace odba {

bool all_pass(const Report& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
}

void append(Report& dst, const Report& src) { dst.insert(dst.end(), src.begin(), src.end()); }

CheckResult make_check(std::string suite, std::string name, double residual, double tol, std::string note) {
  return CheckResult{std::move(suite), std::move(name), residual, tol, residual <= tol, std::move(note)};
}

cplx random_point(Rng& rng, double re, double im) {
  std::uniform_real_distribution<double> a(-re, re), b(-im, im);
  const double x = a(rng);
  return {x, b(rng)};
}

cplx random_eta(Rng& rng) {
  std::uniform_real_distribution<double> re(0.15, 0.5), im(-0.1, 0.1);
  const double x = re(rng);
  return {x, im(rng)};
}

ChainSpec random_chain(int n_sites, Rng& rng) {
  const cplx eta = random_eta(rng);
  for (;;) {
    ChainSpec spec{n_sites, eta, {}};
    for (int j = 0; j < n_sites; ++j) spec.theta.push_back(random_point(rng, 0.4, 0.1));
    bool ok = true;
    for (int j = 0; j < n_sites && ok; ++j) {
      for (int k = j + 1; k < n_sites; ++k)
        if (std::abs(spec.theta[j] - spec.theta[k]) < 0.05) ok = false;
      for (int s : {1, -1})
        for (int k = 1; k <= 2; ++k)
          if (std::abs(rho2(2.0 * double(s) * spec.theta[j] - double(k) * eta, eta)) < 1e-2) ok = false;
    }
    if (ok) return spec;
  }
}

BoundaryPair random_boundary_pair(BoundaryKind kind, Rng& rng) {
  std::uniform_real_distribution<double> mag(0.4, 1.2), phase(-0.6, 0.6), sign(0.0, 1.0);
  auto coupling = [&] {
    const double s = sign(rng) < 0.5 ? -1.0 : 1.0;
    const double m = mag(rng);
    return s * std::polar(m, phase(rng));
  };
  auto side = [&] {
    const cplx zeta = random_point(rng, 0.5, 0.3);
    const cplx c = coupling();
    return make_boundary(kind, zeta, c, coupling());
  };
  const auto minus = side();
  return make_pair(minus, side());
}

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Relative residual that ignores the max(1, ...) floor; for tiny-magnitude operator identities.
double rel_scaled(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max({1e-300, a.norm(), b.norm()});
}

Matrix scalar_id(cplx s, Index d) { return s * Matrix::Identity(d, d); }

}  // namespace

Report bulk_suite(Rng& rng, int samples, double tol) {
  std::vector<cplx> etas;
  for (int k = 0; k < 5; ++k) etas.push_back(random_eta(rng));
  double qybe = 0, unit = 0, cross = 0, pt = 0, per = 0, minv = 0, cross0 = 0;
  for (int i = 0; i < samples; ++i) {
    const cplx e = etas[i % 5];
    const cplx u1 = random_point(rng), u2 = random_point(rng), u3 = random_point(rng);
    qybe = std::max(qybe, check_qybe(u1, u2, u3, e));
    unit = std::max(unit, check_unitarity(u1, e));
    cross = std::max(cross, check_crossing_unitarity(u2, e));
    pt = std::max(pt, check_pt_symmetry(u3, e));
    per = std::max(per, check_periodicity(u1, e));
    minv = std::max(minv, check_m_invariance(u2, e));
  }
  for (cplx e : etas) cross0 = std::max(cross0, check_crossing_unitarity(0.0, e));
  const std::string n = " (" + std::to_string(samples) + " samples)";
  return {make_check("bulk", "QYBE" + n, qybe, tol), make_check("bulk", "unitarity" + n, unit, tol),
          make_check("bulk", "crossing unitarity" + n, cross, tol),
          make_check("bulk", "crossing unitarity at u=0", cross0, tol),
          make_check("bulk", "PT symmetry" + n, pt, tol), make_check("bulk", "periodicity" + n, per, tol),
          make_check("bulk", "M invariance" + n, minv, tol)};
}

Report boundary_suite(const BoundaryPair& pair, cplx eta, Rng& rng, int samples, double tol) {
  const std::string k = " kind " + to_string(pair.kind());
  double re = 0, dre = 0, prop = 0, per = 0, dq = 0;
  for (int i = 0; i < samples; ++i) {
    const cplx u1 = random_point(rng, 1.5, 1.5), u2 = random_point(rng, 1.5, 1.5);
    re = std::max(re, check_reflection_equation(u1, u2, pair.minus, eta));
    dre = std::max(dre, check_dual_reflection_equation(u1, u2, pair.plus, eta));
  }
  for (int i = 0; i < 20; ++i) {
    const cplx u = random_point(rng, 1.5, 1.5);
    for (const auto* bp : {&pair.minus, &pair.plus}) {
      const Matrix p = (k_minus(u, *bp) * k_minus(-u, *bp)).data();
      prop = std::max(prop, relative_residual(p, scalar_id(p(0, 0), 3)));
    }
    per = std::max(per, relative_residual(k_minus(u + cplx(0, M_PI), pair.minus), k_minus(u, pair.minus)));
    per = std::max(per, relative_residual(k_plus(u + cplx(0, M_PI), pair, eta), k_plus(u, pair, eta)));
    for (const auto* bp : {&pair.minus, &pair.plus})
      dq = std::max(dq, rel(delta_q_k_minus(u, *bp, eta), delta_q_k_minus_first_form(u, *bp, eta)));
  }
  const double cons = std::max(constraint_residual(pair.minus), constraint_residual(pair.plus));
  return {make_check("boundary", "reflection equation" + k, re, tol),
          make_check("boundary", "dual reflection equation" + k, dre, tol),
          make_check("boundary", "K(u)K(-u) ~ id" + k, prop, tol),
          make_check("boundary", "K periodicity" + k, per, tol),
          make_check("boundary", "constraint" + k, cons, 1e-14),
          make_check("boundary", "quantum determinant forms agree" + k, dq, tol)};
}

Report check_fusion_projectors(cplx eta, double tol) {
  const auto fp = fusion_projectors(eta);
  Report r;
  r.push_back(make_check("fusion", "P12 idempotent", relative_residual(fp.p12 * fp.p12, fp.p12), tol));
  r.push_back(make_check("fusion", "P123 idempotent", relative_residual(fp.p123 * fp.p123, fp.p123), tol));
  auto rank_defect = [](const Matrix& m, int expected) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) > 1e-10 * s(0)) ++rank;
    return double(std::abs(rank - expected));
  };
  r.push_back(make_check("fusion", "rank P12 = 3", rank_defect(fp.p12.data(), 3), 0.0));
  r.push_back(make_check("fusion", "rank P123 = 1", rank_defect(fp.p123.data(), 1), 0.0));
  r.push_back(make_check("fusion", "R12(-eta) = P12 S12", relative_residual(r_matrix(-eta, eta), fp.p12 * fp.s12), tol));
  const auto r3 = embed(r_matrix(-eta, eta), {0, 1}, 3) * embed(r_matrix(-2.0 * eta, eta), {0, 2}, 3) *
                  embed(r_matrix(-eta, eta), {1, 2}, 3);
  r.push_back(make_check("fusion", "R12 R13 R23 = P123 S123", relative_residual(r3, fp.p123 * fp.s123), tol));
  return r;
}

Report check_monodromy(const ChainSpec& spec, Rng& rng, int points, double tol) {
  const cplx e = spec.eta;
  const Index d = static_cast<Index>(std::pow(3, spec.n_sites + 1));
  const auto m0 = embed(crossing_matrix(e), {0}, spec.n_sites + 1);
  const Operator minv(crossing_matrix(e).data().inverse(), {3});
  const auto m0i = embed(minv, {0}, spec.n_sites + 1);
  double unit = 0, cross = 0;
  for (int i = 0; i < points; ++i) {
    const cplx u = random_point(rng, 1.0, 1.0);
    cplx p1 = 1.0, p2 = 1.0;
    for (cplx t : spec.theta) p1 *= rho1(u - t, e), p2 *= rho2(u - t, e);
    unit = std::max(unit, rel_scaled((monodromy(u, spec) * hat_monodromy(-u, spec)).data(), scalar_id(p1, d)));
    const auto lhs = partial_transpose(monodromy(u, spec), {0}) * m0 *
                     partial_transpose(hat_monodromy(-u - 3.0 * e, spec), {0}) * m0i;
    cross = std::max(cross, rel_scaled(lhs.data(), scalar_id(p2, d)));
  }
  return {make_check("identities", "T(u) That(-u) = prod rho1", unit, tol),
          make_check("identities", "monodromy crossing unitarity", cross, tol)};
}

Report check_commutativity(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, int points, double tol) {
  Report r;
  double worst[3][3] = {};
  for (int i = 0; i < points; ++i) {
    const cplx u = random_point(rng, 0.8, 0.8), v = random_point(rng, 0.8, 0.8);
    Matrix tu[3], tv[3];
    for (int m = 0; m < 3; ++m) {
      tu[m] = fused_transfer(m + 1, u, spec, pair).data();
      tv[m] = fused_transfer(m + 1, v, spec, pair).data();
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) worst[a][b] = std::max(worst[a][b], commutator_residual(tu[a], tv[b]));
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b)
      r.push_back(make_check("fusion", "[t" + std::to_string(a + 1) + "(u), t" + std::to_string(b + 1) + "(v)] = 0",
                             worst[a][b], tol));
  r.push_back(make_check("fusion", "t(u + i pi) = t(u)",
                         relative_residual(transfer_matrix(cplx(0.21, 0.13) + cplx(0, M_PI), spec, pair),
                                           transfer_matrix(cplx(0.21, 0.13), spec, pair)),
                         tol));
  return r;
}

Report check_quantum_determinant(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, int points, double tol) {
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    const cplx u = random_point(rng, 0.8, 0.8);
    const Matrix t3 = fused_transfer(3, u, spec, pair).data();
    const cplx dq = quantum_determinant(u, spec, pair);
    worst = std::max(worst, (t3 / dq - Matrix::Identity(t3.rows(), t3.cols())).cwiseAbs().maxCoeff());
  }
  return {make_check("fusion", "t3(u) = Delta_q(u) id", worst, tol)};
}

double zero_residual(int m, cplx x, const ChainSpec& spec, const BoundaryPair& pair, double radius) {
  const double at = fused_transfer(m, x, spec, pair).data().norm();
  double around = 0.0;
  for (int k = 0; k < 4; ++k) {
    const cplx dx = std::polar(radius, M_PI / 4 + k * M_PI / 2);
    around = std::max(around, fused_transfer(m, x + dx, spec, pair).data().norm());
  }
  return at / std::max(around, 1e-300);
}

Report check_production_identities(const ChainSpec& spec, const BoundaryPair& pair, double tol) {
  Report r;
  const cplx e = spec.eta;
  for (int j = 0; j < spec.n_sites; ++j)
    for (int s : {1, -1}) {
      const cplx x = double(s) * spec.theta[j];
      const std::string at = std::string(s > 0 ? "+" : "-") + "theta" + std::to_string(j + 1);
      const cplx n1 = rho2(2.0 * x - e, e), n2 = rho2(2.0 * x - 2.0 * e, e);
      if (std::abs(n1) < 1e-10 || std::abs(n2) < 1e-10) {
        r.push_back(CheckResult{"identities", "production identities at " + at, 0.0, tol, true,
                                "skipped: vanishing normalizer"});
        continue;
      }
      const Matrix tx = transfer_matrix(x, spec, pair).data();
      const Matrix t2 = fused_transfer(2, x, spec, pair).data();
      const Matrix t3 = fused_transfer(3, x, spec, pair).data();
      const Matrix lhs1 = tx * transfer_matrix(x - e, spec, pair).data();
      const Matrix lhs2 = tx * fused_transfer(2, x - e, spec, pair).data();
      r.push_back(make_check("identities", "t t = t2/rho2 at " + at, rel_scaled(lhs1, t2 / n1), tol));
      r.push_back(make_check("identities", "t t2 = t3/(rho2 rho2) at " + at, rel_scaled(lhs2, t3 / (n1 * n2)), tol));
      const Matrix dq = scalar_id(quantum_determinant(x, spec, pair), t3.rows());
      r.push_back(make_check("identities", "t t2 = Delta_q/(rho2 rho2) at " + at, rel_scaled(lhs2, dq / (n1 * n2)), tol));
      r.push_back(make_check("identities", "t2 zero at " + at + "+eta", zero_residual(2, x + e, spec, pair), tol));
    }
  return r;
}

Report check_special_points(const ChainSpec& spec, const BoundaryPair& pair, double tol) {
  Report r;
  const cplx e = spec.eta;
  const cplx ipi2(0.0, M_PI / 2);
  const int n = spec.n_sites;
  const Index d = static_cast<Index>(std::pow(3, n));
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const Matrix M = crossing_matrix(e).data();
  const Matrix Mi = M.inverse();
  auto km = [&](cplx u) { return k_minus(u, pair.minus).data(); };
  auto kp = [&](cplx u) { return k_plus(u, pair, e).data(); };
  auto prod = [&](auto f) {
    cplx p = 1.0;
    for (cplx t : spec.theta) p *= f(t);
    return p;
  };
  auto t1 = [&](cplx u) { return Matrix(transfer_matrix(u, spec, pair).data()); };
  auto t2 = [&](cplx u) { return Matrix(fused_transfer(2, u, spec, pair).data()); };
  auto add = [&](const std::string& name, const Matrix& lhs, const Matrix& rhs) {
    r.push_back(make_check("identities", name, rel_scaled(lhs, rhs), tol));
  };
  auto rho_k = [](const BoundaryParams& bp, cplx u) {
    return Matrix((k_minus(u, bp) * k_minus(-u, bp)).data())(0, 0);
  };

  // t at 0, i pi/2, -3eta/2, -3eta/2 + i pi/2
  for (int s = 0; s < 2; ++s) {
    const cplx sh = s ? ipi2 : 0.0;
    const double f = s ? sgn : 1.0;
    const std::string tag = s ? " + i pi/2" : "";
    add("t(0" + tag + ")", t1(sh),
        scalar_id(f * prod([&](cplx t) { return rho1(-t + sh, e); }) * kp(sh).trace() * km(sh)(0, 0), d));
    const cplx x = -1.5 * e + sh;
    add("t(-3eta/2" + tag + ")", t1(x),
        scalar_id(f * prod([&](cplx t) { return rho2(-t - 1.5 * e - sh, e); }) * (km(x) * M).trace() *
                      (Mi * kp(x))(0, 0),
                  d));
  }

  const auto fp = fusion_projectors(e);
  const Matrix p12 = fp.p12.data();
  auto leg = [](const Matrix& a, Index pos) { return Matrix(embed(Operator(a, {3}), {pos}, 2).data()); };
  const Matrix r0 = r_matrix(0.0, e).data();
  const Matrix r3 = r_matrix(-3.0 * e, e).data();
  const Matrix r21_3 = embed(r_matrix(-3.0 * e, e), {1, 0}, 2).data();

  // t2 at eta/2 and -eta (and their i pi/2 shifts)
  for (int s = 0; s < 2; ++s) {
    const cplx sh = s ? ipi2 : 0.0;
    const std::string tag = s ? " + i pi/2" : "";
    const cplx a = (p12 * leg(kp(-0.5 * e + sh), 1) * leg(Mi, 1) * r3 * leg(M, 1) * leg(kp(0.5 * e + sh), 0) * r0 * p12)
                       .trace();
    add("t2(eta/2" + tag + ")", t2(0.5 * e + sh),
        scalar_id(a * rho_k(pair.minus, 0.5 * e + sh) *
                      prod([&](cplx t) { return rho1(0.5 * e - t + sh, e) * rho1(-0.5 * e - t + sh, e); }),
                  d));
    const cplx b = (p12 * r0 * leg(km(-e + sh), 0) * r21_3 * leg(km(-2.0 * e + sh), 1) * leg(M, 0) * leg(M, 1) * p12)
                       .trace();
    add("t2(-eta" + tag + ")", t2(-e + sh),
        scalar_id(b * rho_k(pair.plus, 0.5 * e + sh) *
                      prod([&](cplx t) { return rho2(-t - 2.0 * e + sh, e) * rho2(-t - e + sh, e); }),
                  d));
  }

  // t2 proportional to t at 0, i pi/2, -eta/2, -eta/2 + i pi/2
  const cplx bb = std::sinh(-e) * std::sinh(-2.0 * e);
  for (int s = 0; s < 2; ++s) {
    const cplx sh = s ? ipi2 : 0.0;
    const double f = s ? sgn : 1.0;
    const std::string tag = s ? " + i pi/2" : "";
    add("t2(0" + tag + ") ~ t(-eta" + tag + ")", t2(sh),
        bb * km(sh)(0, 0) * f * prod([&](cplx t) { return rho1(sh - t, e); }) * kp(sh).trace() * t1(-e + sh));
    const cplx x = -1.5 * e + sh;
    add("t2(-eta/2" + tag + ") ~ t(-eta/2" + tag + ")", t2(-0.5 * e + sh),
        bb * (Mi * kp(x))(0, 0) * f * prod([&](cplx t) { return rho2(-t - 1.5 * e + sh, e); }) * (km(x) * M).trace() *
            t1(-0.5 * e + sh));
  }

  for (const auto& [x, name] : {std::pair{e, "t2(eta) = 0"}, std::pair{e + ipi2, "t2(eta + i pi/2) = 0"},
                                std::pair{-1.5 * e, "t2(-3eta/2) = 0"},
                                std::pair{-1.5 * e + ipi2, "t2(-3eta/2 + i pi/2) = 0"}})
    r.push_back(make_check("identities", name, zero_residual(2, x, spec, pair), tol));
  return r;
}

Report check_sector_structure(const ChainSpec& spec, const BoundaryPair& pair, Rng& rng, double tol) {
  const Matrix q = conserved_charge(pair.kind(), spec.n_sites).data();
  const cplx u = random_point(rng, 0.8, 0.8);
  const Matrix t = transfer_matrix(u, spec, pair).data();
  const Matrix t2 = fused_transfer(2, u, spec, pair).data();
  double off = 0;
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j)
      if (q(i, i) != q(j, j)) off = std::max(off, std::abs(t(i, j)));
  const std::string k = " (kind " + to_string(pair.kind()) + ")";
  return {make_check("identities", "[t(u), Q]" + k, (t * q - q * t).norm() / t.norm(), tol),
          make_check("identities", "[t2(u), Q]" + k, (t2 * q - q * t2).norm() / t2.norm(), tol),
          make_check("identities", "t(u) block diagonal in charge sectors", off / t.cwiseAbs().maxCoeff(), tol)};
}

Report check_asymptotics(const ChainSpec& spec, const BoundaryPair& pair, double tol) {
  const int n = spec.n_sites;
  const auto tp = reconstruct_trig_polynomial([&](cplx u) { return Matrix(transfer_matrix(u, spec, pair).data()); },
                                              -(n + 2), n + 2);
  const auto t2p = reconstruct_trig_polynomial(
      [&](cplx u) { return Matrix(fused_transfer(2, u, spec, pair).data()); }, -(2 * n + 6), 2 * n + 6);
  const Matrix q = conserved_charge(pair.kind(), n).data();
  const Matrix* coeff[4] = {&tp.coeff(n + 2), &tp.coeff(-(n + 2)), &t2p.coeff(2 * n + 6), &t2p.coeff(-(2 * n + 6))};
  const char* names[4] = {"t top", "t bottom", "t2 top", "t2 bottom"};
  Report r;
  for (int m = 0; m <= n; ++m) {
    const auto s = sector_asymptotics(spec, pair, m);
    const cplx expect[4] = {s.t_top, s.t_bottom, s.t2_top, s.t2_bottom};
    for (int c = 0; c < 4; ++c) {
      double err = 0;
      for (Index i = 0; i < q.rows(); ++i) {
        if (std::abs(q(i, i) - double(m)) > 0.5) continue;
        Eigen::RowVectorXcd row = coeff[c]->row(i);
        row(i) -= expect[c];
        err = std::max(err, row.norm() / std::abs(expect[c]));
      }
      r.push_back(make_check("asymptotics",
                             std::string(names[c]) + " coefficient, sector M=" + std::to_string(m) + " (kind " +
                                 to_string(pair.kind()) + ")",
                             err, tol));
    }
  }
  return r;
}

Report vacuum_eigenvalue_check(const ChainSpec& spec, const BoundaryPair& diagonal_pair, Rng& rng, int points,
                               double tol) {
  if (!is_diagonal(diagonal_pair)) throw std::invalid_argument("vacuum check needs diagonal boundaries");
  const Index d = static_cast<Index>(std::pow(3, spec.n_sites));
  double eig = 0, val = 0;
  const BetheState empty{0, {}, {}};
  for (int i = 0; i < points; ++i) {
    const cplx u = random_point(rng, 0.8, 0.8);
    const Vector w = transfer_matrix(u, spec, diagonal_pair).data().col(d - 1);
    const cplx lam = w(d - 1);
    Vector off = w;
    off(d - 1) = 0.0;
    eig = std::max(eig, off.norm() / std::abs(lam));
    val = std::max(val, std::abs(lam - diagonal_lambda(u, empty, spec, diagonal_pair)) / std::abs(lam));
  }
  const std::string tag = " (N=" + std::to_string(spec.n_sites) + ")";
  return {make_check("identities", "vacuum is an eigenvector of t(u)" + tag, eig, tol),
          make_check("identities", "vacuum eigenvalue = homogeneous T-Q" + tag, val, tol)};
}

}  // namespace odba
