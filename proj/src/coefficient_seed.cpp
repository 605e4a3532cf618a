#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "odba/asymptotics.hpp"
#include "odba/bae.hpp"
#include "odba/trig_polynomial.hpp"

namespace odba {

namespace {

using std::cosh;
using std::sinh;

// T_j(cosh(2u + eta)) = cosh(j(2u + eta)); Q1 has degree L1 in w = cosh(2u + eta).
cplx cheb(int j, cplx u, cplx eta) { return cosh(double(j) * (2.0 * u + eta)); }

// Roots of sum_j g_j T_j(w).
std::vector<cplx> chebyshev_roots(const Vector& g) {
  const Index l = g.size() - 1;
  std::vector<Vector> t(l + 1, Vector::Zero(l + 1));
  t[0](0) = 1.0;
  if (l >= 1) t[1](1) = 1.0;
  for (Index j = 2; j <= l; ++j) {
    t[j] = -t[j - 2];
    t[j].segment(1, l) += 2.0 * t[j - 1].head(l);
  }
  Vector mono = Vector::Zero(l + 1);
  for (Index j = 0; j <= l; ++j) mono += g(j) * t[j];
  Eigen::PolynomialSolver<cplx, Eigen::Dynamic> solver;
  solver.compute(mono);
  return {solver.roots().data(), solver.roots().data() + solver.roots().size()};
}

Eigen::VectorXd split(const Vector& v) {
  Eigen::VectorXd o(2 * v.size());
  o << v.real(), v.imag();
  return o;
}

}  // namespace

CoefficientSeeder::CoefficientSeeder(const SpectralContext& ctx)
    : ctx_(ctx), n_(ctx.spec().n_sites), m_(ctx.sector()), l1_(ctx.l1()) {
  const auto& spec = ctx.spec();
  const auto& pair = ctx.pair();
  const cplx e = ctx.eta();
  const auto as = sector_asymptotics(spec, pair, m_);
  top_ = as.t_top;
  bottom_ = as.t_bottom;
  const int kmax = n_ + 2;
  const int nl = 2 * kmax - 1;

  // Degree of the identity in e^{2u} is about 2N + 2M + 10; sample twice that.
  k_ = 2 * (2 * n_ + 2 * m_ + 10) + 8;
  coef_.resize(k_, 8);
  for (int j = 0; j < k_; ++j) {
    const cplx u(0.05, M_PI * j / k_);
    us_.push_back(u);
    const cplx s0 = sinh(2.0 * u), s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
    const cplx aa = a0(u, spec), bb = b0(u, spec);
    coef_.row(j) << s0, s1, s2, s3, k_decomposition(1, u, pair, e) * aa, k_decomposition(2, u, pair, e) * bb,
        k_decomposition(3, u, pair, e) * bb, s0 * s1 * s2 * s3 * aa * bb * f1(u, ctx);
  }

  // Pin Lambda wherever t(u) is a multiple of the identity.
  const cplx ipi2(0.0, M_PI / 2);
  std::vector<std::pair<cplx, cplx>> pins;
  for (cplx u : {cplx(0.0), -1.5 * e, ipi2, -1.5 * e + ipi2}) {
    const Matrix t = transfer_matrix(u, spec, pair).data();
    const cplx s = t.trace() / double(t.rows());
    const double off = (t - s * Matrix::Identity(t.rows(), t.cols())).norm();
    if (off <= 1e-10 * std::max(1e-300, t.norm())) pins.emplace_back(u, s);
  }
  pinned_ = static_cast<int>(pins.size());
  auto fixed = [&](cplx u) { return top_ * std::exp(2.0 * double(kmax) * u) + bottom_ * std::exp(-2.0 * double(kmax) * u); };
  if (pins.empty()) {
    particular_ = Vector::Zero(nl);
    basis_ = Matrix::Identity(nl, nl);
  } else {
    Matrix c(pins.size(), nl);
    Vector rhs(pins.size());
    for (size_t i = 0; i < pins.size(); ++i) {
      for (int k = 0; k < nl; ++k) c(i, k) = std::exp(2.0 * double(k - kmax + 1) * pins[i].first);
      rhs(i) = pins[i].second - fixed(pins[i].first);
    }
    particular_ = c.completeOrthogonalDecomposition().solve(rhs);
    basis_ = Eigen::FullPivLU<Matrix>(c).kernel();
  }

  // Sector moments of the interior coefficient operators.
  const Eigen::VectorXd q = conserved_charge(pair.kind(), n_).data().diagonal().real();
  std::vector<Index> sector;
  for (Index i = 0; i < q.size(); ++i)
    if (std::abs(q(i) - m_) < 0.5) sector.push_back(i);
  dimension_ = static_cast<int>(sector.size());
  const Index nc = basis_.cols();
  mean_ = Vector::Zero(nc);
  spread_ = Eigen::VectorXd::Zero(nc);
  if (dimension_ == 0) return;
  const auto poly = reconstruct_trig_polynomial(
      [&](cplx u) {
        const Matrix t = transfer_matrix(u, spec, pair).data();
        Matrix block(dimension_, dimension_);
        for (int a = 0; a < dimension_; ++a)
          for (int b = 0; b < dimension_; ++b) block(a, b) = t(sector[a], sector[b]);
        return block;
      },
      -kmax, kmax, kDefaultPhaseOffset, 1e-8);
  const Matrix pinv = basis_.completeOrthogonalDecomposition().pseudoInverse();
  const Matrix id = Matrix::Identity(dimension_, dimension_);
  for (Index k = 0; k < nc; ++k) {
    Matrix w = Matrix::Zero(dimension_, dimension_);
    for (int l = 0; l < nl; ++l) w += pinv(k, l) * (poly.coeff(l - kmax + 1) - particular_(l) * id);
    mean_(k) = w.trace() / double(dimension_);
    spread_(k) = std::sqrt(std::abs((w * w).trace() / double(dimension_) - mean_(k) * mean_(k)));
  }

  // With theta = 0 the Lambda-free terms all vanish to high order at the zeros of b0, so
  // Q1 collapsing onto them satisfies the identity without being a solution.
  for (cplx t : spec.theta) {
    repel_points_.push_back(t);
    if (t != 0.0) repel_points_.push_back(-t);
  }
}

Vector CoefficientSeeder::coordinates(const Vector& interior) const {
  return basis_.completeOrthogonalDecomposition().solve(interior - particular_);
}

CoefficientSeeder::Eval CoefficientSeeder::evaluate(const Vector& y, bool repel) const {
  const cplx e = ctx_.eta();
  const Index nc = basis_.cols();
  const Vector c = particular_ + basis_ * y.head(nc);
  const int kmax = n_ + 2;
  const double lead = std::pow(2.0, 1 - 2 * l1_);
  auto q2 = [&](cplx x) {
    cplx o = 1.0;
    for (int k = 0; k < m_; ++k) o *= sinh(x - y(nc + k)) * sinh(x + y(nc + k) + 2.0 * e);
    return o;
  };
  Matrix a(k_, l1_);
  Vector b(k_);
  for (int s = 0; s < k_; ++s) {
    const cplx u = us_[s];
    cplx lam = top_ * std::exp(2.0 * double(kmax) * u) + bottom_ * std::exp(-2.0 * double(kmax) * u);
    for (Index k = 0; k < c.size(); ++k) lam += c(k) * std::exp(2.0 * double(k - kmax + 1) * u);
    const auto r = coef_.row(s);
    const cplx qa = q2(u);
    const cplx am = -r(3) * r(2) * r(4) * qa;
    const cplx ap = -r(0) * r(3) * r(5) * q2(u - e);
    const cplx a0c = r(1) * r(2) * qa * lam - r(0) * r(1) * r(6) * q2(u + e);
    const cplx inh = -r(7) * q2(-u - e) * qa;
    auto col = [&](int j) { return am * cheb(j, u - e, e) + ap * cheb(j, u + e, e) + a0c * cheb(j, u, e); };
    for (int j = 0; j < l1_; ++j) a(s, j) = col(j);
    b(s) = inh + lead * col(l1_);
  }
  Eval out;
  out.g1 = a.completeOrthogonalDecomposition().solve(-b);
  out.r = (a * out.g1 + b) / b.norm();
  if (repel && !repel_points_.empty()) {
    Vector g(l1_ + 1);
    g << out.g1, lead;
    double typical = 0.0;
    for (cplx u : us_) {
      cplx q = 0.0;
      for (int j = 0; j <= l1_; ++j) q += g(j) * cheb(j, u, e);
      typical += std::norm(q);
    }
    typical /= k_;
    double factor = 1.0;
    for (cplx x : repel_points_) {
      cplx q = 0.0;
      for (int j = 0; j <= l1_; ++j) q += g(j) * cheb(j, x, e);
      factor += 1e-4 * typical / std::max(1e-300, std::norm(q));
    }
    out.r *= factor;
  }
  return out;
}

double CoefficientSeeder::identity_residual(const Vector& w, const std::vector<cplx>& mu) const {
  Vector y(w.size() + m_);
  y << w, Eigen::Map<const Vector>(mu.data(), m_);
  return evaluate(y, false).r.norm();
}

std::optional<BetheState> CoefficientSeeder::start(std::uint64_t rng_seed, int index) const {
  if (dimension_ == 0) return std::nullopt;
  const cplx e = ctx_.eta();
  const Index nc = basis_.cols();
  const Index n = nc + m_;
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(m_), static_cast<std::uint32_t>(index), 0xc0efu};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double width = 1.0 + (index / 2) % 3;
  Vector y(n);
  for (Index k = 0; k < nc; ++k) y(k) = mean_(k) + width * spread_(k) * cplx(nd(rng), nd(rng));
  const auto roots = random_start(n_, m_, rng_seed, index, false);
  for (int k = 0; k < m_; ++k) y(nc + k) = roots.lambda2[k];

  // Sector 0: every other start repels Q1 from the zeros of b0. Higher sectors: Q2 alone
  // first, Lambda frozen.
  const bool repel = m_ == 0 && index % 2 == 1;
  int frozen = m_ > 0 ? 40 : 0;
  Eval ev = evaluate(y, repel);
  double nf = ev.r.norm();
  double mu = 1e-3;
  const int max_iter = 150;
  for (int it = 0; it < max_iter && nf > 1e-12 && std::isfinite(nf); ++it) {
    const Eigen::VectorXd f = split(ev.r);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(f.size(), 2 * n);
    for (Index k = it < frozen ? nc : 0; k < n; ++k)
      for (int part = 0; part < 2; ++part) {
        const double h = 1e-7 * std::max(1.0, std::abs(y(k)));
        const cplx d = part ? cplx(0.0, h) : cplx(h, 0.0);
        Vector yp = y, ym = y;
        yp(k) += d;
        ym(k) -= d;
        jac.col(k + part * n) = (split(evaluate(yp, repel).r) - split(evaluate(ym, repel).r)) / (2.0 * h);
      }
    Eigen::MatrixXd a = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * f;
    for (Index k = 0; k < 2 * n; ++k)
      if (a(k, k) == 0.0) {
        a.row(k).setZero();
        a.col(k).setZero();
        a(k, k) = 1.0;
        g(k) = 0.0;
      }
    bool accepted = false;
    for (int trial = 0; trial < 16 && !accepted; ++trial) {
      Eigen::MatrixXd lhs = a;
      lhs.diagonal() += mu * (a.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd dx = lhs.ldlt().solve(-g);
      Vector yn = y;
      for (Index k = 0; k < n; ++k) yn(k) += cplx(dx(k), dx(n + k));
      Eval en = evaluate(yn, repel);
      const double nn = en.r.norm();
      if (std::isfinite(nn) && nn < nf) {
        y = yn;
        ev = std::move(en);
        nf = nn;
        mu = std::max(mu / 5.0, 1e-14);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted && it < frozen) {
      frozen = it + 1;
      mu = 1e-3;
      continue;
    }
    if (!accepted) break;
    bool escaped = false;
    for (int k = 0; k < m_; ++k) escaped |= std::abs(y(nc + k).real()) > 3.0;
    if (escaped) break;
  }
  if (!(nf < 1e-6)) return std::nullopt;

  Vector g(l1_ + 1);
  g << ev.g1, std::pow(2.0, 1 - 2 * l1_);
  BetheState s;
  s.sector = m_;
  for (cplx w : chebyshev_roots(g)) s.lambda1.push_back(std::acosh(w) / 2.0 - e / 2.0);
  for (int k = 0; k < m_; ++k) s.lambda2.push_back(y(nc + k));
  if (static_cast<int>(s.lambda1.size()) != l1_) return std::nullopt;
  return s;
}

}  // namespace odba
