#include "odba/tq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "odba/trig_polynomial.hpp"
#include "odba/vertex.hpp"

namespace odba {

void validate(const BetheState& state, int n_sites) {
  if (state.sector < 0 || state.sector > n_sites)
    throw std::invalid_argument("sector M must lie in [0, N]");
  if (static_cast<int>(state.lambda1.size()) != n_sites + state.sector + 6)
    throw std::invalid_argument("lambda1 must have N + M + 6 roots, got " + std::to_string(state.lambda1.size()));
  if (static_cast<int>(state.lambda2.size()) != state.sector)
    throw std::invalid_argument("lambda2 must have M roots, got " + std::to_string(state.lambda2.size()));
}

SpectralContext::SpectralContext(ChainSpec spec, BoundaryPair pair, int sector)
    : spec_(std::move(spec)), pair_(pair), sector_(sector) {
  validate(spec_);
  if (sector_ < 0 || sector_ > spec_.n_sites) throw std::invalid_argument("sector M must lie in [0, N]");
  h_ = h_constant(pair_.kind(), sector_, spec_, pair_);
}

cplx b0(cplx u, const ChainSpec& spec) {
  cplx out = 1.0;
  for (cplx t : spec.theta) out *= std::sinh(u - t) * std::sinh(u + t);
  return out;
}

cplx a0(cplx u, const ChainSpec& spec) { return b0(u + spec.eta, spec); }

cplx q_product(const std::vector<cplx>& roots, int k, cplx u, cplx eta) {
  cplx out = 1.0;
  for (cplx l : roots) out *= std::sinh(u - l) * std::sinh(u + l + double(k) * eta);
  return out;
}

cplx q_function(int k, cplx u, const BetheState& state, const ChainSpec& spec) {
  switch (k) {
    case 0: return b0(u, spec);
    case 1: return q_product(state.lambda1, 1, u, spec.eta);
    case 2: return q_product(state.lambda2, 2, u, spec.eta);
    case 3: return 1.0;
  }
  throw std::invalid_argument("Q-function index must be 0..3");
}

cplx k_decomposition(int m, cplx u, const BoundaryPair& pair, cplx e) {
  if (m < 1 || m > 3) throw std::invalid_argument("K decomposition index must be 1..3");
  const auto& b = pair.minus;
  const auto& p = pair.plus;
  const cplx z = b.zeta, c = b.c, zp = p.zeta, cp = p.c;
  const cplx pre = std::exp(2.0 * e);
  const cplx v = u - 0.5 * e, w = u + 1.5 * e, x = u + e;
  using std::exp;
  using std::sinh;
  switch (pair.kind()) {
    case BoundaryKind::I:
      if (m == 1)
        return pre * (exp(-u) * sinh(z + u) - c * exp(-2.0 * u) * sinh(2.0 * u)) *
               (exp(v) * sinh(zp - v) + cp * exp(2.0 * v) * sinh(2.0 * v));
      return pre * (exp(x) * sinh(z - x) + c * exp(2.0 * x) * sinh(2.0 * x)) *
             (exp(-w) * sinh(zp + w) - cp * exp(-2.0 * w) * sinh(2.0 * w));
    case BoundaryKind::II:
      if (m == 1)
        return pre * (exp(-u) * sinh(z + u) - c * sinh(2.0 * u)) * (exp(v) * sinh(zp - v) + cp * sinh(2.0 * v));
      return pre * (exp(x) * sinh(z - x) + c * sinh(2.0 * x)) * (exp(-w) * sinh(zp + w) - cp * sinh(2.0 * w));
    case BoundaryKind::III:
      if (m == 1)
        return pre * (exp(u) * sinh(z - u) - c * exp(2.0 * u) * sinh(2.0 * u)) *
               (exp(-v) * sinh(zp + v) + cp * exp(-2.0 * v) * sinh(2.0 * v));
      return pre * (exp(-x) * sinh(z + x) + c * exp(-2.0 * x) * sinh(2.0 * x)) *
             (exp(w) * sinh(zp - w) - cp * exp(2.0 * w) * sinh(2.0 * w));
  }
  return 0.0;
}

cplx k_decomposition_diagonal(int m, cplx u, const BoundaryPair& pair, cplx e) {
  if (!is_diagonal(pair)) throw std::invalid_argument("diagonal decomposition needs diagonal boundaries");
  const cplx z = pair.minus.zeta, zp = pair.plus.zeta;
  const cplx pre = std::exp(1.5 * e);
  if (m == 1) return pre * std::sinh(z + u) * std::sinh(zp - u + 0.5 * e);
  if (m == 2 || m == 3) return pre * std::sinh(z - u - e) * std::sinh(zp + u + 1.5 * e);
  throw std::invalid_argument("K decomposition index must be 1..3");
}

cplx h_constant(BoundaryKind kind, int sector, const ChainSpec& spec, const BoundaryPair& pair) {
  const auto& b = pair.minus;
  const auto& p = pair.plus;
  if (b.c == 0.0 || p.c == 0.0) throw std::invalid_argument("h needs c != 0 and c' != 0 (use diagonal mode)");
  const cplx e = spec.eta;
  const double l = double(sector + spec.n_sites);
  const cplx A = b.c * p.c1 * p.c2 / p.c;
  const cplx B = p.c * b.c1 * b.c2 / b.c;
  using std::exp;
  switch (kind) {
    case BoundaryKind::I:
      return A * exp((l + 15.0) * e) + B * exp(-(l + 13.0) * e) - (b.c1 * p.c2 + p.c1 * b.c2 * exp(2.0 * e));
    case BoundaryKind::II:
      return A * exp(-(l + 12.0) * e) + B * exp((l + 16.0) * e) - (b.c1 * p.c2 + p.c1 * b.c2 * exp(4.0 * e));
    case BoundaryKind::III:
      return A * exp(-(l + 11.0) * e) + B * exp((l + 17.0) * e) -
             (b.c1 * p.c2 + p.c1 * b.c2 * exp(2.0 * e)) * exp(2.0 * e);
  }
  return 0.0;
}

cplx f1(cplx u, const SpectralContext& ctx) {
  const cplx e = ctx.eta();
  using std::sinh;
  const cplx s1 = sinh(2.0 * u + e);
  return ctx.h() / 64.0 * sinh(2.0 * u) * s1 * s1 * sinh(2.0 * u + 2.0 * e) * sinh(2.0 * u - e) *
         sinh(2.0 * u + 3.0 * e);
}

namespace {

const double kPi = M_PI;

// Reduce Im to (-pi/2, pi/2].
cplx reduce(cplx z) {
  const double im = z.imag() - kPi * std::ceil((z.imag() - kPi / 2) / kPi);
  return {z.real(), im};
}

// |z| modulo i*pi
double periodic_abs(cplx z) { return std::abs(reduce(z)); }

struct ZTerms {
  cplx z1, z2, z3, x;
};

// z_m(u) and x_1(u); Q^(0) = b0 is simplified out of z_1.
ZTerms z_terms(cplx u, const BetheState& s, const SpectralContext& ctx) {
  const auto& spec = ctx.spec();
  const auto& pair = ctx.pair();
  const cplx e = ctx.eta();
  using std::sinh;
  const cplx s0 = sinh(2.0 * u), s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
  const cplx q1 = q_function(1, u, s, spec), q2 = q_function(2, u, s, spec);
  const cplx bb = b0(u, spec), aa = a0(u, spec);
  ZTerms t;
  t.z1 = s3 / s1 * k_decomposition(1, u, pair, e) * aa * q_function(1, u - e, s, spec) / q1;
  t.z2 = s0 * s3 / (s1 * s2) * k_decomposition(2, u, pair, e) * bb * q_function(1, u + e, s, spec) *
         q_function(2, u - e, s, spec) / (q1 * q2);
  t.z3 = s0 / s2 * k_decomposition(3, u, pair, e) * bb * q_function(2, u + e, s, spec) / q2;
  t.x = s0 * s3 * aa * bb * f1(u, ctx) * q_function(2, -u - e, s, spec) / q1;
  return t;
}

void require_pole_free(cplx u, const BetheState& s, const SpectralContext& ctx, int level) {
  const double d = pole_distance(u, s, ctx, level);
  if (d < 1e-6) throw PoleError("evaluation point within " + std::to_string(d) + " of a pole");
}

}  // namespace

TqTerms lambda_terms(cplx u, const BetheState& state, const SpectralContext& ctx) {
  require_pole_free(u, state, ctx, 1);
  const auto z = z_terms(u, state, ctx);
  return TqTerms{z.z1, z.z2, z.z3, z.x};
}

cplx lambda1(cplx u, const BetheState& state, const SpectralContext& ctx) {
  return lambda_terms(u, state, ctx).sum();
}

cplx lambda2(cplx u, const BetheState& state, const SpectralContext& ctx) {
  require_pole_free(u, state, ctx, 2);
  const cplx e = ctx.eta();
  const auto a = z_terms(u, state, ctx);
  const auto b = z_terms(u - e, state, ctx);
  const cplx za[3] = {a.z1 + a.x, a.z2, a.z3};
  const cplx zb[3] = {b.z1 + b.x, b.z2, b.z3};
  cplx acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) acc += za[i] * zb[j];
  acc -= a.x * b.z2;
  return rho2(2.0 * u - e, e) * acc;
}

cplx lambda3(cplx u, const SpectralContext& ctx) {
  // z1(u) z2(u-eta) z3(u-2eta): the Q^(1), Q^(2) ratios telescope away, so
  // this is evaluated with empty roots.
  const cplx e = ctx.eta();
  const auto& spec = ctx.spec();
  const auto& pair = ctx.pair();
  using std::sinh;
  auto pref = [&](int m, cplx v) {
    return sinh(2.0 * v) * sinh(2.0 * v + 3.0 * e) / (sinh(2.0 * v + double(m - 1) * e) * sinh(2.0 * v + double(m) * e));
  };
  const cplx v2 = u - e, v3 = u - 2.0 * e;
  const cplx z1 = sinh(2.0 * u + 3.0 * e) / sinh(2.0 * u + e) * k_decomposition(1, u, pair, e) * a0(u, spec);
  const cplx z2 = pref(2, v2) * k_decomposition(2, v2, pair, e) * b0(v2, spec);
  const cplx z3 = pref(3, v3) * k_decomposition(3, v3, pair, e) * b0(v3, spec);
  cplx rho = 1.0;
  for (int k = 1; k <= 3; ++k) rho *= rho2(2.0 * u - double(k) * e, e);
  // Q^(1)(u-eta)/Q^(1)(u) * Q^(1)(u)Q^(2)(u-2eta)/(Q^(1)(u-eta)Q^(2)(u-eta)) * Q^(2)(u-eta)/Q^(2)(u-2eta) = 1
  return rho * z1 * z2 * z3;
}

double pole_distance(cplx u, const BetheState& state, const SpectralContext& ctx, int level) {
  const cplx e = ctx.eta();
  double d = std::numeric_limits<double>::infinity();
  auto root_pair = [&](const std::vector<cplx>& roots, int k, cplx shift) {
    for (cplx l : roots) {
      d = std::min(d, periodic_abs(u - shift - l));
      d = std::min(d, periodic_abs(u - shift + l + double(k) * e));
    }
  };
  // zeros of sinh(2u + a): u = -a/2 mod i*pi/2
  auto sinh_zero = [&](cplx a) {
    d = std::min(d, periodic_abs(u + 0.5 * a));
    d = std::min(d, periodic_abs(u + 0.5 * a - cplx(0, kPi / 2)));
  };
  root_pair(state.lambda1, 1, 0.0);
  root_pair(state.lambda2, 2, 0.0);
  sinh_zero(e);
  sinh_zero(2.0 * e);
  if (level >= 2) {
    root_pair(state.lambda1, 1, e);
    root_pair(state.lambda2, 2, e);
    sinh_zero(0.0);
    sinh_zero(-e);
  }
  return d;
}

cplx diagonal_lambda(cplx u, const BetheState& state, const ChainSpec& spec, const BoundaryPair& pair) {
  const cplx e = spec.eta;
  using std::sinh;
  const cplx s0 = sinh(2.0 * u), s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
  const cplx q1 = q_function(1, u, state, spec), q2 = q_function(2, u, state, spec);
  const cplx bb = b0(u, spec);
  return s3 / s1 * k_decomposition_diagonal(1, u, pair, e) * a0(u, spec) * q_function(1, u - e, state, spec) / q1 +
         s0 * s3 / (s1 * s2) * k_decomposition_diagonal(2, u, pair, e) * bb * q_function(1, u + e, state, spec) *
             q_function(2, u - e, state, spec) / (q1 * q2) +
         s0 / s2 * k_decomposition_diagonal(3, u, pair, e) * bb * q_function(2, u + e, state, spec) / q2;
}

cplx diagonal_lambda2(cplx u, const BetheState& state, const ChainSpec& spec, const BoundaryPair& pair) {
  const cplx e = spec.eta;
  using std::sinh;
  auto K = [&](int m, cplx v) { return k_decomposition_diagonal(m, v, pair, e); };
  auto Q = [&](int k, cplx v) { return q_function(k, v, state, spec); };
  const cplx s0 = sinh(2.0 * u), sm1 = sinh(2.0 * u - e), sm2 = sinh(2.0 * u - 2.0 * e);
  const cplx s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
  const cplx aa = a0(u, spec), bb = b0(u, spec);
  const cplx body = sm2 * s3 / (s0 * sm1) * K(1, u) * K(2, u - e) * aa * Q(2, u - 2.0 * e) / Q(2, u - e) +
                    sm2 * s3 / (s1 * s0) * K(1, u) * K(3, u - e) * aa * Q(1, u - e) * Q(2, u) / (Q(1, u) * Q(2, u - e)) +
                    sm2 * s3 / (s1 * s2) * K(2, u) * K(3, u - e) * bb * Q(1, u + e) / Q(1, u);
  return rho2(2.0 * u - e, e) * b0(u - e, spec) * body;
}

std::vector<RelationResidual> check_functional_relations(const BetheState& state, const SpectralContext& ctx) {
  const auto& spec = ctx.spec();
  const cplx e = ctx.eta();
  std::vector<RelationResidual> out;
  auto rel = [](cplx l, cplx r) { return std::abs(l - r) / std::max({1e-300, std::abs(l), std::abs(r)}); };
  for (int j = 0; j < spec.n_sites; ++j)
    for (int sign : {1, -1}) {
      const cplx x = double(sign) * spec.theta[j];
      const std::string at = (sign > 0 ? "+theta" : "-theta") + std::to_string(j + 1);
      const cplx lx = lambda1(x, state, ctx);
      const cplx r1 = rho2(2.0 * x - e, e), r2 = rho2(2.0 * x - 2.0 * e, e);
      out.push_back({"Lambda*Lambda_1 at " + at, rel(lx * lambda1(x - e, state, ctx), lambda2(x, state, ctx) / r1)});
      out.push_back({"Lambda*Lambda_2 at " + at, rel(lx * lambda2(x - e, state, ctx), lambda3(x, ctx) / (r1 * r2))});
      // zero of Lambda_2, measured against Lambda_2 a short distance away
      const cplx z = lambda2(x + e, state, ctx);
      const cplx ref = lambda2(x + e + 0.05, state, ctx);
      out.push_back({"Lambda_2 zero at " + at + "+eta", std::abs(z) / std::max(1e-300, std::abs(ref))});
    }
  return out;
}

ResidueReport polynomiality_residues(const BetheState& state, const SpectralContext& ctx) {
  const auto& spec = ctx.spec();
  const auto& pair = ctx.pair();
  const cplx e = ctx.eta();
  using std::sinh;
  ResidueReport rep;
  const size_t n1 = state.lambda1.size(), n2 = state.lambda2.size();
  rep.residues.resize(static_cast<Index>(n1 + n2));

  auto without = [](const std::vector<cplx>& v, size_t i) {
    std::vector<cplx> w = v;
    w.erase(w.begin() + static_cast<long>(i));
    return w;
  };
  auto near_duplicates = [&](const std::vector<cplx>& v) {
    for (size_t a = 0; a < v.size(); ++a)
      for (size_t b = a + 1; b < v.size(); ++b)
        if (std::abs(v[a] - v[b]) < 1e-8) return true;
    return false;
  };
  rep.degenerate = near_duplicates(state.lambda1) || near_duplicates(state.lambda2);

  // Pole parts at a zero of Q^(1): z1, z2 and x carry 1/Q^(1)(u).
  for (size_t l = 0; l < n1; ++l) {
    const cplx u = state.lambda1[l];
    const auto rest = without(state.lambda1, l);
    const cplx dq1 = sinh(2.0 * u + e) * q_product(rest, 1, u, e);  // Q^(1)'(lambda_l)
    const cplx s0 = sinh(2.0 * u), s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
    const cplx q2 = q_function(2, u, state, spec);
    const cplx n_z1 = s3 / s1 * k_decomposition(1, u, pair, e) * a0(u, spec) * q_function(1, u - e, state, spec);
    const cplx n_z2 = s0 * s3 / (s1 * s2) * k_decomposition(2, u, pair, e) * b0(u, spec) *
                      q_function(1, u + e, state, spec) * q_function(2, u - e, state, spec) / q2;
    const cplx n_x = s0 * s3 * a0(u, spec) * b0(u, spec) * f1(u, ctx) * q_function(2, -u - e, state, spec);
    const double scale = std::max({std::abs(n_z1), std::abs(n_z2), std::abs(n_x)}) / std::abs(dq1);
    rep.residues(static_cast<Index>(l)) = (n_z1 + n_z2 + n_x) / dq1 / scale;
  }
  // At a zero of Q^(2): z2 and z3 carry 1/Q^(2)(u).
  for (size_t k = 0; k < n2; ++k) {
    const cplx u = state.lambda2[k];
    const auto rest = without(state.lambda2, k);
    const cplx dq2 = sinh(2.0 * u + 2.0 * e) * q_product(rest, 2, u, e);
    const cplx s0 = sinh(2.0 * u), s1 = sinh(2.0 * u + e), s2 = sinh(2.0 * u + 2.0 * e), s3 = sinh(2.0 * u + 3.0 * e);
    const cplx q1 = q_function(1, u, state, spec);
    const cplx n_z2 = s0 * s3 / (s1 * s2) * k_decomposition(2, u, pair, e) * b0(u, spec) *
                      q_function(1, u + e, state, spec) * q_function(2, u - e, state, spec) / q1;
    const cplx n_z3 = s0 / s2 * k_decomposition(3, u, pair, e) * b0(u, spec) * q_function(2, u + e, state, spec);
    const double scale = std::max(std::abs(n_z2), std::abs(n_z3)) / std::abs(dq2);
    rep.residues(static_cast<Index>(n1 + k)) = (n_z2 + n_z3) / dq2 / scale;
  }
  return rep;
}

cplx energy(const BetheState& state, const SpectralContext& ctx) {
  if (!ctx.spec().is_homogeneous()) throw std::invalid_argument("energy needs theta = 0");
  const cplx l0 = lambda1(0.0, state, ctx);
  if (std::abs(l0) < 1e-300) throw std::invalid_argument("Lambda(0) vanishes");
  auto d6 = [&](double h) {
    auto f = [&](double x) { return lambda1(cplx(x, 0.0), state, ctx); };
    return (45.0 * (f(h) - f(-h)) - 9.0 * (f(2 * h) - f(-2 * h)) + (f(3 * h) - f(-3 * h))) / (60.0 * h);
  };
  const double h = 1e-3;
  const cplx d = (64.0 * d6(h / 2) - d6(h)) / 63.0;
  return std::sinh(ctx.eta()) * d / l0;
}

cplx energy_polynomial(const BetheState& state, const SpectralContext& ctx) {
  if (!ctx.spec().is_homogeneous()) throw std::invalid_argument("energy needs theta = 0");
  const int n = ctx.spec().n_sites;
  const auto poly = reconstruct_trig_polynomial([&](cplx u) { return lambda1(u, state, ctx); }, -(n + 2), n + 2,
                                                kDefaultPhaseOffset, 1e-8);
  return std::sinh(ctx.eta()) * poly.derivative(0.0) / poly(0.0);
}

BetheState canonicalize(const BetheState& state) {
  BetheState out = state;
  auto fix = [](std::vector<cplx>& v) {
    for (auto& z : v) z = reduce(z);
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
  };
  fix(out.lambda1);
  fix(out.lambda2);
  return out;
}

double root_distance(cplx a, cplx b, int k, cplx eta) {
  auto comp = [](cplx d) {
    const cplx r = reduce(d);
    return std::max(std::abs(r.real()), std::abs(r.imag()));
  };
  return std::min(comp(a - b), comp(a + b + double(k) * eta));
}

namespace {

// Greedy assignment on the smallest remaining pair distance.
double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, int k, cplx eta) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const size_t n = a.size();
  std::vector<bool> ua(n, false), ub(n, false);
  double worst = 0.0;
  for (size_t step = 0; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < n; ++i) {
      if (ua[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (ub[j]) continue;
        const double d = root_distance(a[i], b[j], k, eta);
        if (d < best) best = d, bi = i, bj = j;
      }
    }
    ua[bi] = ub[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double state_distance(const BetheState& a, const BetheState& b, cplx eta) {
  if (a.sector != b.sector) return std::numeric_limits<double>::infinity();
  return std::max(multiset_distance(a.lambda1, b.lambda1, 1, eta), multiset_distance(a.lambda2, b.lambda2, 2, eta));
}

bool states_equivalent(const BetheState& a, const BetheState& b, cplx eta, double tol) {
  return state_distance(a, b, eta) <= tol;
}

}  // namespace odba
