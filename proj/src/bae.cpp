#include "odba/bae.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace odba {

namespace {

using std::sinh;

// Cleared terms for each equation; residual_i = sum_j terms(i, j).
Eigen::MatrixX3cd cleared_terms(const BetheState& s, const SpectralContext& ctx) {
  const auto& spec = ctx.spec();
  const auto& pair = ctx.pair();
  const cplx e = ctx.eta();
  const Index n1 = static_cast<Index>(s.lambda1.size());
  const Index n2 = static_cast<Index>(s.lambda2.size());
  Eigen::MatrixX3cd t = Eigen::MatrixX3cd::Zero(n1 + n2, 3);
  for (Index i = 0; i < n1; ++i) {
    const cplx l = s.lambda1[i];
    const cplx s0 = sinh(2.0 * l), s1 = sinh(2.0 * l + e), s2 = sinh(2.0 * l + 2.0 * e),
               s3 = sinh(2.0 * l + 3.0 * e), sm = sinh(2.0 * l - e);
    const cplx aa = a0(l, spec), bb = b0(l, spec);
    const cplx q2 = q_function(2, l, s, spec), q2m = q_function(2, l - e, s, spec);
    t(i, 0) = k_decomposition(1, l, pair, e) * aa * q_function(1, l - e, s, spec) * q2 * s2;
    t(i, 1) = s0 * k_decomposition(2, l, pair, e) * bb * q_function(1, l + e, s, spec) * q2m;
    t(i, 2) = ctx.h() / 64.0 * s0 * s0 * s1 * s1 * s1 * s2 * s2 * s3 * sm * bb * aa * q2m * q2;
  }
  for (Index j = 0; j < n2; ++j) {
    const cplx l = s.lambda2[j];
    t(n1 + j, 0) = sinh(2.0 * l + 3.0 * e) * k_decomposition(2, l, pair, e) * q_function(1, l + e, s, spec) *
                   q_function(2, l - e, s, spec);
    t(n1 + j, 1) = sinh(2.0 * l + e) * k_decomposition(3, l, pair, e) * q_function(1, l, s, spec) *
                   q_function(2, l + e, s, spec);
  }
  return t;
}

// Largest |term| per equation; an equation whose terms all vanish counts as unsolved.
Eigen::VectorXd term_scales(const Eigen::MatrixX3cd& t) { return t.cwiseAbs().rowwise().maxCoeff(); }

Vector normalized(const Eigen::MatrixX3cd& t, const Eigen::VectorXd& scale) {
  Vector r(t.rows());
  for (Index i = 0; i < t.rows(); ++i) {
    const double s = scale(i);
    r(i) = (s > 0.0 && std::isfinite(s)) ? t.row(i).sum() / s : cplx(1.0);
  }
  return r;
}

std::vector<cplx> flatten(const BetheState& s) {
  std::vector<cplx> x = s.lambda1;
  x.insert(x.end(), s.lambda2.begin(), s.lambda2.end());
  return x;
}

BetheState unflatten(const std::vector<cplx>& x, int sector, size_t n1) {
  BetheState s;
  s.sector = sector;
  s.lambda1.assign(x.begin(), x.begin() + n1);
  s.lambda2.assign(x.begin() + n1, x.end());
  return s;
}

double residual_norm(const BetheState& s, const SpectralContext& ctx) {
  const double r = bae_residuals(s, ctx).norm();
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

const double kPi = M_PI;

// Residuals scaled by 1 + d^2 sum_j 1/|g_ij|^2, with g_ij = sinh(l_i - l_j) sinh(l_i + l_j + k eta)
// (and g_ii = sinh(2 l_i + k eta)). The factor diverges on coincident or crossing-partner roots,
// where LM otherwise settles on spurious double-zero configurations; zeros are unchanged.
Vector deflated_residuals(const BetheState& s, const SpectralContext& ctx, double d) {
  Vector r = bae_residuals(s, ctx);
  if (d <= 0.0) return r;
  const cplx e = ctx.eta();
  Index row = 0;
  auto scale = [&](const std::vector<cplx>& v, int k) {
    for (size_t i = 0; i < v.size(); ++i, ++row) {
      double acc = 1.0 / std::norm(sinh(2.0 * v[i] + double(k) * e));
      for (size_t j = 0; j < v.size(); ++j)
        if (j != i) acc += 1.0 / std::norm(sinh(v[i] - v[j]) * sinh(v[i] + v[j] + double(k) * e));
      r(row) *= 1.0 + d * d * acc;
    }
  };
  scale(s.lambda1, 1);
  scale(s.lambda2, 2);
  return r;
}

double deflated_norm(const BetheState& s, const SpectralContext& ctx, double d) {
  const double r = deflated_residuals(s, ctx, d).norm();
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

}  // namespace

Vector bae_residuals(const BetheState& state, const SpectralContext& ctx) {
  const auto t = cleared_terms(state, ctx);
  return normalized(t, term_scales(t));
}

RefineResult refine(const BetheState& seed, const SpectralContext& ctx, const SolveOptions& opt) {
  validate(seed, ctx.spec().n_sites);
  const size_t n1 = seed.lambda1.size();
  std::vector<cplx> x = flatten(seed);
  const Index n = static_cast<Index>(x.size());
  RefineResult out;
  out.state = seed;
  const double d = opt.deflation;
  double r = deflated_norm(seed, ctx, d);
  double mu = 1e-3;
  for (int it = 0; it < opt.max_iter; ++it) {
    out.iterations = it;
    if (residual_norm(unflatten(x, seed.sector, n1), ctx) <= opt.tol) break;
    const Vector f = deflated_residuals(unflatten(x, seed.sector, n1), ctx, d);
    Eigen::MatrixXd jr(2 * n, 2 * n);
    for (Index k = 0; k < n; ++k) {
      const double hk = opt.fd_step * std::max(1.0, std::abs(x[k]));
      for (int part = 0; part < 2; ++part) {
        const cplx dir = part == 0 ? cplx(hk, 0.0) : cplx(0.0, hk);
        auto xp = x, xm = x;
        xp[k] += dir;
        xm[k] -= dir;
        const Vector df = (deflated_residuals(unflatten(xp, seed.sector, n1), ctx, d) -
                           deflated_residuals(unflatten(xm, seed.sector, n1), ctx, d)) / (2.0 * hk);
        jr.col(k + part * n) << df.real(), df.imag();
      }
    }
    Eigen::VectorXd fr(2 * n);
    fr << f.real(), f.imag();
    if (!jr.allFinite() || !fr.allFinite()) break;
    const Eigen::MatrixXd jtj = jr.transpose() * jr;
    const Eigen::VectorXd g = jr.transpose() * fr;
    const Eigen::VectorXd diag = jtj.diagonal().cwiseMax(1e-12);
    bool accepted = false;
    for (int trial = 0; trial < 16 && !accepted; ++trial) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += mu * diag;
      const Eigen::VectorXd step = a.ldlt().solve(-g);
      if (!step.allFinite()) {
        mu *= 10.0;
        continue;
      }
      auto xn = x;
      for (Index k = 0; k < n; ++k) xn[k] += cplx(step(k), step(n + k));
      const BetheState cand = unflatten(xn, seed.sector, n1);
      const double rn = deflated_norm(cand, ctx, d);
      if (rn < r) {
        x = xn;
        r = rn;
        mu = std::max(mu / 5.0, 1e-14);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;
    bool escaped = false;
    for (auto& z : x) {
      if (std::abs(z.real()) > opt.max_re) escaped = true;
      z = {z.real(), z.imag() - kPi * std::round(z.imag() / kPi)};
    }
    if (escaped) break;
  }
  out.state = unflatten(x, seed.sector, n1);
  out.residual_norm = residual_norm(out.state, ctx);
  out.converged = out.residual_norm <= opt.tol;
  return out;
}

BetheState random_start(int n_sites, int sector, std::uint64_t rng_seed, int index, bool table_aware) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(sector), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> re(-1.5, 1.5), im(-kPi / 2, kPi / 2), u01(0.0, 1.0);
  BetheState s;
  s.sector = sector;
  const int n1 = n_sites + sector + 6;
  if (!table_aware) {
    for (int i = 0; i < n1; ++i) s.lambda1.emplace_back(re(rng), im(rng));
    for (int i = 0; i < sector; ++i) s.lambda2.emplace_back(re(rng), im(rng));
    return s;
  }
  // Conjugate pairs near the real axis and near Im = +-1.35, single roots on Im = 0 or pi/2.
  std::normal_distribution<double> jitter(0.0, 0.05);
  std::uniform_real_distribution<double> re_pos(-0.2, 1.2), im_small(0.02, 0.4);
  auto fill = [&](std::vector<cplx>& v, int count) {
    while (static_cast<int>(v.size()) < count) {
      const double p = u01(rng);
      const double x = re_pos(rng);
      if (p < 0.35 && static_cast<int>(v.size()) + 2 <= count) {
        const double y = im_small(rng);
        v.emplace_back(x, y);
        v.emplace_back(x + jitter(rng) * 0.2, -y + jitter(rng) * 0.2);
      } else if (p < 0.55 && static_cast<int>(v.size()) + 2 <= count) {
        const double y = 1.35 + jitter(rng);
        v.emplace_back(x, y);
        v.emplace_back(x + jitter(rng) * 0.2, -y + jitter(rng) * 0.2);
      } else if (p < 0.75) {
        v.emplace_back(x, kPi / 2 + jitter(rng) * 0.2);
      } else {
        v.emplace_back(x, jitter(rng));
      }
    }
  };
  fill(s.lambda1, n1);
  fill(s.lambda2, sector);
  return s;
}

bool has_degenerate_roots(const BetheState& state, cplx eta, double tol) {
  auto check = [&](const std::vector<cplx>& v, int k) {
    for (size_t i = 0; i < v.size(); ++i) {
      // self-partner root: lambda = -lambda - k eta mod i*pi
      if (std::abs(std::sinh(2.0 * v[i] + double(k) * eta)) < tol) return true;
      for (size_t j = i + 1; j < v.size(); ++j)
        if (root_distance(v[i], v[j], k, eta) < tol) return true;
    }
    return false;
  };
  return check(state.lambda1, 1) || check(state.lambda2, 2);
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ODBA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SolveSummary newton_solve(const SolveTask& task) {
  const auto& ctx = task.ctx;
  const cplx eta = ctx.eta();
  const int n_sites = ctx.spec().n_sites;
  const int n_seeds = static_cast<int>(task.seeds.size());
  const int total = n_seeds + std::max(0, task.starts);
  const int workers = worker_count(task.threads);
  const int batch = std::max(8, 4 * workers);
  SolveSummary summary;

  auto known = [&](const BetheState& s, double tol) {
    for (const auto& r : summary.results)
      if (state_distance(r.state, s, eta) <= tol) return true;
    return false;
  };

  const bool coefficient = task.mode == StartMode::coefficient && task.starts > 0;
  std::optional<CoefficientSeeder> seeder;
  if (coefficient) seeder.emplace(ctx);

  for (int begin = 0; begin < total; begin += batch) {
    const int end = std::min(total, begin + batch);
    std::vector<std::optional<BetheState>> starts(end - begin);
    std::vector<bool> skip(end - begin, false);
    for (int i = begin; i < end; ++i) {
      if (i < n_seeds) {
        starts[i - begin] = task.seeds[i];
      } else if (!coefficient) {
        starts[i - begin] = random_start(n_sites, ctx.sector(), task.rng_seed, i - n_seeds,
                                         task.mode == StartMode::table_aware);
        if (known(*starts[i - begin], task.options.reject_radius)) skip[i - begin] = true;
      }
    }
    std::vector<std::optional<RefineResult>> runs(end - begin);
    std::atomic<int> next{0};
    auto work = [&] {
      for (int k = next++; k < end - begin; k = next++) {
        if (skip[k]) continue;
        if (!starts[k]) starts[k] = seeder->start(task.rng_seed, begin + k - n_seeds);
        if (starts[k]) runs[k] = refine(*starts[k], ctx, task.options);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(workers, end - begin); ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    // Merge in start order so results do not depend on scheduling.
    for (int k = 0; k < end - begin; ++k) {
      if (skip[k]) {
        ++summary.rejected_seeds;
        continue;
      }
      ++summary.attempts;
      if (!runs[k]) {
        ++summary.seed_failures;
        continue;
      }
      if (!runs[k]->converged) continue;
      ++summary.converged;
      const BetheState s = canonicalize(runs[k]->state);
      if (has_degenerate_roots(s, eta)) {
        ++summary.degenerate;
        continue;
      }
      if (known(s, task.options.dedup_tol)) {
        ++summary.duplicates;
        continue;
      }
      SolveResult res;
      res.state = s;
      res.residual_norm = runs[k]->residual_norm;
      res.iterations = runs[k]->iterations;
      res.origin = begin + k;
      const auto& th = ctx.spec().theta;
      if (std::all_of(th.begin(), th.end(), [](cplx t) { return t == 0.0; })) {
        try {
          res.energy = energy(s, ctx);
        } catch (const PoleError&) {
        }
      }
      summary.results.push_back(std::move(res));
    }
  }
  return summary;
}

std::vector<HomotopyStep> track_theta(const BetheState& start, const ChainSpec& spec, const BoundaryPair& pair,
                                      const std::vector<cplx>& from, const std::vector<cplx>& to, int steps,
                                      const SolveOptions& opt) {
  if (from.size() != static_cast<size_t>(spec.n_sites) || to.size() != from.size())
    throw std::invalid_argument("theta vectors must have one entry per site");
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  std::vector<HomotopyStep> path;
  BetheState cur = start;
  for (int k = 0; k <= steps; ++k) {
    const double t = double(k) / steps;
    ChainSpec sp = spec;
    for (size_t j = 0; j < from.size(); ++j) sp.theta[j] = (1.0 - t) * from[j] + t * to[j];
    const SpectralContext ctx(sp, pair, start.sector);
    const RefineResult r = refine(cur, ctx, opt);
    HomotopyStep step{t, r.state, r.residual_norm, r.converged, std::nullopt};
    if (std::all_of(sp.theta.begin(), sp.theta.end(), [](cplx x) { return x == 0.0; })) {
      try {
        step.energy = energy(r.state, ctx);
      } catch (const PoleError&) {
      }
    }
    path.push_back(step);
    if (!r.converged) break;
    cur = r.state;
  }
  return path;
}

SpectrumReference::SpectrumReference(ChainSpec spec, BoundaryPair pair, cplx probe)
    : spec_(std::move(spec)), pair_(pair), basis_(common_eigenbasis(spec_, pair_, probe)) {
  charges_ = basis_.charges(pair_.kind());
}

Vector SpectrumReference::eigenvalues_at(cplx u) const {
  return basis_.eigenvalues(transfer_matrix(u, spec_, pair_).data());
}

std::vector<double> linear_grid(double from, double to, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = points == 1 ? from : from + (to - from) * i / (points - 1);
  return g;
}

VerificationReport verify_against_spectrum(const std::vector<BetheState>& states, const SpectrumReference& ref,
                                           const std::vector<double>& grid, double tol, double offset) {
  VerificationReport rep;
  rep.dimension = static_cast<int>(ref.dimension());
  const Eigen::VectorXd charges = ref.charges();
  std::vector<std::pair<double, Vector>> cache;
  auto curves = [&](cplx u) -> const Vector& {
    for (const auto& [x, v] : cache)
      if (x == u.real()) return v;
    cache.emplace_back(u.real(), ref.eigenvalues_at(u));
    return cache.back().second;
  };
  std::set<int> hit;
  for (const auto& s : states) {
    const SpectralContext ctx(ref.spec(), ref.pair(), s.sector);
    StateMatch m;
    Eigen::VectorXd sup = Eigen::VectorXd::Zero(rep.dimension);
    for (double g : grid) {
      cplx u = g;
      if (pole_distance(u, s, ctx, 1) < 1e-6) {
        u += offset;
        ++m.shifted_points;
      }
      const cplx lam = lambda1(u, s, ctx);
      const Vector& ev = curves(u);
      sup = sup.cwiseMax((ev.array() - lam).abs().matrix());
    }
    Index best = 0;
    m.sup_error = sup.minCoeff(&best);
    double second = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < sup.size(); ++k)
      if (k != best) second = std::min(second, sup(k));
    m.second_best = second;
    m.charge = charges(best);
    if (m.sup_error <= tol) {
      m.index = static_cast<int>(best);
      m.ambiguous = second <= tol;
      hit.insert(static_cast<int>(best));
    }
    rep.matches.push_back(m);
  }
  rep.coverage = static_cast<int>(hit.size());
  return rep;
}

}  // namespace odba
