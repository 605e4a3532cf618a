#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "odba/tq.hpp"

namespace odba {

// Cleared-denominator BAE residuals, one per root (lambda1 then lambda2),
// each divided by its largest cleared term.
Vector bae_residuals(const BetheState& state, const SpectralContext& ctx);

struct SolveOptions {
  double tol = 1e-12;     // on ||bae_residuals||_2
  int max_iter = 200;
  double fd_step = 1e-7;  // relative central-difference step
  double max_re = 4.0;    // abandon a run once |Re lambda| exceeds this
  double dedup_tol = 1e-8;
  double reject_radius = 1e-2;  // seeds this close to a known state are skipped
  double deflation = 0.0;       // repulsion between coincident or crossing-partner roots in the LM merit
};

struct RefineResult {
  BetheState state;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt damped Newton on the real/imaginary split system.
RefineResult refine(const BetheState& seed, const SpectralContext& ctx, const SolveOptions& opt = {});

// uniform: roots drawn from the strip |Re| <= 1.5, |Im| <= pi/2.
// table_aware: the same strip, biased toward the benchmark root patterns.
// coefficient: roots of a converged coefficient-space problem (CoefficientSeeder).
enum class StartMode { uniform, table_aware, coefficient };

struct SolveTask {
  SpectralContext ctx;
  std::vector<BetheState> seeds;
  int starts = 0;
  std::uint64_t rng_seed = 1;
  StartMode mode = StartMode::uniform;
  SolveOptions options;
  int threads = 0;  // 0: ODBA_THREADS or hardware concurrency
};

struct SolveResult {
  BetheState state;  // canonical
  double residual_norm = 0.0;
  std::optional<int> matched_eigenvalue_index;
  std::optional<cplx> energy;
  int iterations = 0;
  int origin = 0;  // seed index, or seeds.size() + start index
};

struct SolveSummary {
  std::vector<SolveResult> results;
  int attempts = 0;
  int converged = 0;
  int duplicates = 0;
  int rejected_seeds = 0;
  int degenerate = 0;
  int seed_failures = 0;  // coefficient starts that produced no root set
};

SolveSummary newton_solve(const SolveTask& task);

// Random start for sector M (uniform, or biased toward the benchmark root patterns).
BetheState random_start(int n_sites, int sector, std::uint64_t rng_seed, int index, bool table_aware);

// Refines `start` along theta(t) = (1 - t) from + t to, t = k/steps, each step seeded by the last.
struct HomotopyStep {
  double t = 0.0;
  BetheState state;
  double residual_norm = 0.0;
  bool converged = false;
  std::optional<cplx> energy;  // at theta = 0 only
};
std::vector<HomotopyStep> track_theta(const BetheState& start, const ChainSpec& spec, const BoundaryPair& pair,
                                      const std::vector<cplx>& from, const std::vector<cplx>& to, int steps = 10,
                                      const SolveOptions& opt = {});

// Start generator working on the T-Q identity
//   s1 s2 Q1 Q2 Lambda = (Lambda-free terms),   s_k = sinh(2u + k eta),
// sampled on u_j = 0.05 + i pi j/K. Lambda is its sector asymptotics plus free interior
// coefficients, pinned wherever t(u) is a scalar (u = 0, -3eta/2 and their i pi/2 shifts
// for a homogeneous chain). Q1 enters linearly and is eliminated by least squares; Q2 is
// carried by its roots. The interior coefficients are drawn around the sector mean of t(u),
// tr(P_M t(u))/dim, with the spread of the sector's coefficient operators.
class CoefficientSeeder {
 public:
  explicit CoefficientSeeder(const SpectralContext& ctx);

  // LM from the index-th draw; the root set if the identity residual fell below 1e-6.
  std::optional<BetheState> start(std::uint64_t rng_seed, int index) const;

  int free_coefficients() const { return static_cast<int>(basis_.cols()); }
  int pinned_points() const { return pinned_; }
  int sector_dimension() const { return dimension_; }

  // Normalized identity residual for interior coordinates w and Q2 roots mu.
  double identity_residual(const Vector& w, const std::vector<cplx>& mu) const;
  // Interior coordinates of a given Lambda (coefficients of e^{2ku}, |k| <= N + 1).
  Vector coordinates(const Vector& interior) const;

 private:
  struct Eval {
    Vector r;
    Vector g1;
  };
  Eval evaluate(const Vector& y, bool repel) const;

  SpectralContext ctx_;
  int n_, m_, l1_, k_;
  cplx top_, bottom_;
  std::vector<cplx> us_;
  Matrix coef_;      // per sample: s0, s1, s2, s3, K1 a0, K2 b0, K3 b0, inhomogeneous factor
  Vector particular_;
  Matrix basis_;     // interior = particular + basis * w
  Vector mean_;
  Eigen::VectorXd spread_;
  std::vector<cplx> repel_points_;
  int pinned_ = 0;
  int dimension_ = 0;
};

// True if two roots coincide or a root meets a crossing partner (double zero of a Q-function).
bool has_degenerate_roots(const BetheState& state, cplx eta, double tol = 1e-6);

int worker_count(int requested);

// Exact eigenvalue curves of t(u) read in the common eigenbasis.
class SpectrumReference {
 public:
  SpectrumReference(ChainSpec spec, BoundaryPair pair, cplx probe = kDefaultProbe);
  Vector eigenvalues_at(cplx u) const;
  Eigen::VectorXd charges() const { return charges_; }
  Index dimension() const { return basis_.vectors.cols(); }
  const ChainSpec& spec() const { return spec_; }
  const BoundaryPair& pair() const { return pair_; }

 private:
  ChainSpec spec_;
  BoundaryPair pair_;
  CommonEigenbasis basis_;
  Eigen::VectorXd charges_;
};

struct StateMatch {
  std::optional<int> index;
  double sup_error = 0.0;
  double second_best = 0.0;
  double charge = 0.0;
  bool ambiguous = false;
  int shifted_points = 0;
};

struct VerificationReport {
  std::vector<StateMatch> matches;
  int coverage = 0;  // distinct eigenvalue curves reproduced
  int dimension = 0;
};

// Uniform grid of `points` values in [from, to].
std::vector<double> linear_grid(double from, double to, int points);

// Matches each state's Lambda(u) to an exact curve by sup-norm over the grid.
// Grid points within 1e-6 of a pole are moved by `offset`.
VerificationReport verify_against_spectrum(const std::vector<BetheState>& states, const SpectrumReference& ref,
                                           const std::vector<double>& grid, double tol = 1e-6,
                                           double offset = 1e-3);

}  // namespace odba
