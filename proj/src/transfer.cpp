#include "odba/transfer.hpp"

#include <cmath>

#include "odba/trig_polynomial.hpp"
#include "odba/vertex.hpp"

namespace odba {

bool ChainSpec::is_homogeneous() const {
  for (cplx t : theta)
    if (t != 0.0) return false;
  return true;
}

void validate(const ChainSpec& spec) {
  if (spec.n_sites < 1) throw std::invalid_argument("chain needs at least one site");
  if (static_cast<int>(spec.theta.size()) != spec.n_sites)
    throw std::invalid_argument("theta must have one entry per site");
  validate_generic(BulkParams{spec.eta});
}

namespace {

// X <- X * embed(op, positions), accumulated left to right.
class Product {
 public:
  explicit Product(std::vector<Index> space) : x_(Operator::identity(space)) {}
  Product& mul(const Operator& op, const std::vector<Index>& positions) {
    apply_right(op, positions, x_);
    return *this;
  }
  const Operator& result() const { return x_; }

 private:
  Operator x_;
};

// Layout of the space for t_m: aux legs 0..m-1, sites m..m+N-1.
struct Layout {
  int m, n;
  Index site(int j) const { return m + j; }
  std::vector<Index> space() const { return uniform_legs(m + n); }
};

void mul_monodromy(Product& p, cplx u, Index aux, const Layout& lay, const ChainSpec& spec) {
  for (int j = spec.n_sites - 1; j >= 0; --j) p.mul(r_matrix(u - spec.theta[j], spec.eta), {aux, lay.site(j)});
}

void mul_hat_monodromy(Product& p, cplx u, Index aux, const Layout& lay, const ChainSpec& spec) {
  for (int j = 0; j < spec.n_sites; ++j) p.mul(r_matrix(u + spec.theta[j], spec.eta), {lay.site(j), aux});
}

std::vector<Index> reversed(std::vector<Index> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// P^-_{aux...} (forward) or P^-_{...aux} (reversed); identity for one leg.
void mul_projector(Product& p, const std::vector<Index>& aux, bool reverse, const FusionProjectors& fp) {
  if (aux.size() < 2) return;
  const auto pos = reverse ? reversed(aux) : aux;
  p.mul(aux.size() == 2 ? fp.p12 : fp.p123, pos);
}

void mul_k_plus_projected(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                          const BoundaryPair& pair, const FusionProjectors& fp);

// Unprojected K+_{a1..am}(u) = K+_<a2..am>(u-eta) prod_k M_k^{-1} R_{1m}...R_{12} prod_k M_k K+_1(u)
void mul_k_plus_fused(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                      const BoundaryPair& pair, const FusionProjectors& fp) {
  const cplx eta = spec.eta;
  const size_t m = aux.size();
  if (m > 1) {
    const std::vector<Index> inner(aux.begin() + 1, aux.end());
    mul_k_plus_projected(p, u - eta, inner, spec, pair, fp);
    const Operator minv(crossing_matrix(eta).data().inverse(), {3});
    for (size_t k = 1; k < m; ++k) p.mul(minv, {aux[k]});
    for (size_t k = m - 1; k >= 1; --k) p.mul(r_matrix(-2.0 * u + double(k) * eta - 3.0 * eta, eta), {aux[0], aux[k]});
    for (size_t k = 1; k < m; ++k) p.mul(crossing_matrix(eta), {aux[k]});
  }
  p.mul(k_plus(u, pair, eta), {aux[0]});
}

void mul_k_plus_projected(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                          const BoundaryPair& pair, const FusionProjectors& fp) {
  mul_projector(p, aux, false, fp);
  mul_k_plus_fused(p, u, aux, spec, pair, fp);
  mul_projector(p, aux, true, fp);
}

void mul_k_minus_projected(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                           const BoundaryPair& pair, const FusionProjectors& fp);

// Unprojected K-_{a1..am}(u) = K-_1(u) R_21(2u-eta)...R_m1(2u-(m-1)eta) K-_<a2..am>(u-eta)
void mul_k_minus_fused(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                       const BoundaryPair& pair, const FusionProjectors& fp) {
  const cplx eta = spec.eta;
  p.mul(k_minus(u, pair.minus), {aux[0]});
  for (size_t k = 1; k < aux.size(); ++k) p.mul(r_matrix(2.0 * u - double(k) * eta, eta), {aux[k], aux[0]});
  if (aux.size() > 1) {
    const std::vector<Index> inner(aux.begin() + 1, aux.end());
    mul_k_minus_projected(p, u - eta, inner, spec, pair, fp);
  }
}

void mul_k_minus_projected(Product& p, cplx u, const std::vector<Index>& aux, const ChainSpec& spec,
                           const BoundaryPair& pair, const FusionProjectors& fp) {
  mul_projector(p, aux, true, fp);
  mul_k_minus_fused(p, u, aux, spec, pair, fp);
  mul_projector(p, aux, false, fp);
}

std::vector<Index> aux_legs(int m) {
  std::vector<Index> aux(m);
  std::iota(aux.begin(), aux.end(), 0);
  return aux;
}

}  // namespace

Operator monodromy(cplx u, const ChainSpec& spec) {
  const Layout lay{1, spec.n_sites};
  Product p(lay.space());
  mul_monodromy(p, u, 0, lay, spec);
  return p.result();
}

Operator hat_monodromy(cplx u, const ChainSpec& spec) {
  const Layout lay{1, spec.n_sites};
  Product p(lay.space());
  mul_hat_monodromy(p, u, 0, lay, spec);
  return p.result();
}

Operator transfer_matrix(cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  return fused_transfer(1, u, spec, pair);
}

FusionProjectors fusion_projectors(cplx eta) {
  const cplx q = std::exp(eta);
  const cplx n2 = 1.0 / std::sqrt(2.0 * q * std::cosh(eta));
  Matrix p12 = Matrix::Zero(9, 9);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& ij : pairs) {
    Vector v = Vector::Zero(9);
    v(3 * ij[0] + ij[1]) = n2;
    v(3 * ij[1] + ij[0]) = -q * n2;
    p12 += v * v.transpose();  // bilinear, not Hermitian: stays idempotent for complex eta
  }

  const cplx n3 = 1.0 / std::sqrt(2.0 * std::exp(3.0 * eta) * (2.0 * std::cosh(eta) + std::cosh(3.0 * eta)));
  Vector phi = Vector::Zero(27);
  auto at = [&](int i, int j, int k) -> cplx& { return phi(9 * i + 3 * j + k); };
  at(0, 1, 2) = n3;
  at(0, 2, 1) = -q * n3;
  at(2, 0, 1) = q * q * n3;
  at(1, 0, 2) = -q * n3;
  at(1, 2, 0) = q * q * n3;
  at(2, 1, 0) = -q * q * q * n3;
  Matrix p123 = phi * phi.transpose();

  Vector s12(9);
  s12 << 1.0, q, q, 1.0 / q, 1.0, q, 1.0 / q, 1.0 / q, 1.0;
  s12 *= -std::sinh(2.0 * eta);

  Vector s123 = Vector::Ones(27);
  s123(5) = q * q * q;
  s123(7) = q;
  s123(11) = q;
  s123(15) = 1.0 / q;
  s123(19) = 1.0 / q;
  s123(21) = 1.0 / (q * q * q);
  s123 *= -2.0 * std::sinh(2.0 * eta) * std::sinh(eta) * std::sinh(eta) * (2.0 * std::cosh(eta) + std::cosh(3.0 * eta));

  return FusionProjectors{Operator(p12, {3, 3}), Operator(p123, {3, 3, 3}),
                          Operator(Matrix(s12.asDiagonal()), {3, 3}), Operator(Matrix(s123.asDiagonal()), {3, 3, 3}),
                          phi};
}

Operator fused_transfer(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  if (m < 1 || m > 3) throw std::invalid_argument("fusion level must be 1, 2 or 3");
  const cplx eta = spec.eta;
  const Layout lay{m, spec.n_sites};
  const auto fp = fusion_projectors(eta);
  const auto aux = aux_legs(m);

  Product p(lay.space());
  mul_k_plus_projected(p, u, aux, spec, pair, fp);
  mul_projector(p, aux, true, fp);
  for (int k = 0; k < m; ++k) mul_monodromy(p, u - double(k) * eta, k, lay, spec);
  mul_projector(p, aux, true, fp);
  mul_k_minus_projected(p, u, aux, spec, pair, fp);
  mul_projector(p, aux, false, fp);
  for (int k = 0; k < m; ++k) mul_hat_monodromy(p, u - double(k) * eta, k, lay, spec);
  mul_projector(p, aux, false, fp);
  return partial_trace(p.result(), aux);
}

Operator fused_k_plus(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  const auto fp = fusion_projectors(spec.eta);
  Product p(uniform_legs(m));
  mul_k_plus_projected(p, u, aux_legs(m), spec, pair, fp);
  return p.result();
}

Operator fused_k_minus(int m, cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  const auto fp = fusion_projectors(spec.eta);
  Product p(uniform_legs(m));
  mul_k_minus_projected(p, u, aux_legs(m), spec, pair, fp);
  return p.result();
}

cplx delta_q_t(cplx u, const ChainSpec& spec) {
  cplx out = 1.0;
  const cplx e = spec.eta;
  for (cplx t : spec.theta) out *= std::sinh(u - t + e) * std::sinh(u - t - e) * std::sinh(u - t - 2.0 * e);
  return out;
}

cplx delta_q_t_hat(cplx u, const ChainSpec& spec) {
  cplx out = 1.0;
  const cplx e = spec.eta;
  for (cplx t : spec.theta) out *= std::sinh(u + t + e) * std::sinh(u + t - e) * std::sinh(u + t - 2.0 * e);
  return out;
}

cplx quantum_determinant(cplx u, const ChainSpec& spec, const BoundaryPair& pair) {
  return delta_q_t(u, spec) * delta_q_t_hat(u, spec) * delta_q_k_plus(u, pair.plus, spec.eta) *
         delta_q_k_minus(u, pair.minus, spec.eta);
}

Operator conserved_charge(BoundaryKind kind, int n_sites) {
  const Index d = static_cast<Index>(std::pow(3, n_sites));
  const int digit = static_cast<int>(kind) - 1;
  Matrix q = Matrix::Zero(d, d);
  for (Index idx = 0; idx < d; ++idx) {
    Index rem = idx;
    int count = 0;
    for (int k = 0; k < n_sites; ++k, rem /= 3)
      if (rem % 3 == digit) ++count;
    q(idx, idx) = double(count);
  }
  return Operator(std::move(q), uniform_legs(n_sites));
}

Operator hamiltonian(const ChainSpec& spec, const BoundaryPair& pair) {
  if (!spec.is_homogeneous()) throw std::invalid_argument("the Hamiltonian is defined at theta = 0");
  const int n = spec.n_sites;
  const auto poly = reconstruct_trig_polynomial(
      [&](cplx u) { return Matrix(transfer_matrix(u, spec, pair).data()); }, -(n + 2), n + 2);
  const Matrix t0 = transfer_matrix(0.0, spec, pair).data();
  const cplx scalar = t0(0, 0);
  if (std::abs(scalar) < 1e-12 * std::max(1.0, t0.norm()))
    throw std::invalid_argument("t(0) vanishes; Hamiltonian normalization is singular");
  if ((t0 - scalar * Matrix::Identity(t0.rows(), t0.cols())).norm() > 1e-9 * std::abs(scalar) * t0.rows())
    throw std::runtime_error("t(0) is not proportional to the identity");
  return Operator(std::sinh(spec.eta) * poly.derivative(0.0) / scalar, uniform_legs(n));
}

Eigen::VectorXd CommonEigenbasis::charges(BoundaryKind kind) const {
  const int digit = static_cast<int>(kind) - 1;
  const Index d = vectors.rows();
  int n = 0;
  for (Index x = d; x > 1; x /= 3) ++n;
  Eigen::VectorXd q(d), out(vectors.cols());
  for (Index idx = 0; idx < d; ++idx) {
    Index rem = idx;
    int count = 0;
    for (int k = 0; k < n; ++k, rem /= 3)
      if (rem % 3 == digit) ++count;
    q(idx) = count;
  }
  for (Index c = 0; c < vectors.cols(); ++c) {
    const Eigen::VectorXd w = vectors.col(c).cwiseAbs2();
    out(c) = w.dot(q) / w.sum();
  }
  return out;
}

CommonEigenbasis common_eigenbasis(const ChainSpec& spec, const BoundaryPair& pair, cplx probe) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix t = transfer_matrix(probe, spec, pair).data();
    const auto eig = eig_general(t);
    double gap = std::numeric_limits<double>::infinity();
    const double scale = std::max(1e-300, eig.values.cwiseAbs().maxCoeff());
    for (Index i = 0; i < eig.values.size(); ++i)
      for (Index j = i + 1; j < eig.values.size(); ++j) gap = std::min(gap, std::abs(eig.values(i) - eig.values(j)) / scale);
    if (gap >= 1e-8) {
      Eigen::PartialPivLU<Matrix> lu(eig.vectors);
      return CommonEigenbasis{probe, eig.vectors, lu.inverse()};
    }
    probe += cplx(0.0123 * (attempt + 1), -0.0071 * (attempt + 1));
  }
  throw EigenError("no probe point with a non-degenerate transfer-matrix spectrum");
}

}  // namespace odba
