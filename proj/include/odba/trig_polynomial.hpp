#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "odba/tensor.hpp"

namespace odba {

// f(u) = sum_{k=k_min}^{k_max} C_k e^{2ku}; Coeff is a scalar or a dense matrix.
template <typename Coeff>
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int k_min, std::vector<Coeff> coeffs) : k_min_(k_min), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("empty trig polynomial");
  }

  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(coeffs_.size()) - 1; }
  const Coeff& coeff(int k) const {
    if (k < k_min() || k > k_max()) throw std::out_of_range("degree outside window");
    return coeffs_[static_cast<size_t>(k - k_min_)];
  }

  Coeff operator()(cplx u) const { return eval(u, 0); }
  Coeff derivative(cplx u) const { return eval(u, 1); }

 private:
  Coeff eval(cplx u, int order) const {
    Coeff acc = coeffs_.front() * cplx(0.0);
    for (int k = k_min(); k <= k_max(); ++k) {
      cplx w = std::exp(2.0 * double(k) * u);
      if (order == 1) w *= 2.0 * double(k);
      acc += coeff(k) * w;
    }
    return acc;
  }

  int k_min_ = 0;
  std::vector<Coeff> coeffs_;
};

class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr cplx kDefaultPhaseOffset{0.05, 0.035};

namespace detail {
inline double magnitude(cplx z) { return std::abs(z); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}
inline bool all_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}
}  // namespace detail

// Samples f at u_j = offset + i*pi*j/K and inverts the DFT in e^{2u}.
// Afterwards the result is re-evaluated at three fresh points.
template <typename Fn>
auto reconstruct_trig_polynomial(Fn&& f, int k_min, int k_max, cplx phase_offset = kDefaultPhaseOffset,
                                 double tol = 1e-9) {
  using Coeff = std::decay_t<decltype(f(cplx{}))>;
  if (k_max < k_min) throw std::invalid_argument("empty degree window");
  const int K = k_max - k_min + 1;
  // amplification of the e^{-2ku} weights relative to the unit circle
  const double amp = std::exp(2.0 * std::abs(phase_offset.real()) * std::max(std::abs(k_min), std::abs(k_max)));
  if (amp > 1e6) throw ReconstructionError("phase offset too far from the imaginary axis");

  std::vector<cplx> us(K);
  std::vector<Coeff> vals;
  vals.reserve(K);
  for (int j = 0; j < K; ++j) {
    us[j] = phase_offset + cplx(0.0, M_PI * j / K);
    vals.push_back(f(us[j]));
    if (!detail::all_finite(vals.back())) throw ReconstructionError("non-finite sample (degenerate phase offset)");
  }
  std::vector<Coeff> coeffs;
  coeffs.reserve(K);
  for (int k = k_min; k <= k_max; ++k) {
    Coeff acc = vals[0] * (std::exp(-2.0 * double(k) * us[0]) / double(K));
    for (int j = 1; j < K; ++j) acc += vals[j] * (std::exp(-2.0 * double(k) * us[j]) / double(K));
    coeffs.push_back(std::move(acc));
  }
  TrigPolynomial<Coeff> poly(k_min, std::move(coeffs));

  const cplx fresh[3] = {cplx(0.137, 0.291), cplx(-0.213, 1.017), cplx(0.311, -0.443)};
  for (cplx u : fresh) {
    const Coeff direct = f(u);
    const Coeff approx = poly(u);
    const double err = detail::magnitude(direct - approx) / std::max(1e-300, detail::magnitude(direct));
    if (!(err <= tol))
      throw ReconstructionError("trig polynomial re-evaluation residual " + std::to_string(err) +
                                " exceeds tolerance; wrong degree window?");
  }
  return poly;
}

}  // namespace odba
