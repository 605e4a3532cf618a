#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace odba {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Dense operator on a tensor product of small spaces. legs[k] is the local
// dimension of factor k; factor 0 is the most significant digit of the
// row/column index.
template <typename Scalar>
class BasicOperator {
 public:
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicOperator() = default;
  BasicOperator(MatrixType data, std::vector<Index> legs)
      : data_(std::move(data)), legs_(std::move(legs)) {
    Index d = 1;
    for (Index l : legs_) {
      if (l < 1) throw std::invalid_argument("leg dimension must be positive");
      d *= l;
    }
    if (data_.rows() != d || data_.cols() != d)
      throw std::invalid_argument("operator data does not match leg dimensions");
  }

  static BasicOperator identity(std::vector<Index> legs) {
    Index d = 1;
    for (Index l : legs) d *= l;
    return BasicOperator(MatrixType::Identity(d, d), std::move(legs));
  }
  static BasicOperator zero(std::vector<Index> legs) {
    Index d = 1;
    for (Index l : legs) d *= l;
    return BasicOperator(MatrixType::Zero(d, d), std::move(legs));
  }

  const MatrixType& data() const { return data_; }
  MatrixType& data() { return data_; }
  const std::vector<Index>& legs() const { return legs_; }
  Index dim() const { return data_.rows(); }
  Index num_legs() const { return static_cast<Index>(legs_.size()); }
  Scalar operator()(Index i, Index j) const { return data_(i, j); }

  BasicOperator& operator*=(const BasicOperator& o) {
    check_same(o);
    data_ = data_ * o.data_;
    return *this;
  }
  BasicOperator& operator+=(const BasicOperator& o) {
    check_same(o);
    data_ += o.data_;
    return *this;
  }
  BasicOperator& operator-=(const BasicOperator& o) {
    check_same(o);
    data_ -= o.data_;
    return *this;
  }
  BasicOperator& operator*=(Scalar s) {
    data_ *= s;
    return *this;
  }

  friend BasicOperator operator*(BasicOperator a, const BasicOperator& b) { return a *= b; }
  friend BasicOperator operator+(BasicOperator a, const BasicOperator& b) { return a += b; }
  friend BasicOperator operator-(BasicOperator a, const BasicOperator& b) { return a -= b; }
  friend BasicOperator operator*(BasicOperator a, Scalar s) { return a *= s; }
  friend BasicOperator operator*(Scalar s, BasicOperator a) { return a *= s; }

 private:
  void check_same(const BasicOperator& o) const {
    if (o.legs_ != legs_) throw std::invalid_argument("operator leg mismatch");
  }

  MatrixType data_;
  std::vector<Index> legs_;
};

using Operator = BasicOperator<cplx>;

inline std::vector<Index> uniform_legs(Index n, Index d = 3) {
  return std::vector<Index>(static_cast<size_t>(n), d);
}

namespace detail {

inline std::vector<Index> strides_of(const std::vector<Index>& legs) {
  std::vector<Index> s(legs.size(), 1);
  for (Index k = static_cast<Index>(legs.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * legs[k + 1];
  return s;
}

// Index layout for a local operator on `positions` inside `legs`:
// offsets[a] is the full-index offset of local index a, bases enumerates the
// full indices whose digits at `positions` are all zero.
struct LocalLayout {
  std::vector<Index> offsets;
  std::vector<Index> bases;
};

inline LocalLayout local_layout(const std::vector<Index>& legs, const std::vector<Index>& positions) {
  const Index n = static_cast<Index>(legs.size());
  std::vector<bool> used(legs.size(), false);
  for (Index p : positions) {
    if (p < 0 || p >= n) throw std::out_of_range("tensor position out of range");
    if (used[p]) throw std::invalid_argument("tensor positions must be distinct");
    used[p] = true;
  }
  const auto stride = strides_of(legs);
  LocalLayout out;

  Index local_dim = 1;
  for (Index p : positions) local_dim *= legs[p];
  out.offsets.resize(local_dim);
  for (Index a = 0; a < local_dim; ++a) {
    Index rem = a, off = 0;
    for (Index k = static_cast<Index>(positions.size()) - 1; k >= 0; --k) {
      const Index p = positions[k];
      off += (rem % legs[p]) * stride[p];
      rem /= legs[p];
    }
    out.offsets[a] = off;
  }

  std::vector<Index> rest;
  for (Index k = 0; k < n; ++k)
    if (!used[k]) rest.push_back(k);
  Index rest_dim = 1;
  for (Index k : rest) rest_dim *= legs[k];
  out.bases.resize(rest_dim);
  for (Index r = 0; r < rest_dim; ++r) {
    Index rem = r, off = 0;
    for (Index k = static_cast<Index>(rest.size()) - 1; k >= 0; --k) {
      off += (rem % legs[rest[k]]) * stride[rest[k]];
      rem /= legs[rest[k]];
    }
    out.bases[r] = off;
  }
  return out;
}

inline void check_local(const std::vector<Index>& op_legs, const std::vector<Index>& space,
                        const std::vector<Index>& positions) {
  if (op_legs.size() != positions.size()) throw std::invalid_argument("leg count does not match positions");
  for (size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] < 0 || positions[k] >= static_cast<Index>(space.size()))
      throw std::out_of_range("tensor position out of range");
    if (space[positions[k]] != op_legs[k]) throw std::invalid_argument("leg dimension mismatch");
  }
}

}  // namespace detail

template <typename S>
BasicOperator<S> kron(const BasicOperator<S>& a, const BasicOperator<S>& b) {
  typename BasicOperator<S>::MatrixType out(a.dim() * b.dim(), a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a(i, j) * b.data();
  std::vector<Index> legs = a.legs();
  legs.insert(legs.end(), b.legs().begin(), b.legs().end());
  return BasicOperator<S>(std::move(out), std::move(legs));
}

// x <- embed(op, positions) * x, where x has rows indexed by `space`.
template <typename S, typename Derived>
void apply_left(const BasicOperator<S>& op, const std::vector<Index>& positions,
                const std::vector<Index>& space, Eigen::MatrixBase<Derived>& x) {
  detail::check_local(op.legs(), space, positions);
  const auto lay = detail::local_layout(space, positions);
  const Index d = op.dim();
  typename BasicOperator<S>::MatrixType gathered(d, x.cols());
  for (Index base : lay.bases) {
    for (Index a = 0; a < d; ++a) gathered.row(a) = x.row(base + lay.offsets[a]);
    gathered = op.data() * gathered;
    for (Index a = 0; a < d; ++a) x.row(base + lay.offsets[a]) = gathered.row(a);
  }
}

// x <- x * embed(op, positions), where x has columns indexed by `space`.
template <typename S, typename Derived>
void apply_right(const BasicOperator<S>& op, const std::vector<Index>& positions,
                 const std::vector<Index>& space, Eigen::MatrixBase<Derived>& x) {
  detail::check_local(op.legs(), space, positions);
  const auto lay = detail::local_layout(space, positions);
  const Index d = op.dim();
  typename BasicOperator<S>::MatrixType gathered(x.rows(), d);
  for (Index base : lay.bases) {
    for (Index a = 0; a < d; ++a) gathered.col(a) = x.col(base + lay.offsets[a]);
    gathered = gathered * op.data();
    for (Index a = 0; a < d; ++a) x.col(base + lay.offsets[a]) = gathered.col(a);
  }
}

template <typename S>
void apply_left(const BasicOperator<S>& op, const std::vector<Index>& positions, BasicOperator<S>& x) {
  apply_left(op, positions, x.legs(), x.data());
}
template <typename S>
void apply_right(const BasicOperator<S>& op, const std::vector<Index>& positions, BasicOperator<S>& x) {
  apply_right(op, positions, x.legs(), x.data());
}

// Positions are 0-based and may be non-adjacent or permuted: op's k-th leg
// acts on factor positions[k].
template <typename S>
BasicOperator<S> embed(const BasicOperator<S>& op, const std::vector<Index>& positions,
                       const std::vector<Index>& space) {
  auto out = BasicOperator<S>::identity(space);
  apply_left(op, positions, out);
  return out;
}

template <typename S>
BasicOperator<S> embed(const BasicOperator<S>& op, const std::vector<Index>& positions, Index total_factors) {
  if (op.num_legs() == 0) throw std::invalid_argument("cannot embed a leg-less operator");
  return embed(op, positions, uniform_legs(total_factors, op.legs().front()));
}

template <typename S>
BasicOperator<S> partial_trace(const BasicOperator<S>& op, const std::vector<Index>& traced) {
  const auto& legs = op.legs();
  const auto lay = detail::local_layout(legs, traced);
  std::vector<Index> kept;
  for (Index k = 0; k < op.num_legs(); ++k)
    if (std::find(traced.begin(), traced.end(), k) == traced.end()) kept.push_back(legs[k]);
  const Index dk = static_cast<Index>(lay.bases.size());
  typename BasicOperator<S>::MatrixType out = BasicOperator<S>::MatrixType::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      S acc(0);
      for (Index off : lay.offsets) acc += op(lay.bases[i] + off, lay.bases[j] + off);
      out(i, j) = acc;
    }
  return BasicOperator<S>(std::move(out), std::move(kept));
}

template <typename S>
BasicOperator<S> partial_transpose(const BasicOperator<S>& op, const std::vector<Index>& positions) {
  const auto lay = detail::local_layout(op.legs(), positions);
  typename BasicOperator<S>::MatrixType out(op.dim(), op.dim());
  for (Index bi : lay.bases)
    for (Index bj : lay.bases)
      for (Index oa : lay.offsets)
        for (Index ob : lay.offsets) out(bi + oa, bj + ob) = op(bi + ob, bj + oa);
  return BasicOperator<S>(std::move(out), op.legs());
}

// ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F)
template <typename A, typename B>
double relative_residual(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs) {
  const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
  return (lhs - rhs).norm() / scale;
}
template <typename S>
double relative_residual(const BasicOperator<S>& lhs, const BasicOperator<S>& rhs) {
  return relative_residual(lhs.data(), rhs.data());
}

// Same as relative_residual but with the caller's scale instead of max(1, ...).
template <typename A, typename B>
double scaled_residual(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs, double scale) {
  return (lhs - rhs).norm() / std::max(scale, std::max(lhs.norm(), rhs.norm()));
}

template <typename A, typename B>
double commutator_residual(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const auto ab = (a * b).eval();
  const auto ba = (b * a).eval();
  return (ab - ba).norm() / std::max(ab.norm(), ba.norm());
}

struct EigenDecomposition {
  Vector values;
  Matrix vectors;  // columns are right eigenvectors, unit 2-norm
};

class EigenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// General complex eigenproblem (Schur-based). Throws EigenError if the solver
// does not converge or a returned pair misses ||m v - l v|| <= 1e-10 ||m||.
EigenDecomposition eig_general(const Matrix& m);

}  // namespace odba
