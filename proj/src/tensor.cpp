#include "odba/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace odba {

EigenDecomposition eig_general(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_general needs a square matrix");
  Eigen::ComplexEigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "complex Schur iteration did not converge (n=" << m.rows() << ", ||m||=" << m.norm() << ")";
    throw EigenError(msg.str());
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const double scale = std::max(m.norm(), 1e-300);
  for (Index k = 0; k < out.values.size(); ++k) {
    out.vectors.col(k).normalize();
    const double r = (m * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm() / scale;
    if (!(r <= 1e-10)) {
      std::ostringstream msg;
      msg << "eigenpair " << k << " residual " << r << " exceeds 1e-10 (n=" << m.rows() << ")";
      throw EigenError(msg.str());
    }
  }
  return out;
}

}  // namespace odba
