#include "odba/asymptotics.hpp"

#include <cmath>

namespace odba {

SectorAsymptotics sector_asymptotics(const ChainSpec& spec, const BoundaryPair& pair, int sector) {
  const auto& b = pair.minus;
  const auto& p = pair.plus;
  const cplx e = spec.eta;
  const double n = spec.n_sites, q = sector;
  const cplx A = b.c * p.c1 * p.c2 / p.c;
  const cplx B = p.c * b.c1 * b.c2 / b.c;
  const double n1 = -1.0 / std::pow(4.0, n + 1), n2 = -1.0 / std::pow(4.0, 2 * n + 3);
  using std::exp;
  SectorAsymptotics s;
  switch (pair.kind()) {
    case BoundaryKind::I: {
      const cplx X = b.c1 * p.c2 + p.c1 * b.c2 * exp(2.0 * e);
      const cplx up = A * exp(e) * exp(2.0 * e * q) + X * exp(n * e) * exp(-e * q);
      const cplx dn = B * exp(e) * exp(-2.0 * e * q) + X * exp(-n * e) * exp(e * q);
      s.t_top = n1 * exp(3.0 * e) * up;
      s.t_bottom = n1 * exp(-3.0 * e) * dn;
      s.t2_top = n2 * exp(4.0 * e) * A * dn;
      s.t2_bottom = n2 * exp(-2.0 * e) * B * up;
      break;
    }
    case BoundaryKind::II: {
      const cplx X = b.c1 * p.c2 + p.c1 * b.c2 * exp(4.0 * e);
      const cplx up = B * exp(2.0 * e) * exp(2.0 * e * q) + X * exp(n * e) * exp(-e * q);
      const cplx dn = A * exp(2.0 * e) * exp(-2.0 * e * q) + X * exp(-n * e) * exp(e * q);
      s.t_top = n1 * exp(3.0 * e) * up;
      s.t_bottom = n1 * exp(-3.0 * e) * dn;
      s.t2_top = n2 * exp(5.0 * e) * B * dn;
      s.t2_bottom = n2 * exp(-e) * A * up;
      break;
    }
    case BoundaryKind::III: {
      const cplx X = b.c1 * p.c2 + p.c1 * b.c2 * exp(2.0 * e);
      const cplx up = B * exp(e) * exp(2.0 * e * q) + X * exp(n * e) * exp(-e * q);
      const cplx dn = A * exp(e) * exp(-2.0 * e * q) + X * exp(-n * e) * exp(e * q);
      s.t_top = n1 * exp(5.0 * e) * up;
      s.t_bottom = n1 * exp(-e) * dn;
      s.t2_top = n2 * exp(8.0 * e) * B * dn;
      s.t2_bottom = n2 * exp(2.0 * e) * A * up;
      break;
    }
  }
  return s;
}

}  // namespace odba
