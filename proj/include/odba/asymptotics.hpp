#pragma once

#include "odba/boundary.hpp"
#include "odba/transfer.hpp"

namespace odba {

// Leading (e^{2(N+2)u}, e^{-2(N+2)u}) coefficients of the t eigenvalue and
// (e^{2(2N+6)u}, e^{-2(2N+6)u}) coefficients of the t_2 eigenvalue in charge sector M.
struct SectorAsymptotics {
  cplx t_top, t_bottom, t2_top, t2_bottom;
};

SectorAsymptotics sector_asymptotics(const ChainSpec& spec, const BoundaryPair& pair, int sector);

}  // namespace odba
