#pragma once

#include <vector>

#include "odba/boundary.hpp"
#include "odba/tq.hpp"
#include "odba/transfer.hpp"

namespace odba {

// Published N = 2 kind-I benchmark: roots to four digits and energies to six decimals.
struct ReferenceState {
  BetheState state;
  double energy;
};

inline ChainSpec reference_chain() { return ChainSpec::homogeneous(2, 0.3); }

inline BoundaryPair reference_pair() {
  return make_pair(make_boundary(BoundaryKind::I, 0.1, 1.0, -0.5), make_boundary(BoundaryKind::I, -0.1, -0.5, -0.7));
}

inline std::vector<ReferenceState> reference_states() {
  using c = cplx;
  const c p(0.0, 1.5708);
  return {
      {{0, {c(0.4091, 0.1448), c(0.4091, -0.1448), c(0.4942, 1.3424), c(0.4942, -1.3424), 0.2366,
            c(-0.1500, -0.1466), -0.7730, 0.5592 - p}, {}}, -4.932732},
      {{1, {c(0.3823, 0.1863), c(0.3823, -0.1863), c(0.4842, 1.3499), c(0.4842, -1.3499), 0.1292,
            c(-0.1500, 0.3054), 0.3917, 0.4614, 0.5501 - p}, {c(-0.3, 0.2629)}}, 0.044922},
      {{1, {c(-0.7839, -1.3503), c(-0.7839, 1.3503), c(-0.6860, 0.1856), c(-0.6860, -0.1856), 0.0983,
            c(-0.1500, -0.2984), 0.3884, -0.7641, -0.8497 + p}, {c(-0.3, -0.2664)}}, 1.356985},
      {{0, {c(0.3461, 0.1125), c(0.3461, -0.1125), c(0.4989, 1.3364), c(0.4989, -1.3364), 0.3242, 0.1351,
            0.4436, 0.5651 - p}, {}}, 2.206441},
      {{0, {c(0.4981, -1.3375), c(0.4981, 1.3375), c(0.3679, 0.1168), c(0.3679, -0.1168), 0.2843,
            0.5641 - p, 0.4502, 0.1007}, {}}, 3.696554},
      {{0, {c(0.0946, 0.0271), c(0.0946, -0.0271), c(0.4139, 0.1390), c(0.4139, -0.1390), c(0.4947, 1.3419),
            c(0.4947, -1.3419), 0.4722, 0.5597 + p}, {}}, 6.612138},
      {{1, {c(0.1029, 0.0175), c(0.1029, -0.0175), c(0.4165, 0.1626), c(0.4165, -0.1626), c(0.4870, 1.3478),
            c(0.4870, -1.3478), 0.4822, 0.3507, -0.8526 - p}, {0.0104}}, 6.923080},
      {{1, {c(0.4211, 0.1625), c(0.4211, -0.1625), c(0.0997, 0.0211), c(0.0997, -0.0211), c(0.4868, 1.3482),
            c(0.4868, -1.3482), 0.4855, 0.3483, -0.8522 + p}, {0.0235}}, 7.079096},
      {{2, {c(-0.3852, -0.0302), c(-0.3852, 0.0302), c(0.4432, 0.1924), c(0.4432, -0.1924), c(0.5110, 0.0377),
            c(0.5110, -0.0377), c(0.4786, 1.3557), c(0.4786, -1.3557), 0.2226, -0.8440 - p},
        {-0.0527, 0.1841}}, 8.942457},
  };
}

}  // namespace odba
