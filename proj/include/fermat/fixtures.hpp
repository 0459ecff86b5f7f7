#pragma once

// Four singular plane curves G_i with a point P_i = (s_i, s_i) and a cubic C_i
// meeting G_i there with high multiplicity. The integer coefficients of C_i
// are reduced mod p; s_i lives in the least extension of GF(p) containing a
// root of its defining equation:
//   i = 1: s^2 = 2,  i = 2: s = 4,  i = 3: 4 s^3 = 1,  i = 4: 8 s^2 = 1.

#include <vector>

#include "fermat/poly.hpp"
#include "fermat/series.hpp"

namespace fermat {

struct OsculationFixture {
  int index = 1;
  Field field;
  /// All roots of the defining equation in `field`, the chosen one first.
  std::vector<FieldElement> parameters;
  BiPoly G, C;
  AffinePoint P;
};

/// Fixture i in {1, 2, 3, 4} over characteristic p > 3, using the
/// `root`-th parameter (0 is the least-index root returned by nth_root).
OsculationFixture osculation_fixture(int i, u32 p, size_t root = 0);

}  // namespace fermat
