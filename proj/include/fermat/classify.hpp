#pragma once

// Classicality and Frobenius classicality of Fermat curves with respect to
// the linear systems of lines (s = 1), conics (s = 2) and cubics (s = 3).
//
// Each decision is a closed-form criterion on (p, h, n, a, b). Whenever a
// criterion's hypotheses fail (small characteristic, small degree, or a
// Frobenius-nonclassical curve for the conic system when s = 3) the verdict
// is left undetermined and the failed hypotheses are listed in `guards`.

#include <optional>
#include <string>
#include <vector>

#include "fermat/curve.hpp"

namespace fermat {

struct SigmaSystem {
  int s = 1;
  /// Projective dimension binom(s + 2, 2) - 1.
  constexpr int dimension() const noexcept { return (s + 2) * (s + 1) / 2 - 1; }
};

/// Shapes of n as a quotient of p^h - 1 by p^r - 1.
enum class SubfieldShape {
  linear,  // n = (p^h - 1) / (p^r - 1)
  twice,   // n = 2 (p^h - 1) / (p^r - 1)
  half,    // n = (p^h - 1) / (2 (p^r - 1))
  triple,  // n = 3 (p^h - 1) / (p^r - 1)
  third,   // n = (p^h - 1) / (3 (p^r - 1))
};

/// The r with r | h, r < h solving the shape equation, if any. The solution
/// is unique since r -> (p^h - 1)/(p^r - 1) is strictly decreasing.
std::optional<unsigned> subfield_parameter(u64 n, u32 p, unsigned h, SubfieldShape shape);

struct NonclassicalityResult {
  int s = 1;
  /// nullopt when outside the criterion's hypotheses.
  std::optional<bool> nonclassical;
  /// The divisibility that matched, e.g. "p | n-3".
  std::string reason;
  std::vector<std::string> guards;
};

NonclassicalityResult nonclassicality(const FermatCurve& curve, int s);

struct ClassificationVerdict {
  int system = 1;
  std::optional<bool> nonclassical;
  std::string reason;
  std::optional<bool> frobenius_nonclassical;
  /// Matched family ("sigma3-triple-norm", ...) or "classical"/"indeterminate".
  std::string frobenius_case;
  std::optional<unsigned> witness_r;
  std::vector<std::string> guards;
};

ClassificationVerdict frobenius_classification(const FermatCurve& curve, int s);

}  // namespace fermat
