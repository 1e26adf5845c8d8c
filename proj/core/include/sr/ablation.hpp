#pragma once

#include <Eigen/Dense>
#include <string_view>

#include "sr/halfint.hpp"

namespace sr {

/// Coherence classes of two-body density-matrix elements rho_{a,b;c,d}
/// (matrix entry <a,c|rho|b,d>). Patterns, with m = b - a and d = c - m:
///   SameLevel   : |m| = 1 and c = a + m   (rho_{a,a+1;a+1,a} and its mirror)
///   Cross       : |m| = 1 and c != a + m  (rho_{a,a+1;b+1,b}, a != b)
///   HigherOrder : |m| >= 2                (rho_{a,a+m;b,b-m})
/// Off-diagonal elements matching none of these are OtherOffDiagonal; the
/// classes close under Hermitian conjugation and particle interchange, so
/// masking preserves hermiticity and interchange symmetry exactly.
enum class CoherenceClass {
  Diagonal,
  SameLevel,
  Cross,
  HigherOrder,
  OtherOffDiagonal,
};

/// Classify the element rho_{a,b;c,d}. Throws for projections outside
/// [-j, j].
CoherenceClass classify(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt j);

/// Which off-diagonal classes survive masking; the diagonal always does.
/// OtherOffDiagonal is kept only by the identity mask ("full" preset).
struct CoherenceMask {
  bool same_level = true;
  bool cross = true;
  bool higher = true;
  bool other = true;

  bool keeps(CoherenceClass c) const;
  bool is_identity() const { return same_level && cross && higher && other; }

  /// Presets: "full", "no-offdiag", "same-level", "same+cross",
  /// "same+cross+higher". Throws on unknown names.
  static CoherenceMask from_preset(std::string_view name);
};

/// 0/1 matrix over the (2j+1)^2 product basis selecting the kept entries.
Eigen::MatrixXd mask_matrix(HalfInt j, const CoherenceMask& mask);

/// Zero every entry whose class is masked out. Idempotent; never touches the
/// diagonal, so the trace is preserved exactly.
void apply_mask(Eigen::MatrixXcd& rho, HalfInt j, const CoherenceMask& mask);

}  // namespace sr
