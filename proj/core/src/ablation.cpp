#include "sr/ablation.hpp"

#include <stdexcept>
#include <string>

namespace sr {

CoherenceClass classify(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt j) {
  require_projection(j, a, "classify");
  require_projection(j, b, "classify");
  require_projection(j, c, "classify");
  require_projection(j, d, "classify");

  if (a == b && c == d) return CoherenceClass::Diagonal;

  const int m2 = (b - a).twice();  // 2m; integer steps only
  if (m2 != 0 && m2 % 2 == 0 && (c - d).twice() == m2) {
    const int m = m2 / 2;
    if (m == 1 || m == -1) {
      return (c - a).twice() == m2 ? CoherenceClass::SameLevel
                                   : CoherenceClass::Cross;
    }
    return CoherenceClass::HigherOrder;
  }
  return CoherenceClass::OtherOffDiagonal;
}

bool CoherenceMask::keeps(CoherenceClass c) const {
  switch (c) {
    case CoherenceClass::Diagonal:
      return true;
    case CoherenceClass::SameLevel:
      return same_level;
    case CoherenceClass::Cross:
      return cross;
    case CoherenceClass::HigherOrder:
      return higher;
    case CoherenceClass::OtherOffDiagonal:
      return other;
  }
  return true;
}

CoherenceMask CoherenceMask::from_preset(std::string_view name) {
  if (name == "full") return {true, true, true, true};
  if (name == "no-offdiag") return {false, false, false, false};
  if (name == "same-level") return {true, false, false, false};
  if (name == "same+cross") return {true, true, false, false};
  if (name == "same+cross+higher") return {true, true, true, false};
  throw std::invalid_argument("unknown ablation preset: " + std::string(name));
}

Eigen::MatrixXd mask_matrix(HalfInt j, const CoherenceMask& mask) {
  const int d = multiplicity(j);
  const int dim = d * d;
  Eigen::MatrixXd M(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const HalfInt a = projection_at(j, row / d);
    const HalfInt c = projection_at(j, row % d);
    for (int col = 0; col < dim; ++col) {
      const HalfInt b = projection_at(j, col / d);
      const HalfInt dd = projection_at(j, col % d);
      M(row, col) = mask.keeps(classify(a, b, c, dd, j)) ? 1.0 : 0.0;
    }
  }
  return M;
}

void apply_mask(Eigen::MatrixXcd& rho, HalfInt j, const CoherenceMask& mask) {
  if (mask.is_identity()) return;
  rho = rho.cwiseProduct(mask_matrix(j, mask).cast<std::complex<double>>());
}

}  // namespace sr
