#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <map>

#include "sr/ablation.hpp"
#include "sr/halfint.hpp"

using sr::classify;
using sr::CoherenceClass;
using sr::CoherenceMask;
using sr::HalfInt;

namespace {

HalfInt hi(int twice) { return HalfInt::from_twice(twice); }

/// Independent pattern-matching oracle over a projection quadruple
/// (a, b, c, d) standing for the element rho_{a,b;c,d} = <a, c|rho|b, d>.
CoherenceClass oracle(int at, int bt, int ct, int dt) {
  if (at == bt && ct == dt) return CoherenceClass::Diagonal;
  const int m = (bt - at) / 2;            // level shift of particle 1
  if ((bt - at) % 2 == 0 && dt == ct - (bt - at)) {
    if (std::abs(m) == 1)
      return ct == at + (bt - at) ? CoherenceClass::SameLevel
                                  : CoherenceClass::Cross;
    if (std::abs(m) >= 2) return CoherenceClass::HigherOrder;
  }
  return CoherenceClass::OtherOffDiagonal;
}

std::map<CoherenceClass, int> census(HalfInt j) {
  std::map<CoherenceClass, int> counts;
  for (int at = -j.twice(); at <= j.twice(); at += 2)
    for (int bt = -j.twice(); bt <= j.twice(); bt += 2)
      for (int ct = -j.twice(); ct <= j.twice(); ct += 2)
        for (int dt = -j.twice(); dt <= j.twice(); dt += 2)
          ++counts[classify(hi(at), hi(bt), hi(ct), hi(dt), j)];
  return counts;
}

}  // namespace

TEST_CASE("spin-1/2 census matches the paper's unique coherence") {
  const auto counts = census(hi(1));
  CHECK(counts.at(CoherenceClass::Diagonal) == 4);
  CHECK(counts.at(CoherenceClass::SameLevel) == 2);
  CHECK(counts.count(CoherenceClass::Cross) == 0);
  CHECK(counts.count(CoherenceClass::HigherOrder) == 0);
  CHECK(counts.at(CoherenceClass::OtherOffDiagonal) == 10);

  // rho_{eg,ge}: a = e, b = g, c = g, d = e
  CHECK(classify(hi(1), hi(-1), hi(-1), hi(1), hi(1)) ==
        CoherenceClass::SameLevel);
}

TEST_CASE("classification matches the exhaustive oracle up to j = 9/2") {
  for (int jt : {1, 2, 3, 9}) {
    const HalfInt j = hi(jt);
    int total = 0;
    for (int at = -jt; at <= jt; at += 2)
      for (int bt = -jt; bt <= jt; bt += 2)
        for (int ct = -jt; ct <= jt; ct += 2)
          for (int dt = -jt; dt <= jt; dt += 2) {
            CHECK(classify(hi(at), hi(bt), hi(ct), hi(dt), j) ==
                  oracle(at, bt, ct, dt));
            ++total;
          }
    const int d = jt + 1;
    CHECK(total == d * d * d * d);  // total partition, every quadruple classed
  }
}

TEST_CASE("classes close under hermitian conjugation and interchange") {
  const HalfInt j = hi(3);
  for (int at = -3; at <= 3; at += 2)
    for (int bt = -3; bt <= 3; bt += 2)
      for (int ct = -3; ct <= 3; ct += 2)
        for (int dt = -3; dt <= 3; dt += 2) {
          const auto cls = classify(hi(at), hi(bt), hi(ct), hi(dt), j);
          // conjugate element: rho_{b,a;d,c}
          CHECK(classify(hi(bt), hi(at), hi(dt), hi(ct), j) == cls);
          // particle interchange: rho_{c,d;a,b}
          CHECK(classify(hi(ct), hi(dt), hi(at), hi(bt), j) == cls);
        }
}

TEST_CASE("domain errors for invalid projections") {
  CHECK_THROWS(classify(hi(3), hi(1), hi(1), hi(1), hi(1)));
  CHECK_THROWS(classify(hi(0), hi(1), hi(1), hi(1), hi(1)));  // not half-int
}

TEST_CASE("mask presets") {
  const auto full = CoherenceMask::from_preset("full");
  CHECK(full.is_identity());
  const auto none = CoherenceMask::from_preset("no-offdiag");
  CHECK((!none.same_level && !none.cross && !none.higher && !none.other));
  const auto sl = CoherenceMask::from_preset("same-level");
  CHECK((sl.same_level && !sl.cross && !sl.higher && !sl.other));
  const auto sc = CoherenceMask::from_preset("same+cross");
  CHECK((sc.same_level && sc.cross && !sc.higher && !sc.other));
  const auto sch = CoherenceMask::from_preset("same+cross+higher");
  CHECK((sch.same_level && sch.cross && sch.higher && !sch.other));
  CHECK_THROWS(CoherenceMask::from_preset("bogus"));
}

TEST_CASE("apply_mask is idempotent, diagonal-preserving, hermitian-safe") {
  const HalfInt j = hi(2);
  const int n = 9;
  Eigen::MatrixXcd rho(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      rho(r, c) = std::complex<double>(0.01 * (r + 1), 0.002 * (r - c));
  rho = (rho + rho.adjoint()).eval();
  const Eigen::VectorXcd diag_before = rho.diagonal();

  for (const char* preset :
       {"no-offdiag", "same-level", "same+cross", "same+cross+higher"}) {
    Eigen::MatrixXcd once = rho;
    sr::apply_mask(once, j, CoherenceMask::from_preset(preset));
    Eigen::MatrixXcd twice = once;
    sr::apply_mask(twice, j, CoherenceMask::from_preset(preset));
    CHECK((once - twice).cwiseAbs().maxCoeff() == 0.0);
    CHECK((once.diagonal() - diag_before).cwiseAbs().maxCoeff() == 0.0);
    CHECK((once - once.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }

  Eigen::MatrixXcd ident = rho;
  sr::apply_mask(ident, j, CoherenceMask::from_preset("full"));
  CHECK((ident - rho).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXcd diag_only = rho;
  sr::apply_mask(diag_only, j, CoherenceMask::from_preset("no-offdiag"));
  CHECK((Eigen::MatrixXcd(diag_only.diagonal().asDiagonal()) - diag_only)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("mask matrix is symmetric (hermiticity closure)") {
  for (const char* preset : {"no-offdiag", "same-level", "same+cross"}) {
    const Eigen::MatrixXd m =
        sr::mask_matrix(hi(3), CoherenceMask::from_preset(preset));
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}
