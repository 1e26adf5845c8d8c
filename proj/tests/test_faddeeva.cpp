#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "sr/faddeeva.hpp"

using cplx = std::complex<double>;
using sr::erfcx_complex;
using sr::faddeeva_w;

namespace {

/// Direct-integral oracle: U(z) = (2/sqrt(pi)) int_0^inf e^{-2zt - t^2} dt
/// (substituting s = z + t in the defining integral), valid for Re z >= 0.
/// Adaptive Simpson on [0, T] with T chosen from the decay scale.
cplx simpson(const std::function<cplx(double)>& f, double a, double b,
             cplx fa, cplx fm, cplx fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const cplx flm = f(lm), frm = f(rm);
  const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

cplx erfcx_oracle(cplx z) {
  const auto integrand = [z](double t) {
    return std::exp(-2.0 * z * t - t * t);
  };
  // |e^{-2zt - t^2}| = e^{-2 Re(z) t - t^2}; negligible past max(12, 30/Re z).
  const double T =
      std::max(12.0, z.real() > 1e-6 ? 40.0 / z.real() : 12.0);
  const double m = 0.5 * T;
  const cplx result = simpson(integrand, 0.0, T, integrand(0.0), integrand(m),
                              integrand(T), 1e-14, 48);
  return 2.0 / std::sqrt(M_PI) * result;
}

}  // namespace

TEST_CASE("erfcx trivial and frozen values") {
  CHECK(erfcx_complex(cplx(0.0, 0.0)).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(erfcx_complex(cplx(0.0, 0.0)).imag() == doctest::Approx(0.0));
  // frozen from 30-digit quadrature
  CHECK(erfcx_complex(cplx(1.0, 0.0)).real() ==
        doctest::Approx(0.42758357615580700).epsilon(1e-12));
  const cplx v = erfcx_complex(cplx(2.0, 3.0));
  CHECK(v.real() == doctest::Approx(0.092710766426443334).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(-0.12831696222826158).epsilon(1e-12));
}

TEST_CASE("erfcx matches quadrature oracle on a 200-point grid") {
  // grid over |z| in [0, 50], arg in [0, pi/2)
  int idx = 0;
  for (int ir = 0; ir < 20; ++ir)
    for (int ia = 0; ia < 10; ++ia) {
      const double r = 50.0 * (ir + 0.5) / 20.0;
      const double th = 0.5 * M_PI * ia / 10.0;
      const cplx z = std::polar(r, th);
      const cplx got = erfcx_complex(z);
      const cplx want = erfcx_oracle(z);
      CHECK(std::abs(got - want) <= 1e-10 * std::abs(want));
      ++idx;
    }
  CHECK(idx == 200);
}

TEST_CASE("faddeeva real axis matches erfcx of -i z") {
  // w(x) for real x: Re w(x) = e^{-x^2}
  for (double x : {0.1, 0.7, 2.0, 6.9, 7.1, 15.0, 40.0})
    CHECK(faddeeva_w(cplx(x, 0.0)).real() ==
          doctest::Approx(std::exp(-x * x)).epsilon(1e-11));
}

TEST_CASE("positivity of the rate-multiplying real part") {
  // The averaged-Lorentzian kernel is w((Delta + i Gf)/(sqrt2 DeltaD)) with
  // Gf > 0, i.e. w on the upper half-plane; its real part must be positive
  // since it multiplies rates. Scan 10^4 points, cross-check a subset
  // against the quadrature oracle via w(z) = erfcx(-i z).
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ux(-50.0, 50.0), uy(1e-3, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const cplx z(ux(rng), uy(rng));
    const cplx w = faddeeva_w(z);
    CHECK(w.real() > 0.0);
    if (i % 500 == 0) {
      const cplx want = erfcx_oracle(cplx(z.imag(), -z.real()));
      CHECK(std::abs(w - want) <= 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("extreme arguments flagged") {
  CHECK_THROWS(faddeeva_w(cplx(2e8, 1.0)));
  CHECK_NOTHROW(faddeeva_w(cplx(1e7, 1.0)));
}
