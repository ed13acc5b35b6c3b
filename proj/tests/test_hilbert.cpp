#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fm/continuous_norms.hpp"
#include "fm/function_descriptor.hpp"

#include "oracles.hpp"

using fm::Complex;
using fm::Finiteness;
using fm::FunctionDescriptor;
using fm::QuadratureConfig;

namespace {
const double kSqrtPi = std::sqrt(3.141592653589793238462643383279502884);

FunctionDescriptor band_limited_zero_mean() {
  // (sin t / t)^2 cos(3t): transform is a pair of triangles on [1,5] and
  // [-5,-1], so the conjugate pair's transform stays Lipschitz and the
  // conjugate function remains integrable.
  return FunctionDescriptor::closed_form(
      "sinc2cos3", {},
      [](double t) {
        const double s = t == 0.0 ? 1.0 : std::sin(t) / t;
        return Complex(s * s * std::cos(3.0 * t), 0.0);
      },
      nullptr, nullptr, true);
}
}  // namespace

TEST_CASE("conjugate of the rational symbol at the anchor points") {
  QuadratureConfig cfg;
  auto lam = FunctionDescriptor::family("poisson");
  auto h1 = fm::hilbert_transform(lam, 1.0, cfg);
  CHECK(h1.converged);
  CHECK(std::abs(h1.value - Complex(0.5, 0.0)) < 1e-6);
  auto h2 = fm::hilbert_transform(lam, 2.0, cfg);
  CHECK(std::abs(h2.value - Complex(0.4, 0.0)) < 1e-6);
  // closed form x/(1+x^2) across signs
  for (double x : {-3.0, -0.5, 0.25, 7.0}) {
    auto h = fm::hilbert_transform(lam, x, cfg);
    CHECK(std::abs(h.value - Complex(x / (1.0 + x * x), 0.0)) < 1e-6);
  }
}

TEST_CASE("conjugate of the odd gaussian at the origin vs PV oracle") {
  QuadratureConfig cfg;
  auto f = FunctionDescriptor::family("odd_gaussian");
  auto h = fm::hilbert_transform(f, 0.0, cfg);
  CHECK(h.converged);
  CHECK(std::abs(h.value - Complex(-1.0 / kSqrtPi, 0.0)) < 1e-6);
  auto fn = [](double t) { return t * std::exp(-t * t); };
  // exclusion half-width 1e-6: the PV stub bias is ~2*delta*|f'|/pi
  const double want = oracle::hilbert(fn, 0.0, 20.0, 1e-3, 1e-6);
  CHECK(std::fabs(want - (-1.0 / kSqrtPi)) < 1e-5);
  CHECK(std::abs(h.value - Complex(want, 0.0)) < 1e-5);
}

TEST_CASE("conjugate values vs PV oracle off the symmetry point") {
  QuadratureConfig cfg;
  auto g = FunctionDescriptor::family("gaussian", {{"sigma", 1.0}});
  auto fn = [](double t) { return std::exp(-t * t); };
  for (double x : {0.5, 1.0, 2.5}) {
    auto h = fm::hilbert_transform(g, x, cfg);
    const double want = oracle::hilbert(fn, x, 25.0, 5e-4, 1e-6);
    CHECK(std::abs(h.value - Complex(want, 0.0)) < 1e-5);
  }
}

TEST_CASE("conjugate-mass verdict: rational symbol fails, band-limited zero-mean passes") {
  QuadratureConfig cfg;
  auto bad = fm::reh_norm(FunctionDescriptor::family("poisson"), cfg);
  CHECK(bad.conj_flag == Finiteness::diverged_suspected);
  CHECK(bad.flag == Finiteness::diverged_suspected);

  auto good = fm::reh_norm(band_limited_zero_mean(), cfg);
  CHECK(good.conj_flag == Finiteness::finite);
  CHECK(good.flag == Finiteness::finite);
  CHECK(good.value > 0.0);
}

TEST_CASE("membership cross-check: gaussian derivative is consistent on both routes") {
  QuadratureConfig cfg;
  auto f = FunctionDescriptor::family("gaussian", {{"sigma", 1.0}}).derivative_view();
  auto hs = fm::hs_membership(f, cfg);
  CHECK(hs.reh_flag == Finiteness::finite);
  CHECK(hs.criterion_flag == Finiteness::finite);
  CHECK(hs.consistent);
}

TEST_CASE("membership cross-check: rational derivative verdicts are recorded") {
  QuadratureConfig cfg;
  auto f = FunctionDescriptor::family("poisson").derivative_view();
  fm::HsReport hs;
  CHECK_NOTHROW(hs = fm::hs_membership(f, cfg));
  INFO("reh=", to_string(hs.reh_flag), " criterion=", to_string(hs.criterion_flag));
  CHECK(hs.f_l1.flag() == Finiteness::finite);
}
