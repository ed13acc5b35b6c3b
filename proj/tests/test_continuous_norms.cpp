#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "fm/continuous_norms.hpp"
#include "fm/function_descriptor.hpp"

#include "oracles.hpp"

using fm::Complex;
using fm::Finiteness;
using fm::FunctionDescriptor;
using fm::QuadratureConfig;

namespace {
const double kLn3 = std::log(3.0);
const double kSqrtPi = std::sqrt(3.141592653589793238462643383279502884);
const double kPi = 3.141592653589793238462643383279502884;
}  // namespace

TEST_CASE("sup norm: two competing near-critical bumps vs dense scan") {
  auto f = FunctionDescriptor::family("two_bump");
  QuadratureConfig cfg;
  const double got = fm::sup_norm(f, cfg);
  double want = 0.0;
  for (int i = 0; i <= 2000000; ++i) {
    const double x = -10.0 + 20.0 * i / 2000000.0;
    want = std::max(want, std::abs(f(x)));
  }
  CHECK(std::fabs(got - want) < 1e-9);
}

TEST_CASE("derivative mass: closed forms") {
  QuadratureConfig cfg;
  auto g = FunctionDescriptor::family("gaussian", {{"sigma", 1.0}});
  auto r = fm::derivative_l1(g, cfg);
  CHECK(r.flag() == Finiteness::finite);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));  // 2 int_0^inf 2t e^{-t^2}
  auto e = FunctionDescriptor::family("exp_abs");
  auto re = fm::derivative_l1(e, cfg);
  CHECK(re.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("oscillation functional on a sampled window vs nested Riemann oracle") {
  // g(t) = t on [-10, 10], zero outside: the inner integrand is exactly -2
  // until a window edge enters; everything after that is geometry the two
  // independent computations must agree on.
  auto g = FunctionDescriptor::sampled({-10.0, 10.0}, {{-10.0, 0.0}, {10.0, 0.0}});
  QuadratureConfig cfg;
  auto r = fm::bt_functional(g, cfg);
  CHECK(r.flag() == Finiteness::finite);
  auto gfn = [](double t) { return std::fabs(t) <= 10.0 ? t : 0.0; };
  const double want = oracle::s_functional(gfn, 42.0, 0.02, 0.002);
  CHECK(std::fabs(r.value - want) < 0.01 * want + 0.05);
}

TEST_CASE("oscillation functional of the exponential kink derivative is ln 3") {
  auto lam = FunctionDescriptor::family("exp_abs");
  QuadratureConfig cfg;
  auto r = fm::bt_functional(lam.derivative_view(), cfg);
  CHECK(r.flag() == Finiteness::finite);
  CHECK(std::fabs(r.value - kLn3) < 1e-4);
  auto gfn = [](double t) {
    return t == 0.0 ? 0.0 : -(t > 0 ? 1.0 : -1.0) * std::exp(-std::fabs(t));
  };
  const double want = oracle::s_functional(gfn, 40.0, 0.02, 0.002);
  CHECK(std::fabs(want - kLn3) < 0.01 * kLn3);
}

TEST_CASE("odd-part integral: odd gaussian has mass sqrt(pi)") {
  QuadratureConfig cfg;
  auto f = FunctionDescriptor::family("odd_gaussian");
  auto r = fm::odd_part_integral(f, cfg);
  CHECK(r.flag() == Finiteness::finite);
  CHECK(r.value == doctest::Approx(kSqrtPi).epsilon(1e-6));
  auto ofn = [](double t) { return t * std::exp(-t * t); };
  const double want = oracle::odd_part(ofn, 12.0, 200000);
  CHECK(std::fabs(r.value - want) < 1e-4);
}

TEST_CASE("odd-part integral: odd step with non-vanishing limits diverges") {
  QuadratureConfig cfg;
  auto f = FunctionDescriptor::family("tanh_step");
  auto r = fm::odd_part_integral(f, cfg);
  CHECK(r.flag() == Finiteness::diverged_suspected);
}

TEST_CASE("block mean functional on a bump supported in [1,2] vs double loop") {
  auto bump = FunctionDescriptor::closed_form(
      "bump12", {},
      [](double t) {
        if (t <= 1.0 || t >= 2.0) return Complex(0.0, 0.0);
        const double s = std::sin(kPi * (t - 1.0));
        return Complex(s * s, 0.0);
      },
      nullptr, nullptr, true);
  QuadratureConfig cfg;
  auto r2 = fm::block_mean_integral(bump, 2.0, cfg);
  CHECK(r2.flag() == Finiteness::finite);
  auto bfn = [](double t) {
    if (t <= 1.0 || t >= 2.0) return 0.0;
    const double s = std::sin(kPi * (t - 1.0));
    return s * s;
  };
  const double want2 = oracle::block_mean(bfn, 2.0, 1e-3, 2.5, 2500, 400);
  CHECK(std::fabs(r2.value - want2) < 0.01 * want2 + 1e-3);

  auto rinf = fm::block_mean_integral(bump, std::numeric_limits<double>::infinity(), cfg);
  const double wantinf =
      oracle::block_mean(bfn, std::numeric_limits<double>::infinity(), 1e-3, 2.5, 2500, 400);
  CHECK(std::fabs(rinf.value - wantinf) < 0.01 * wantinf + 1e-3);
}

TEST_CASE("block sup functional of the rational symbol is pi/2") {
  QuadratureConfig cfg;
  auto lam = FunctionDescriptor::family("poisson");
  auto r = fm::block_mean_integral(lam, std::numeric_limits<double>::infinity(), cfg);
  CHECK(r.flag() == Finiteness::finite);
  // sup over [u, 2u] of 1/(1+t^2) is attained at t = u; integral is pi/2
  CHECK(std::fabs(r.value - kPi / 2.0) < 2e-4);
}

TEST_CASE("curvature mass: exponential kink and gaussian") {
  QuadratureConfig cfg;
  auto e = FunctionDescriptor::family("exp_abs");
  auto re = fm::quasiconvexity_integral(e, cfg);
  CHECK(re.value == doctest::Approx(1.0).epsilon(1e-5));  // int_0^inf t e^{-t}

  auto g = FunctionDescriptor::family("gaussian", {{"sigma", 1.0}});
  auto rg = fm::quasiconvexity_integral(g, cfg);
  const double closed = 4.0 * std::exp(-0.5) - 1.0;  // int_0^inf t|4t^2-2|e^{-t^2}
  CHECK(rg.value == doctest::Approx(closed).epsilon(1e-6));
  auto f2 = [](double t) { return (4.0 * t * t - 2.0) * std::exp(-t * t); };
  const double want = oracle::t_curvature(f2, 12.0, 400000);
  CHECK(std::fabs(rg.value - want) < 1e-4);
}

TEST_CASE("norm report: gaussian is certified, the odd step is rejected") {
  QuadratureConfig cfg;
  auto rep = fm::assemble_norm_report(FunctionDescriptor::family("gaussian", {{"sigma", 1.0}}),
                                      {1.0, 2.0}, cfg);
  CHECK(rep.h_certificate == fm::Certificate::member);
  CHECK(rep.flags.at("deriv_l1") == Finiteness::finite);
  CHECK(rep.flags.at("s") == Finiteness::finite);
  CHECK(rep.flags.at("a") == Finiteness::finite);
  CHECK(rep.h_norm > 0.0);
  CHECK(rep.cb_norm == doctest::Approx(rep.sup_norm + rep.deriv_l1.value));

  auto bad = fm::assemble_norm_report(FunctionDescriptor::family("tanh_step"), {1.0, 2.0},
                                      cfg);
  CHECK(bad.h_certificate == fm::Certificate::not_member);
  CHECK(bad.flags.at("a") == Finiteness::diverged_suspected);
}

TEST_CASE("conjugate exponents") {
  CHECK(std::isinf(fm::conjugate_exponent(1.0)));
  CHECK(fm::conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(fm::conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(fm::conjugate_exponent(0.5), std::invalid_argument);
}
