#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "fm/continuous_fourier.hpp"
#include "fm/continuous_norms.hpp"
#include "fm/discrete_fourier.hpp"
#include "fm/discrete_norms.hpp"
#include "fm/function_descriptor.hpp"
#include "fm/quadrature.hpp"
#include "fm/sequence_descriptor.hpp"

#include "oracles.hpp"

using fm::Complex;
using fm::FunctionDescriptor;
using fm::SequenceDescriptor;

namespace {

const double kPi = 3.141592653589793238462643383279502884;
const double kInf = std::numeric_limits<double>::infinity();
constexpr int kInstances = 120;

Complex rand_cx(oracle::Rng& rng) {
  return Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
}

SequenceDescriptor random_seq(oracle::Rng& rng, int max_radius, bool real_only) {
  const int r = int(rng.uniform_int(1, max_radius));
  std::vector<Complex> v(std::size_t(2 * r + 1));
  for (auto& z : v)
    z = real_only ? Complex(rng.uniform(-2.0, 2.0), 0.0) : rand_cx(rng);
  return SequenceDescriptor(r, std::move(v));
}

SequenceDescriptor scaled_seq(const SequenceDescriptor& s, double c) {
  std::vector<Complex> v;
  const int r = s.support_radius();
  v.reserve(std::size_t(2 * r + 1));
  for (long long k = -r; k <= r; ++k) v.push_back(c * s.value(k));
  return SequenceDescriptor(r, std::move(v), s.tail());
}

struct RandomSampled {
  FunctionDescriptor f;
  std::vector<double> grid;
  std::vector<Complex> vals;
  double l1_bound;  // sum over segments of max endpoint modulus * length
};

RandomSampled random_sampled(oracle::Rng& rng, int max_pts = 12,
                             bool real_only = false) {
  const int n = int(rng.uniform_int(4, max_pts));
  std::vector<double> grid(static_cast<std::size_t>(n));
  grid[0] = rng.uniform(-9.0, -2.0);
  for (int i = 1; i < n; ++i)
    grid[std::size_t(i)] = grid[std::size_t(i - 1)] + rng.uniform(0.3, 2.0);
  std::vector<Complex> vals(static_cast<std::size_t>(n));
  for (auto& z : vals)
    z = real_only ? Complex(rng.uniform(-2.0, 2.0), 0.0) : rand_cx(rng);
  double l1 = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    l1 += std::max(std::abs(vals[std::size_t(i)]), std::abs(vals[std::size_t(i + 1)])) *
          (grid[std::size_t(i + 1)] - grid[std::size_t(i)]);
  RandomSampled out{FunctionDescriptor::sampled(grid, vals), std::move(grid),
                    std::move(vals), l1};
  return out;
}

// Mirror-symmetric grid without a node at 0; values repeated bitwise.
RandomSampled random_even_sampled(oracle::Rng& rng) {
  const int m = int(rng.uniform_int(2, 6));
  std::vector<double> half(static_cast<std::size_t>(m));
  half[0] = rng.uniform(0.2, 1.0);
  for (int i = 1; i < m; ++i)
    half[std::size_t(i)] = half[std::size_t(i - 1)] + rng.uniform(0.3, 2.0);
  std::vector<double> grid;
  std::vector<Complex> vals;
  std::vector<Complex> hv(static_cast<std::size_t>(m));
  for (auto& z : hv) z = rand_cx(rng);
  for (int i = m - 1; i >= 0; --i) {
    grid.push_back(-half[std::size_t(i)]);
    vals.push_back(hv[std::size_t(i)]);
  }
  for (int i = 0; i < m; ++i) {
    grid.push_back(half[std::size_t(i)]);
    vals.push_back(hv[std::size_t(i)]);
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    l1 += std::max(std::abs(vals[i]), std::abs(vals[i + 1])) * (grid[i + 1] - grid[i]);
  return RandomSampled{FunctionDescriptor::sampled(grid, vals), std::move(grid),
                       std::move(vals), l1};
}

}  // namespace

TEST_CASE("homogeneity: sequence seminorms scale linearly under positive scalars") {
  oracle::Rng rng(11);
  const double qs[4] = {1.0, 2.0, 3.5, kInf};
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto s = random_seq(rng, 16, false);
    const double c = rng.uniform(0.2, 5.0);
    auto sc = scaled_seq(s, c);
    const double q = qs[i % 4];

    const double rel = 1e-12;
    auto close = [&](double a, double b) { return std::fabs(a - b) <= rel * (1.0 + std::fabs(b)); };
    CHECK(close(fm::sup_value(sc).value, c * fm::sup_value(s).value));
    CHECK(close(fm::delta_l1(sc).value, c * fm::delta_l1(s).value));
    CHECK(close(fm::odd_part_sum(sc).value, c * fm::odd_part_sum(s).value));
    CHECK(close(fm::bt_sum(sc).value, c * fm::bt_sum(s).value));
    CHECK(close(fm::dyadic_block_sum(sc, q).value, c * fm::dyadic_block_sum(s, q).value));
  }
}

TEST_CASE("homogeneity: continuous seminorms scale linearly for sampled symbols") {
  oracle::Rng rng(12);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_sampled(rng);
    const double c = rng.uniform(0.2, 5.0);
    auto scaled = rs.f.scaled(Complex(c, 0.0));

    const double sup1 = fm::sup_norm(rs.f, cfg);
    const double sup2 = fm::sup_norm(scaled, cfg);
    CHECK(std::fabs(sup2 - c * sup1) <= 1e-12 * (1.0 + c * sup1));

    auto d1 = fm::derivative_l1(rs.f, cfg);
    auto d2 = fm::derivative_l1(scaled, cfg);
    const double tol = c * d1.error_estimate + d2.error_estimate +
                       1e-9 * (1.0 + c * std::fabs(d1.value));
    CHECK(std::fabs(d2.value - c * d1.value) <= tol);
  }
}

TEST_CASE("even annihilation: mirror-symmetric sequences have zero odd part") {
  oracle::Rng rng(13);
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    const int r = int(rng.uniform_int(1, 20));
    std::vector<Complex> v(std::size_t(2 * r + 1));
    for (int k = 0; k <= r; ++k) {
      const Complex z = rand_cx(rng);
      v[std::size_t(r + k)] = z;
      v[std::size_t(r - k)] = z;
    }
    SequenceDescriptor s(r, std::move(v));
    auto a = fm::odd_part_sum(s);
    CHECK(a.value == 0.0);
    CHECK(a.converged);
  }
}

TEST_CASE("even annihilation: mirror-symmetric sampled functions have negligible odd part") {
  oracle::Rng rng(14);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_even_sampled(rng);
    auto a = fm::odd_part_integral(rs.f, cfg);
    CHECK(std::fabs(a.value) <= 1e-10 * (1.0 + rs.l1_bound));
  }
}

TEST_CASE("decomposition identity: series value minus main term equals gamma bitwise") {
  oracle::Rng rng(15);
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto s = random_seq(rng, 12, i % 2 == 0);
    const double mag = rng.uniform(1e-3, kPi);
    for (double y : {mag, -mag}) {
      auto d = fm::decompose_series(s, y);
      CHECK(std::abs(d.series_value - d.main_term - d.gamma) == 0.0);
      CHECK(d.converged);
    }
  }
}

TEST_CASE("decomposition identity: transform value minus main term equals gamma bitwise") {
  oracle::Rng rng(16);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_sampled(rng, 10);
    const double mag = rng.uniform(0.05, 30.0);
    for (double x : {mag, -mag}) {
      auto d = fm::decompose_transform(rs.f, x, cfg);
      CHECK(std::abs(d.full_value - d.main_term - d.gamma) == 0.0);
      CHECK(d.converged);
    }
  }
}

TEST_CASE("interpolant equals the sequence at every integer node") {
  oracle::Rng rng(17);
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    fm::SequenceTail tail;
    switch (i % 3) {
      case 0: tail.kind = fm::SequenceTail::Kind::zero; break;
      case 1:
        tail.kind = fm::SequenceTail::Kind::geometric;
        tail.ratio = rng.uniform(0.1, 0.9);
        break;
      default:
        tail.kind = fm::SequenceTail::Kind::power;
        tail.exponent = rng.uniform(0.5, 3.0);
        break;
    }
    const int r = int(rng.uniform_int(1, 16));
    std::vector<Complex> v(std::size_t(2 * r + 1));
    for (auto& z : v) z = rand_cx(rng);
    SequenceDescriptor s(r, std::move(v), tail);
    for (int trial = 0; trial < 5; ++trial) {
      const long long k = rng.uniform_int(-r, r);
      CHECK(std::abs(fm::ell(s, double(k)) - s.value(k)) == 0.0);
      CHECK(std::abs(fm::ell(s, double(k), fm::EllMode::difference_form) - s.value(k)) ==
            0.0);
    }
  }
}

TEST_CASE("transform modulus never exceeds the L1 mass of the symbol") {
  oracle::Rng rng(18);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_sampled(rng);
    for (int trial = 0; trial < 3; ++trial) {
      const double x = rng.uniform(-40.0, 40.0);
      auto t = fm::fourier_transform(rs.f, x, cfg);
      CHECK(std::abs(t.value) <= rs.l1_bound + 1e-9 * (1.0 + rs.l1_bound));
    }
  }
}

TEST_CASE("periodic coefficient modulus never exceeds the normalized L1 mass") {
  oracle::Rng rng(19);
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    const int n = 128;
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (auto& z : v) z = rand_cx(rng);
    auto f = fm::PeriodicFunction::from_samples(std::move(v));
    const double bound = f.l1_norm() / (2.0 * kPi);
    for (int trial = 0; trial < 3; ++trial) {
      const long long k = rng.uniform_int(-n / 2, n / 2);
      CHECK(std::abs(f.coefficient(k)) <= bound + 1e-12 * (1.0 + bound));
    }
  }
}

TEST_CASE("sampled transform is translation-covariant") {
  oracle::Rng rng(20);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_sampled(rng, 10);
    const double c = rng.uniform(-5.0, 5.0);
    std::vector<double> shifted = rs.grid;
    for (double& t : shifted) t += c;
    auto g = FunctionDescriptor::sampled(shifted, rs.vals);
    for (double x : {0.3, -2.7, 7.1, rng.uniform(-20.0, 20.0)}) {
      const Complex lhs = fm::fourier_transform(g, x, cfg).value;
      const Complex rhs =
          std::exp(Complex(0.0, -x * c)) * fm::fourier_transform(rs.f, x, cfg).value;
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + rs.l1_bound));
    }
  }
}

TEST_CASE("sampled transform is linear in the symbol values") {
  oracle::Rng rng(21);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto rs = random_sampled(rng, 9);
    std::vector<Complex> w(rs.vals.size());
    for (auto& z : w) z = rand_cx(rng);
    auto g = FunctionDescriptor::sampled(rs.grid, w);
    const Complex alpha = rand_cx(rng), beta = rand_cx(rng);
    std::vector<Complex> mixed(rs.vals.size());
    for (std::size_t j = 0; j < mixed.size(); ++j)
      mixed[j] = alpha * rs.vals[j] + beta * w[j];
    auto h = FunctionDescriptor::sampled(rs.grid, mixed);
    const double x = rng.uniform(-25.0, 25.0);
    const Complex lhs = fm::fourier_transform(h, x, cfg).value;
    const Complex rhs = alpha * fm::fourier_transform(rs.f, x, cfg).value +
                        beta * fm::fourier_transform(g, x, cfg).value;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + rs.l1_bound));
  }
}

TEST_CASE("principal value annihilates integrands odd about the pole") {
  oracle::Rng rng(22);
  const fm::QuadratureConfig cfg;
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    const double p = rng.uniform(-3.0, 3.0);
    const double L = rng.uniform(1.0, 6.0);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    auto g = [&](double t) {
      const double u = t - p;
      const double u2 = u * u;
      return (a * std::exp(-u2) + b / (1.0 + u2 * u2)) / u;
    };
    auto r = fm::principal_value(g, p, p - L, p + L, cfg);
    CHECK(r.converged);
    CHECK(std::fabs(r.value) <= 1e-6 * (1.0 + std::fabs(a) + std::fabs(b)));
  }
}

TEST_CASE("series sums of real sequences are conjugate-symmetric in y") {
  oracle::Rng rng(23);
  for (int i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    auto s = random_seq(rng, 14, true);
    const double y = rng.uniform(0.05, kPi);
    const Complex plus = fm::series_sum(s, y).value;
    const Complex minus = fm::series_sum(s, -y).value;
    CHECK(std::abs(minus - std::conj(plus)) <= 1e-12 * (1.0 + std::abs(plus)));
  }
}
