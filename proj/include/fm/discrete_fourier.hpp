#pragma once

// Periodic side: trigonometric series with sequence coefficients.
//
// Functions on the circle live on a uniform power-of-two grid over (-pi, pi];
// analysis and synthesis are direct sums, exact inverses of each other on the
// representable frequency range [-n/2, n/2 - 1]. The series analogue of the
// transform decomposition replaces the symbol by its piecewise-linear
// interpolant through the integer nodes, and the remainder bound by
// ||delta||_1 plus the one-sided oscillation sum.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fm/discrete_norms.hpp"
#include "fm/quadrature.hpp"
#include "fm/sequence_descriptor.hpp"
#include "fm/types.hpp"

namespace fm {

class PeriodicFunction {
 public:
  // Sample count must be a power of two, at least 64; node j sits at
  // x_j = -pi + 2 pi (j+1)/n, so the last node is +pi.
  static PeriodicFunction from_samples(std::vector<Complex> values);
  static PeriodicFunction from_callable(const std::function<Complex(double)>& f,
                                        int n = 4096);
  // CSV columns j, re, im (header optional); rows must cover j = 0..n-1.
  static PeriodicFunction from_csv(const std::string& path);
  void to_csv(const std::string& path) const;

  int size() const { return int(vals_.size()); }
  double node(int j) const;
  const std::vector<Complex>& samples() const { return vals_; }
  bool is_real() const { return real_; }

  // (1/n) sum_j f(x_j) e^{-ik x_j}; refuses |k| > n/2 (beyond Nyquist).
  Complex coefficient(long long k) const;
  std::vector<Complex> coefficients(long long k_min, long long k_max) const;
  double l1_norm() const;  // (2 pi / n) sum |f(x_j)|

  std::string name;

 private:
  explicit PeriodicFunction(std::vector<Complex> v);
  std::vector<Complex> vals_;
  bool real_ = true;
};

// f(x_j) = sum_{k} coeffs[k - k_min] e^{i k x_j} on an n-point grid.
PeriodicFunction synthesize(const std::vector<Complex>& coeffs, long long k_min, int n);

// interpolant: piecewise-linear through (k, lambda(k)), the canonical choice.
// difference_form: lambda(ceil(x)) + (ceil(x) - x) * delta(ceil(x)) on each
// unit cell, an alternative single-sided expression kept for comparison; it
// extrapolates from the forward difference instead of interpolating.
enum class EllMode { interpolant, difference_form };

Complex ell(const SequenceDescriptor& lambda, double x,
            EllMode mode = EllMode::interpolant);

struct SeriesValue {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
  bool diverged_suspected = false;
};

// sum_k lambda(k) e^{iky}: window exact, geometric tails in closed form,
// decaying power tails by partial summation with an oscillation-aware
// remainder bound, non-summable tails flagged.
SeriesValue series_sum(const SequenceDescriptor& lambda, double y);

struct SeriesPointDecomposition {
  double y = 0.0;
  Complex series_value{0.0, 0.0};
  Complex main_term{0.0, 0.0};
  Complex gamma{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

// main = (i/y)(ell(pi/(2|y|)) - ell(-pi/(2|y|))) for 0 < |y| <= pi. Requires
// a tail model that forces lambda -> 0 (the interpolant is unbounded
// otherwise).
SeriesPointDecomposition decompose_series(const SequenceDescriptor& lambda, double y,
                                          EllMode mode = EllMode::interpolant);

struct SeriesLimits {
  int y_grid = 4096;          // composite Simpson panels on [exclusion, pi]
  double y_exclusion = 1e-4;
  EllMode ell_mode = EllMode::interpolant;
  bool symmetrized_s = false;
};

struct SeriesRemainderReport {
  double gamma_l1 = 0.0;
  double quadrature_error = 0.0;        // Richardson estimate from half grid
  double excluded_mass_estimate = 0.0;  // |y| < exclusion band
  IntegralResult delta_l1;
  IntegralResult s_value;
  double bound_rhs = 0.0;  // delta_l1 + s
  double theta_hat = 0.0;
  Finiteness flag = Finiteness::not_converged;
};

SeriesRemainderReport series_remainder_norm(const SequenceDescriptor& lambda,
                                            const SeriesLimits& limits = {});

struct PeriodicApplyResult {
  PeriodicFunction output;
  double identity_error = 0.0;  // max_k |lambda(k) fhat(k) - ghat(k)|, ghat from g
  double f_l1 = 0.0;
  double output_l1 = 0.0;
};

// ghat(k) = lambda(k) fhat(k) for every representable k. Refuses when the
// sequence window extends past the grid Nyquist with non-negligible values
// there (those coefficients would be silently dropped).
PeriodicApplyResult multiplier_apply_periodic(const SequenceDescriptor& lambda,
                                              const PeriodicFunction& f);

struct PeriodicOperatorNormEstimate {
  double lower_bound = 0.0;  // max over the corpus of ||Lf||_1 / ||f||_1
  double h_norm = 0.0;       // bv + s + a
  double ratio = 0.0;
  std::vector<std::pair<std::string, double>> per_function;
};

PeriodicOperatorNormEstimate periodic_operator_norm_estimate(
    const SequenceDescriptor& lambda, const std::vector<PeriodicFunction>& corpus,
    const SumLimits& limits = {});

}  // namespace fm
