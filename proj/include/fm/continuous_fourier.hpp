#pragma once

// Fourier transform on the line and everything built directly on it:
//   * the O(1/x) main-term decomposition of the transform, with the L1 norm
//     of the remainder measured against ||lambda'||_1 + S_{lambda'};
//   * the transform-integrability criterion (odd-part integral finite iff the
//     transform is integrable), cross-checked by direct quadrature;
//   * the operator built from a bounded symbol with coinciding limits at
//     +-infinity: subtract the limit, transform the rest into a convolution
//     kernel, apply by discrete convolution, and check the symbol identity
//     lambda(x) fhat(x) = ghat(x) on a frequency grid.

#include <string>
#include <utility>
#include <vector>

#include "fm/continuous_norms.hpp"
#include "fm/function_descriptor.hpp"
#include "fm/quadrature.hpp"
#include "fm/types.hpp"

namespace fm {

struct TransformValue {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
  bool diverged_suspected = false;
};

// int f(t) e^{-ixt} dt. Sampled descriptors are integrated segment by segment
// in closed form (exact up to the declared tail). Closed forms use panels of
// width 2pi/|x| for |x| > 1 so each initial panel spans one oscillation, over
// an effective support found by outward octave scanning; the fitted tail mass
// beyond it is charged to error_estimate, since its sign is not observable
// under oscillation.
TransformValue fourier_transform(const FunctionDescriptor& f, double x,
                                 const QuadratureConfig& cfg);

struct PointDecomposition {
  double x = 0.0;
  Complex full_value{0.0, 0.0};
  Complex main_term{0.0, 0.0};
  Complex gamma{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

// main_term = (i/x)(lambda(pi/(2|x|)) - lambda(-pi/(2|x|))), gamma is defined
// by subtraction from the computed transform, so full = main + gamma holds by
// construction. Refuses symbols that have not decayed at the truncation
// radius; those must go through the limit-subtraction path of
// multiplier_apply instead.
PointDecomposition decompose_transform(const FunctionDescriptor& lambda, double x,
                                       const QuadratureConfig& cfg);

struct RemainderReport {
  IntegralResult gamma_l1;
  IntegralResult deriv_l1;
  IntegralResult s_value;
  double bound_rhs = 0.0;  // deriv_l1 + s_value
  double theta_hat = 0.0;  // gamma_l1 / bound_rhs
  double excluded_mass_estimate = 0.0;  // |x| < exclusion band, in error too
  Finiteness flag = Finiteness::not_converged;
};

RemainderReport transform_remainder_norm(const FunctionDescriptor& lambda,
                                         const QuadratureConfig& cfg);

struct IntegrabilityVerdict {
  IntegralResult a_value;       // odd-part integral of the symbol
  IntegralResult transform_l1;  // direct octave quadrature of |transform|
  Finiteness criterion_flag = Finiteness::not_converged;
  Finiteness direct_flag = Finiteness::not_converged;
  bool consistent = true;
  // cumulative partial integrals at increasing radii, for divergence forensics
  std::vector<std::pair<double, double>> criterion_trace;
  std::vector<std::pair<double, double>> direct_trace;
};

// Predicts integrability of the transform from the odd-part integral and
// confirms by integrating |transform| over octaves on both sides of x = 0
// (the divergent cases grow logarithmically toward 0). Disagreement between
// conclusive verdicts is reported, never reconciled silently.
IntegrabilityVerdict integrability_criterion(const FunctionDescriptor& lambda,
                                             const QuadratureConfig& cfg);

struct ApplyResult {
  Complex limit_value{0.0, 0.0};  // common limit l of the symbol at +-infinity
  FunctionDescriptor lambda0;     // symbol minus limit
  FunctionDescriptor kernel;      // sampled transform(lambda0)(-t) / (2 pi)
  FunctionDescriptor output;      // g = l f + kernel * f, sampled
  double identity_error = 0.0;    // sup over the frequency grid
  double identity_tolerance = 0.0;
  bool identity_ok = false;
  double lambda_sup = 0.0;
  double f_l1 = 0.0;
  double output_l1 = 0.0;
};

// Grid step 2^-7 on radius 64 for the kernel and the output; the identity is
// checked on the frequency grid |x| <= 10, step 1/8, against tolerance
// 1e-3 * sup|lambda| * ||f||_1.
ApplyResult multiplier_apply(const FunctionDescriptor& lambda,
                             const FunctionDescriptor& f,
                             const QuadratureConfig& cfg);

struct OperatorNormEstimate {
  double lower_bound = 0.0;  // max over the corpus of ||Lf||_1 / ||f||_1
  double h_norm = 0.0;
  double ratio = 0.0;        // lower_bound / h_norm when the norm is finite
  std::vector<std::pair<std::string, double>> per_function;
};

OperatorNormEstimate operator_norm_estimate(const FunctionDescriptor& lambda,
                                            const std::vector<FunctionDescriptor>& corpus,
                                            const QuadratureConfig& cfg);

}  // namespace fm
