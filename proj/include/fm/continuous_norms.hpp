#pragma once

// Seminorms and membership tests for candidate multipliers on the line.
//
// Building blocks (lambda is the candidate, g usually its derivative):
//   sup_norm            sup |lambda| over [-R, R] plus the tail supremum
//   derivative_l1       int |lambda'|
//   bt_functional       S_g = int_0^inf | int_0^{u/2} (g(u-t)-g(u+t))/t dt | du,
//                       the Boas-Telyakovskii oscillation functional; the
//                       two_sided flag doubles the inner integral (the
//                       integrand is even in t, so the literal two-sided
//                       reading is exactly twice the canonical one-sided form)
//   odd_part_integral   A = int_0^inf |lambda(t) - lambda(-t)| / t dt
//   block_mean_integral A_q g = int_0^inf (1/u int_{u<=|t|<=2u} |g|^q)^{1/q} du,
//                       with the essential supremum over the annulus at q = inf
//   quasiconvexity_integral  int_0^inf t |d lambda'(t)|
//   hilbert_transform   (1/pi) PV int f(t)/(x-t) dt
//   reh_norm            ||f||_1 + ||Hf||_1 (real-Hardy style norm)
//   hs_membership       odd continuations f+ / f- both in ReH, cross-checked
//                       against the equivalent criterion ||f||_1 + S_f < inf
//
// Norm assembly: cb = sup + int|lambda'|; the full transform-space norm adds
// S_{lambda'} and A; the block-norm family adds A_q(lambda') and A to sup.

#include <map>
#include <string>
#include <vector>

#include "fm/function_descriptor.hpp"
#include "fm/quadrature.hpp"
#include "fm/types.hpp"

namespace fm {

double sup_norm(const FunctionDescriptor& f, const QuadratureConfig& cfg);

IntegralResult derivative_l1(const FunctionDescriptor& f, const QuadratureConfig& cfg);

IntegralResult bt_functional(const FunctionDescriptor& g, const QuadratureConfig& cfg,
                             bool two_sided = false);

IntegralResult odd_part_integral(const FunctionDescriptor& f, const QuadratureConfig& cfg);

// q >= 1 or infinity.
IntegralResult block_mean_integral(const FunctionDescriptor& g, double q,
                                   const QuadratureConfig& cfg);

IntegralResult quasiconvexity_integral(const FunctionDescriptor& f,
                                       const QuadratureConfig& cfg);

struct HilbertValue {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

HilbertValue hilbert_transform(const FunctionDescriptor& f, double x,
                               const QuadratureConfig& cfg);

enum class HalfLine { positive, negative };

// Odd continuation of the restriction of f to one half-line; vanishes at 0.
FunctionDescriptor odd_continuation(const FunctionDescriptor& f, HalfLine side);

struct ReHResult {
  IntegralResult f_l1;
  double conj_l1 = 0.0;            // grid quadrature of |Hf| up to conj_radius
  double conj_tail_estimate = 0.0;
  double conj_radius = 0.0;
  double growth_exponent = 0.0;    // fitted decay exponent of |Hf|
  Finiteness conj_flag = Finiteness::not_converged;
  Finiteness flag = Finiteness::not_converged;
  double value = 0.0;  // ||f||_1 + ||Hf||_1 when finite
};

ReHResult reh_norm(const FunctionDescriptor& f, const QuadratureConfig& cfg);

struct HsReport {
  ReHResult plus_part, minus_part;
  IntegralResult f_l1, s_f;
  Finiteness reh_flag = Finiteness::not_converged;        // via odd continuations
  Finiteness criterion_flag = Finiteness::not_converged;  // via ||f||_1 + S_f
  bool consistent = true;  // false only on a finite-vs-diverged split
};

HsReport hs_membership(const FunctionDescriptor& f, const QuadratureConfig& cfg);

struct NormReport {
  std::string name;
  double sup_norm = 0.0;
  IntegralResult deriv_l1;
  double cb_norm = 0.0;
  IntegralResult s_value;  // S_{lambda'}
  IntegralResult a_value;  // A(lambda)
  double h_norm = 0.0;
  std::map<double, IntegralResult> aq_values;  // keyed by p; uses conjugate q
  std::map<double, double> bp_norms;
  IntegralResult quasiconvexity;  // zero/not_converged when no 2nd derivative
  bool has_quasiconvexity = false;
  std::map<std::string, Finiteness> flags;
  Certificate h_certificate = Certificate::inconclusive;
};

// p = 1 maps to q = infinity; p > 1 to q = p/(p-1).
double conjugate_exponent(double p);

NormReport assemble_norm_report(const FunctionDescriptor& lambda,
                                const std::vector<double>& p_list,
                                const QuadratureConfig& cfg);

}  // namespace fm
