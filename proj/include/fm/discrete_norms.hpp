#pragma once

// Seminorms for two-sided sequences, the discrete mirror of
// continuous_norms. Sums are exact over the window plus the declared tail
// model; divergence is diagnosed from non-decaying octave increments, never
// asserted from a truncation alone.
//
//   delta            two-branch difference: lambda(k) - lambda(k+1) for
//                    k >= 0, lambda(k) - lambda(k-1) for k < 0
//   sup_value        sup_k |lambda(k)| under the tail model
//   delta_l1         sum over Z of |delta|
//   bt_sum           s = sum_{m>=2} |sum_{k=1}^{floor(m/2)}
//                        (delta(m-k) - delta(m+k)) / k|,
//                    one-sided; the symmetrized flag adds the mirrored sum
//   odd_part_sum     a = sum_{k>=1} |lambda(k) - lambda(-k)| / k
//   dyadic_block_sum a_q = sum_n 2^n (2^-n sum_{|k| in [2^n, 2^{n+1})}
//                        |delta(k)|^q)^{1/q}; at q = inf the block maxima are
//                    summed without the 2^n weight
//
// Norm assembly: bv = sup + delta_l1; the full series-space norm adds s and
// a; the block-norm family is sup + a_q + a with q conjugate to p.

#include <map>
#include <string>
#include <vector>

#include "fm/quadrature.hpp"
#include "fm/sequence_descriptor.hpp"
#include "fm/types.hpp"

namespace fm {

Complex delta(const SequenceDescriptor& lambda, long long k);

IntegralResult sup_value(const SequenceDescriptor& lambda);

IntegralResult delta_l1(const SequenceDescriptor& lambda);

// m_max = 0 picks the cutoff automatically: exact for zero tails, octave
// continuation with extrapolation for model tails.
IntegralResult bt_sum(const SequenceDescriptor& lambda, int m_max = 0,
                      bool symmetrized = false);

IntegralResult odd_part_sum(const SequenceDescriptor& lambda);

// q >= 1 or infinity (use conjugate_exponent from continuous_norms for p).
IntegralResult dyadic_block_sum(const SequenceDescriptor& lambda, double q);

struct SumLimits {
  int s_m_max = 0;            // 0 = automatic
  bool symmetrized_s = false;
};

struct SequenceNormReport {
  std::string name;
  IntegralResult sup;
  IntegralResult delta_l1;
  double bv_norm = 0.0;
  IntegralResult s_value;
  IntegralResult a_value;
  double h_norm = 0.0;
  std::map<double, IntegralResult> aq_values;  // keyed by p, computed at q
  std::map<double, double> bvp_norms;
  std::map<std::string, Finiteness> flags;
  Certificate h_certificate = Certificate::inconclusive;
  bool limit_is_zero = false;
};

SequenceNormReport assemble_sequence_report(const SequenceDescriptor& lambda,
                                            const std::vector<double>& p_list,
                                            const SumLimits& limits = {});

}  // namespace fm
