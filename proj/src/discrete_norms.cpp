#include "fm/discrete_norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fm/continuous_norms.hpp"  // conjugate_exponent

namespace fm {
namespace {

constexpr double kTiny = 1e-14;

Finiteness worse(Finiteness a, Finiteness b) {
  auto rank = [](Finiteness f) {
    switch (f) {
      case Finiteness::finite: return 0;
      case Finiteness::not_converged: return 1;
      case Finiteness::diverged_suspected: return 2;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

// Per-index growth rates of the cumulative window sum; a second-half rate
// that has not dropped versus the second quarter signals a sum that only the
// window size is keeping finite.
bool window_growth_nondecaying(double s_quarter, double s_half, double s_full,
                               int n_quarter, int n_half, int n_full, double total) {
  if (n_half <= n_quarter || n_full <= n_half) return false;
  const double r1 = (s_half - s_quarter) / double(n_half - n_quarter);
  const double r2 = (s_full - s_half) / double(n_full - n_half);
  const double floor = 1e-12 * (1.0 + total);
  return r2 > floor && r2 >= 0.6 * r1;
}

}  // namespace

Complex delta(const SequenceDescriptor& lambda, long long k) {
  if (k >= 0) return lambda.value(k) - lambda.value(k + 1);
  return lambda.value(k) - lambda.value(k - 1);
}

IntegralResult sup_value(const SequenceDescriptor& lambda) {
  const int N = lambda.support_radius();
  IntegralResult r;
  r.converged = true;
  double m = 0.0;
  for (long long k = -N; k <= N; ++k) m = std::max(m, std::abs(lambda.value(k)));
  r.value = m;
  const double edge =
      std::max(std::abs(lambda.value(N)), std::abs(lambda.value(-N)));
  const auto& tail = lambda.tail();
  const bool grows =
      (tail.kind == SequenceTail::Kind::geometric && std::fabs(tail.ratio) > 1.0) ||
      (tail.kind == SequenceTail::Kind::power && tail.exponent < 0.0);
  if (grows && edge > kTiny) {
    r.diverged_suspected = true;
    r.converged = false;
  }
  return r;
}

IntegralResult delta_l1(const SequenceDescriptor& lambda) {
  const int N = lambda.support_radius();
  IntegralResult r;
  double sum = std::abs(delta(lambda, 0));
  double s_quarter = 0.0, s_half = 0.0;
  for (long long j = 1; j <= N + 1; ++j) {
    sum += std::abs(delta(lambda, j)) + std::abs(delta(lambda, -j));
    if (j == N / 4) s_quarter = sum;
    if (j == N / 2) s_half = sum;
  }
  r.value = sum;
  r.converged = true;
  r.subdivisions = 2 * (N + 1) + 1;

  const auto& tail = lambda.tail();
  const double ep = std::abs(lambda.value(N));
  const double em = std::abs(lambda.value(-N));
  switch (tail.kind) {
    case SequenceTail::Kind::zero:
      return r;
    case SequenceTail::Kind::geometric: {
      const double rr = tail.ratio;
      if (std::fabs(rr) < 1.0) {
        // |delta| = |edge| |1-r| |r|^{k-N} beyond the window, summed exactly
        const double factor =
            std::fabs(1.0 - rr) * rr * rr / (1.0 - std::fabs(rr));
        r.tail_contribution_estimate = (ep + em) * std::fabs(factor);
        r.value += r.tail_contribution_estimate;
        return r;
      }
      if (rr == 1.0) break;  // frozen tail: no tail differences, diagnose below
      if (ep > kTiny || em > kTiny) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      return r;
    }
    case SequenceTail::Kind::power: {
      const double p = tail.exponent;
      if (p > 0.0) {
        // the model differences telescope: sum_{k>=N+2} = N^p (N+2)^{-p} per side
        r.tail_contribution_estimate =
            (ep + em) * std::pow(double(N) / double(N + 2), p);
        r.value += r.tail_contribution_estimate;
        return r;
      }
      if (p == 0.0) break;  // frozen tail
      if (ep > kTiny || em > kTiny) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      return r;
    }
  }

  // Frozen (non-decaying, difference-free) tails: the model adds nothing, but
  // a window whose increments have not started to decay is not evidence of
  // finiteness either.
  if (!lambda.limit_is_zero() && N >= 8 &&
      window_growth_nondecaying(s_quarter, s_half, sum, N / 4, N / 2, N + 1, sum)) {
    r.diverged_suspected = true;
    r.converged = false;
  }
  return r;
}

IntegralResult bt_sum(const SequenceDescriptor& lambda, int m_max, bool symmetrized) {
  const int N = lambda.support_radius();
  const bool zero_tail = lambda.tail().kind == SequenceTail::Kind::zero;
  long long M;
  if (m_max > 0) M = m_max;
  else if (zero_tail) M = 2LL * N + 1;
  else M = std::max<long long>(4096, 2LL * N + 3);
  const long long hard_cap = 1LL << 15;
  const bool capped = M > hard_cap;
  M = std::min(M, hard_cap);
  const bool exact = zero_tail && !capped && M >= 2LL * N + 1;

  IntegralResult r;
  double total = 0.0;
  std::vector<double> octave;  // increments over m in [2^j, 2^{j+1})

  for (int side = 0; side < (symmetrized ? 2 : 1); ++side) {
    const long long sgn = side == 0 ? 1 : -1;
    std::vector<Complex> d(std::size_t(M + M / 2 + 2));
    for (long long j = 1; j < (long long)d.size(); ++j)
      d[std::size_t(j)] = delta(lambda, sgn * j);
    int oct = 1;
    double oct_acc = 0.0;
    for (long long m = 2; m <= M; ++m) {
      Complex acc{0.0, 0.0};
      const long long half = m / 2;
      for (long long k = 1; k <= half; ++k)
        acc += (d[std::size_t(m - k)] - d[std::size_t(m + k)]) / double(k);
      const double b = std::abs(acc);
      total += b;
      if (m >= (2LL << oct)) {
        if (side == 0) octave.push_back(oct_acc);
        oct_acc = 0.0;
        ++oct;
      }
      oct_acc += b;
    }
    // the trailing partial octave is dropped: an incomplete increment would
    // bias the decay-ratio diagnosis toward convergence
  }

  r.value = total;
  r.subdivisions = int(std::min<long long>(M, 1 << 30));
  if (exact) {
    r.converged = true;
    return r;
  }

  const double floor = 1e-12 * (1.0 + total);
  if (octave.size() >= 2) {
    const double last = octave[octave.size() - 1];
    const double prev = octave[octave.size() - 2];
    const double rho = last / std::max(prev, 1e-300);
    if (last > floor && rho >= 0.8) {
      r.diverged_suspected = true;
      return r;
    }
    if (rho > 0.0 && rho < 1.0) {
      const double mult = symmetrized ? 2.0 : 1.0;  // sides decay alike
      r.tail_contribution_estimate = mult * last * rho / (1.0 - rho);
      r.value += r.tail_contribution_estimate;
      r.error_estimate += 0.5 * r.tail_contribution_estimate;
    }
  }
  r.converged = true;
  return r;
}

IntegralResult odd_part_sum(const SequenceDescriptor& lambda) {
  const int N = lambda.support_radius();
  IntegralResult r;
  double sum = 0.0;
  for (long long k = 1; k <= N; ++k)
    sum += std::abs(lambda.value(k) - lambda.value(-k)) / double(k);
  r.value = sum;
  r.converged = true;
  r.subdivisions = N;

  const auto& tail = lambda.tail();
  const Complex diff_edge = lambda.value(N) - lambda.value(-N);
  const double dmag = std::abs(diff_edge);
  switch (tail.kind) {
    case SequenceTail::Kind::zero:
      return r;
    case SequenceTail::Kind::geometric: {
      const double rr = tail.ratio;
      if (std::fabs(rr) < 1.0) {
        double tail_sum = 0.0;
        double term_mag = dmag;
        for (long long k = N + 1; k <= N + 4000000; ++k) {
          term_mag *= std::fabs(rr);
          const double t = term_mag / double(k);
          tail_sum += t;
          if (t < 1e-18 * (1.0 + sum + tail_sum)) break;
        }
        r.tail_contribution_estimate = tail_sum;
        r.value += tail_sum;
        return r;
      }
      if (dmag > kTiny) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      return r;
    }
    case SequenceTail::Kind::power: {
      const double p = tail.exponent;
      if (p > 0.0) {
        const long long M = std::max<long long>(4LL * N, 4096);
        double tail_sum = 0.0;
        for (long long k = N + 1; k <= M; ++k)
          tail_sum += dmag * std::pow(double(N) / double(k), p) / double(k);
        const double beyond = dmag * std::pow(double(N) / double(M), p) / p;
        r.tail_contribution_estimate = tail_sum + beyond;
        r.value += r.tail_contribution_estimate;
        r.error_estimate += dmag * std::pow(double(N) / double(M), p) / double(M);
        return r;
      }
      if (dmag > kTiny) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      return r;
    }
  }
  return r;
}

IntegralResult dyadic_block_sum(const SequenceDescriptor& lambda, double q) {
  const bool q_inf = std::isinf(q);
  if (!q_inf && !(q >= 1.0))
    throw std::invalid_argument("dyadic_block_sum: q must be >= 1 or infinity");
  const int N = lambda.support_radius();
  const auto& tail = lambda.tail();
  const bool zero_tail = tail.kind == SequenceTail::Kind::zero;

  int n_cap;
  if (zero_tail) {
    n_cap = 0;
    while ((1LL << (n_cap + 1)) <= N + 1) ++n_cap;
  } else {
    n_cap = 8;
    while ((1LL << n_cap) <= 4LL * N && n_cap < 18) ++n_cap;
  }

  IntegralResult r;
  std::vector<double> blocks;
  double total = 0.0;
  int last_window_block = -1;
  for (int n = 0; n <= n_cap; ++n) {
    const long long lo = 1LL << n;
    const long long hi = 2 * lo;
    double block;
    if (q_inf) {
      double m = 0.0;
      for (long long k = lo; k < hi; ++k)
        m = std::max({m, std::abs(delta(lambda, k)), std::abs(delta(lambda, -k))});
      block = m;
    } else {
      double s = 0.0;
      for (long long k = lo; k < hi; ++k)
        s += std::pow(std::abs(delta(lambda, k)), q) +
             std::pow(std::abs(delta(lambda, -k)), q);
      block = double(lo) * std::pow(s / double(lo), 1.0 / q);
    }
    blocks.push_back(block);
    total += block;
    if (hi - 1 <= N) last_window_block = n;
  }
  r.value = total;
  r.converged = true;
  r.subdivisions = n_cap + 1;
  if (zero_tail) return r;

  const double floor = 1e-12 * (1.0 + total);
  const std::size_t nb = blocks.size();
  if (nb >= 2) {
    const double last = blocks[nb - 1];
    const double prev = blocks[nb - 2];
    const double rho = last / std::max(prev, 1e-300);
    if (last > floor && rho >= 0.99) {
      r.diverged_suspected = true;
      r.converged = false;
      return r;
    }
    if (last > floor && rho > 0.0 && rho < 0.99) {
      r.tail_contribution_estimate = last * rho / (1.0 - rho);
      r.value += r.tail_contribution_estimate;
      r.error_estimate += 0.5 * r.tail_contribution_estimate;
    }
  }
  // a frozen tail hides whatever the window was building toward
  if (!lambda.limit_is_zero() && last_window_block >= 1) {
    const double wlast = blocks[std::size_t(last_window_block)];
    const double wprev = blocks[std::size_t(last_window_block - 1)];
    if (wlast > floor && wlast >= 0.6 * wprev) {
      r.diverged_suspected = true;
      r.converged = false;
    }
  }
  return r;
}

SequenceNormReport assemble_sequence_report(const SequenceDescriptor& lambda,
                                            const std::vector<double>& p_list,
                                            const SumLimits& limits) {
  SequenceNormReport rep;
  rep.name = lambda.name;
  rep.sup = sup_value(lambda);
  rep.delta_l1 = delta_l1(lambda);
  rep.bv_norm = rep.sup.value + rep.delta_l1.value;
  rep.s_value = bt_sum(lambda, limits.s_m_max, limits.symmetrized_s);
  rep.a_value = odd_part_sum(lambda);
  rep.h_norm = rep.bv_norm + rep.s_value.value + rep.a_value.value;
  rep.limit_is_zero = lambda.limit_is_zero();

  rep.flags["sup"] = rep.sup.flag();
  rep.flags["delta_l1"] = rep.delta_l1.flag();
  rep.flags["s"] = rep.s_value.flag();
  rep.flags["a"] = rep.a_value.flag();

  for (double p : p_list) {
    const double q = conjugate_exponent(p);
    const IntegralResult aq = dyadic_block_sum(lambda, q);
    rep.aq_values[p] = aq;
    rep.bvp_norms[p] = rep.sup.value + aq.value + rep.a_value.value;
    rep.flags["aq_p=" + format_p(p)] = aq.flag();
  }

  const Finiteness h = worse(worse(rep.sup.flag(), rep.delta_l1.flag()),
                             worse(rep.s_value.flag(), rep.a_value.flag()));
  if (h == Finiteness::finite) rep.h_certificate = Certificate::member;
  else if (h == Finiteness::diverged_suspected) rep.h_certificate = Certificate::not_member;
  else rep.h_certificate = Certificate::inconclusive;
  return rep;
}

}  // namespace fm
