#pragma once

// Two-sided sequences lambda(k), k in Z, stored on a window |k| <= N with a
// declared tail model outside it:
//   * zero (default): lambda(k) = 0 for |k| > N;
//   * geometric(ratio): lambda(k) = lambda(+-N) * ratio^(|k|-N);
//   * power(exponent):  lambda(k) = lambda(+-N) * (N/|k|)^exponent.
// The sums in discrete_norms use the model for tail bounds and for
// divergence diagnosis; window values are always exact.

#include <complex>
#include <string>
#include <vector>

#include "fm/types.hpp"

namespace fm {

struct SequenceTail {
  enum class Kind { zero, geometric, power };
  Kind kind = Kind::zero;
  double ratio = 0.5;     // geometric
  double exponent = 2.0;  // power
};

class SequenceDescriptor {
 public:
  SequenceDescriptor(int support_radius, std::vector<Complex> values,
                     SequenceTail tail = {});

  // CSV columns k, re, im (header optional); missing k inside the window are
  // zero-filled, the radius is max |k| present.
  static SequenceDescriptor from_csv(const std::string& path, SequenceTail tail = {});
  void to_csv(const std::string& path) const;

  Complex value(long long k) const;
  int support_radius() const { return radius_; }
  const SequenceTail& tail() const { return tail_; }
  bool is_real() const { return real_; }

  // True when the tail model forces lambda(k) -> 0 (zero, |ratio| < 1, or
  // exponent > 0), a precondition for the series interpolant.
  bool limit_is_zero() const;

  std::string name;

 private:
  int radius_;
  std::vector<Complex> vals_;  // index k + radius_
  SequenceTail tail_;
  bool real_;
};

}  // namespace fm
