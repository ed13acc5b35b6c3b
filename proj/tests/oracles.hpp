#pragma once

// Brute-force reference implementations for the test suite. Deliberately
// naive: fixed-step midpoint / Simpson sums and direct double loops, no
// adaptivity, no tail modelling, no code shared with the library. Tolerances
// in the tests reflect their O(h) / O(h^2) accuracy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;
using RealFn = std::function<double(double)>;
using CxFn = std::function<Cx(double)>;
using SeqFn = std::function<Cx(long long)>;

inline double midpoint(const RealFn& f, double a, double b, int n) {
  double h = (b - a) / n, s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

inline Cx simpson_cx(const CxFn& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  Cx s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * (h / 3.0);
}

// S_g = int_0^inf |int_0^{u/2} (g(u-t) - g(u+t))/t dt| du, midpoint in both
// variables (midpoint never evaluates t = 0, where the integrand has a
// removable limit).
inline double s_functional(const RealFn& g, double u_max, double du, double dt) {
  double total = 0.0;
  const int nu = int(u_max / du);
  for (int i = 0; i < nu; ++i) {
    const double u = (i + 0.5) * du;
    const int nt = std::max(1, int((u / 2.0) / dt));
    const double ht = (u / 2.0) / nt;
    double inner = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double t = (j + 0.5) * ht;
      inner += (g(u - t) - g(u + t)) / t;
    }
    total += std::fabs(inner * ht) * du;
  }
  return total;
}

// A = int_0^inf |f(t) - f(-t)| / t dt
inline double odd_part(const RealFn& f, double t_max, int steps) {
  return midpoint([&f](double t) { return std::fabs(f(t) - f(-t)) / t; }, 0.0, t_max,
                  steps);
}

// A_q g = int_0^inf (1/u int_{u<=|t|<=2u} |g|^q dt)^{1/q} du for finite q;
// q = inf takes the block sup (scanned on the t grid) with no 1/u weight.
inline double block_mean(const RealFn& g, double q, double u_min, double u_max,
                         int u_steps, int t_steps) {
  const bool is_inf = std::isinf(q);
  auto block = [&](double u) {
    const double hu = u / t_steps;
    double acc = 0.0, mx = 0.0;
    for (int j = 0; j < t_steps; ++j) {
      const double t = u + (j + 0.5) * hu;
      const double m = std::max(std::fabs(g(t)), std::fabs(g(-t)));
      mx = std::max(mx, m);
      acc += (std::pow(std::fabs(g(t)), q) + std::pow(std::fabs(g(-t)), q)) * hu;
    }
    return is_inf ? mx : std::pow(acc / u, 1.0 / q);
  };
  return midpoint(block, u_min, u_max, u_steps);
}

// int_0^inf t |f''(t)| dt
inline double t_curvature(const RealFn& f2, double t_max, int steps) {
  return midpoint([&f2](double t) { return t * std::fabs(f2(t)); }, 0.0, t_max, steps);
}

// (1/pi) PV int f(t)/(x-t) dt with symmetric exclusion |t-x| > delta,
// midpoint on both sides of the pole so the grid is mirror-symmetric.
inline double hilbert(const RealFn& f, double x, double radius, double h, double delta) {
  const int n = int(radius / h);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * h + delta;  // distance from the pole
    s += (f(x - t) - f(x + t)) / t * h;
  }
  return s / 3.141592653589793238462643383279502884;
}

// int_a^b f(t) e^{-ixt} dt by composite Simpson
inline Cx fourier(const CxFn& f, double x, double a, double b, int n) {
  return simpson_cx([&f, x](double t) { return f(t) * std::exp(Cx(0.0, -x * t)); }, a, b,
                    n);
}

// exact transform of one linear segment (a,va)-(b,vb): antiderivative of
// (v_a + s(t-a)) e^{-ixt} evaluated at the endpoints, long-double arithmetic;
// small |x(b-a)| goes through the Taylor moments int_0^h u^m e^{-ixu} du
// because the endpoint difference cancels catastrophically there
inline Cx pl_segment(double a, double b, Cx va, Cx vb, double x) {
  if (x == 0.0) return (va + vb) * (0.5 * (b - a));
  const long double h = (long double)b - (long double)a;
  if (std::fabs(x) * (double)h < 0.5) {
    const std::complex<long double> z(0.0L, -(long double)x);
    std::complex<long double> zk(1.0L, 0.0L);  // z^k / k!
    std::complex<long double> m0 = 0.0L, m1 = 0.0L;
    long double hk1 = h;  // h^{k+1}
    for (int k = 0; k < 40; ++k) {
      m0 += zk * hk1 / (long double)(k + 1);
      m1 += zk * hk1 * h / (long double)(k + 2);
      if (std::abs(zk) * hk1 < 1e-30L) break;
      zk *= z / (long double)(k + 1);
      hk1 *= h;
    }
    const std::complex<long double> s =
        (std::complex<long double>(vb) - std::complex<long double>(va)) / h;
    const std::complex<long double> r =
        std::exp(std::complex<long double>(0.0L, -(long double)x * (long double)a)) *
        (std::complex<long double>(va) * m0 + s * m1);
    return Cx((double)r.real(), (double)r.imag());
  }
  const std::complex<long double> I(0.0L, 1.0L);
  const long double lx = x;
  const std::complex<long double> s =
      (std::complex<long double>(vb) - std::complex<long double>(va)) /
      (long double)(b - a);
  // F(t) = e^{-ixt} [ (v(t))/(-ix) - s/(-ix)^2 ], v(t) = va + s(t-a)
  auto F = [&](long double t, std::complex<long double> v) {
    const std::complex<long double> mix = -I * lx;
    return std::exp(mix * t) * (v / mix - s / (mix * mix));
  };
  const std::complex<long double> r =
      F((long double)b, std::complex<long double>(vb)) -
      F((long double)a, std::complex<long double>(va));
  return Cx((double)r.real(), (double)r.imag());
}

// two-branch difference used by all discrete sums
inline Cx seq_delta(const SeqFn& v, long long k) {
  return k >= 0 ? v(k) - v(k + 1) : v(k) - v(k - 1);
}

// s = sum_{m>=2} | sum_{k=1}^{floor(m/2)} (delta(m-k) - delta(m+k)) / k |
inline double seq_s(const SeqFn& v, int m_max) {
  double total = 0.0;
  for (int m = 2; m <= m_max; ++m) {
    Cx inner = 0.0;
    for (int k = 1; k <= m / 2; ++k)
      inner += (seq_delta(v, m - k) - seq_delta(v, m + k)) / double(k);
    total += std::abs(inner);
  }
  return total;
}

// a = sum_{k>=1} |lambda(k) - lambda(-k)| / k
inline double seq_a(const SeqFn& v, long long n_max) {
  double total = 0.0;
  for (long long k = n_max; k >= 1; --k) total += std::abs(v(k) - v(-k)) / double(k);
  return total;
}

// a_q = sum_{n=0}^{n_max} 2^n (2^-n sum_{|k| in [2^n, 2^{n+1})} |delta|^q)^{1/q};
// q = inf sums the block maxima unweighted
inline double seq_aq(const SeqFn& v, double q, int n_max) {
  const bool is_inf = std::isinf(q);
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const long long lo = 1LL << n, hi = (1LL << (n + 1)) - 1;
    double acc = 0.0, mx = 0.0;
    for (long long k = lo; k <= hi; ++k) {
      const double dp = std::abs(seq_delta(v, k));
      const double dm = std::abs(seq_delta(v, -k));
      mx = std::max(mx, std::max(dp, dm));
      acc += std::pow(dp, q) + std::pow(dm, q);
    }
    total += is_inf ? mx : std::ldexp(std::pow(std::ldexp(acc, -n), 1.0 / q), n);
  }
  return total;
}

// deterministic 64-bit generator for the property suites
struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  unsigned long long next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (double(next() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + int(next() % (unsigned long long)(hi - lo + 1));
  }
};

}  // namespace oracle
