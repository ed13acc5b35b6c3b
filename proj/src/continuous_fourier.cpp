#include "fm/continuous_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fm {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
const Complex kImagUnit{0.0, 1.0};

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

// Moments of one linear segment against e^{-ixs}:
//   e0 = int_0^h e^{-ixs} ds,   e1 = int_0^h s e^{-ixs} ds.
// The closed forms lose all precision when |xh| is small (catastrophic
// cancellation in 1 - e^{-ixh}), so below 1/2 both switch to power series.
void segment_moments(double h, double x, Complex& e0, Complex& e1) {
  const double xh = x * h;
  if (std::fabs(xh) < 0.5) {
    const Complex z{0.0, -xh};
    Complex term{1.0, 0.0};  // z^k / k!
    Complex s0{0.0, 0.0}, s1{0.0, 0.0};
    for (int k = 0; k < 26; ++k) {
      s0 += term / double(k + 1);
      s1 += term / double(k + 2);
      if (std::abs(term) < 1e-22) break;
      term *= z / double(k + 1);
    }
    e0 = h * s0;
    e1 = h * h * s1;
  } else {
    const Complex em = std::exp(Complex{0.0, -xh});
    const Complex ix{0.0, x};
    e0 = (1.0 - em) / ix;
    e1 = (e0 - h * em) / ix;
  }
}

// Piecewise-linear descriptors transform segment by segment in closed form;
// only the declared tail can contribute error or divergence.
TransformValue transform_sampled(const FunctionDescriptor& f, double x) {
  const auto& xs = f.grid();
  const auto& vs = f.values();
  Complex sum{0.0, 0.0}, comp{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i];
    const double h = xs[i + 1] - a;
    if (!(h > 0.0)) continue;
    const Complex va = vs[i];
    const Complex slope = (vs[i + 1] - vs[i]) / h;
    Complex e0, e1;
    segment_moments(h, x, e0, e1);
    const Complex contrib = std::exp(Complex{0.0, -x * a}) * (va * e0 + slope * e1);
    const Complex y = contrib - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  TransformValue r;
  r.value = sum;
  r.converged = true;

  double scale = 0.0;
  for (const Complex& v : vs) scale = std::max(scale, std::abs(v));
  const double negligible = 1e-14 * (1.0 + scale);
  const double v_left = std::abs(vs.front());
  const double v_right = std::abs(vs.back());
  switch (f.tail().kind) {
    case FunctionTail::Kind::zero:
      break;
    case FunctionTail::Kind::hold:
      if (v_left > negligible || v_right > negligible) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      break;
    case FunctionTail::Kind::power: {
      const double p = f.tail().exponent;
      if (p > 1.0) {
        r.error_estimate += v_left * std::max(std::fabs(xs.front()), 1e-6) / (p - 1.0);
        r.error_estimate += v_right * std::max(std::fabs(xs.back()), 1e-6) / (p - 1.0);
      } else if (v_left > negligible || v_right > negligible) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      break;
    }
  }
  return r;
}

// Outward octave scan for the radius beyond which |f| stays under a noise
// floor. saturated reports that the scan ran into the truncation radius with
// the last octave still significant.
double effective_radius(const FunctionDescriptor& f, const QuadratureConfig& cfg,
                        bool* saturated = nullptr) {
  double near = 0.0;
  for (double t : {0.0, 0.5, -0.5, 1.0, -1.0}) near = std::max(near, std::abs(f(t)));
  const double floor = 1e-14 * (1.0 + near);
  double radius = 1.0;
  double last_significant = 1.0;
  bool last_block_hot = false;
  while (radius < cfg.truncation_radius) {
    const double hi = std::min(2.0 * radius, cfg.truncation_radius);
    double m = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double t = radius + (hi - radius) * (i + 0.5) / 8.0;
      m = std::max({m, std::abs(f(t)), std::abs(f(-t))});
    }
    last_block_hot = m > floor;
    if (last_block_hot) last_significant = hi;
    radius = hi;
  }
  if (saturated != nullptr)
    *saturated = last_block_hot && last_significant >= cfg.truncation_radius;
  return last_significant;
}

std::vector<double> symmetric_transform_edges(double R, double x) {
  std::vector<double> edges;
  if (std::fabs(x) <= 1.0) {
    auto half = detail::ladder_edges(0.0, R);
    for (auto it = half.rbegin(); it != half.rend(); ++it) edges.push_back(-*it);
    for (std::size_t i = 1; i < half.size(); ++i) edges.push_back(half[i]);
  } else {
    // one oscillation per initial panel, capped; refinement handles the rest
    const double period = kTwoPi / std::fabs(x);
    long long n = (long long)std::ceil(2.0 * R / period);
    n = std::min(n, (long long)16384);
    n = std::max(n, (long long)4);
    edges.reserve(std::size_t(n) + 1);
    for (long long k = 0; k <= n; ++k) edges.push_back(-R + 2.0 * R * double(k) / double(n));
  }
  return edges;
}

TransformValue transform_closed(const FunctionDescriptor& f, double x,
                                const QuadratureConfig& cfg) {
  const double R = effective_radius(f, cfg);
  auto g = [&f, x](double t) -> Complex { return f(t) * std::exp(Complex{0.0, -x * t}); };
  const auto edges = symmetric_transform_edges(R, x);
  auto out = detail::adaptive<Complex>(g, edges, cfg.abs_tol, cfg.rel_tol,
                                       cfg.max_subdivisions);
  TransformValue r;
  r.value = out.value;
  r.error_estimate = out.error;
  r.converged = out.converged;

  // Mass beyond the scanned radius: its phase is unknowable from samples, so
  // the fitted magnitude goes into the error, never into the value.
  const double scale = std::max(std::abs(out.value) / std::max(2.0 * R, 1.0), cfg.abs_tol);
  for (int side = 0; side < 2; ++side) {
    auto mag = [&f, side](double t) { return std::abs(f(side == 0 ? t : -t)); };
    auto fit = detail::fit_tail(mag, R, cfg.tail_mode, scale);
    if (fit.negligible) continue;
    if (fit.diverged) {
      double band = 0.0;
      for (int i = 0; i < 16; ++i) {
        const double t = 0.5 * R + 0.5 * R * (i + 0.5) / 16.0;
        band += mag(t) * (0.5 * R / 16.0);
      }
      if (band > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value))) {
        r.diverged_suspected = true;
        r.converged = false;
      } else {
        r.error_estimate += band;
      }
      continue;
    }
    r.error_estimate += fit.magnitude + fit.uncertainty;
  }
  return r;
}

// L1 norm of a descriptor: exact per-segment integrals for sampled kinds
// (splitting segments where the interpolant changes sign), improper
// quadrature for closed forms.
IntegralResult l1_norm(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  if (!f.is_sampled()) {
    auto pos = integrate_improper([&f](double t) { return std::abs(f(t)); }, 0.0, cfg);
    auto neg = integrate_improper([&f](double t) { return std::abs(f(-t)); }, 0.0, cfg);
    IntegralResult r;
    r.value = pos.value + neg.value;
    r.error_estimate = pos.error_estimate + neg.error_estimate;
    r.tail_contribution_estimate = pos.tail_contribution_estimate + neg.tail_contribution_estimate;
    r.converged = pos.converged && neg.converged;
    r.diverged_suspected = pos.diverged_suspected || neg.diverged_suspected;
    r.subdivisions = pos.subdivisions + neg.subdivisions;
    return r;
  }

  const auto& xs = f.grid();
  const auto& vs = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double h = xs[i + 1] - xs[i];
    if (!(h > 0.0)) continue;
    if (f.is_real()) {
      const double a = vs[i].real(), b = vs[i + 1].real();
      if (a * b >= 0.0) {
        sum += 0.5 * h * (std::fabs(a) + std::fabs(b));
      } else {
        const double root = h * a / (a - b);  // |.| integrates as two triangles
        sum += 0.5 * (root * std::fabs(a) + (h - root) * std::fabs(b));
      }
    } else {
      // midpoint-refined trapezoid of |interpolant|; exact enough for complex
      const Complex mid = 0.5 * (vs[i] + vs[i + 1]);
      sum += h * (std::abs(vs[i]) + 4.0 * std::abs(mid) + std::abs(vs[i + 1])) / 6.0;
    }
  }

  IntegralResult r;
  r.value = sum;
  r.converged = true;
  const double v_left = std::abs(vs.front());
  const double v_right = std::abs(vs.back());
  const double negligible = 1e-14;
  switch (f.tail().kind) {
    case FunctionTail::Kind::zero:
      break;
    case FunctionTail::Kind::hold:
      if (v_left > negligible || v_right > negligible) r.diverged_suspected = true;
      break;
    case FunctionTail::Kind::power: {
      const double p = f.tail().exponent;
      if (p > 1.0) {
        const double tail = v_left * std::max(std::fabs(xs.front()), 1e-6) / (p - 1.0) +
                            v_right * std::max(std::fabs(xs.back()), 1e-6) / (p - 1.0);
        r.tail_contribution_estimate = tail;
        r.value += tail;
      } else if (v_left > negligible || v_right > negligible) {
        r.diverged_suspected = true;
      }
      break;
    }
  }
  if (r.diverged_suspected) r.converged = false;
  return r;
}

struct KernelParts {
  Complex limit;
  FunctionDescriptor lambda0;
  FunctionDescriptor kernel;
  double lambda_sup;
};

constexpr double kKernelStep = 0.0078125;  // 2^-7
constexpr double kKernelRadius = 64.0;

KernelParts materialize_kernel(const FunctionDescriptor& lambda,
                               const QuadratureConfig& cfg) {
  const double lambda_sup = sup_norm(lambda, cfg);
  const double R = cfg.truncation_radius;
  Complex lp{0.0, 0.0}, lm{0.0, 0.0};
  constexpr int kBand = 64;
  for (int i = 0; i < kBand; ++i) {
    const double t = 0.5 * R + 0.5 * R * (i + 0.5) / kBand;
    lp += lambda(t);
    lm += lambda(-t);
  }
  lp /= double(kBand);
  lm /= double(kBand);
  if (std::abs(lp - lm) > 1e-4 * (1.0 + lambda_sup))
    throw std::domain_error(
        "multiplier_apply: probed limits at +infinity and -infinity disagree (" +
        std::to_string(lp.real()) + " vs " + std::to_string(lm.real()) +
        "); the convolution construction needs a single limit");
  const Complex l = 0.5 * (lp + lm);

  FunctionDescriptor lambda0 = lambda.minus_constant(l);
  const QuadratureConfig kcfg = cfg.outer();

  const int n = int(2.0 * kKernelRadius / kKernelStep) + 1;  // 16385 nodes
  std::vector<double> grid(n);
  std::vector<Complex> vals(n);
  for (int j = 0; j < n; ++j) grid[j] = -kKernelRadius + kKernelStep * j;
  const int mid = (n - 1) / 2;
  const bool herm = lambda.is_real() && std::fabs(l.imag()) < 1e-14;
  for (int j = mid; j < n; ++j) {
    const Complex v = fourier_transform(lambda0, -grid[j], kcfg).value / kTwoPi;
    vals[j] = v;
    if (herm) vals[n - 1 - j] = std::conj(v);
  }
  if (!herm) {
    for (int j = 0; j < mid; ++j)
      vals[j] = fourier_transform(lambda0, -grid[j], kcfg).value / kTwoPi;
  }
  return KernelParts{l, std::move(lambda0),
                     FunctionDescriptor::sampled(std::move(grid), std::move(vals)),
                     lambda_sup};
}

// g = l f + kernel * f on the kernel grid. f is pre-evaluated on the
// difference lattice (t_j - s_m is again a lattice point), so the convolution
// is a pure multiply-add sweep over the kernel's effective support.
FunctionDescriptor convolve_on_grid(const KernelParts& parts,
                                    const FunctionDescriptor& f) {
  const auto& grid = parts.kernel.grid();
  const auto& k = parts.kernel.values();
  const int n = int(grid.size());

  double kmax = 0.0;
  for (const Complex& v : k) kmax = std::max(kmax, std::abs(v));
  int jlo = n, jhi = -1;
  for (int j = 0; j < n; ++j) {
    if (std::abs(k[j]) > 1e-13 * kmax) {
      jlo = std::min(jlo, j);
      jhi = std::max(jhi, j);
    }
  }

  std::vector<Complex> fl(2 * n - 1);  // f on the lattice (d - (n-1)) * step
  for (int d = 0; d < 2 * n - 1; ++d)
    fl[d] = f((d - (n - 1)) * kKernelStep);

  std::vector<Complex> g(n);
  for (int j = 0; j < n; ++j) {
    Complex acc{0.0, 0.0};
    if (jhi >= jlo) {
      for (int m = jlo; m <= jhi; ++m) {
        double w = (m == jlo || m == jhi) ? 0.5 : 1.0;  // trapezoid ends
        acc += w * k[m] * fl[j - m + (n - 1)];
      }
      acc *= kKernelStep;
    }
    g[j] = parts.limit * fl[j + (n - 1) / 2] + acc;  // fl index of t_j itself
  }
  return FunctionDescriptor::sampled(grid, std::move(g));
}

}  // namespace

TransformValue fourier_transform(const FunctionDescriptor& f, double x,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  if (f.is_sampled()) return transform_sampled(f, x);
  return transform_closed(f, x, cfg);
}

PointDecomposition decompose_transform(const FunctionDescriptor& lambda, double x,
                                       const QuadratureConfig& cfg) {
  if (x == 0.0)
    throw std::invalid_argument("decompose_transform: the decomposition is for x != 0");
  double scale = 0.0;
  for (double t : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0})
    scale = std::max(scale, std::abs(lambda(t)));
  const double R = cfg.truncation_radius;
  const double decay = std::max(std::abs(lambda(R)), std::abs(lambda(-R)));
  if (decay > 1e-3 * (1.0 + scale))
    throw std::domain_error(
        "decompose_transform: |symbol| = " + std::to_string(decay) +
        " at the truncation radius; subtract the limit (multiplier_apply does) "
        "before asking for the decomposition");

  const double a = kPi / (2.0 * std::fabs(x));
  PointDecomposition d;
  d.x = x;
  d.main_term = kImagUnit * ((lambda(a) - lambda(-a)) / x);
  const TransformValue tv = fourier_transform(lambda, x, cfg);
  d.full_value = tv.value;
  d.gamma = tv.value - d.main_term;
  d.error_estimate = tv.error_estimate;
  d.converged = tv.converged;
  return d;
}

RemainderReport transform_remainder_norm(const FunctionDescriptor& lambda,
                                         const QuadratureConfig& cfg) {
  RemainderReport rep;
  rep.deriv_l1 = derivative_l1(lambda, cfg);
  rep.s_value = bt_functional(lambda.derivative_view(), cfg);
  rep.bound_rhs = rep.deriv_l1.value + rep.s_value.value;

  QuadratureConfig xcfg = cfg.outer();
  xcfg.truncation_radius = std::min(cfg.truncation_radius, 256.0);
  const double eps = cfg.singularity_exclusion;

  auto gamma_abs = [&lambda, &cfg](double x) {
    return std::abs(decompose_transform(lambda, x, cfg).gamma);
  };

  IntegralResult total;
  if (lambda.is_real()) {
    total = integrate_improper(gamma_abs, eps, xcfg);
    total.value *= 2.0;
    total.error_estimate *= 2.0;
    total.tail_contribution_estimate *= 2.0;
  } else {
    auto neg = [&gamma_abs](double x) { return gamma_abs(-x); };
    const IntegralResult pos = integrate_improper(gamma_abs, eps, xcfg);
    const IntegralResult rev = integrate_improper(neg, eps, xcfg);
    total.value = pos.value + rev.value;
    total.error_estimate = pos.error_estimate + rev.error_estimate;
    total.tail_contribution_estimate =
        pos.tail_contribution_estimate + rev.tail_contribution_estimate;
    total.converged = pos.converged && rev.converged;
    total.diverged_suspected = pos.diverged_suspected || rev.diverged_suspected;
    total.subdivisions = pos.subdivisions + rev.subdivisions;
  }

  // |x| < eps band: the integrand is bounded there (the pole of the main term
  // cancels against the transform), so 2 eps times a probe max is honest.
  double band = 0.0;
  for (double m : {1.0, 2.0, 4.0}) band = std::max(band, gamma_abs(m * eps));
  if (!lambda.is_real())
    for (double m : {1.0, 2.0, 4.0}) band = std::max(band, gamma_abs(-m * eps));
  rep.excluded_mass_estimate = 2.0 * eps * band;
  total.error_estimate += rep.excluded_mass_estimate;

  rep.gamma_l1 = total;
  if (rep.bound_rhs > 0.0) rep.theta_hat = rep.gamma_l1.value / rep.bound_rhs;
  rep.flag = worse(rep.gamma_l1.flag(), worse(rep.deriv_l1.flag(), rep.s_value.flag()));
  return rep;
}

IntegrabilityVerdict integrability_criterion(const FunctionDescriptor& lambda,
                                             const QuadratureConfig& cfg) {
  IntegrabilityVerdict v;
  v.a_value = odd_part_integral(lambda, cfg);
  v.criterion_flag = v.a_value.flag();

  const QuadratureConfig inner = cfg;
  const QuadratureConfig strip_cfg = cfg.outer();

  // forensic partials of the odd-part integrand over doubling radii
  {
    auto hodd = [&lambda](double t) { return std::abs(lambda(t) - lambda(-t)) / t; };
    double lo = std::max(cfg.singularity_exclusion, 1e-6);
    double cum = 0.0;
    double edge = 1.0;
    while (edge <= cfg.truncation_radius) {
      cum += integrate_adaptive(hodd, lo, edge, strip_cfg).value;
      v.criterion_trace.emplace_back(edge, cum);
      lo = edge;
      edge *= 4.0;
    }
  }

  bool saturated = false;
  (void)effective_radius(lambda, cfg, &saturated);

  // Scan transforms use a capped window with a raised-cosine taper over the
  // outer quarter. A hard cutoff of a slowly decaying symbol rings like
  // |lambda(R)|/x, which is exactly the per-octave mass shape the divergence
  // tests below look for, and resolving those rings through a nested adaptive
  // pass is unaffordable. The octave masses feed 25% / 5% ratio thresholds,
  // so a fixed log-spaced trapezoid per octave is accurate enough.
  const double r_scan = std::min(cfg.truncation_radius, 128.0);
  // below ~1/window radius the windowed transform flattens and any 1/x mass
  // is invisible, so the saturated scan starts at the resolution floor
  const double x_min =
      saturated ? std::max(cfg.singularity_exclusion, 8.0 / r_scan)
                : cfg.singularity_exclusion;
  const double x_max = 32.0;
  const double flat = 0.75 * r_scan;
  const double taper_w = r_scan - flat;
  auto window = [flat, taper_w](double t) {
    const double a = std::fabs(t);
    if (a <= flat) return 1.0;
    if (a >= flat + taper_w) return 0.0;
    const double c = std::cos(0.5 * kPi * (a - flat) / taper_w);
    return c * c;
  };
  QuadratureConfig scan_cfg = inner;
  scan_cfg.rel_tol = std::max(cfg.rel_tol, 1e-4);
  scan_cfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
  scan_cfg.truncation_radius = r_scan;
  const std::vector<double> scan_brk{-flat, 0.0, flat};

  long long evals = 0, unconverged = 0;
  auto scan_mag = [&](double x) {
    auto g = [&lambda, &window, x](double t) -> Complex {
      return lambda(t) * window(t) * std::exp(Complex{0.0, -x * t});
    };
    const ComplexIntegral r =
        integrate_adaptive_complex(g, -r_scan, r_scan, scan_cfg, &scan_brk);
    ++evals;
    if (!r.converged) ++unconverged;
    return std::abs(r.value);
  };
  auto tabs = [&](double x) {
    const double m = scan_mag(x);
    if (lambda.is_real()) return 2.0 * m;  // |transform| is even then
    return m + scan_mag(-x);
  };

  std::vector<double> strip_mass;
  std::vector<double> strip_edge;
  double lo = x_min;
  double cum = 0.0, err_acc = 0.0;
  constexpr int kStripNodes = 25;
  std::vector<double> fx(kStripNodes);
  while (lo < x_max * 0.999) {
    const double hi = std::min(2.0 * lo, x_max);
    const double width = std::log(hi / lo);
    for (int i = 0; i < kStripNodes; ++i) {
      const double x = lo * std::exp(width * double(i) / double(kStripNodes - 1));
      fx[std::size_t(i)] = tabs(x) * x;  // dx = x * width * du in log coordinates
    }
    double full = 0.0, half = 0.0;
    for (int i = 0; i + 1 < kStripNodes; ++i)
      full += 0.5 * (fx[std::size_t(i)] + fx[std::size_t(i + 1)]);
    full *= width / double(kStripNodes - 1);
    for (int i = 0; i + 2 < kStripNodes; i += 2)
      half += 0.5 * (fx[std::size_t(i)] + fx[std::size_t(i + 2)]);
    half *= 2.0 * width / double(kStripNodes - 1);
    strip_mass.push_back(full);
    strip_edge.push_back(hi);
    cum += full;
    err_acc += std::fabs(full - half) / 3.0;
    v.direct_trace.emplace_back(hi, cum);
    lo = hi;
  }

  IntegralResult direct;
  direct.value = cum;
  direct.error_estimate = err_acc;
  direct.subdivisions = int(evals);
  const std::size_t ns = strip_mass.size();
  const double floor_mass = std::max(cfg.abs_tol, 1e-10 * (1.0 + cum));

  bool lower_divergent = false;
  if (ns >= 3) {
    lower_divergent = strip_mass[0] > floor_mass &&
                      strip_mass[0] > 0.75 * strip_mass[1] &&
                      strip_mass[1] > 0.75 * strip_mass[2];
  }
  if (!lower_divergent && ns >= 1) direct.error_estimate += strip_mass[0];

  bool upper_divergent = false;
  if (ns >= 2) {
    const double rho = strip_mass[ns - 1] / std::max(strip_mass[ns - 2], 1e-300);
    if (strip_mass[ns - 1] > floor_mass && rho >= 0.95) {
      upper_divergent = true;
    } else if (rho > 0.0 && rho < 0.95) {
      const double tail = strip_mass[ns - 1] * rho / (1.0 - rho);
      direct.tail_contribution_estimate = tail;
      direct.value += tail;
      direct.error_estimate += 0.5 * tail;
    }
  }

  direct.diverged_suspected = lower_divergent || upper_divergent;
  direct.converged =
      !direct.diverged_suspected && (unconverged * 10 <= evals * 3);
  v.transform_l1 = direct;
  v.direct_flag = direct.flag();

  const bool split =
      (v.criterion_flag == Finiteness::finite && v.direct_flag == Finiteness::diverged_suspected) ||
      (v.criterion_flag == Finiteness::diverged_suspected && v.direct_flag == Finiteness::finite);
  v.consistent = !split;
  return v;
}

ApplyResult multiplier_apply(const FunctionDescriptor& lambda,
                             const FunctionDescriptor& f,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  KernelParts parts = materialize_kernel(lambda, cfg);
  FunctionDescriptor g = convolve_on_grid(parts, f);

  const IntegralResult f_l1 = l1_norm(f, cfg);
  const IntegralResult g_l1 = l1_norm(g, cfg);

  double worst = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double x = -10.0 + i * 0.125;
    const Complex fh = fourier_transform(f, x, cfg).value;
    const Complex gh = fourier_transform(g, x, cfg).value;
    worst = std::max(worst, std::abs(lambda(x) * fh - gh));
  }

  ApplyResult res{parts.limit, std::move(parts.lambda0), std::move(parts.kernel),
                  std::move(g)};
  res.identity_error = worst;
  res.identity_tolerance = 1e-3 * std::max(parts.lambda_sup, 1e-12) * f_l1.value;
  res.identity_ok = res.identity_error <= res.identity_tolerance;
  res.lambda_sup = parts.lambda_sup;
  res.f_l1 = f_l1.value;
  res.output_l1 = g_l1.value;
  return res;
}

OperatorNormEstimate operator_norm_estimate(const FunctionDescriptor& lambda,
                                            const std::vector<FunctionDescriptor>& corpus,
                                            const QuadratureConfig& cfg) {
  cfg.validate();
  OperatorNormEstimate est;
  KernelParts parts = materialize_kernel(lambda, cfg);

  for (const FunctionDescriptor& f : corpus) {
    const double fn = l1_norm(f, cfg).value;
    if (!(fn > 0.0)) continue;
    const FunctionDescriptor g = convolve_on_grid(parts, f);
    const double ratio = l1_norm(g, cfg).value / fn;
    est.per_function.emplace_back(f.name(), ratio);
    est.lower_bound = std::max(est.lower_bound, ratio);
  }

  const IntegralResult dl1 = derivative_l1(lambda, cfg);
  const IntegralResult s = bt_functional(lambda.derivative_view(), cfg);
  const IntegralResult a = odd_part_integral(lambda, cfg);
  est.h_norm = parts.lambda_sup + dl1.value + s.value + a.value;
  if (est.h_norm > 0.0 && worse(dl1.flag(), worse(s.flag(), a.flag())) == Finiteness::finite)
    est.ratio = est.lower_bound / est.h_norm;
  return est;
}

}  // namespace fm
