#include "fm/continuous_norms.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace fm {

namespace {

constexpr double kPi = 3.14159265358979323846;

Finiteness worse(Finiteness a, Finiteness b) {
  if (a == Finiteness::diverged_suspected || b == Finiteness::diverged_suspected)
    return Finiteness::diverged_suspected;
  if (a == Finiteness::not_converged || b == Finiteness::not_converged)
    return Finiteness::not_converged;
  return Finiteness::finite;
}

IntegralResult merge_sum(const IntegralResult& a, const IntegralResult& b) {
  IntegralResult r;
  r.value = a.value + b.value;
  r.error_estimate = a.error_estimate + b.error_estimate;
  r.converged = a.converged && b.converged;
  r.tail_contribution_estimate =
      a.tail_contribution_estimate + b.tail_contribution_estimate;
  r.diverged_suspected = a.diverged_suspected || b.diverged_suspected;
  r.subdivisions = a.subdivisions + b.subdivisions;
  return r;
}

// Local maximum polish by interval thirds; assumes h is unimodal between the
// bracketing grid neighbours of the best sample.
template <class H>
double polish_max(H&& h, double lo, double hi) {
  for (int it = 0; it < 90 && hi - lo > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (h(m1) < h(m2)) lo = m1;
    else hi = m2;
  }
  return h(0.5 * (lo + hi));
}

std::string format_exponent(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace

double sup_norm(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  cfg.validate();
  auto mag = [&f](double x) { return std::abs(f(x)); };
  double best = 0.0;
  double probe_start = 1.0;
  if (f.is_sampled()) {
    // |PL interpolant| attains its maximum at grid nodes.
    for (const Complex& v : f.values()) best = std::max(best, std::abs(v));
    probe_start = std::max({std::fabs(f.grid().front()), std::fabs(f.grid().back()), 1.0});
  } else {
    const double W = std::min(cfg.truncation_radius, 256.0);
    const int n = 4096;
    int besti = 0;
    double bestv = -1.0;
    for (int i = 0; i <= n; ++i) {
      const double v = mag(-W + 2.0 * W * i / n);
      if (v > bestv) {
        bestv = v;
        besti = i;
      }
    }
    const double lo = -W + 2.0 * W * std::max(0, besti - 1) / n;
    const double hi = -W + 2.0 * W * std::min(n, besti + 1) / n;
    best = std::max(bestv, polish_max(mag, lo, hi));
    probe_start = W;
  }
  // Log-spaced probes beyond the dense window catch suprema that live in the
  // tail (asymptotes, growing declared tails).
  for (double t = probe_start; t <= cfg.truncation_radius; t *= 1.5)
    best = std::max({best, mag(t), mag(-t)});
  return best;
}

IntegralResult derivative_l1(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  cfg.validate();
  if (f.is_sampled()) {
    // Total variation of the interpolant is an exact sum over segments.
    const auto& vs = f.values();
    IntegralResult r;
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) tv += std::abs(vs[i + 1] - vs[i]);
    const auto& tail = f.tail();
    auto edge_variation = [&tail](const Complex& edge) -> double {
      switch (tail.kind) {
        case FunctionTail::Kind::hold: return 0.0;
        case FunctionTail::Kind::zero: return std::abs(edge);  // drop to zero
        case FunctionTail::Kind::power: return std::abs(edge);  // monotone decay to zero
      }
      return 0.0;
    };
    r.value = tv + edge_variation(vs.front()) + edge_variation(vs.back());
    r.converged = true;
    if (tail.kind == FunctionTail::Kind::power && tail.exponent <= 0.0 &&
        std::max(std::abs(vs.front()), std::abs(vs.back())) > 0.0) {
      r.diverged_suspected = true;  // non-decaying declared tail has unbounded variation
      r.converged = false;
    }
    return r;
  }
  if (f.derivative_order() < 1)
    throw std::invalid_argument("derivative_l1: descriptor has no derivative");
  auto pos = integrate_improper([&f](double t) { return std::abs(f.derivative(t)); },
                                0.0, cfg);
  auto neg = integrate_improper([&f](double t) { return std::abs(f.derivative(-t)); },
                                0.0, cfg);
  return merge_sum(pos, neg);
}

IntegralResult bt_functional(const FunctionDescriptor& g, const QuadratureConfig& cfg,
                             bool two_sided) {
  cfg.validate();
  const bool has_d1 = g.derivative_order() >= 1;
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.max_subdivisions = std::min(cfg.max_subdivisions, 600);

  // Inner integral over t in (0, u/2]; the integrand extends continuously to
  // t = 0 with value -2 g'(u), so the excluded stub [0, eps] is a trapezoid on
  // a linear model anchored at that limit (extrapolated when g' is unknown).
  auto inner_abs = [&](double u) -> double {
    const double half = 0.5 * u;
    const double eps = std::min(cfg.singularity_exclusion, 0.25 * u);
    auto phi = [&](double t) -> Complex { return (g(u - t) - g(u + t)) / t; };
    auto out = detail::adaptive<Complex>(phi, detail::ladder_edges(eps, half),
                                         inner_cfg.abs_tol, inner_cfg.rel_tol,
                                         inner_cfg.max_subdivisions);
    const Complex p1 = phi(eps);
    const Complex p0 =
        has_d1 ? Complex(-2.0, 0.0) * g.derivative(u) : 2.0 * phi(0.5 * eps) - p1;
    return std::abs(out.value + eps * 0.5 * (p0 + p1));
  };

  IntegralResult r = integrate_improper(inner_abs, 0.0, cfg.outer());
  if (two_sided) {
    // The inner integrand is even in t, so the symmetric two-sided variant is
    // exactly twice the one-sided value.
    r.value *= 2.0;
    r.error_estimate *= 2.0;
    r.tail_contribution_estimate *= 2.0;
  }
  return r;
}

IntegralResult odd_part_integral(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  cfg.validate();
  auto h = [&f](double t) { return std::abs(f(t) - f(-t)) / t; };
  const double eps = cfg.singularity_exclusion;
  IntegralResult r = integrate_improper(h, eps, cfg);
  // Excluded stub [0, eps]: the integrand tends to |2 f'(0)|.
  const double p1 = h(eps);
  const double p0 = f.derivative_order() >= 1
                        ? 2.0 * std::abs(f.derivative(0.0))
                        : std::max(0.0, 2.0 * h(0.5 * eps) - p1);
  r.value += eps * 0.5 * (p0 + p1);
  r.error_estimate += eps * 0.5 * std::fabs(p1 - p0);
  return r;
}

IntegralResult block_mean_integral(const FunctionDescriptor& g, double q,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  const bool q_inf = std::isinf(q);
  if (!q_inf && !(q >= 1.0))
    throw std::invalid_argument("block_mean_integral: q must be >= 1 or infinity");
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.abs_tol = std::min(cfg.abs_tol, 1e-10);
  inner_cfg.max_subdivisions = std::min(cfg.max_subdivisions, 400);

  auto block_mean = [&](double u) -> double {
    if (q_inf) {
      // Essential sup over the two annuli; endpoints included on purpose
      // (annulus maxima of monotone profiles sit at the inner edge).
      const int n = 128;
      double m = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double t = u * (1.0 + double(i) / n);
        m = std::max({m, std::abs(g(t)), std::abs(g(-t))});
      }
      return m;
    }
    auto w = [&](double t) {
      return std::pow(std::abs(g(t)), q) + std::pow(std::abs(g(-t)), q);
    };
    auto out = detail::adaptive<double>(w, {u, 1.5 * u, 2.0 * u}, inner_cfg.abs_tol,
                                        inner_cfg.rel_tol, inner_cfg.max_subdivisions);
    return std::pow(std::max(0.0, out.value) / u, 1.0 / q);
  };

  return integrate_improper(block_mean, 0.0, cfg.outer());
}

IntegralResult quasiconvexity_integral(const FunctionDescriptor& f,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  if (f.is_sampled()) {
    // The interpolant's derivative is piecewise constant, so the curvature
    // measure is a sum of slope jumps at nodes weighted by the node position,
    // restricted to t > 0, plus the closed-form curvature of a power tail.
    const auto& xs = f.grid();
    const auto& vs = f.values();
    const std::size_t n = xs.size();
    std::vector<Complex> slope(n + 1);
    const auto& tail = f.tail();
    auto tail_slope = [&tail](const Complex& edge, double x, double side) -> Complex {
      if (tail.kind != FunctionTail::Kind::power) return {0.0, 0.0};
      return -side * tail.exponent / std::fabs(x) * edge;
    };
    slope[0] = tail_slope(vs.front(), xs.front(), -1.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
      slope[i + 1] = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
    slope[n] = tail_slope(vs.back(), xs.back(), 1.0);

    IntegralResult r;
    r.converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (xs[i] <= 0.0) continue;
      r.value += xs[i] * std::abs(slope[i + 1] - slope[i]);
    }
    if (tail.kind == FunctionTail::Kind::power && xs.back() > 0.0) {
      const double mass = std::abs(vs.back());
      if (mass > 0.0) {
        if (tail.exponent > 0.0) {
          r.tail_contribution_estimate = (tail.exponent + 1.0) * mass;
          r.value += r.tail_contribution_estimate;
        } else {
          r.diverged_suspected = true;
          r.converged = false;
        }
      }
    }
    return r;
  }
  if (f.derivative_order() < 2)
    throw std::invalid_argument("quasiconvexity_integral: second derivative unavailable");
  return integrate_improper(
      [&f](double t) { return t * std::abs(f.second_derivative(t)); }, 0.0, cfg);
}

namespace {

struct ComplexImproper {
  Complex value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
  bool diverged = false;
};

template <class F>
ComplexImproper improper_complex(F&& fn, double a, const QuadratureConfig& cfg,
                                 bool real_only) {
  ComplexImproper out;
  auto re = integrate_improper([&fn](double t) { return std::real(fn(t)); }, a, cfg);
  out.value += Complex(re.value, 0.0);
  out.error += re.error_estimate;
  out.converged = out.converged && re.converged;
  out.diverged = out.diverged || re.diverged_suspected;
  if (!real_only) {
    auto im = integrate_improper([&fn](double t) { return std::imag(fn(t)); }, a, cfg);
    out.value += Complex(0.0, im.value);
    out.error += im.error_estimate;
    out.converged = out.converged && im.converged;
    out.diverged = out.diverged || im.diverged_suspected;
  }
  return out;
}

}  // namespace

HilbertValue hilbert_transform(const FunctionDescriptor& f, double x,
                               const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureConfig c = cfg;
  c.truncation_radius = std::max(cfg.truncation_radius, 2.0 * std::fabs(x) + 16.0);
  const double D = 1.0;
  auto w = [&f, x](double t) -> Complex { return f(t) / (x - t); };
  auto pv = principal_value_complex(w, x, x - D, x + D, c);
  // Right of the window directly; left of it via t -> -t.
  auto right = improper_complex(w, x + D, c, f.is_real());
  auto left = improper_complex(
      [&f, x](double u) -> Complex { return f(-u) / (x + u); }, D - x, c, f.is_real());
  HilbertValue h;
  h.value = (pv.value + right.value + left.value) / kPi;
  h.error_estimate = (pv.error_estimate + right.error + left.error) / kPi;
  h.converged = pv.converged && right.converged && left.converged &&
                !right.diverged && !left.diverged;
  return h;
}

FunctionDescriptor odd_continuation(const FunctionDescriptor& f, HalfLine side) {
  const double s = (side == HalfLine::positive) ? 1.0 : -1.0;
  FunctionDescriptor base = f;
  FunctionDescriptor::Fn val = [base, s](double t) -> Complex {
    if (t == 0.0) return {0.0, 0.0};
    return (s * t > 0.0) ? base(t) : -base(-t);
  };
  FunctionDescriptor::Fn d1;
  if (f.derivative_order() >= 1) {
    // d/dt of -f(-t) is f'(-t), so both branches read the derivative on the
    // retained half-line.
    d1 = [base, s](double t) -> Complex { return base.derivative(s * std::fabs(t)); };
  }
  const std::string suffix = (side == HalfLine::positive) ? "_odd_pos" : "_odd_neg";
  return FunctionDescriptor::closed_form(f.name() + suffix, {}, std::move(val),
                                         std::move(d1), {}, f.is_real());
}

ReHResult reh_norm(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  cfg.validate();
  ReHResult r;
  r.f_l1 = integrate_improper(
      [&f](double t) { return std::abs(f(t)) + std::abs(f(-t)); }, 0.0, cfg);

  // |Hf| is integrated by midpoint rule on a base block [0,1] plus octave
  // blocks [2^j, 2^(j+1)], both signs. Octave masses feed a power-law fit
  // that either extrapolates the remaining tail or flags divergence; for a
  // conjugate function ~ c/t the octave masses stay flat, which the fit
  // reports as a non-integrable exponent.
  const double W = std::min(cfg.truncation_radius, 64.0);
  const int J = std::max(2, static_cast<int>(std::lround(std::log2(W))));
  const QuadratureConfig hcfg = cfg.outer();
  int bad = 0, evals = 0;

  auto block_mass = [&](double a, double b, int n) -> double {
    double mass = 0.0;
    const double dx = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double t = a + dx * (i + 0.5);
      for (double sgn : {1.0, -1.0}) {
        HilbertValue h = hilbert_transform(f, sgn * t, hcfg);
        ++evals;
        if (!h.converged) ++bad;
        mass += dx * std::abs(h.value);
      }
    }
    return mass;
  };

  double conj = block_mass(0.0, 1.0, 24);
  std::vector<double> octave(J);
  for (int j = 0; j < J; ++j) {
    octave[j] = block_mass(std::pow(2.0, j), std::pow(2.0, j + 1), 8);
    conj += octave[j];
  }
  r.conj_l1 = conj;
  r.conj_radius = std::pow(2.0, J);

  const double floor = 1e-12 * (1.0 + r.f_l1.value);
  const int K = std::min(J, 4);
  bool all_negligible = true;
  for (int j = J - K; j < J; ++j)
    if (octave[j] > floor) all_negligible = false;

  if (all_negligible) {
    r.conj_flag = Finiteness::finite;
  } else {
    // Slope of log2(mass) per octave; mass_j ~ 2^{j(alpha+1)} for |Hf| ~ t^alpha.
    double sj = 0, sv = 0, sjj = 0, sjv = 0;
    for (int j = J - K; j < J; ++j) {
      const double v = std::log2(std::max(octave[j], floor));
      sj += j;
      sv += v;
      sjj += double(j) * j;
      sjv += j * v;
    }
    const double slope = (K * sjv - sj * sv) / (K * sjj - sj * sj);
    r.growth_exponent = slope - 1.0;
    if (r.growth_exponent >= -1.05 && octave[J - 1] > floor) {
      r.conj_flag = Finiteness::diverged_suspected;
    } else {
      const double rho = std::pow(2.0, slope);
      r.conj_tail_estimate = octave[J - 1] * rho / (1.0 - rho);
      r.conj_flag = Finiteness::finite;
    }
  }
  if (r.conj_flag == Finiteness::finite && bad > evals / 10)
    r.conj_flag = Finiteness::not_converged;

  r.flag = worse(r.f_l1.flag(), r.conj_flag);
  r.value = r.f_l1.value + r.conj_l1 + r.conj_tail_estimate;
  return r;
}

HsReport hs_membership(const FunctionDescriptor& f, const QuadratureConfig& cfg) {
  cfg.validate();
  HsReport rep;
  FunctionDescriptor fp = odd_continuation(f, HalfLine::positive);
  FunctionDescriptor fn = odd_continuation(f, HalfLine::negative);
  rep.plus_part = reh_norm(fp, cfg);
  rep.minus_part = reh_norm(fn, cfg);
  rep.reh_flag = worse(rep.plus_part.flag, rep.minus_part.flag);

  rep.f_l1 = integrate_improper(
      [&f](double t) { return std::abs(f(t)) + std::abs(f(-t)); }, 0.0, cfg);
  // The oscillation functional probes (0, inf) only, so applying it to both
  // odd continuations covers the two half-lines of f.
  rep.s_f = merge_sum(bt_functional(fp, cfg), bt_functional(fn, cfg));
  rep.criterion_flag = worse(rep.f_l1.flag(), rep.s_f.flag());

  const bool reh_fin = rep.reh_flag == Finiteness::finite;
  const bool reh_div = rep.reh_flag == Finiteness::diverged_suspected;
  const bool cri_fin = rep.criterion_flag == Finiteness::finite;
  const bool cri_div = rep.criterion_flag == Finiteness::diverged_suspected;
  rep.consistent = !((reh_fin && cri_div) || (reh_div && cri_fin));
  return rep;
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

NormReport assemble_norm_report(const FunctionDescriptor& lambda,
                                const std::vector<double>& p_list,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (!lambda.is_sampled() && lambda.derivative_order() < 1)
    throw std::invalid_argument("assemble_norm_report: descriptor must expose a derivative");
  NormReport rep;
  rep.name = lambda.name();
  rep.sup_norm = sup_norm(lambda, cfg);
  rep.deriv_l1 = derivative_l1(lambda, cfg);
  rep.cb_norm = rep.sup_norm + rep.deriv_l1.value;

  FunctionDescriptor g = lambda.derivative_view();
  rep.s_value = bt_functional(g, cfg);
  rep.a_value = odd_part_integral(lambda, cfg);
  rep.h_norm = rep.cb_norm + rep.s_value.value + rep.a_value.value;
  rep.flags["deriv_l1"] = rep.deriv_l1.flag();
  rep.flags["s"] = rep.s_value.flag();
  rep.flags["a"] = rep.a_value.flag();

  for (double p : p_list) {
    const double q = conjugate_exponent(p);
    IntegralResult aq = block_mean_integral(g, q, cfg);
    rep.aq_values[p] = aq;
    rep.bp_norms[p] = rep.sup_norm + aq.value + rep.a_value.value;
    rep.flags["aq_p=" + format_exponent(p)] = aq.flag();
  }

  if (lambda.is_sampled() || lambda.derivative_order() >= 2) {
    rep.quasiconvexity = quasiconvexity_integral(lambda, cfg);
    rep.has_quasiconvexity = true;
    rep.flags["quasiconvexity"] = rep.quasiconvexity.flag();
  }

  const Finiteness h =
      worse(rep.deriv_l1.flag(), worse(rep.s_value.flag(), rep.a_value.flag()));
  rep.h_certificate = h == Finiteness::finite
                          ? Certificate::member
                          : (h == Finiteness::diverged_suspected ? Certificate::not_member
                                                                 : Certificate::inconclusive);
  return rep;
}

}  // namespace fm
