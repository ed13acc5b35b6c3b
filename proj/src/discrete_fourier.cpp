#include "fm/discrete_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
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

void validate_size(std::size_t n) {
  if (n < 64 || (n & (n - 1)) != 0)
    throw std::invalid_argument(
        "PeriodicFunction: sample count must be a power of two, at least 64");
}

// e^{i angle} with the recurrence re-anchored periodically; the drift of a
// pure multiply chain would spoil the 1e-10 round-trip budget on long grids.
struct PhaseWalker {
  double base_angle, step_angle;
  Complex w, step;
  long long count = 0;
  explicit PhaseWalker(double base, double step_a)
      : base_angle(base), step_angle(step_a),
        w(std::polar(1.0, base)), step(std::polar(1.0, step_a)) {}
  Complex current() const { return w; }
  void advance() {
    ++count;
    if (count % 512 == 0)
      w = std::polar(1.0, base_angle + step_angle * double(count));
    else
      w *= step;
  }
};

}  // namespace

PeriodicFunction::PeriodicFunction(std::vector<Complex> v) : vals_(std::move(v)) {
  validate_size(vals_.size());
  double scale = 0.0, worst_imag = 0.0;
  for (const Complex& z : vals_) {
    scale = std::max(scale, std::abs(z));
    worst_imag = std::max(worst_imag, std::fabs(z.imag()));
  }
  real_ = worst_imag <= 1e-12 * (1.0 + scale);
}

PeriodicFunction PeriodicFunction::from_samples(std::vector<Complex> values) {
  return PeriodicFunction(std::move(values));
}

PeriodicFunction PeriodicFunction::from_callable(
    const std::function<Complex(double)>& f, int n) {
  validate_size(std::size_t(n));
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    v[std::size_t(j)] = f(-kPi + kTwoPi * (j + 1) / double(n));
  return PeriodicFunction(std::move(v));
}

double PeriodicFunction::node(int j) const {
  return -kPi + kTwoPi * (j + 1) / double(size());
}

Complex PeriodicFunction::coefficient(long long k) const {
  const int n = size();
  if (std::llabs(k) > n / 2)
    throw std::invalid_argument("coefficient: |k| exceeds the grid Nyquist " +
                                std::to_string(n / 2));
  PhaseWalker ph(-double(k) * node(0), -double(k) * kTwoPi / double(n));
  Complex acc{0.0, 0.0}, comp{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const Complex term = vals_[std::size_t(j)] * ph.current();
    const Complex y = term - comp;
    const Complex t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    ph.advance();
  }
  return acc / double(n);
}

std::vector<Complex> PeriodicFunction::coefficients(long long k_min,
                                                    long long k_max) const {
  if (k_min > k_max)
    throw std::invalid_argument("coefficients: empty frequency range");
  std::vector<Complex> out;
  out.reserve(std::size_t(k_max - k_min + 1));
  for (long long k = k_min; k <= k_max; ++k) out.push_back(coefficient(k));
  return out;
}

double PeriodicFunction::l1_norm() const {
  double s = 0.0;
  for (const Complex& z : vals_) s += std::abs(z);
  return s * kTwoPi / double(size());
}

PeriodicFunction PeriodicFunction::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::pair<long long, Complex>> rows;
  std::string line;
  long long max_j = -1;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    char* end = nullptr;
    const double jd = std::strtod(first.c_str(), &end);
    if (end == first.c_str()) continue;  // header row
    double re = 0.0, im = 0.0;
    ls >> re;
    ls >> im;
    const long long j = (long long)std::llround(jd);
    rows.emplace_back(j, Complex{re, im});
    max_j = std::max(max_j, j);
  }
  if (max_j < 0) throw std::invalid_argument(path + ": no sample rows");
  std::vector<Complex> v(std::size_t(max_j + 1), Complex{0.0, 0.0});
  for (const auto& [j, z] : rows) {
    if (j < 0) throw std::invalid_argument(path + ": negative sample index");
    v[std::size_t(j)] = z;
  }
  PeriodicFunction f(std::move(v));
  f.name = path;
  return f;
}

void PeriodicFunction::to_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << "j,re,im\n";
  out.precision(17);
  for (int j = 0; j < size(); ++j) {
    const Complex& z = vals_[std::size_t(j)];
    out << j << "," << z.real() << "," << z.imag() << "\n";
  }
}

PeriodicFunction synthesize(const std::vector<Complex>& coeffs, long long k_min,
                            int n) {
  validate_size(std::size_t(n));
  std::vector<Complex> v(std::size_t(n), Complex{0.0, 0.0});
  const double x0 = -kPi + kTwoPi / double(n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double k = double(k_min + (long long)i);
    if (std::abs(coeffs[i]) == 0.0) continue;
    PhaseWalker ph(k * x0, k * kTwoPi / double(n));
    for (int j = 0; j < n; ++j) {
      v[std::size_t(j)] += coeffs[i] * ph.current();
      ph.advance();
    }
  }
  return PeriodicFunction::from_samples(std::move(v));
}

Complex ell(const SequenceDescriptor& lambda, double x, EllMode mode) {
  if (mode == EllMode::difference_form) {
    const long long k = (long long)std::ceil(x);
    return lambda.value(k) + (double(k) - x) * delta(lambda, k);
  }
  const long long k0 = (long long)std::floor(x);
  const double t = x - double(k0);
  if (t == 0.0) return lambda.value(k0);
  return (1.0 - t) * lambda.value(k0) + t * lambda.value(k0 + 1);
}

SeriesValue series_sum(const SequenceDescriptor& lambda, double y) {
  const int N = lambda.support_radius();
  SeriesValue r;

  Complex acc{0.0, 0.0}, comp{0.0, 0.0};
  PhaseWalker ph(-double(N) * y, y);
  for (long long k = -N; k <= N; ++k) {
    const Complex term = lambda.value(k) * ph.current();
    const Complex yy = term - comp;
    const Complex t = acc + yy;
    comp = (t - acc) - yy;
    acc = t;
    ph.advance();
  }
  r.value = acc;
  r.converged = true;

  const auto& tail = lambda.tail();
  const Complex ep = lambda.value(N);
  const Complex em = lambda.value(-N);
  switch (tail.kind) {
    case SequenceTail::Kind::zero:
      return r;
    case SequenceTail::Kind::geometric: {
      const double rr = tail.ratio;
      if (std::fabs(rr) < 1.0) {
        const Complex zp = rr * std::polar(1.0, y);
        const Complex zm = rr * std::polar(1.0, -y);
        r.value += ep * std::polar(1.0, double(N) * y) * zp / (1.0 - zp);
        r.value += em * std::polar(1.0, -double(N) * y) * zm / (1.0 - zm);
        return r;
      }
      if (std::abs(ep) + std::abs(em) > 1e-14) {
        r.diverged_suspected = true;
        r.converged = false;
      }
      return r;
    }
    case SequenceTail::Kind::power: {
      const double p = tail.exponent;
      const double emax = std::abs(ep) + std::abs(em);
      if (p <= 0.0) {
        if (emax > 1e-14) {
          r.diverged_suspected = true;
          r.converged = false;
        }
        return r;
      }
      const long long M = std::max<long long>(8LL * N, 4096);
      Complex tp{0.0, 0.0}, tm{0.0, 0.0};
      PhaseWalker php(double(N + 1) * y, y);
      PhaseWalker phm(-double(N + 1) * y, -y);
      for (long long k = N + 1; k <= M; ++k) {
        const double a = std::pow(double(N) / double(k), p);
        tp += ep * a * php.current();
        tm += em * a * phm.current();
        php.advance();
        phm.advance();
      }
      r.value += tp + tm;
      const double aM = std::pow(double(N) / double(M), p);
      if (p > 1.0) {
        r.error_estimate += emax * std::pow(double(N), p) *
                            std::pow(double(M), 1.0 - p) / (p - 1.0);
      } else {
        // decreasing amplitudes against a bounded exponential partial sum
        const double s = std::fabs(std::sin(0.5 * y));
        if (s < 1e-12) {
          r.diverged_suspected = true;
          r.converged = false;
          return r;
        }
        r.error_estimate += emax * aM * (1.0 + 1.0 / s);
      }
      return r;
    }
  }
  return r;
}

SeriesPointDecomposition decompose_series(const SequenceDescriptor& lambda, double y,
                                          EllMode mode) {
  if (!(std::fabs(y) > 0.0) || std::fabs(y) > kPi)
    throw std::invalid_argument("decompose_series: y must lie in (0, pi] up to sign");
  if (!lambda.limit_is_zero())
    throw std::domain_error(
        "decompose_series: the tail model must force lambda -> 0; the "
        "interpolant main term is meaningless otherwise");
  SeriesPointDecomposition d;
  d.y = y;
  const double a = kPi / (2.0 * std::fabs(y));
  d.main_term = kImagUnit * ((ell(lambda, a, mode) - ell(lambda, -a, mode)) / y);
  const SeriesValue s = series_sum(lambda, y);
  d.series_value = s.value;
  d.gamma = s.value - d.main_term;
  d.error_estimate = s.error_estimate;
  d.converged = s.converged;
  return d;
}

SeriesRemainderReport series_remainder_norm(const SequenceDescriptor& lambda,
                                            const SeriesLimits& limits) {
  if (!lambda.limit_is_zero())
    throw std::domain_error(
        "series_remainder_norm: the tail model must force lambda -> 0");
  SeriesRemainderReport rep;

  int n = std::max(16, limits.y_grid);
  n += (4 - n % 4) % 4;  // Simpson on the full and on the half grid
  double eps = limits.y_exclusion;
  if (!(eps > 0.0) || eps >= kPi / 4.0) eps = 1e-4;

  const bool both_sides = !lambda.is_real();
  bool all_converged = true;
  auto gabs = [&](double y) {
    const SeriesPointDecomposition d = decompose_series(lambda, y, limits.ell_mode);
    all_converged = all_converged && d.converged;
    double v = std::abs(d.gamma);
    if (both_sides) {
      const SeriesPointDecomposition dm =
          decompose_series(lambda, -y, limits.ell_mode);
      all_converged = all_converged && dm.converged;
      v += std::abs(dm.gamma);
    }
    return v;
  };

  const double h = (kPi - eps) / n;
  std::vector<double> f(std::size_t(n) + 1);
  for (int i = 0; i <= n; ++i) f[std::size_t(i)] = gabs(eps + h * i);

  auto simpson = [&f, h](int stride) {
    const int count = (int(f.size()) - 1) / stride;
    double s = f[0] + f[std::size_t(count * stride)];
    for (int i = 1; i < count; ++i)
      s += f[std::size_t(i * stride)] * (i % 2 == 1 ? 4.0 : 2.0);
    return s * stride * h / 3.0;
  };
  const double full = simpson(1);
  const double half = simpson(2);
  const double sides = both_sides ? 1.0 : 2.0;

  rep.gamma_l1 = sides * full;
  rep.quadrature_error = sides * std::fabs(full - half) / 15.0;

  double band = 0.0;
  for (double m : {1.0, 2.0, 4.0}) band = std::max(band, gabs(std::min(m * eps, kPi)));
  rep.excluded_mass_estimate = sides * eps * band;

  rep.delta_l1 = delta_l1(lambda);
  rep.s_value = bt_sum(lambda, 0, limits.symmetrized_s);
  rep.bound_rhs = rep.delta_l1.value + rep.s_value.value;
  if (rep.bound_rhs > 0.0) rep.theta_hat = rep.gamma_l1 / rep.bound_rhs;

  rep.flag = worse(rep.delta_l1.flag(), rep.s_value.flag());
  if (!all_converged) rep.flag = worse(rep.flag, Finiteness::diverged_suspected);
  else if (rep.quadrature_error > std::max(1e-6, 1e-3 * (1.0 + rep.gamma_l1)))
    rep.flag = worse(rep.flag, Finiteness::not_converged);
  return rep;
}

PeriodicApplyResult multiplier_apply_periodic(const SequenceDescriptor& lambda,
                                              const PeriodicFunction& f) {
  const int n = f.size();
  const int N = lambda.support_radius();
  if (N > n / 2) {
    double wmax = 0.0, beyond = 0.0;
    for (long long k = 0; k <= N; ++k)
      wmax = std::max({wmax, std::abs(lambda.value(k)), std::abs(lambda.value(-k))});
    for (long long k = n / 2 + 1; k <= N; ++k)
      beyond = std::max({beyond, std::abs(lambda.value(k)), std::abs(lambda.value(-k))});
    if (beyond > 1e-12 * (1.0 + wmax))
      throw std::invalid_argument(
          "multiplier_apply_periodic: sequence window reaches past the grid "
          "Nyquist " + std::to_string(n / 2) + " with non-negligible values; "
          "enlarge the grid");
  }

  const long long k_min = -(long long)(n / 2);
  const long long k_max = n / 2 - 1;
  std::vector<Complex> gh = f.coefficients(k_min, k_max);
  for (long long k = k_min; k <= k_max; ++k)
    gh[std::size_t(k - k_min)] *= lambda.value(k);

  PeriodicFunction g = synthesize(gh, k_min, n);
  const std::vector<Complex> gh_back = g.coefficients(k_min, k_max);
  double worst = 0.0;
  for (std::size_t i = 0; i < gh.size(); ++i)
    worst = std::max(worst, std::abs(gh[i] - gh_back[i]));

  PeriodicApplyResult res{std::move(g)};
  res.identity_error = worst;
  res.f_l1 = f.l1_norm();
  res.output_l1 = res.output.l1_norm();
  return res;
}

PeriodicOperatorNormEstimate periodic_operator_norm_estimate(
    const SequenceDescriptor& lambda, const std::vector<PeriodicFunction>& corpus,
    const SumLimits& limits) {
  PeriodicOperatorNormEstimate est;
  for (const PeriodicFunction& f : corpus) {
    const double fn = f.l1_norm();
    if (!(fn > 0.0)) continue;
    const PeriodicApplyResult a = multiplier_apply_periodic(lambda, f);
    const double ratio = a.output_l1 / fn;
    est.per_function.emplace_back(f.name, ratio);
    est.lower_bound = std::max(est.lower_bound, ratio);
  }
  const IntegralResult sup = sup_value(lambda);
  const IntegralResult dl1 = delta_l1(lambda);
  const IntegralResult s = bt_sum(lambda, limits.s_m_max, limits.symmetrized_s);
  const IntegralResult a = odd_part_sum(lambda);
  est.h_norm = sup.value + dl1.value + s.value + a.value;
  const Finiteness fl = worse(worse(sup.flag(), dl1.flag()), worse(s.flag(), a.flag()));
  if (est.h_norm > 0.0 && fl == Finiteness::finite)
    est.ratio = est.lower_bound / est.h_norm;
  return est;
}

}  // namespace fm
