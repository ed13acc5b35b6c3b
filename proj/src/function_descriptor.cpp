#include "fm/function_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fm {

struct FunctionDescriptor::Impl {
  std::string name;
  bool sampled = false;
  bool real_valued = true;

  // closed-form state
  std::map<std::string, double> params;
  Fn value, d1, d2;

  // sampled state
  std::vector<double> grid;
  std::vector<Complex> vals;
  FunctionTail tail;
};

namespace {

double param_or(const std::map<std::string, double>& p, const std::string& key,
                double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// Piecewise-linear evaluation inside the window; tail model outside.
Complex eval_sampled(const FunctionDescriptor::Impl& im, double x);

Complex tail_value(const FunctionDescriptor::Impl& im, double x, bool left) {
  const double edge = left ? im.grid.front() : im.grid.back();
  const Complex v = left ? im.vals.front() : im.vals.back();
  switch (im.tail.kind) {
    case FunctionTail::Kind::zero: return {0.0, 0.0};
    case FunctionTail::Kind::hold: return v;
    case FunctionTail::Kind::power: {
      if (std::fabs(edge) < 1e-300)
        throw std::domain_error("power tail requires a nonzero window edge");
      return v * std::pow(std::fabs(edge) / std::fabs(x), im.tail.exponent);
    }
  }
  return {0.0, 0.0};
}

Complex eval_sampled(const FunctionDescriptor::Impl& im, double x) {
  const auto& g = im.grid;
  if (x < g.front()) return tail_value(im, x, true);
  if (x > g.back()) return tail_value(im, x, false);
  auto it = std::upper_bound(g.begin(), g.end(), x);
  if (it == g.begin()) return im.vals.front();
  if (it == g.end()) return im.vals.back();
  const std::size_t i = static_cast<std::size_t>(it - g.begin()) - 1;
  const double t = (x - g[i]) / (g[i + 1] - g[i]);
  return im.vals[i] * (1.0 - t) + im.vals[i + 1] * t;
}

Complex slope_sampled(const FunctionDescriptor::Impl& im, double x) {
  const auto& g = im.grid;
  if (x < g.front() || x > g.back()) {
    if (im.tail.kind == FunctionTail::Kind::power) {
      // d/dx [ v * (|e|/|x|)^p ] = -p/x * value
      const Complex v = tail_value(im, x, x < g.front());
      return v * (-im.tail.exponent / x);
    }
    return {0.0, 0.0};
  }
  auto it = std::upper_bound(g.begin(), g.end(), x);
  std::size_t i;
  if (it == g.begin()) i = 0;
  else if (it == g.end()) i = g.size() - 2;
  else i = static_cast<std::size_t>(it - g.begin()) - 1;
  if (i + 1 >= g.size()) i = g.size() - 2;
  return (im.vals[i + 1] - im.vals[i]) / (g[i + 1] - g[i]);
}

}  // namespace

FunctionDescriptor FunctionDescriptor::closed_form(std::string name,
                                                   std::map<std::string, double> params,
                                                   Fn value, Fn d1, Fn d2,
                                                   bool real_valued) {
  if (!value) throw std::invalid_argument("closed_form: value callable required");
  auto im = std::make_shared<Impl>();
  im->name = std::move(name);
  im->params = std::move(params);
  im->value = std::move(value);
  im->d1 = std::move(d1);
  im->d2 = std::move(d2);
  im->real_valued = real_valued;
  return FunctionDescriptor(std::move(im));
}

FunctionDescriptor FunctionDescriptor::sampled(std::vector<double> grid,
                                               std::vector<Complex> values,
                                               FunctionTail tail) {
  if (grid.size() < 2) throw std::invalid_argument("sampled: need at least two grid points");
  if (grid.size() != values.size())
    throw std::invalid_argument("sampled: grid/value size mismatch");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("sampled: grid must be strictly increasing");
  auto im = std::make_shared<Impl>();
  im->name = "sampled";
  im->sampled = true;
  im->grid = std::move(grid);
  im->vals = std::move(values);
  im->tail = tail;
  im->real_valued = std::all_of(im->vals.begin(), im->vals.end(),
                                [](const Complex& v) { return v.imag() == 0.0; });
  return FunctionDescriptor(std::move(im));
}

FunctionDescriptor FunctionDescriptor::family(const std::string& name,
                                              const std::map<std::string, double>& params) {
  using std::exp;
  if (name == "constant") {
    const double c = param_or(params, "value", 1.0);
    return closed_form("constant", {{"value", c}},
                       [c](double) { return Complex(c, 0.0); },
                       [](double) { return Complex(0.0, 0.0); },
                       [](double) { return Complex(0.0, 0.0); });
  }
  if (name == "gaussian") {
    const double s = param_or(params, "sigma", 1.0);
    if (!(s > 0.0)) throw std::invalid_argument("gaussian: sigma must be positive");
    const double is2 = 1.0 / (s * s);
    return closed_form(
        "gaussian", {{"sigma", s}},
        [is2](double x) { return Complex(exp(-x * x * is2), 0.0); },
        [is2](double x) { return Complex(-2.0 * x * is2 * exp(-x * x * is2), 0.0); },
        [is2](double x) {
          return Complex((4.0 * x * x * is2 * is2 - 2.0 * is2) * exp(-x * x * is2), 0.0);
        });
  }
  if (name == "poisson") {
    return closed_form(
        "poisson", {},
        [](double x) { return Complex(1.0 / (1.0 + x * x), 0.0); },
        [](double x) {
          const double d = 1.0 + x * x;
          return Complex(-2.0 * x / (d * d), 0.0);
        },
        [](double x) {
          const double d = 1.0 + x * x;
          return Complex((6.0 * x * x - 2.0) / (d * d * d), 0.0);
        });
  }
  if (name == "exp_abs") {
    return closed_form(
        "exp_abs", {},
        [](double x) { return Complex(exp(-std::fabs(x)), 0.0); },
        [](double x) {
          if (x == 0.0) return Complex(0.0, 0.0);  // symmetric convention at the corner
          return Complex(-(x > 0 ? 1.0 : -1.0) * exp(-std::fabs(x)), 0.0);
        },
        [](double x) { return Complex(exp(-std::fabs(x)), 0.0); });
  }
  if (name == "hat") {
    const double w = param_or(params, "width", 1.0);
    if (!(w > 0.0)) throw std::invalid_argument("hat: width must be positive");
    return closed_form(
        "hat", {{"width", w}},
        [w](double x) { return Complex(std::max(0.0, 1.0 - std::fabs(x) / w), 0.0); },
        [w](double x) {
          if (x == 0.0 || std::fabs(x) >= w) return Complex(0.0, 0.0);
          return Complex(x > 0 ? -1.0 / w : 1.0 / w, 0.0);
        });
  }
  if (name == "tanh_step") {
    const double s = param_or(params, "scale", 1.0);
    if (!(s > 0.0)) throw std::invalid_argument("tanh_step: scale must be positive");
    return closed_form(
        "tanh_step", {{"scale", s}},
        [s](double x) { return Complex(std::tanh(x / s), 0.0); },
        [s](double x) {
          const double c = std::cosh(x / s);
          return Complex(1.0 / (s * c * c), 0.0);
        },
        [s](double x) {
          const double c = std::cosh(x / s);
          return Complex(-2.0 * std::tanh(x / s) / (s * s * c * c), 0.0);
        });
  }
  if (name == "odd_gaussian") {
    const double s = param_or(params, "sigma", 1.0);
    if (!(s > 0.0)) throw std::invalid_argument("odd_gaussian: sigma must be positive");
    const double is2 = 1.0 / (s * s);
    return closed_form(
        "odd_gaussian", {{"sigma", s}},
        [is2](double x) { return Complex(x * exp(-x * x * is2), 0.0); },
        [is2](double x) {
          return Complex((1.0 - 2.0 * x * x * is2) * exp(-x * x * is2), 0.0);
        },
        [is2](double x) {
          return Complex((4.0 * x * x * x * is2 * is2 - 6.0 * x * is2) * exp(-x * x * is2),
                         0.0);
        });
  }
  if (name == "two_bump") {
    const double d = param_or(params, "offset", 3.0);
    return closed_form(
        "two_bump", {{"offset", d}},
        [d](double x) { return Complex(exp(-x * x) + exp(-(x - d) * (x - d)), 0.0); },
        [d](double x) {
          return Complex(-2.0 * x * exp(-x * x) - 2.0 * (x - d) * exp(-(x - d) * (x - d)),
                         0.0);
        },
        [d](double x) {
          const double u = x - d;
          return Complex((4.0 * x * x - 2.0) * exp(-x * x) +
                             (4.0 * u * u - 2.0) * exp(-u * u),
                         0.0);
        });
  }
  throw std::invalid_argument("unknown function family: " + name);
}

std::vector<std::string> FunctionDescriptor::family_names() {
  return {"constant", "gaussian", "poisson", "exp_abs", "hat",
          "tanh_step", "odd_gaussian", "two_bump"};
}

FunctionDescriptor FunctionDescriptor::from_csv(const std::string& path, FunctionTail tail) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
  std::vector<double> grid;
  std::vector<Complex> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    std::string fx, fre, fim;
    if (!std::getline(ls, fx, ',') || !std::getline(ls, fre, ',')) continue;
    std::getline(ls, fim, ',');
    try {
      const double x = std::stod(fx);
      const double re = std::stod(fre);
      const double im = fim.empty() ? 0.0 : std::stod(fim);
      grid.push_back(x);
      vals.emplace_back(re, im);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header row
      throw std::invalid_argument("CSV parse error at line " + std::to_string(lineno) +
                                  " of " + path);
    }
  }
  return sampled(std::move(grid), std::move(vals), tail);
}

void FunctionDescriptor::to_csv(const std::string& path) const {
  if (!impl_->sampled) throw std::logic_error("to_csv: descriptor is not sampled");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << "x,re,im\n";
  out.precision(17);
  for (std::size_t i = 0; i < impl_->grid.size(); ++i)
    out << impl_->grid[i] << ',' << impl_->vals[i].real() << ','
        << impl_->vals[i].imag() << '\n';
}

Complex FunctionDescriptor::operator()(double x) const {
  return impl_->sampled ? eval_sampled(*impl_, x) : impl_->value(x);
}

Complex FunctionDescriptor::derivative(double x) const {
  if (impl_->sampled) return slope_sampled(*impl_, x);
  if (!impl_->d1) throw std::domain_error("derivative unavailable for " + impl_->name);
  return impl_->d1(x);
}

Complex FunctionDescriptor::second_derivative(double x) const {
  if (impl_->sampled || !impl_->d2)
    throw std::domain_error("second derivative unavailable for " + impl_->name);
  return impl_->d2(x);
}

int FunctionDescriptor::derivative_order() const {
  if (impl_->sampled) return 1;
  if (impl_->d2) return 2;
  return impl_->d1 ? 1 : 0;
}

bool FunctionDescriptor::is_sampled() const { return impl_->sampled; }
bool FunctionDescriptor::is_real() const { return impl_->real_valued; }
const std::string& FunctionDescriptor::name() const { return impl_->name; }

FunctionDescriptor FunctionDescriptor::derivative_view() const {
  if (derivative_order() < 1)
    throw std::domain_error("derivative_view: no derivative available");
  FunctionDescriptor self = *this;
  Fn v = [self](double x) { return self.derivative(x); };
  Fn d;
  if (derivative_order() >= 2)
    d = [self](double x) { return self.second_derivative(x); };
  return closed_form("d/dx(" + impl_->name + ")", {}, std::move(v), std::move(d), {},
                     impl_->real_valued);
}

FunctionDescriptor FunctionDescriptor::scaled(Complex c) const {
  // sampled kinds stay sampled so their exact segment paths keep applying
  if (is_sampled()) {
    std::vector<Complex> v = values();
    for (Complex& z : v) z *= c;
    return sampled(grid(), std::move(v), tail());
  }
  FunctionDescriptor self = *this;
  const bool real = impl_->real_valued && c.imag() == 0.0;
  Fn v = [self, c](double x) { return c * self(x); };
  Fn d1, d2;
  if (derivative_order() >= 1)
    d1 = [self, c](double x) { return c * self.derivative(x); };
  if (derivative_order() >= 2)
    d2 = [self, c](double x) { return c * self.second_derivative(x); };
  return closed_form("scaled(" + impl_->name + ")", {}, std::move(v), std::move(d1),
                     std::move(d2), real);
}

FunctionDescriptor FunctionDescriptor::minus_constant(Complex c) const {
  FunctionDescriptor self = *this;
  const bool real = impl_->real_valued && c.imag() == 0.0;
  Fn v = [self, c](double x) { return self(x) - c; };
  Fn d1, d2;
  if (derivative_order() >= 1)
    d1 = [self](double x) { return self.derivative(x); };
  if (derivative_order() >= 2)
    d2 = [self](double x) { return self.second_derivative(x); };
  return closed_form(impl_->name + "-const", {}, std::move(v), std::move(d1),
                     std::move(d2), real);
}

const std::vector<double>& FunctionDescriptor::grid() const {
  if (!impl_->sampled) throw std::logic_error("grid(): descriptor is not sampled");
  return impl_->grid;
}

const std::vector<Complex>& FunctionDescriptor::values() const {
  if (!impl_->sampled) throw std::logic_error("values(): descriptor is not sampled");
  return impl_->vals;
}

const FunctionTail& FunctionDescriptor::tail() const {
  if (!impl_->sampled) throw std::logic_error("tail(): descriptor is not sampled");
  return impl_->tail;
}

}  // namespace fm
