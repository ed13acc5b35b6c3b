#pragma once

// Descriptors for functions on the real line. Two kinds:
//   * closed_form: named family with parameters and callables for the value
//     and (when available) first/second derivatives, exact everywhere;
//   * sampled: strictly increasing grid with complex values, evaluated by
//     piecewise-linear interpolation inside the window and by a declared tail
//     model outside it. Derivatives of sampled kinds are segment slopes, a
//     documented accuracy downgrade relative to closed forms.
//
// Descriptors are immutable values; copies share the underlying state.

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fm/types.hpp"

namespace fm {

struct FunctionTail {
  enum class Kind { zero, hold, power };
  Kind kind = Kind::zero;
  double exponent = 2.0;  // power kind only: |f| ~ |f(edge)| * (|edge|/|x|)^exponent
};

class FunctionDescriptor {
 public:
  using Fn = std::function<Complex(double)>;
  struct Impl;  // definition lives in the .cpp; public so helpers there can name it

  static FunctionDescriptor closed_form(std::string name,
                                        std::map<std::string, double> params,
                                        Fn value, Fn d1 = {}, Fn d2 = {},
                                        bool real_valued = true);
  static FunctionDescriptor sampled(std::vector<double> grid,
                                    std::vector<Complex> values,
                                    FunctionTail tail = {});
  // Instantiates a registered family ("gaussian", "poisson", "exp_abs",
  // "hat", "tanh_step", "odd_gaussian", "two_bump", "constant").
  static FunctionDescriptor family(const std::string& name,
                                   const std::map<std::string, double>& params = {});
  static std::vector<std::string> family_names();

  // CSV columns x, re, im (header row optional). Grid must be strictly
  // increasing.
  static FunctionDescriptor from_csv(const std::string& path, FunctionTail tail = {});
  void to_csv(const std::string& path) const;

  Complex operator()(double x) const;
  Complex derivative(double x) const;         // throws if derivative_order() < 1
  Complex second_derivative(double x) const;  // throws if derivative_order() < 2
  int derivative_order() const;

  bool is_sampled() const;
  bool is_real() const;
  const std::string& name() const;

  // Descriptor whose value is this one's derivative (closed forms shift their
  // callables; sampled kinds expose segment slopes).
  FunctionDescriptor derivative_view() const;
  // c * f and f - c, preserving derivative availability.
  FunctionDescriptor scaled(Complex c) const;
  FunctionDescriptor minus_constant(Complex c) const;

  // Sampled access; throws for closed forms.
  const std::vector<double>& grid() const;
  const std::vector<Complex>& values() const;
  const FunctionTail& tail() const;

 private:
  std::shared_ptr<const Impl> impl_;
  explicit FunctionDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace fm
