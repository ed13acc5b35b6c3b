#include "fm/corpus.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>

namespace fm {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using FlagMap = std::map<std::string, Finiteness>;

FlagMap all_finite() {
  return {{"deriv_l1", Finiteness::finite},
          {"s", Finiteness::finite},
          {"a", Finiteness::finite}};
}

FlagMap seq_all_finite() {
  return {{"sup", Finiteness::finite},
          {"delta_l1", Finiteness::finite},
          {"s", Finiteness::finite},
          {"a", Finiteness::finite}};
}

SequenceDescriptor make_hat_sequence(int width) {
  std::vector<Complex> v(std::size_t(2 * width + 1));
  for (int k = -width; k <= width; ++k)
    v[std::size_t(k + width)] = 1.0 - double(std::abs(k)) / double(width);
  SequenceTail tail;
  tail.kind = SequenceTail::Kind::zero;
  return SequenceDescriptor(width, std::move(v), tail);
}

SequenceDescriptor make_one_sided_geometric() {
  // 2^{-k} on k >= 0, zero on k < 0; the window reaches 2^-34 ~ 6e-11 and a
  // geometric tail model continues the right side exactly (the left edge is
  // zero, so the tail is one-sided too).
  const int radius = 34;
  std::vector<Complex> v(std::size_t(2 * radius + 1));
  for (int k = 0; k <= radius; ++k) v[std::size_t(k + radius)] = std::ldexp(1.0, -k);
  SequenceTail tail;
  tail.kind = SequenceTail::Kind::geometric;
  tail.ratio = 0.5;
  return SequenceDescriptor(radius, std::move(v), tail);
}

SequenceDescriptor make_inverse_linear() {
  const int radius = 512;
  std::vector<Complex> v(std::size_t(2 * radius + 1));
  for (int k = -radius; k <= radius; ++k)
    v[std::size_t(k + radius)] = 1.0 / (std::abs(double(k)) + 1.0);
  SequenceTail tail;
  tail.kind = SequenceTail::Kind::power;
  tail.exponent = 1.0;
  return SequenceDescriptor(radius, std::move(v), tail);
}

SequenceDescriptor make_alternating() {
  // (-1)^k frozen forever: differences keep modulus 2, so the difference sum
  // and the block functionals on the differences blow up, while the even
  // symmetry keeps the odd-part sum at zero.
  const int radius = 64;
  std::vector<Complex> v(std::size_t(2 * radius + 1));
  for (int k = -radius; k <= radius; ++k)
    v[std::size_t(k + radius)] = (k % 2 == 0) ? 1.0 : -1.0;
  SequenceTail tail;
  tail.kind = SequenceTail::Kind::power;
  tail.exponent = 0.0;
  return SequenceDescriptor(radius, std::move(v), tail);
}

}  // namespace

std::vector<ContinuousEntry> continuous_corpus() {
  std::vector<ContinuousEntry> out;
  auto add = [&](std::string name, FunctionDescriptor f, FlagMap flags, bool has_d2) {
    out.push_back(ContinuousEntry{std::move(name), std::move(f), std::move(flags), has_d2});
  };

  add("gaussian(0.5)", FunctionDescriptor::family("gaussian", {{"sigma", 0.5}}),
      all_finite(), true);
  add("gaussian(1)", FunctionDescriptor::family("gaussian", {{"sigma", 1.0}}),
      all_finite(), true);
  add("gaussian(2)", FunctionDescriptor::family("gaussian", {{"sigma", 2.0}}),
      all_finite(), true);
  add("poisson", FunctionDescriptor::family("poisson"), all_finite(), true);
  add("exp_abs", FunctionDescriptor::family("exp_abs"), all_finite(), true);
  add("hat(2)", FunctionDescriptor::family("hat", {{"width", 2.0}}), all_finite(),
      false);  // corners at 0 and +-2

  // Nonzero limits at +-infinity: dyadic block means approach 1 while the
  // weights 2^n grow, so the block functional diverges and this entry sits
  // outside every space that charges for mass at infinity.
  add("tanh_step", FunctionDescriptor::family("tanh_step"),
      FlagMap{{"deriv_l1", Finiteness::finite},
              {"s", Finiteness::finite},
              {"a", Finiteness::diverged_suspected}},
      true);

  add("odd_gaussian", FunctionDescriptor::family("odd_gaussian"), all_finite(), true);
  add("two_bump", FunctionDescriptor::family("two_bump"), all_finite(), true);
  return out;
}

std::vector<SequenceEntry> sequence_corpus() {
  std::vector<SequenceEntry> out;
  auto add = [&](std::string name, SequenceDescriptor seq, FlagMap flags) {
    seq.name = name;
    out.push_back(SequenceEntry{std::move(name), std::move(seq), std::move(flags)});
  };

  {
    SequenceTail tail;
    tail.kind = SequenceTail::Kind::zero;
    add("delta", SequenceDescriptor(0, {Complex(1.0, 0.0)}, tail), seq_all_finite());
  }
  add("hat8", make_hat_sequence(8), seq_all_finite());
  add("one_sided_geometric", make_one_sided_geometric(), seq_all_finite());
  add("inverse_linear", make_inverse_linear(), seq_all_finite());
  add("alternating", make_alternating(),
      FlagMap{{"sup", Finiteness::finite},
              {"delta_l1", Finiteness::diverged_suspected},
              {"a", Finiteness::finite}});
  return out;
}

std::vector<PeriodicFunction> periodic_corpus(int n) {
  std::vector<PeriodicFunction> out;
  auto add = [&](const char* name, const std::function<Complex(double)>& f) {
    PeriodicFunction p = PeriodicFunction::from_callable(f, n);
    p.name = name;
    out.push_back(std::move(p));
  };
  add("sawtooth", [](double x) { return Complex(x / kPi, 0.0); });
  add("square", [](double x) { return Complex(x >= 0.0 ? 1.0 : -1.0, 0.0); });
  add("triangle", [](double x) { return Complex(1.0 - 2.0 * std::abs(x) / kPi, 0.0); });
  add("cos3", [](double x) { return Complex(std::cos(3.0 * x), 0.0); });
  add("vonmises", [](double x) { return Complex(std::exp(4.0 * (std::cos(x) - 1.0)), 0.0); });
  return out;
}

FunctionDescriptor counterexample_symbol() { return FunctionDescriptor::family("poisson"); }

}  // namespace fm
