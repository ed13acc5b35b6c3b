#include "fm/sequence_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fm {

SequenceDescriptor::SequenceDescriptor(int support_radius, std::vector<Complex> values,
                                       SequenceTail tail)
    : radius_(support_radius), vals_(std::move(values)), tail_(tail) {
  if (support_radius < 0) throw std::invalid_argument("support radius must be >= 0");
  if (vals_.size() != static_cast<std::size_t>(2 * support_radius + 1))
    throw std::invalid_argument("sequence window must hold exactly 2N+1 values");
  real_ = std::all_of(vals_.begin(), vals_.end(),
                      [](const Complex& v) { return v.imag() == 0.0; });
}

Complex SequenceDescriptor::value(long long k) const {
  if (std::llabs(k) <= radius_) return vals_[static_cast<std::size_t>(k + radius_)];
  const Complex edge = k > 0 ? vals_.back() : vals_.front();
  switch (tail_.kind) {
    case SequenceTail::Kind::zero: return {0.0, 0.0};
    case SequenceTail::Kind::geometric:
      return edge * std::pow(tail_.ratio, double(std::llabs(k) - radius_));
    case SequenceTail::Kind::power: {
      if (radius_ == 0) throw std::domain_error("power tail requires radius >= 1");
      return edge * std::pow(double(radius_) / double(std::llabs(k)), tail_.exponent);
    }
  }
  return {0.0, 0.0};
}

bool SequenceDescriptor::limit_is_zero() const {
  switch (tail_.kind) {
    case SequenceTail::Kind::zero: return true;
    case SequenceTail::Kind::geometric: return std::fabs(tail_.ratio) < 1.0;
    case SequenceTail::Kind::power: return tail_.exponent > 0.0;
  }
  return true;
}

SequenceDescriptor SequenceDescriptor::from_csv(const std::string& path, SequenceTail tail) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file: " + path);
  std::map<long long, Complex> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    std::string fk, fre, fim;
    if (!std::getline(ls, fk, ',') || !std::getline(ls, fre, ',')) continue;
    std::getline(ls, fim, ',');
    try {
      const long long k = std::stoll(fk);
      const double re = std::stod(fre);
      const double im = fim.empty() ? 0.0 : std::stod(fim);
      entries[k] = Complex(re, im);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header row
      throw std::invalid_argument("CSV parse error at line " + std::to_string(lineno) +
                                  " of " + path);
    }
  }
  if (entries.empty()) throw std::invalid_argument("empty sequence CSV: " + path);
  long long radius = 0;
  for (const auto& [k, v] : entries) radius = std::max(radius, std::llabs(k));
  if (radius > 1'000'000) throw std::invalid_argument("sequence window too large");
  std::vector<Complex> vals(static_cast<std::size_t>(2 * radius + 1), Complex(0.0, 0.0));
  for (const auto& [k, v] : entries) vals[static_cast<std::size_t>(k + radius)] = v;
  return SequenceDescriptor(static_cast<int>(radius), std::move(vals), tail);
}

void SequenceDescriptor::to_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << "k,re,im\n";
  out.precision(17);
  for (long long k = -radius_; k <= radius_; ++k) {
    const Complex v = value(k);
    out << k << ',' << v.real() << ',' << v.imag() << '\n';
  }
}

}  // namespace fm
