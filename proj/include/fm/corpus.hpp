#pragma once

// Built-in test corpora spanning the branch points of the membership
// machinery: even/odd, smooth/kinked, decaying/frozen tails, summable and
// non-summable differences. Expected flags are recorded only where a
// closed-form argument pins them.

#include <map>
#include <string>
#include <vector>

#include "fm/discrete_fourier.hpp"
#include "fm/function_descriptor.hpp"
#include "fm/sequence_descriptor.hpp"
#include "fm/types.hpp"

namespace fm {

struct ContinuousEntry {
  std::string name;
  FunctionDescriptor f;
  std::map<std::string, Finiteness> expected_flags;
  bool has_second_derivative = false;
};

struct SequenceEntry {
  std::string name;
  SequenceDescriptor seq;
  std::map<std::string, Finiteness> expected_flags;
};

std::vector<ContinuousEntry> continuous_corpus();
std::vector<SequenceEntry> sequence_corpus();
std::vector<PeriodicFunction> periodic_corpus(int n = 4096);

// Bounded, smooth, in every block space, yet with a non-integrable conjugate
// function: 1/(1+x^2).
FunctionDescriptor counterexample_symbol();

}  // namespace fm
