#pragma once

#include <complex>
#include <string>

namespace fm {

using Complex = std::complex<double>;

// Three-valued finiteness verdict for any numerically estimated quantity.
// "diverged_suspected" is evidence-based (growing partials plus a
// non-integrable fitted tail), never a proof; "not_converged" means the
// estimate failed its own tolerance without divergence evidence.
enum class Finiteness { finite, diverged_suspected, not_converged };

enum class Certificate { member, not_member, inconclusive };

inline const char* to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite: return "finite";
    case Finiteness::diverged_suspected: return "diverged_suspected";
    default: return "not_converged";
  }
}

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::member: return "member";
    case Certificate::not_member: return "not_member";
    default: return "inconclusive";
  }
}

}  // namespace fm
