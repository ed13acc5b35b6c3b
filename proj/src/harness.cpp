#include "fm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fm {
namespace {

constexpr double kLn3 = 1.0986122886681098;

Finiteness worse(Finiteness a, Finiteness b) {
  auto rank = [](Finiteness f) {
    switch (f) {
      case Finiteness::finite: return 0;
      case Finiteness::not_converged: return 1;
      default: return 2;
    }
  };
  return rank(a) >= rank(b) ? a : b;
}

std::string num_key(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string aq_key(double p) { return "aq_p=" + num_key(p); }

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json trace_json(const std::vector<std::pair<double, double>>& trace) {
  Json a = Json::array();
  for (const auto& [r, v] : trace) a.push_back(Json::array({r, v}));
  return a;
}

Json flags_json(const std::map<std::string, Finiteness>& flags) {
  Json o = Json::object();
  for (const auto& [k, v] : flags) o[k] = to_string(v);
  return o;
}

Json per_function_json(const std::vector<std::pair<std::string, double>>& pf) {
  Json a = Json::array();
  for (const auto& [name, ratio] : pf) a.push_back(Json{{"name", name}, {"ratio", ratio}});
  return a;
}

// Normalized membership flags per space, from a report's component flags.
struct SpaceFlags {
  std::vector<std::pair<std::string, Finiteness>> chain;  // ascending spaces
  std::vector<std::pair<std::string, Finiteness>> into_h;  // each B_p (or bv_p)
  Finiteness h = Finiteness::not_converged;
  std::string h_name;
};

SpaceFlags continuous_spaces(const NormReport& r, const std::vector<double>& p_list) {
  SpaceFlags s;
  const Finiteness a = r.flags.at("a");
  const Finiteness deriv = r.flags.at("deriv_l1");
  for (double p : p_list) {
    Finiteness bp = worse(r.flags.at(aq_key(p)), a);
    s.chain.emplace_back("B_" + num_key(p), bp);
    s.into_h.emplace_back("B_" + num_key(p), bp);
  }
  s.chain.emplace_back("B", deriv);
  s.h = worse(deriv, worse(r.flags.at("s"), a));
  s.h_name = "H";
  return s;
}

SpaceFlags discrete_spaces(const SequenceNormReport& r, const std::vector<double>& p_list) {
  SpaceFlags s;
  const Finiteness sup = r.flags.at("sup");
  const Finiteness a = r.flags.at("a");
  const Finiteness dl1 = r.flags.at("delta_l1");
  for (double p : p_list) {
    Finiteness bvp = worse(sup, worse(r.flags.at(aq_key(p)), a));
    s.chain.emplace_back("bv_" + num_key(p), bvp);
    s.into_h.emplace_back("bv_" + num_key(p), bvp);
  }
  s.chain.emplace_back("bv", worse(sup, dl1));
  s.h = worse(worse(sup, dl1), worse(r.flags.at("s"), a));
  s.h_name = "h";
  return s;
}

void check_spaces(const std::string& entry, const SpaceFlags& s,
                  std::vector<EmbeddingViolation>& out) {
  auto violates = [](Finiteness small, Finiteness large) {
    return small == Finiteness::finite && large == Finiteness::diverged_suspected;
  };
  for (std::size_t i = 0; i + 1 < s.chain.size(); ++i)
    if (violates(s.chain[i].second, s.chain[i + 1].second))
      out.push_back({entry, s.chain[i].first, s.chain[i + 1].first});
  for (const auto& [name, flag] : s.into_h)
    if (violates(flag, s.h)) out.push_back({entry, name, s.h_name});
}

void check_expected(const std::string& entry,
                    const std::map<std::string, Finiteness>& expected,
                    const std::map<std::string, Finiteness>& computed,
                    std::vector<std::string>& out) {
  for (const auto& [key, want] : expected) {
    auto it = computed.find(key);
    if (it == computed.end()) {
      out.push_back(entry + ": flag '" + key + "' not computed");
    } else if (it->second != want) {
      out.push_back(entry + ": " + key + " expected " + to_string(want) + ", got " +
                    to_string(it->second));
    }
  }
}

}  // namespace

Json to_json(const IntegralResult& r) {
  return Json{{"value", r.value},
              {"error_estimate", r.error_estimate},
              {"tail_estimate", r.tail_contribution_estimate},
              {"converged", r.converged},
              {"diverged_suspected", r.diverged_suspected},
              {"subdivisions", r.subdivisions},
              {"flag", to_string(r.flag())}};
}

Json to_json(const ReHResult& r) {
  return Json{{"f_l1", to_json(r.f_l1)},
              {"conj_l1", r.conj_l1},
              {"conj_tail_estimate", r.conj_tail_estimate},
              {"conj_radius", r.conj_radius},
              {"growth_exponent", r.growth_exponent},
              {"conj_flag", to_string(r.conj_flag)},
              {"flag", to_string(r.flag)},
              {"value", r.value}};
}

Json to_json(const HsReport& r) {
  return Json{{"plus_part", to_json(r.plus_part)},
              {"minus_part", to_json(r.minus_part)},
              {"f_l1", to_json(r.f_l1)},
              {"s_f", to_json(r.s_f)},
              {"reh_flag", to_string(r.reh_flag)},
              {"criterion_flag", to_string(r.criterion_flag)},
              {"consistent", r.consistent}};
}

Json to_json(const NormReport& r) {
  Json aq = Json::object();
  for (const auto& [p, v] : r.aq_values) aq[num_key(p)] = to_json(v);
  Json bp = Json::object();
  for (const auto& [p, v] : r.bp_norms) bp[num_key(p)] = v;
  Json o{{"name", r.name},
         {"sup_norm", r.sup_norm},
         {"deriv_l1", to_json(r.deriv_l1)},
         {"cb_norm", r.cb_norm},
         {"s_value", to_json(r.s_value)},
         {"a_value", to_json(r.a_value)},
         {"h_norm", r.h_norm},
         {"aq_values", std::move(aq)},
         {"bp_norms", std::move(bp)},
         {"flags", flags_json(r.flags)},
         {"h_certificate", to_string(r.h_certificate)}};
  if (r.has_quasiconvexity) o["quasiconvexity"] = to_json(r.quasiconvexity);
  return o;
}

Json to_json(const SequenceNormReport& r) {
  Json aq = Json::object();
  for (const auto& [p, v] : r.aq_values) aq[num_key(p)] = to_json(v);
  Json bvp = Json::object();
  for (const auto& [p, v] : r.bvp_norms) bvp[num_key(p)] = v;
  return Json{{"name", r.name},
              {"sup", to_json(r.sup)},
              {"delta_l1", to_json(r.delta_l1)},
              {"bv_norm", r.bv_norm},
              {"s_value", to_json(r.s_value)},
              {"a_value", to_json(r.a_value)},
              {"h_norm", r.h_norm},
              {"aq_values", std::move(aq)},
              {"bvp_norms", std::move(bvp)},
              {"flags", flags_json(r.flags)},
              {"h_certificate", to_string(r.h_certificate)},
              {"limit_is_zero", r.limit_is_zero}};
}

Json to_json(const RemainderReport& r) {
  return Json{{"gamma_l1", to_json(r.gamma_l1)},
              {"deriv_l1", to_json(r.deriv_l1)},
              {"s_value", to_json(r.s_value)},
              {"bound_rhs", r.bound_rhs},
              {"theta_hat", r.theta_hat},
              {"excluded_mass_estimate", r.excluded_mass_estimate},
              {"flag", to_string(r.flag)}};
}

Json to_json(const SeriesRemainderReport& r) {
  return Json{{"gamma_l1", r.gamma_l1},
              {"quadrature_error", r.quadrature_error},
              {"excluded_mass_estimate", r.excluded_mass_estimate},
              {"delta_l1", to_json(r.delta_l1)},
              {"s_value", to_json(r.s_value)},
              {"bound_rhs", r.bound_rhs},
              {"theta_hat", r.theta_hat},
              {"flag", to_string(r.flag)}};
}

Json to_json(const IntegrabilityVerdict& v) {
  return Json{{"a_value", to_json(v.a_value)},
              {"transform_l1", to_json(v.transform_l1)},
              {"criterion_flag", to_string(v.criterion_flag)},
              {"direct_flag", to_string(v.direct_flag)},
              {"consistent", v.consistent},
              {"criterion_trace", trace_json(v.criterion_trace)},
              {"direct_trace", trace_json(v.direct_trace)}};
}

Json to_json(const ApplyResult& r) {
  return Json{{"limit_value", complex_json(r.limit_value)},
              {"lambda_sup", r.lambda_sup},
              {"f_l1", r.f_l1},
              {"output_l1", r.output_l1},
              {"identity_error", r.identity_error},
              {"identity_tolerance", r.identity_tolerance},
              {"identity_ok", r.identity_ok}};
}

Json to_json(const PeriodicApplyResult& r) {
  return Json{{"n", r.output.size()},
              {"f_l1", r.f_l1},
              {"output_l1", r.output_l1},
              {"identity_error", r.identity_error}};
}

Json to_json(const OperatorNormEstimate& e) {
  return Json{{"lower_bound", e.lower_bound},
              {"h_norm", e.h_norm},
              {"ratio", e.ratio},
              {"per_function", per_function_json(e.per_function)}};
}

Json to_json(const PeriodicOperatorNormEstimate& e) {
  return Json{{"lower_bound", e.lower_bound},
              {"h_norm", e.h_norm},
              {"ratio", e.ratio},
              {"per_function", per_function_json(e.per_function)}};
}

EmbeddingReport run_embedding_report(const std::vector<ContinuousEntry>& cont,
                                     const std::vector<SequenceEntry>& seqs,
                                     std::vector<double> p_list,
                                     const QuadratureConfig& cfg) {
  if (cont.empty() && seqs.empty())
    throw std::invalid_argument("run_embedding_report: empty corpus");
  if (std::find(p_list.begin(), p_list.end(), 1.0) == p_list.end()) p_list.push_back(1.0);
  std::sort(p_list.begin(), p_list.end());
  p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
  if (p_list.front() < 1.0)
    throw std::invalid_argument("run_embedding_report: p must be >= 1");

  EmbeddingReport rep;
  for (const auto& e : cont) {
    NormReport r = assemble_norm_report(e.f, p_list, cfg);
    r.name = e.name;
    check_spaces(e.name, continuous_spaces(r, p_list), rep.violations);
    check_expected(e.name, e.expected_flags, r.flags, rep.flag_mismatches);
    rep.continuous.push_back(std::move(r));
  }
  for (const auto& e : seqs) {
    SequenceNormReport r = assemble_sequence_report(e.seq, p_list);
    r.name = e.name;
    check_spaces(e.name, discrete_spaces(r, p_list), rep.violations);
    check_expected(e.name, e.expected_flags, r.flags, rep.flag_mismatches);
    rep.discrete.push_back(std::move(r));
  }
  rep.passed = rep.violations.empty();
  return rep;
}

Json to_json(const EmbeddingReport& r) {
  Json cont = Json::array();
  for (const auto& n : r.continuous) cont.push_back(to_json(n));
  Json disc = Json::array();
  for (const auto& n : r.discrete) disc.push_back(to_json(n));
  Json viol = Json::array();
  for (const auto& v : r.violations)
    viol.push_back(Json{{"entry", v.entry}, {"smaller", v.smaller}, {"larger", v.larger}});
  return Json{{"continuous", std::move(cont)},
              {"discrete", std::move(disc)},
              {"violations", std::move(viol)},
              {"flag_mismatches", r.flag_mismatches},
              {"passed", r.passed}};
}

QuasiconvexityReport run_quasiconvexity_check(const std::vector<ContinuousEntry>& corpus,
                                              const QuadratureConfig& cfg) {
  QuasiconvexityReport rep;
  for (const auto& e : corpus) {
    if (!e.has_second_derivative) continue;
    QuasiconvexityRow row;
    row.name = e.name;
    IntegralResult s = bt_functional(e.f.derivative_view(), cfg);
    IntegralResult q = quasiconvexity_integral(e.f, cfg);
    row.s_value = s.value;
    row.s_error = s.error_estimate;
    row.q_value = q.value;
    row.q_error = q.error_estimate;
    row.bound = kLn3 * q.value;
    row.ratio = row.bound > 1e-300 ? row.s_value / row.bound : 0.0;
    // slack covers the exponential entry, where the bound is an equality
    const double budget = row.s_error + kLn3 * row.q_error + 1e-9 * (1.0 + row.bound);
    const bool conclusive =
        s.flag() == Finiteness::finite && q.flag() == Finiteness::finite;
    row.within = conclusive && row.s_value <= row.bound + budget;
    if (!row.within) ++rep.violations;
    rep.rows.push_back(std::move(row));
  }
  rep.passed = rep.violations == 0 && !rep.rows.empty();
  return rep;
}

Json to_json(const QuasiconvexityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"name", row.name},
                        {"s_value", row.s_value},
                        {"s_error", row.s_error},
                        {"q_value", row.q_value},
                        {"q_error", row.q_error},
                        {"bound", row.bound},
                        {"ratio", row.ratio},
                        {"within", row.within}});
  }
  return Json{{"rows", std::move(rows)}, {"violations", r.violations}, {"passed", r.passed}};
}

CounterexampleReport run_counterexample(const QuadratureConfig& cfg) {
  cfg.validate();
  CounterexampleReport rep;
  FunctionDescriptor lambda = counterexample_symbol();

  const double inf = std::numeric_limits<double>::infinity();
  bool aq_ok = true;
  for (double q : {2.0, 4.0, inf}) {
    IntegralResult r = block_mean_integral(lambda, q, cfg);
    aq_ok = aq_ok && r.flag() == Finiteness::finite;
    rep.aq_values.emplace(q, std::move(r));
  }
  rep.aq_ok = aq_ok;

  // conjugate function against the closed form x/(1+x^2)
  double sup_err = 0.0;
  bool h_conv = true;
  for (int i = -40; i <= 40; ++i) {
    const double x = 0.25 * double(i);
    HilbertValue h = hilbert_transform(lambda, x, cfg);
    h_conv = h_conv && h.converged;
    sup_err = std::max(sup_err, std::abs(h.value - Complex(x / (1.0 + x * x), 0.0)));
  }
  rep.hilbert_sup_error = sup_err;
  rep.hilbert_ok = h_conv && sup_err <= 1e-3;

  // log growth of the conjugate mass: increments of int_{|x|<=R} |H lambda|
  // between R = 1e2, 1e3, 1e4 against ln(1+R^2) increments
  QuadratureConfig strip_cfg = cfg;
  strip_cfg.abs_tol = 1e-4;
  strip_cfg.rel_tol = 1e-3;
  strip_cfg.max_subdivisions = std::max(cfg.max_subdivisions, 400);
  bool growth_ok = true;
  const double radii[] = {1e2, 1e3, 1e4};
  for (int i = 0; i + 1 < 3; ++i) {
    GrowthRow row;
    row.r_lo = radii[i];
    row.r_hi = radii[i + 1];
    auto mass = [&lambda, &cfg](double u) {
      return std::abs(hilbert_transform(lambda, u, cfg).value) +
             std::abs(hilbert_transform(lambda, -u, cfg).value);
    };
    IntegralResult m = integrate_adaptive(mass, row.r_lo, row.r_hi, strip_cfg);
    row.measured = m.value;
    row.expected = std::log1p(row.r_hi * row.r_hi) - std::log1p(row.r_lo * row.r_lo);
    row.rel_error = std::abs(row.measured - row.expected) / row.expected;
    row.within = m.converged && row.rel_error <= 0.05;
    growth_ok = growth_ok && row.within;
    rep.growth.push_back(row);
  }
  rep.growth_ok = growth_ok;
  rep.passed = rep.aq_ok && rep.hilbert_ok && rep.growth_ok;
  return rep;
}

Json to_json(const CounterexampleReport& r) {
  Json aq = Json::object();
  for (const auto& [q, v] : r.aq_values) aq[num_key(q)] = to_json(v);
  Json growth = Json::array();
  for (const auto& g : r.growth) {
    growth.push_back(Json{{"r_lo", g.r_lo},
                          {"r_hi", g.r_hi},
                          {"measured", g.measured},
                          {"expected", g.expected},
                          {"rel_error", g.rel_error},
                          {"within", g.within}});
  }
  return Json{{"aq_values", std::move(aq)},
              {"aq_ok", r.aq_ok},
              {"hilbert_sup_error", r.hilbert_sup_error},
              {"hilbert_ok", r.hilbert_ok},
              {"growth", std::move(growth)},
              {"growth_ok", r.growth_ok},
              {"passed", r.passed}};
}

}  // namespace fm
