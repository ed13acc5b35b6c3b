// Command-line surface over the multiplier-certification library. Every verb
// emits one JSON document (stdout, or --out) wrapped as
//   {"schema_version": 1, "command": <verb>, "report": {...}}
// and is byte-deterministic for fixed inputs. Exit codes: 0 success, 1 a
// computed assertion failed (or a refusal such as mismatched symbol limits),
// 2 usage or input-format error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fm/harness.hpp"

namespace {

using fm::Json;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::vector<double> p_list;
};

struct SymbolOpts {
  std::string family;
  std::vector<std::string> params;  // key=value
  std::string csv;
  std::string tail = "zero";  // zero | hold | power:EXP
};

struct SequenceOpts {
  std::string csv;
  std::string builtin;        // name from the built-in sequence corpus
  std::string tail = "zero";  // zero | geometric:R | power:EXP
};

void add_symbol_flags(CLI::App* cmd, SymbolOpts& o, const std::string& prefix,
                      const std::string& what) {
  cmd->add_option("--" + prefix + "family", o.family, "built-in family for " + what);
  cmd->add_option("--" + prefix + "param", o.params,
                  "family parameter key=value (repeatable)");
  cmd->add_option("--" + prefix + "csv", o.csv, "sampled-descriptor CSV for " + what);
  cmd->add_option("--" + prefix + "tail", o.tail,
                  "tail model for the CSV window: zero | hold | power:EXP");
}

void add_sequence_flags(CLI::App* cmd, SequenceOpts& o) {
  cmd->add_option("--sequence", o.csv, "sequence CSV (columns k,re,im)");
  cmd->add_option("--seq-name", o.builtin,
                  "built-in sequence: delta, hat8, one_sided_geometric, "
                  "inverse_linear, alternating");
  cmd->add_option("--seq-tail", o.tail,
                  "tail model for the CSV window: zero | geometric:R | power:EXP");
}

double parse_tail_arg(const std::string& spec, const std::string& head, double fallback) {
  if (spec.size() <= head.size() || spec[head.size()] != ':') return fallback;
  return std::stod(spec.substr(head.size() + 1));
}

fm::FunctionTail parse_function_tail(const std::string& s) {
  fm::FunctionTail t;
  if (s == "zero") {
    t.kind = fm::FunctionTail::Kind::zero;
  } else if (s == "hold") {
    t.kind = fm::FunctionTail::Kind::hold;
  } else if (s.rfind("power", 0) == 0) {
    t.kind = fm::FunctionTail::Kind::power;
    t.exponent = parse_tail_arg(s, "power", t.exponent);
  } else {
    throw std::invalid_argument("unknown tail model: " + s);
  }
  return t;
}

fm::SequenceTail parse_sequence_tail(const std::string& s) {
  fm::SequenceTail t;
  if (s == "zero") {
    t.kind = fm::SequenceTail::Kind::zero;
  } else if (s.rfind("geometric", 0) == 0) {
    t.kind = fm::SequenceTail::Kind::geometric;
    t.ratio = parse_tail_arg(s, "geometric", t.ratio);
  } else if (s.rfind("power", 0) == 0) {
    t.kind = fm::SequenceTail::Kind::power;
    t.exponent = parse_tail_arg(s, "power", t.exponent);
  } else {
    throw std::invalid_argument("unknown sequence tail model: " + s);
  }
  return t;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("expected key=value, got: " + kv);
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

std::pair<fm::FunctionDescriptor, std::string> make_symbol(const SymbolOpts& o,
                                                           const std::string& what) {
  if (!o.family.empty() && !o.csv.empty())
    throw std::invalid_argument(what + ": give either a family or a CSV, not both");
  if (!o.family.empty()) {
    auto params = parse_params(o.params);
    std::string label = o.family;
    if (!params.empty()) {
      std::ostringstream ss;
      ss << o.family << '(';
      bool first = true;
      for (const auto& [k, v] : params) {
        if (!first) ss << ',';
        ss << k << '=' << v;
        first = false;
      }
      ss << ')';
      label = ss.str();
    }
    return {fm::FunctionDescriptor::family(o.family, params), label};
  }
  if (!o.csv.empty())
    return {fm::FunctionDescriptor::from_csv(o.csv, parse_function_tail(o.tail)), o.csv};
  throw std::invalid_argument(what + ": no symbol given (--family or --csv required)");
}

std::pair<fm::SequenceDescriptor, std::string> make_sequence(const SequenceOpts& o) {
  if (!o.builtin.empty() && !o.csv.empty())
    throw std::invalid_argument("give either --seq-name or --sequence, not both");
  if (!o.builtin.empty()) {
    for (auto& e : fm::sequence_corpus())
      if (e.name == o.builtin) return {e.seq, e.name};
    throw std::invalid_argument("unknown built-in sequence: " + o.builtin);
  }
  if (!o.csv.empty()) {
    auto seq = fm::SequenceDescriptor::from_csv(o.csv, parse_sequence_tail(o.tail));
    seq.name = o.csv;
    return {seq, o.csv};
  }
  throw std::invalid_argument("no sequence given (--seq-name or --sequence required)");
}

fm::QuadratureConfig load_cfg(const CommonOpts& c) {
  if (c.config_path.empty()) return {};
  return fm::load_config(c.config_path);
}

std::vector<double> effective_p(const CommonOpts& c) {
  return c.p_list.empty() ? std::vector<double>{1.0, 2.0} : c.p_list;
}

void emit(const CommonOpts& c, const std::string& verb, Json report) {
  Json doc{{"schema_version", 1}, {"command", verb}, {"report", std::move(report)}};
  std::string text = doc.dump(2);
  text.push_back('\n');
  if (c.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.out_path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + c.out_path);
    out << text;
  }
}

Json complex_json(const fm::Complex& z) { return Json::array({z.real(), z.imag()}); }

Json transform_samples_json(const fm::FunctionDescriptor& lambda,
                            const fm::QuadratureConfig& cfg) {
  Json samples = Json::array();
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    auto d = fm::decompose_transform(lambda, x, cfg);
    samples.push_back(Json{{"x", d.x},
                           {"full", complex_json(d.full_value)},
                           {"main", complex_json(d.main_term)},
                           {"gamma", complex_json(d.gamma)},
                           {"residual", std::abs(d.full_value - d.main_term - d.gamma)},
                           {"error_estimate", d.error_estimate},
                           {"converged", d.converged}});
  }
  return samples;
}

Json series_samples_json(const fm::SequenceDescriptor& lambda) {
  Json samples = Json::array();
  for (double y : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    auto d = fm::decompose_series(lambda, y);
    samples.push_back(Json{{"y", d.y},
                           {"series", complex_json(d.series_value)},
                           {"main", complex_json(d.main_term)},
                           {"gamma", complex_json(d.gamma)},
                           {"residual", std::abs(d.series_value - d.main_term - d.gamma)},
                           {"error_estimate", d.error_estimate},
                           {"converged", d.converged}});
  }
  return samples;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification toolkit for convolution multipliers on L1"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "quadrature config file (key = value)")
      ->capture_default_str();
  app.add_option("--out", common.out_path, "write the JSON report to this path");
  app.add_option("--p", common.p_list, "block exponent p >= 1 (repeatable; default 1 2)");

  SymbolOpts sym, fsym;
  SequenceOpts seq;
  std::string periodic_name, periodic_csv, out_csv;
  int periodic_n = 4096;

  auto* c_norms = app.add_subcommand("norms", "norm report for a symbol on the line");
  add_symbol_flags(c_norms, sym, "", "the symbol");

  auto* c_seqnorms = app.add_subcommand("seq-norms", "norm report for a sequence symbol");
  add_sequence_flags(c_seqnorms, seq);

  auto* c_certify = app.add_subcommand(
      "certify", "full membership certification (norms plus cross-checks)");
  add_symbol_flags(c_certify, sym, "", "the symbol");
  add_sequence_flags(c_certify, seq);

  auto* c_apply = app.add_subcommand("apply", "apply the symbol's operator to f");
  add_symbol_flags(c_apply, sym, "", "the symbol");
  add_symbol_flags(c_apply, fsym, "f-", "the input function");
  c_apply->add_option("--out-csv", out_csv, "write the sampled output g to CSV");

  auto* c_applyp = app.add_subcommand("apply-periodic",
                                      "apply a sequence symbol on the circle");
  add_sequence_flags(c_applyp, seq);
  c_applyp->add_option("--periodic", periodic_name,
                       "built-in circle function: sawtooth, square, triangle, cos3, "
                       "vonmises");
  c_applyp->add_option("--periodic-csv", periodic_csv, "circle samples CSV (j,re,im)");
  c_applyp->add_option("--n", periodic_n, "grid size for built-in circle functions");
  c_applyp->add_option("--out-csv", out_csv, "write the output samples to CSV");

  auto* c_thma = app.add_subcommand(
      "verify-thma", "transform decomposition and remainder norm on the line");
  add_symbol_flags(c_thma, sym, "", "the symbol");

  auto* c_thmb = app.add_subcommand(
      "verify-thmb", "series decomposition and remainder norm on the circle");
  add_sequence_flags(c_thmb, seq);

  auto* c_embed = app.add_subcommand("embed-report",
                                     "norms and embedding implications over the "
                                     "built-in corpora");
  auto* c_quasi = app.add_subcommand(
      "quasiconvexity", "oscillation bound S <= ln3 * int t|d lambda'| on the corpus");
  auto* c_counter = app.add_subcommand(
      "counterexample", "bounded symbol 1/(1+x^2) with non-integrable conjugate");

  // Let --config/--out/--p appear after the verb as well as before it.
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n(run with --help for usage)\n";
    return 2;
  }

  try {
    const fm::QuadratureConfig cfg = load_cfg(common);

    if (c_norms->parsed()) {
      auto [lambda, label] = make_symbol(sym, "norms");
      fm::NormReport r = fm::assemble_norm_report(lambda, effective_p(common), cfg);
      r.name = label;
      emit(common, "norms", fm::to_json(r));
      return 0;
    }

    if (c_seqnorms->parsed()) {
      auto [lam, label] = make_sequence(seq);
      fm::SequenceNormReport r = fm::assemble_sequence_report(lam, effective_p(common));
      r.name = label;
      emit(common, "seq-norms", fm::to_json(r));
      return 0;
    }

    if (c_certify->parsed()) {
      if (!seq.csv.empty() || !seq.builtin.empty()) {
        auto [lam, label] = make_sequence(seq);
        fm::SequenceNormReport r = fm::assemble_sequence_report(lam, effective_p(common));
        r.name = label;
        auto rem = fm::series_remainder_norm(lam);
        emit(common, "certify",
             Json{{"norms", fm::to_json(r)}, {"series_remainder", fm::to_json(rem)}});
        return 0;
      }
      auto [lambda, label] = make_symbol(sym, "certify");
      fm::NormReport r = fm::assemble_norm_report(lambda, effective_p(common), cfg);
      r.name = label;
      auto hs = fm::hs_membership(lambda, cfg);
      auto integ = fm::integrability_criterion(lambda, cfg);
      emit(common, "certify",
           Json{{"norms", fm::to_json(r)},
                {"conjugate_membership", fm::to_json(hs)},
                {"integrability", fm::to_json(integ)}});
      return (hs.consistent && integ.consistent) ? 0 : 1;
    }

    if (c_apply->parsed()) {
      auto [lambda, llabel] = make_symbol(sym, "apply (symbol)");
      auto [f, flabel] = make_symbol(fsym, "apply (input)");
      fm::ApplyResult r = fm::multiplier_apply(lambda, f, cfg);
      if (!out_csv.empty()) r.output.to_csv(out_csv);
      Json j = fm::to_json(r);
      j["symbol"] = llabel;
      j["input"] = flabel;
      emit(common, "apply", std::move(j));
      return r.identity_ok ? 0 : 1;
    }

    if (c_applyp->parsed()) {
      auto [lam, label] = make_sequence(seq);
      if (!periodic_name.empty() && !periodic_csv.empty())
        throw std::invalid_argument("give either --periodic or --periodic-csv, not both");
      fm::PeriodicFunction f = [&]() {
        if (!periodic_csv.empty()) return fm::PeriodicFunction::from_csv(periodic_csv);
        if (periodic_name.empty())
          throw std::invalid_argument("no circle function given (--periodic or --periodic-csv)");
        for (auto& p : fm::periodic_corpus(periodic_n))
          if (p.name == periodic_name) return p;
        throw std::invalid_argument("unknown built-in circle function: " + periodic_name);
      }();
      fm::PeriodicApplyResult r = fm::multiplier_apply_periodic(lam, f);
      if (!out_csv.empty()) r.output.to_csv(out_csv);
      Json j = fm::to_json(r);
      j["symbol"] = label;
      j["input"] = f.name;
      const bool ok = r.identity_error <= 1e-9 * (1.0 + r.f_l1);
      j["identity_ok"] = ok;
      emit(common, "apply-periodic", std::move(j));
      return ok ? 0 : 1;
    }

    if (c_thma->parsed()) {
      auto [lambda, label] = make_symbol(sym, "verify-thma");
      fm::RemainderReport r = fm::transform_remainder_norm(lambda, cfg);
      Json j{{"symbol", label},
             {"remainder", fm::to_json(r)},
             {"samples", transform_samples_json(lambda, cfg)}};
      emit(common, "verify-thma", std::move(j));
      return r.flag == fm::Finiteness::finite ? 0 : 1;
    }

    if (c_thmb->parsed()) {
      auto [lam, label] = make_sequence(seq);
      fm::SeriesRemainderReport r = fm::series_remainder_norm(lam);
      Json j{{"symbol", label},
             {"remainder", fm::to_json(r)},
             {"samples", series_samples_json(lam)}};
      emit(common, "verify-thmb", std::move(j));
      return r.flag == fm::Finiteness::finite ? 0 : 1;
    }

    if (c_embed->parsed()) {
      auto rep = fm::run_embedding_report(fm::continuous_corpus(), fm::sequence_corpus(),
                                          effective_p(common), cfg);
      emit(common, "embed-report", fm::to_json(rep));
      return rep.passed ? 0 : 1;
    }

    if (c_quasi->parsed()) {
      auto rep = fm::run_quasiconvexity_check(fm::continuous_corpus(), cfg);
      emit(common, "quasiconvexity", fm::to_json(rep));
      return rep.passed ? 0 : 1;
    }

    if (c_counter->parsed()) {
      auto rep = fm::run_counterexample(cfg);
      emit(common, "counterexample", fm::to_json(rep));
      return rep.passed ? 0 : 1;
    }

    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
