#include "passent/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "passent/entangling_power.hpp"
#include "passent/io.hpp"
#include "passent/oracle.hpp"
#include "passent/states.hpp"

namespace passent::cli {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ValiditySummary, status, min_eigenvalue, asymmetry)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SqueezingSummary, eigenvalues, lambda1, lambda2, is_squeezed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VerdictSummary, lambda1, lambda2, product, can_entangle, lower_bound_bits,
                                   attainable_two_mode_bits, separability_decided)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PlanSummary, phase_angle, mixing_angle, two_mode_case, used_special_case,
                                   nothing_to_gain, predicted_negativity_bits, real_form, transform_path)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AchievedSummary, symplectic_spectrum, log_negativity_bits, is_nppt, label)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleSummary, samples, refine_iters, seed, best_negativity_bits,
                                   closed_form_bits, discrepancy, criterion_passed, subsystem_checked,
                                   subsystem_best_bits, agreement, message)

namespace {

constexpr double oracle_agreement_tolerance = 1e-3;

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void take(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

ValiditySummary summarize(const ValidityVerdict& v) { return {to_string(v.status), v.min_eigenvalue, v.asymmetry}; }

SqueezingSummary summarize(const SqueezingReport& s) {
  return {std::vector<double>(s.eigenvalues.begin(), s.eigenvalues.end()), s.lambda1, s.lambda2, s.is_squeezed};
}

VerdictSummary summarize(const EntanglingPowerVerdict& v) {
  return {v.lambda1, v.lambda2, v.product, v.can_entangle, v.lower_bound_bits, v.attainable_two_mode_bits,
          v.separability_decided};
}

AchievedSummary summarize(const EntanglementReport& r) {
  return {r.spectrum.values, r.log_negativity, r.is_nppt, r.label()};
}

PlanSummary summarize(const EntanglerPlan& p) {
  PlanSummary s;
  s.phase_angle = p.phase_angle;
  s.mixing_angle = p.mixing_angle;
  s.two_mode_case = to_string(p.two_mode_case);
  s.used_special_case = p.used_special_case;
  s.nothing_to_gain = p.nothing_to_gain;
  s.predicted_negativity_bits = p.predicted_negativity_bits;
  s.real_form = rows_of(p.transform.real_form());
  return s;
}

/// Input stage shared by the analysing commands. On failure the report is
/// filled with the error and `ok` is false.
struct Loaded {
  std::optional<CovarianceMatrix> state;
  std::optional<ModePartition> partition;
  bool ok = false;
};

Loaded load(Report& report, const std::string& file, const std::string* partition_text) {
  Loaded out;
  report.input_path = file;
  try {
    const std::string text = io::read_file(file);
    report.input_digest = io::sha256_hex(text);
    CovarianceMatrix gamma = io::state_from_json(io::parse(text, file));
    report.modes = gamma.modes();
    const ValidityVerdict v = validate(gamma);
    report.validity = summarize(v);
    if (!v.ok()) {
      report.error = v.status == Validity::asymmetric
                         ? fmt::format("covariance matrix is not symmetric (max asymmetry {:.6g})", v.asymmetry)
                         : fmt::format("covariance matrix is unphysical: Gamma + i sigma has eigenvalue {:.6g}",
                                       v.min_eigenvalue);
      return out;
    }
    if (partition_text) {
      out.partition = parse_partition(*partition_text, gamma.modes());
      report.partition = out.partition->to_string();
    }
    out.state = std::move(gamma);
    out.ok = true;
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  return out;
}

std::string fmt_number(double v) { return fmt::format("{:.6g}", v); }

void render_value(const json& v, std::string& out) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    out += fmt_number(x == 0.0 ? 0.0 : x);
  } else if (v.is_boolean()) {
    out += v.get<bool>() ? "yes" : "no";
  } else if (v.is_string()) {
    out += v.get<std::string>();
  } else if (v.is_array()) {
    out += '[';
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += ", ";
      render_value(e, out);
      first = false;
    }
    out += ']';
  } else {
    out += v.dump();
  }
}


}  // namespace

json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["input_path"] = r.input_path;
  j["input_digest"] = r.input_digest;
  j["modes"] = r.modes;
  j["partition"] = r.partition;
  put(j, "validity", r.validity);
  put(j, "squeezing", r.squeezing);
  put(j, "verdict", r.verdict);
  put(j, "plan", r.plan);
  put(j, "achieved", r.achieved);
  put(j, "oracle", r.oracle);
  j["warnings"] = r.warnings;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.input_path = j.at("input_path").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.modes = j.at("modes").get<int>();
  r.partition = j.at("partition").get<std::string>();
  take(j, "validity", r.validity);
  take(j, "squeezing", r.squeezing);
  take(j, "verdict", r.verdict);
  take(j, "plan", r.plan);
  take(j, "achieved", r.achieved);
  take(j, "oracle", r.oracle);
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

std::string render_human(const Report& r) {
  // Rendered from the JSON form so both outputs always carry the same fields.
  const json j = to_json(r);
  std::string out;
  static const char* const order[] = {"command", "input_path", "input_digest", "modes",    "partition", "validity",
                                      "squeezing", "verdict",  "plan",         "achieved", "oracle",    "warnings",
                                      "error"};
  for (const char* key : order) {
    if (!j.contains(key)) continue;
    const json& v = j.at(key);
    if (v.is_object()) {
      out += fmt::format("[{}]\n", key);
      for (auto f = v.begin(); f != v.end(); ++f) {
        const json& fv = f.value();
        if (fv.is_array() && !fv.empty() && fv.front().is_array()) {
          out += fmt::format("  {}:\n", f.key());
          for (const auto& row : fv) {
            out += "    ";
            render_value(row, out);
            out += '\n';
          }
        } else {
          out += fmt::format("  {:<28} ", f.key());
          render_value(fv, out);
          out += '\n';
        }
      }
    } else if (v.is_array()) {
      for (const auto& w : v) out += fmt::format("warning: {}\n", w.get<std::string>());
    } else {
      out += fmt::format("{:<30} ", key);
      render_value(v, out);
      out += '\n';
    }
  }
  return out;
}

ModePartition parse_partition(const std::string& text, int modes) {
  if (text.empty()) return ModePartition::halves(modes);
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos) {
    throw StructuralError("partition '" + text + "' must have the form A-modes:B-modes, e.g. 1,3:2,4");
  }
  auto parse_list = [&](const std::string& part) {
    std::vector<int> v;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw StructuralError("partition '" + text + "': '" + item + "' is not a mode number");
      }
      if (used != item.size()) throw StructuralError("partition '" + text + "': '" + item + "' is not a mode number");
      v.push_back(k);
    }
    if (v.empty()) throw StructuralError("partition '" + text + "': empty party");
    return v;
  };
  const std::vector<int> a = parse_list(text.substr(0, colon));
  const std::vector<int> b = parse_list(text.substr(colon + 1));

  // Mode lists when they cover every mode exactly once.
  if (static_cast<int>(a.size() + b.size()) == modes) {
    std::vector<bool> seen(modes, false);
    bool cover = true;
    for (const auto* party : {&a, &b})
      for (int k : *party) {
        if (k < 1 || k > modes || seen[k - 1]) {
          cover = false;
        } else {
          seen[k - 1] = true;
        }
      }
    if (cover) {
      std::vector<int> a0, b0;
      for (int k : a) a0.push_back(k - 1);
      for (int k : b) b0.push_back(k - 1);
      return ModePartition::from_modes(std::move(a0), std::move(b0));
    }
  }
  // Party sizes.
  if (a.size() == 1 && b.size() == 1 && a[0] >= 1 && b[0] >= 1 && a[0] + b[0] == modes) {
    return ModePartition::split(a[0], b[0]);
  }
  throw StructuralError(fmt::format("partition '{}' does not split {} modes", text, modes));
}

CommandResult cmd_check(const std::string& file, const std::string& partition) {
  CommandResult res;
  res.report.command = "check";
  Loaded in = load(res.report, file, &partition);
  if (!in.ok) {
    res.exit_code = exit_invalid_input;
    return res;
  }
  try {
    res.report.squeezing = summarize(squeezing_report(*in.state));
    if (in.state->modes() < 2) {
      res.report.warnings.push_back("a single mode cannot be entangled; add a vacuum ancilla");
      res.exit_code = exit_not_entanglable;
      return res;
    }
    const EntanglingPowerVerdict v = verdict(*in.state, *in.partition);
    res.report.verdict = summarize(v);
    res.exit_code = v.can_entangle ? exit_ok : exit_not_entanglable;
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

CommandResult cmd_entangle(const std::string& file, const std::string& partition, const std::string& transform_out) {
  CommandResult res;
  res.report.command = "entangle";
  Loaded in = load(res.report, file, &partition);
  if (!in.ok) {
    res.exit_code = exit_invalid_input;
    return res;
  }
  try {
    if (in.state->modes() < 2) throw StructuralError("entangle needs at least two modes");
    res.report.squeezing = summarize(squeezing_report(*in.state));
    const OptimalEntanglement opt = entangle_optimally(*in.state, *in.partition);
    res.report.verdict = summarize(opt.verdict);
    if (opt.plan) {
      res.report.plan = summarize(*opt.plan);
    } else {
      EntanglerPlan identity;
      identity.nothing_to_gain = true;
      if (in.state->modes() == 2) identity.two_mode_case = classify_two_mode(*in.state);
      res.report.plan = summarize(identity);
      res.report.warnings.push_back(
          "state cannot be entangled by passive operations (l1*l2 >= 1); emitting the identity transform");
    }
    res.report.achieved = summarize(opt.report);
    if (!transform_out.empty()) {
      io::write_transform(transform_out, opt.transform);
      res.report.plan->transform_path = transform_out;
    } else {
      res.report.warnings.push_back("no --out given; transform not written");
    }
    res.exit_code = opt.verdict.can_entangle ? exit_ok : exit_not_entanglable;
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

CommandResult cmd_apply(const std::string& state_file, const std::string& transform_file, const std::string& out) {
  CommandResult res;
  res.report.command = "apply";
  Loaded in = load(res.report, state_file, nullptr);
  if (!in.ok) {
    res.exit_code = exit_invalid_input;
    return res;
  }
  try {
    const PassiveTransform k = io::read_transform(transform_file);
    if (k.modes() != in.state->modes()) {
      throw StructuralError(fmt::format("transform acts on {} modes, state has {}", k.modes(), in.state->modes()));
    }
    const CovarianceMatrix moved = apply_passive(*in.state, k);
    const ValidityVerdict v = validate(moved);
    res.report.validity = summarize(v);
    if (!v.ok()) throw ValidityError("transformed state failed validation", v.violation());
    res.report.squeezing = summarize(squeezing_report(moved));
    const std::string text = io::dump(io::state_to_json(moved)) + "\n";
    if (out.empty()) {
      res.payload = text;
    } else {
      io::write_file(out, text);
    }
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

CommandResult cmd_report(const std::string& file, const std::string& partition) {
  CommandResult res;
  res.report.command = "report";
  Loaded in = load(res.report, file, &partition);
  if (!in.ok) {
    res.exit_code = exit_invalid_input;
    return res;
  }
  try {
    res.report.achieved = summarize(entanglement_report(*in.state, *in.partition));
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

CommandResult cmd_oracle(const std::string& file, const std::string& partition, std::uint64_t samples,
                         std::uint64_t seed, std::uint64_t refine_iters, unsigned threads) {
  CommandResult res;
  res.report.command = "oracle";
  Loaded in = load(res.report, file, &partition);
  if (!in.ok) {
    res.exit_code = exit_invalid_input;
    return res;
  }
  try {
    const CovarianceMatrix& gamma = *in.state;
    const EntanglingPowerVerdict v = verdict(gamma, *in.partition);
    res.report.verdict = summarize(v);

    oracle::SearchConfig cfg;
    cfg.samples = samples;
    cfg.refine_iters = refine_iters;
    cfg.seed = seed;
    cfg.partition = *in.partition;
    cfg.threads = threads;
    const oracle::VerdictCheck check = oracle::verify_criterion(gamma, cfg);

    OracleSummary o;
    o.samples = samples;
    o.refine_iters = refine_iters;
    o.seed = seed;
    o.best_negativity_bits = check.oracle_best_bits;
    o.closed_form_bits = v.attainable_two_mode_bits;
    o.criterion_passed = check.passed;
    o.message = check.message;
    bool agree = check.passed;
    if (gamma.modes() == 2) {
      o.discrepancy = o.best_negativity_bits - o.closed_form_bits;
      agree = agree && std::abs(o.discrepancy) <= oracle_agreement_tolerance;
    } else {
      cfg.objective = oracle::Objective::best_two_mode_subsystem;
      const oracle::SearchResult sub = oracle::maximize_negativity(gamma, cfg);
      o.subsystem_checked = true;
      o.subsystem_best_bits = sub.best_negativity_bits;
      o.discrepancy = sub.best_negativity_bits - o.closed_form_bits;
      agree = agree && std::abs(o.discrepancy) <= oracle_agreement_tolerance;
    }
    o.agreement = agree;
    res.report.oracle = o;
    res.exit_code = agree ? exit_ok : exit_oracle_disagreement;
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

CommandResult cmd_make(const std::string& kind, const MakeParams& p, const std::string& out) {
  CommandResult res;
  res.report.command = "make";
  try {
    auto single = [&](const std::vector<double>& v, const char* name, double fallback) {
      if (v.empty()) return fallback;
      if (v.size() != 1) throw StructuralError(fmt::format("make {}: --{} takes a single value", kind, name));
      return v.front();
    };
    auto required = [&](const std::optional<double>& v, const char* name) {
      if (!v) throw StructuralError(fmt::format("make {}: --{} is required", kind, name));
      return *v;
    };
    states::StateSpec spec;
    if (kind == "vacuum") {
      spec = states::Vacuum{p.n.value_or(1)};
    } else if (kind == "thermal") {
      if (p.b.empty()) throw StructuralError("make thermal: --b is required");
      spec = states::Thermal{single(p.b, "b", 1.0), p.n.value_or(1)};
    } else if (kind == "squeezed") {
      if (p.r.empty()) throw StructuralError("make squeezed: --r is required");
      const std::size_t m = p.r.size();
      if (!p.phase.empty() && p.phase.size() != m && p.phase.size() != 1)
        throw StructuralError("make squeezed: --phase needs one value or one per mode");
      if (!p.b.empty() && p.b.size() != m && p.b.size() != 1)
        throw StructuralError("make squeezed: --b needs one value or one per mode");
      states::Product prod;
      for (std::size_t k = 0; k < m; ++k) {
        states::Squeezed s;
        s.r = p.r[k];
        if (!p.phase.empty()) s.phase = p.phase.size() == 1 ? p.phase[0] : p.phase[k];
        if (!p.b.empty()) s.b = p.b.size() == 1 ? p.b[0] : p.b[k];
        prod.modes.push_back(s);
      }
      const int total = p.n.value_or(static_cast<int>(m));
      if (total < static_cast<int>(m)) throw StructuralError("make squeezed: --n smaller than the number of --r values");
      while (static_cast<int>(prod.modes.size()) < total) prod.modes.push_back({});
      spec = prod;
    } else if (kind == "simon") {
      spec = states::Simon{required(p.a, "a"), single(p.b, "b", required(p.a, "a")), required(p.c, "c"),
                           required(p.d, "d")};
    } else if (kind == "tms") {
      spec = states::TwoModeSqueezed{single(p.r, "r", 0.0)};
    } else {
      throw StructuralError("unknown state kind '" + kind + "' (vacuum, thermal, squeezed, simon, tms)");
    }
    const CovarianceMatrix gamma = states::make_state(spec);
    res.report.modes = gamma.modes();
    res.report.validity = summarize(validate(gamma));
    res.report.squeezing = summarize(squeezing_report(gamma));
    const std::string text = io::dump(io::state_to_json(gamma)) + "\n";
    if (out.empty()) {
      res.payload = text;
    } else {
      io::write_file(out, text);
      res.report.input_path = out;
      res.report.input_digest = io::sha256_hex(text);
    }
  } catch (const std::exception& e) {
    res.report.error = e.what();
    res.exit_code = exit_invalid_input;
  }
  return res;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entangling power of passive optics on Gaussian states", "passent"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string partition, out_path;
  std::string file, second_file, kind;
  std::uint64_t samples = 5000, seed = 0, refine = 2000;
  unsigned threads = 1;
  MakeParams mp;
  std::vector<double> a_v, c_v, d_v;
  int n_v = 0;

  auto common = [&](CLI::App* sub, bool with_partition) {
    sub->add_flag("--json", as_json, "Machine-readable output");
    if (with_partition) sub->add_option("--partition", partition, "A-modes:B-modes, e.g. 1,3:2,4");
  };

  auto* check = app.add_subcommand("check", "Validity, squeezing and the passive entanglability verdict");
  check->add_option("file", file, "State file")->required();
  common(check, true);

  auto* entangle = app.add_subcommand("entangle", "Construct the optimal passive entangling transform");
  entangle->add_option("file", file, "State file")->required();
  entangle->add_option("--out", out_path, "Where to write the transform");
  common(entangle, true);

  auto* apply = app.add_subcommand("apply", "Apply a stored passive transform to a state");
  apply->add_option("state", file, "State file")->required();
  apply->add_option("transform", second_file, "Transform file")->required();
  apply->add_option("--out", out_path, "Output state file (default: standard output)");
  common(apply, false);

  auto* report = app.add_subcommand("report", "Logarithmic negativity of the state as it is");
  report->add_option("file", file, "State file")->required();
  common(report, true);

  auto* orc = app.add_subcommand("oracle", "Brute-force search compared with the closed form");
  orc->add_option("file", file, "State file")->required();
  orc->add_option("--samples", samples, "Random passive transforms to sample");
  orc->add_option("--seed", seed, "RNG seed");
  orc->add_option("--refine", refine, "Local refinement iterations");
  orc->add_option("--threads", threads, "Sampling threads");
  common(orc, true);

  auto* make = app.add_subcommand("make", "Write a standard state (vacuum, thermal, squeezed, simon, tms)");
  make->add_option("kind", kind, "State kind")->required();
  auto* n_opt = make->add_option("--n", n_v, "Number of modes");
  make->add_option("--r", mp.r, "Squeezing parameter(s)")->delimiter(',');
  make->add_option("--phase", mp.phase, "Squeezing angle(s)")->delimiter(',');
  make->add_option("--b", mp.b, "Thermal factor(s), >= 1")->delimiter(',');
  auto* a_opt = make->add_option("--a", a_v, "Simon form a");
  auto* c_opt = make->add_option("--c", c_v, "Simon form c");
  auto* d_opt = make->add_option("--d", d_v, "Simon form d");
  make->add_option("--out", out_path, "Output state file (default: standard output)");
  make->add_flag("--json", as_json, "Machine-readable output");

  std::vector<const char*> argv{"passent"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  CommandResult res;
  if (*check) {
    res = cmd_check(file, partition);
  } else if (*entangle) {
    res = cmd_entangle(file, partition, out_path);
  } else if (*apply) {
    res = cmd_apply(file, second_file, out_path);
  } else if (*report) {
    res = cmd_report(file, partition);
  } else if (*orc) {
    res = cmd_oracle(file, partition, samples, seed, refine, threads);
  } else {
    if (*n_opt) mp.n = n_v;
    if (*a_opt) mp.a = a_v.back();
    if (*c_opt) mp.c = c_v.back();
    if (*d_opt) mp.d = d_v.back();
    res = cmd_make(kind, mp, out_path);
  }

  if (!res.report.error.empty()) err << "error: " << res.report.error << '\n';
  if (res.payload && res.report.error.empty()) {
    out << *res.payload;
  } else if (as_json) {
    out << io::dump(to_json(res.report)) << '\n';
  } else {
    out << render_human(res.report);
  }
  return res.exit_code;
}

}  // namespace passent::cli
