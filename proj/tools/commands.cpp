// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qpolar/bounds.hpp"
#include "qpolar/errors.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/io.hpp"
#include "qpolar/metrics.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/sweep.hpp"
#include "qpolar/verify.hpp"

namespace qpolar::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string in;
  std::string out;
  std::string target;
  std::uint64_t seed = 0;
  int dim = 0;
  int trials = 100;
  double kappa = 0.1;
  bool strict_lk = false;
  std::string suite = "all";
};

struct Output {
  std::string content;
  Json config = Json::object();
  Json notes = Json::array();
  int exit_code = kExitOk;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string csv_bool(bool b) { return b ? "true" : "false"; }

Json error_json(const std::string& code, const std::string& message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  return j;
}

Json options_json(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  j["in"] = o.in;
  j["out"] = o.out;
  j["target"] = o.target;
  j["seed"] = o.seed;
  j["dim"] = o.dim;
  j["trials"] = o.trials;
  j["kappa"] = o.kappa;
  j["strict_lk"] = o.strict_lk;
  j["suite"] = o.suite;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << content;
  if (!f) throw Error(ErrorCode::ParseError, "write to '" + path + "' failed");
}

KrausChannel load_channel(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::ParseError, "--in is required");
  KrausChannel ch = channel_from_json(read_json_file(o.in));
  const ValidationReport v = validate_cptp(ch);
  if (!v.ok) {
    std::ostringstream msg;
    msg << "channel is not CPTP (cp_slack " << format_double(v.cp_slack) << ", tp_slack "
        << format_double(v.tp_slack) << ")";
    throw Error(ErrorCode::NotCP, msg.str());
  }
  return ch;
}

ComplexMatrix load_target(const Options& o, int d) {
  if (o.target.empty()) return identity(d);
  const Json j = read_json_file(o.target);
  if (!j.is_object() || !j.contains("unitary")) {
    throw Error(ErrorCode::ParseError, "target file needs a 'unitary' field");
  }
  const int td = j.value("dim", d);
  if (td != d) throw Error(ErrorCode::DimensionMismatch, "target dimension differs from channel");
  const ComplexMatrix u = matrix_from_json(j["unitary"], d, d);
  require_unitary_target(u, d);
  return u;
}

Json equability_json(const EquabilityReport& e) {
  Json j;
  j["kappa"] = e.kappa;
  j["mean_sigma_deficit"] = e.mean_sigma_deficit;
  j["mean_lambda_deficit"] = e.mean_lambda_deficit;
  j["Gamma_decoh"] = e.Gamma_decoh;
  j["Gamma_coh"] = e.Gamma_coh;
  j["gamma_decoh"] = e.gamma_decoh;
  j["gamma_coh"] = e.gamma_coh;
  j["threshold_decoh"] = e.threshold_decoh;
  j["threshold_coh"] = e.threshold_coh;
  j["sse_ok"] = e.sse_ok;
  j["wse_ok"] = e.wse_ok;
  j["extremal_dephaser"] = e.extremal_dephaser;
  j["extremal_unitary"] = e.extremal_unitary;
  return j;
}

Json metrics_json(const MetricsReport& m) {
  Json j;
  j["phi"] = m.phi;
  j["avg_fidelity"] = m.avg_fidelity;
  j["infidelity"] = m.infidelity;
  j["upsilon"] = m.upsilon;
  j["unitarity"] = m.unitarity;
  j["non_catastrophic"] = m.non_catastrophic;
  j["lk_phi"] = m.lk_phi;
  j["lk_upsilon"] = m.lk_upsilon;
  return j;
}

Json classification_json(const Classification& c) {
  Json j;
  j["type"] = channel_type_name(c.type);
  j["equability"] = c.equability;
  j["extremal_dephaser"] = c.extremal_dephaser;
  j["extremal_unitary"] = c.extremal_unitary;
  if (std::isfinite(c.coherence_level)) {
    j["coherence_level"] = c.coherence_level;
  } else {
    j["coherence_level"] = nullptr;
  }
  j["label"] = c.label;
  return j;
}

Output cmd_decompose(const Options& o) {
  const KrausChannel ch = load_channel(o);
  const ComplexMatrix target = load_target(o, ch.dim);
  const CanonicalDecomposition can = canonical(ch);
  const LKMap lkm = lk(can, o.strict_lk);
  const ChannelPolar pol = channel_polar(ch, o.strict_lk);
  Json j;
  j["dim"] = ch.dim;
  Json cj = channel_to_json(can.to_channel());
  cj["weights"] = can.weights;
  cj["degenerate_leading"] = can.degenerate_leading;
  j["canonical"] = std::move(cj);
  j["lk"] = {{"a1", matrix_to_json(lkm.a1)},
             {"weight", lkm.weight},
             {"catastrophic_warning", lkm.catastrophic_warning}};
  j["polar"] = {{"v", matrix_to_json(pol.v)},
                {"decoherent", channel_to_json(pol.decoherent_left)},
                {"unique", pol.unique}};
  j["decoherent"] = is_decoherent(ch);
  j["metrics"] = metrics_json(metrics_report(ch, target));
  try {
    j["equability"] = equability_json(equability_of_lk(can.kraus.front(), o.kappa));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PhaseUndefined) throw;
    j["equability"] = nullptr;
  }
  j["classification"] = classification_json(classify(ch, target, o.kappa));
  Output out;
  out.content = j.dump(2) + "\n";
  return out;
}

Output cmd_metrics(const Options& o) {
  const KrausChannel ch = load_channel(o);
  const ComplexMatrix target = load_target(o, ch.dim);
  if (o.strict_lk) (void)lk(ch, true);
  Json j;
  j["dim"] = ch.dim;
  j["metrics"] = metrics_json(metrics_report(ch, target));
  const auto [uni, fid] = lk_gap_bounds(ch, target);
  j["lk_gap"] = Json::array({report_to_json(uni), report_to_json(fid)});
  if (non_catastrophic(ch, target)) {
    const InfidelitySplit s = infidelity_split(ch, target);
    j["infidelity_split"] = {{"r", s.r},
                             {"r_coh", s.r_coh},
                             {"r_decoh", s.r_decoh},
                             {"r_decoh_from_u", s.r_decoh_from_u},
                             {"coherence_level", s.coherence_level},
                             {"coherence_level_approx", s.coherence_level_approx},
                             {"residual", s.residual}};
    j["decoherence_limited"] = is_decoherence_limited(ch, target);
  } else {
    j["infidelity_split"] = nullptr;
    j["decoherence_limited"] = nullptr;
  }
  j["classification"] = classification_json(classify(ch, target, o.kappa));
  Output out;
  out.content = j.dump(2) + "\n";
  return out;
}

Output cmd_compose(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::ParseError, "--in is required");
  const Json in = read_json_file(o.in);
  const Json* list = &in;
  if (in.is_object() && in.contains("channels")) list = &in["channels"];
  if (!list->is_array() || list->empty()) {
    throw Error(ErrorCode::ParseError, "compose needs a non-empty 'channels' array");
  }
  std::vector<KrausChannel> chs;
  std::vector<LKMap> lks;
  for (const auto& cj : *list) {
    KrausChannel ch = channel_from_json(cj);
    const ValidationReport v = validate_cptp(ch);
    if (!v.ok) throw Error(ErrorCode::NotCP, "channel " + std::to_string(chs.size()) + " is not CPTP");
    lks.push_back(lk(ch, o.strict_lk));
    chs.push_back(std::move(ch));
  }
  const KrausChannel composed = compose(chs);
  const LKMap lkc = compose_lk(lks);
  Json j = channel_to_json(composed);
  j["lk_composed"] = {{"a1", matrix_to_json(lkc.a1)},
                      {"weight", lkc.weight},
                      {"catastrophic_warning", lkc.catastrophic_warning}};
  Output out;
  out.content = j.dump(2) + "\n";
  return out;
}

Output cmd_verify(const Options& o, Json& summary) {
  VerifyOptions vo;
  vo.suite = o.suite;
  vo.trials = o.trials;
  vo.seed = o.seed;
  if (o.dim > 0) vo.dims = {o.dim};
  const VerifyResult res = run_verify(vo);
  std::ostringstream csv;
  csv << "case_id,theorem,observed,lower,upper,slack,holds\n";
  for (const auto& c : res.cases) {
    const BoundReport& r = c.report;
    csv << c.case_id << ',' << r.theorem << ',';
    if (r.applicable) {
      csv << format_double(r.observed) << ',' << format_double(r.lower) << ','
          << format_double(r.upper) << ',' << format_double(r.slack()) << ','
          << csv_bool(r.holds) << '\n';
    } else {
      csv << "nan,nan,nan,nan,skipped\n";
    }
  }
  summary = {{"suite", o.suite},
             {"cases", res.cases.size()},
             {"violations", res.violations},
             {"inapplicable", res.inapplicable},
             {"ok", res.ok()}};
  Output out;
  out.content = csv.str();
  out.exit_code = res.ok() ? kExitOk : kExitViolation;
  return out;
}

void sweep_rows_csv(std::ostringstream& csv, const std::string& curve,
                    const std::vector<DepthRow>& rows) {
  for (const auto& r : rows) {
    csv << curve << ',' << r.depth << ',' << format_double(r.phi) << ','
        << format_double(r.prod_upsilon) << ',' << format_double(r.decoherent_envelope) << ','
        << format_double(r.band_lower) << ',' << format_double(r.band_upper) << ','
        << format_double(r.envelope_lower) << ',' << csv_bool(r.non_catastrophic) << '\n';
  }
}

int config_depth(const Json& cfg, int fallback) {
  const Json v = cfg.value("max_depth", Json(fallback));
  if (!v.is_number_integer() || v.get<int>() < 1) {
    throw Error(ErrorCode::ParseError, "'max_depth' must be an integer >= 1");
  }
  return v.get<int>();
}

Output cmd_sweep(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::ParseError, "--in is required");
  const Json cfg = read_json_file(o.in);
  if (!cfg.is_object() || !cfg.contains("mode") || !cfg["mode"].is_string()) {
    throw Error(ErrorCode::ParseError, "sweep config needs a string 'mode'");
  }
  const std::string mode = cfg["mode"].get<std::string>();
  Output out;
  out.config = cfg;
  std::ostringstream csv;
  bool catastrophic = false;
  const char* header =
      "curve,depth,phi,prod_upsilon,decoherent_envelope,band_lower,band_upper,"
      "coherent_envelope_lower,non_catastrophic\n";
  if (mode == "circuit") {
    if (!cfg.contains("element")) throw Error(ErrorCode::ParseError, "circuit mode needs 'element'");
    const KrausChannel element = channel_from_json(cfg["element"]);
    if (!validate_cptp(element).ok) throw Error(ErrorCode::NotCP, "element is not CPTP");
    const auto rows = repeated_element_sweep(element, config_depth(cfg, 1));
    csv << header;
    sweep_rows_csv(csv, "element", rows);
    for (const auto& r : rows) catastrophic = catastrophic || !r.non_catastrophic;
  } else if (mode == "coherence_mix") {
    const double r = cfg.value("r", 1e-4);
    const std::vector<double> levels =
        cfg.value("levels", std::vector<double>{0.1, 0.01, 0.0001});
    const int depth = config_depth(cfg, 1000);
    csv << header;
    Json construction = Json::array();
    for (double level : levels) {
      const CoherenceMix mix = coherence_mix(r, level);
      construction.push_back({{"level", level}, {"theta", mix.theta}, {"q", mix.q}});
      const auto rows = repeated_element_sweep(mix.channel, depth);
      sweep_rows_csv(csv, "level=" + format_double(level), rows);
      for (const auto& row : rows) catastrophic = catastrophic || !row.non_catastrophic;
    }
    out.config["construction"] = std::move(construction);
    out.notes.push_back(
        "r is the average infidelity 1 - F of each element V o D; theta and q solve "
        "r(V, I) = level * r for a rotation V = R(theta) after dephasing D with rate q");
    out.notes.push_back("decoherent_envelope is Phi(D, I)^m");
  } else if (mode == "extremal_dephaser") {
    const int d = cfg.value("dim", 64);
    const int outliers = cfg.value("outliers", 1);
    const double odev = cfg.value("outlier_deviation", 4e-3);
    const double mdev = cfg.value("mean_deviation", 5e-5);
    const std::uint64_t seed = cfg.value("seed", o.seed);
    const double kappa = cfg.value("kappa", o.kappa);
    const KrausChannel ch = random_extremal_dephaser(d, outliers, odev, mdev, seed);
    const EquabilityReport e = equability(ch, kappa);
    const double mean = e.sigma.mean();
    const double sd = std::sqrt((e.sigma.array() - mean).square().sum() / e.sigma.size());
    csv << "index,sigma,mean_sigma,sd_sigma,gamma_decoh,Gamma_decoh,threshold_decoh,wse_ok,"
           "sse_ok\n";
    for (int i = 0; i < e.sigma.size(); ++i) {
      csv << i << ',' << format_double(e.sigma(i)) << ",,,,,,,\n";
    }
    csv << "summary,," << format_double(mean) << ',' << format_double(sd) << ','
        << format_double(e.gamma_decoh) << ',' << format_double(e.Gamma_decoh) << ','
        << format_double(e.threshold_decoh) << ',' << csv_bool(e.wse_ok) << ','
        << csv_bool(e.sse_ok) << '\n';
    out.notes.push_back("sigma are the singular values of the leading Kraus operator, descending");
  } else {
    throw Error(ErrorCode::ParseError, "unknown sweep mode '" + mode + "'");
  }
  out.content = csv.str();
  if (catastrophic) {
    out.exit_code = kExitDomain;
    out.notes.push_back("a curve left the non-catastrophic regime; rows from that depth on are flagged");
  }
  return out;
}

void emit(const Options& o, const std::string& command, const Output& res, const Timer& timer,
          std::ostream& out) {
  if (o.out.empty()) {
    out << res.content;
    return;
  }
  write_file(o.out, res.content);
  Json m;
  m["tool"] = "qpolar";
  m["version"] = kVersion;
  Json cfg = options_json(command, o);
  if (!res.config.empty()) cfg["input_config"] = res.config;
  m["config"] = std::move(cfg);
  m["seed"] = o.seed;
  m["wall_clock_seconds"] = timer.seconds();
  m["notes"] = res.notes;
  write_file(o.out + ".manifest.json", m.dump(2) + "\n");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--in", o.in, "Input JSON file");
  sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  sub->add_option("--seed", o.seed, "Base seed");
  sub->add_option("--dim", o.dim, "Dimension");
  sub->add_option("--trials", o.trials, "Trials per configuration");
  sub->add_option("--kappa", o.kappa, "Equability margin");
  sub->add_flag("--strict-lk", o.strict_lk, "Treat a degenerate leading Kraus operator as an error");
  sub->add_option("--target", o.target, "Target unitary JSON file (identity when omitted)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qpolar: channel decomposition, figures of merit and bound verification"};
  app.require_subcommand(1);
  CLI::App* decompose = app.add_subcommand("decompose", "Canonical Kraus, LK, polar and equability report");
  CLI::App* metrics = app.add_subcommand("metrics", "Figures of merit and infidelity split");
  CLI::App* compose_cmd = app.add_subcommand("compose", "Compose channels and their LK maps");
  CLI::App* verify = app.add_subcommand("verify", "Run the bound verification suites");
  CLI::App* sweep = app.add_subcommand("sweep", "Depth sweeps and extremal dephaser dumps");
  for (CLI::App* sub : {decompose, metrics, compose_cmd, verify, sweep}) add_common(sub, o);
  verify->add_option("--suite", o.suite, "lemmas | theorems | appendix | all");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("Usage", e.what()).dump() << "\n";
    return kExitUsage;
  }
  if (o.trials < 1) {
    err << error_json("Usage", "--trials must be >= 1").dump() << "\n";
    return kExitUsage;
  }
  if (!std::isfinite(o.kappa) || o.kappa <= 0.0) {
    err << error_json("Usage", "--kappa must be positive").dump() << "\n";
    return kExitUsage;
  }
  const Timer timer;
  try {
    if (decompose->parsed()) {
      emit(o, "decompose", cmd_decompose(o), timer, out);
    } else if (metrics->parsed()) {
      emit(o, "metrics", cmd_metrics(o), timer, out);
    } else if (compose_cmd->parsed()) {
      emit(o, "compose", cmd_compose(o), timer, out);
    } else if (verify->parsed()) {
      Json summary;
      Output res = cmd_verify(o, summary);
      if (o.out.empty()) {
        out << summary.dump(2) << "\n";
      } else {
        emit(o, "verify", res, timer, out);
        out << summary.dump(2) << "\n";
      }
      return res.exit_code;
    } else if (sweep->parsed()) {
      Output res = cmd_sweep(o);
      emit(o, "sweep", res, timer, out);
      return res.exit_code;
    }
  } catch (const Error& e) {
    err << error_json(error_name(e.code()), e.what()).dump() << "\n";
    return e.code() == ErrorCode::ParseError ? kExitParse : kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << error_json("ParseError", e.what()).dump() << "\n";
    return kExitParse;
  }
  return kExitOk;
}

}  // namespace qpolar::cli
