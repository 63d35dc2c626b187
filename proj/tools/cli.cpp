#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ptsim/fixtures.hpp"

namespace ptsim::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string read_file(const std::string& path, Digest& digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  digest.update(path);
  digest.update(ss.str());
  return ss.str();
}

ComplexMatrix read_matrix(const std::string& path, Digest& digest) {
  return matrix_from_json(parse_json(read_file(path, digest)));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::optional<PTPair> read_pair(const std::string& p_path, const std::string& t_path, Digest& digest,
                                const Tolerances& tol) {
  if (p_path.empty() && t_path.empty()) return std::nullopt;
  if (p_path.empty() || t_path.empty()) fail(ErrorCode::InvalidArgument, "--P and --T must be given together");
  return validate_pt_pair(read_matrix(p_path, digest), read_matrix(t_path, digest), tol);
}

PTSystem make_system(const ComplexMatrix& h, const std::optional<PTPair>& pair, const Tolerances& tol) {
  require_square(h, "H");
  return PTSystem(h, pair ? *pair : pt_pair_for_unbroken(h, tol), tol);
}

// Parameters (α, s, E0) of a matrix of the two-level family, if it is one.
std::optional<std::array<double, 3>> two_level_parameters(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != 2 || h.cols() != 2) return std::nullopt;
  const double s = h(0, 1).real();
  if (s == 0.0) return std::nullopt;
  const double sn = h(0, 0).imag() / s;
  if (!(std::abs(sn) < 1.0)) return std::nullopt;
  const double alpha = std::asin(sn);
  const double e0 = h(0, 0).real();
  if ((h - gunther::hamiltonian(alpha, s, e0)).norm() > scaled(tol.eq_tol, frobenius(h))) return std::nullopt;
  return std::array<double, 3>{alpha, s, e0};
}

void emit_report(const RunReport& rep, std::ostream& out) { out << dump(rep.to_json()); }

// --- subcommands -----------------------------------------------------------

struct MatrixArgs {
  std::string matrix;
  std::string p;
  std::string t;
};

RunReport cmd_classify(const MatrixArgs& a, const Tolerances& tol) {
  RunReport rep{"classify", {}, {}, {}};
  Digest dg;
  const ComplexMatrix h = read_matrix(a.matrix, dg);
  require_square(h, "H");
  const auto pair = read_pair(a.p, a.t, dg, tol);
  rep.outputs = to_json(classify(h, pair, tol));
  rep.inputs_digest = dg.hex();
  return rep;
}

RunReport cmd_metric(const MatrixArgs& a, const Tolerances& tol) {
  RunReport rep{"metric", {}, {}, {}};
  Digest dg;
  const ComplexMatrix h = read_matrix(a.matrix, dg);
  const PTSystem sys = make_system(h, read_pair(a.p, a.t, dg, tol), tol);
  const auto m = positive_metric(sys, tol);
  rep.outputs = to_json(m);
  try {
    const auto sig = metric_signature(sys, m.eta, tol);
    rep.outputs["signature"] = sig.epsilons;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSpectrumUnsupported) throw;
    rep.outputs["signature"] = nullptr;
  }
  if (sys.order() == 2) {
    const auto ss = scalar_sum_metric_2d(sys, tol);
    rep.outputs["scalar_sum"] = {{"eta", matrix_to_json(ss.metric.eta)}, {"t", ss.t}};
  }
  const double scale = std::max(1.0, frobenius(h)) * std::max(1.0, frobenius(m.eta));
  rep.checks.push_back({"intertwining", m.intertwining_residual, tol.eq_tol * scale});
  rep.checks.push_back({"hermiticity", m.hermiticity_residual, tol.eq_tol * std::max(1.0, frobenius(m.eta))});
  rep.inputs_digest = dg.hex();
  return rep;
}

struct DilateArgs {
  MatrixArgs m;
  double margin = 1.05;
  std::string h1 = "zero";
  std::string eta;
  bool no_autoscale = false;
  std::string out;
};

RunReport cmd_dilate(const DilateArgs& a, const Tolerances& tol) {
  RunReport rep{"dilate", {}, {}, {}};
  Digest dg;
  const ComplexMatrix h = read_matrix(a.m.matrix, dg);
  require_square(h, "H");
  auto pair = read_pair(a.m.p, a.m.t, dg, tol);

  DilationOptions opts;
  opts.margin = a.margin;
  opts.auto_scale = !a.no_autoscale;
  if (a.h1 == "zero") {
    opts.h1 = H1Choice::Zero;
  } else if (a.h1 == "paper") {
    opts.h1 = H1Choice::PaperRecipe;
  } else {
    opts.h1 = H1Choice::Supplied;
    opts.h1_matrix = read_matrix(a.h1, dg);
  }
  if (a.eta == "paper") {
    const auto params = two_level_parameters(h, tol);
    if (!params) fail(ErrorCode::InvalidArgument, "--eta paper needs a matrix of the two-level family");
    opts.eta = gunther::eta((*params)[0]);
    if (!pair) pair = gunther::pt_pair();
  } else if (!a.eta.empty()) {
    opts.eta = read_matrix(a.eta, dg);
  }
  dg.update("margin=" + std::to_string(a.margin) + ";h1=" + a.h1 + ";autoscale=" + (a.no_autoscale ? "0" : "1"));

  const Dilation d = build_dilation(make_system(h, pair, tol), opts, tol);
  const Json dj = to_json(d);
  if (!a.out.empty()) {
    write_text(a.out, dump(dj));
    rep.outputs = {{"out", a.out}, {"residuals", dj["residuals"]}};
  } else {
    rep.outputs = dj;
  }
  const double t = tol.eq_tol * std::max(1.0, frobenius(d.Hhat));
  rep.checks.push_back({"hermiticity", d.residuals.hermiticity, t});
  rep.checks.push_back({"eq_h1h2", d.residuals.eq_h1h2, t});
  rep.checks.push_back({"eq_h2h4", d.residuals.eq_h2h4, t});
  rep.checks.push_back({"tau_sq", d.residuals.tau_sq, t});
  rep.inputs_digest = dg.hex();
  return rep;
}

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

RunReport cmd_simulate(const SimulateArgs& a, const Tolerances& tol) {
  RunReport rep{"simulate", {}, {}, {}};
  Digest dg;
  const Json doc = parse_json(read_file(a.config, dg));
  SimulationConfig cfg = simulation_config_from_json(doc, tol);
  if (a.samples) cfg.samples = *a.samples;
  if (a.seed) cfg.seed = *a.seed;
  dg.update("samples=" + std::to_string(cfg.samples) + ";seed=" + std::to_string(cfg.seed));

  const SimulationTrace tr = run_simulation(cfg, tol);
  rep.outputs = {{"scheme", std::string(scheme_name(cfg.scheme))}, {"t", cfg.t}, {"trace", to_json(tr)}};
  rep.checks.push_back({"final_state_closed_form", tr.final_formula_check, tol.eq_tol});
  rep.checks.push_back({"p_total_in_unit_interval", std::max({0.0, tr.p_total - 1.0, -tr.p_total}), 0.0});
  if (cfg.scheme == Scheme::MetricSandwich) {
    rep.checks.push_back({"core_operator_preserves_norm", std::abs(tr.direct_norm - 1.0), tol.eq_tol});
  }
  rep.inputs_digest = dg.hex();
  return rep;
}

struct NosignalArgs {
  std::optional<double> alpha;
  std::optional<double> alpha_deg;
  double s = 1.0;
  double e0 = 0.0;
  double t = 1.0;
  std::string scheme = "identity";
  std::string mode = "direct";
  std::string rho;
  std::string rho_prime;
  std::string sweep;
  std::string out;
  unsigned jobs = 1;
};

std::vector<double> number_list(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) fail(ErrorCode::ParseError, std::string("sweep needs '") + key + "'");
  std::vector<double> v;
  for (const auto& e : doc[key]) {
    if (!e.is_number()) fail(ErrorCode::ParseError, std::string("'") + key + "' must hold numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

int cmd_nosignal(const NosignalArgs& a, const Tolerances& tol, std::ostream& out) {
  RunReport rep{"nosignal", {}, {}, {}};
  Digest dg;
  ExperimentConfig cfg;
  cfg.s = a.s;
  cfg.e0 = a.e0;
  cfg.t = a.t;
  cfg.scheme = parse_scheme(a.scheme);
  cfg.mode = parse_mode(a.mode);
  if (!a.rho.empty()) cfg.rho = read_matrix(a.rho, dg);
  if (!a.rho_prime.empty()) cfg.rho_prime = read_matrix(a.rho_prime, dg);
  if (a.alpha && a.alpha_deg) fail(ErrorCode::InvalidArgument, "give --alpha or --alpha-deg, not both");
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.alpha_deg) cfg.alpha = *a.alpha_deg * kPi / 180.0;
  dg.update("alpha=" + fmt(cfg.alpha) + ";s=" + fmt(cfg.s) + ";E0=" + fmt(cfg.e0) + ";t=" + fmt(cfg.t) +
            ";scheme=" + a.scheme + ";mode=" + a.mode);

  if (!a.sweep.empty()) {
    const Json doc = parse_json(read_file(a.sweep, dg));
    const auto rows = sweep_delta_s(number_list(doc, "alphas"), number_list(doc, "ts"), cfg, a.jobs, tol);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    if (a.out.empty()) {
      out << csv.str();
      return kExitOk;
    }
    write_text(a.out, csv.str());
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.delta_S);
    rep.outputs = {{"out", a.out}, {"rows", rows.size()}, {"max_delta_S", worst}};
    if (cfg.scheme == Scheme::MetricSandwich) rep.checks.push_back({"delta_S_restored", worst, tol.eq_tol});
  } else {
    if (!a.alpha && !a.alpha_deg) fail(ErrorCode::InvalidArgument, "--alpha or --alpha-deg is required");
    const JointStats st = run_experiment(cfg, tol);
    rep.outputs = {{"alpha", cfg.alpha},
                   {"s", cfg.s},
                   {"E0", cfg.e0},
                   {"t", cfg.t},
                   {"scheme", std::string(scheme_name(cfg.scheme))},
                   {"mode", std::string(mode_name(cfg.mode))},
                   {"stats", to_json(st)}};
    for (int k = 0; k < 2; ++k) {
      double total = 0.0;
      for (const auto& row : st.table[k]) total += row[0] + row[1];
      rep.checks.push_back({"distribution_sums_to_one_A" + std::to_string(k + 1), std::abs(total - 1.0), tol.eq_tol});
    }
    if (cfg.scheme == Scheme::MetricSandwich) rep.checks.push_back({"delta_S_restored", st.delta_S, tol.eq_tol});
    if (cfg.mode == ChannelMode::Simulated) {
      const auto whole = whole_system_marginals(cfg, tol);
      rep.outputs["whole_system"] = to_json(whole);
      rep.checks.push_back({"whole_system_marginals", whole.marginal_gap, tol.eq_tol});
      rep.checks.push_back({"bob_reduced_state", whole.reduced_state_gap, tol.eq_tol});
    }
  }
  rep.inputs_digest = dg.hex();
  emit_report(rep, out);
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

RunReport cmd_paper(const Tolerances& tol) {
  RunReport rep{"paper", {}, Json::object(), {}};
  Digest dg;
  dg.update("paper");
  constexpr double kMatrixTol = 1e-10;
  constexpr double kEvolutionTol = 1e-8;
  constexpr double kT = 1.0;

  Json examples = Json::array();
  for (double alpha : {kPi / 6, kPi / 4, 1.0}) {
    for (double s : {1.0, 2.0}) {
      for (double e0 : {0.0, 1.0}) {
        const auto r = reproduce_gunther_example(alpha, s, e0, kT, tol);
        examples.push_back(to_json(r));
        const std::string tag = "alpha=" + fmt(alpha) + " s=" + fmt(s) + " E0=" + fmt(e0) + ": ";
        rep.checks.push_back({tag + "tau", r.tau, kMatrixTol});
        rep.checks.push_back({tag + "H1", r.h1, kMatrixTol});
        rep.checks.push_back({tag + "H2", r.h2, kMatrixTol});
        rep.checks.push_back({tag + "H4", r.h4, kMatrixTol});
        rep.checks.push_back({tag + "Hhat tensor form", r.hhat_tensor, kMatrixTol});
        rep.checks.push_back({tag + "Hhat tensor form without s", r.hhat_tensor_unscaled, kMatrixTol, false, true});
        rep.checks.push_back({tag + "P_Y", r.projector_y, kMatrixTol});
        rep.checks.push_back({tag + "preparation amplitude cos(alpha)/2", r.amplitude_residual, kMatrixTol});
        rep.checks.push_back({tag + "prepared state along psi_hat", r.amplitude_orthogonal, kMatrixTol});
        rep.checks.push_back({tag + "reference U_tau amplitude", r.reference_u_tau, kMatrixTol});
        rep.checks.push_back({tag + "preparation probability 1/2", std::abs(r.p_prepare - 0.5), kMatrixTol});
        rep.checks.push_back({tag + "evolution top block", r.evolution_top, kEvolutionTol});
        rep.checks.push_back({tag + "evolution bottom = tau top", r.evolution_bottom, kEvolutionTol});
      }
    }
  }
  rep.outputs["worked_example"] = std::move(examples);

  Json signaling = Json::array();
  for (double alpha : {kPi / 6, kPi / 4, 1.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const std::string tag = "alpha=" + fmt(alpha) + " t=" + fmt(t) + ": ";
      ExperimentConfig cfg;
      cfg.alpha = alpha;
      cfg.t = t;
      const auto violated = run_experiment(cfg, tol);
      cfg.scheme = Scheme::MetricSandwich;
      const auto restored = run_experiment(cfg, tol);
      cfg.mode = ChannelMode::Simulated;
      const auto simulated = run_experiment(cfg, tol);
      const auto whole = whole_system_marginals(cfg, tol);
      rep.checks.push_back({tag + "identity scheme signals", violated.delta_S, 1e-6, true});
      rep.checks.push_back({tag + "metric sandwich restores", restored.delta_S, kMatrixTol});
      rep.checks.push_back({tag + "metric sandwich restores (simulated)", simulated.delta_S, kMatrixTol});
      rep.checks.push_back({tag + "whole-system marginals", whole.marginal_gap, kMatrixTol});
      signaling.push_back({{"alpha", alpha},
                           {"t", t},
                           {"delta_S_identity", violated.delta_S},
                           {"delta_S_metric", restored.delta_S},
                           {"delta_S_metric_simulated", simulated.delta_S},
                           {"whole_system_gap", whole.marginal_gap}});
    }
  }
  rep.outputs["no_signaling"] = std::move(signaling);

  const auto ob = scalar_sum_obstruction_demo(tol);
  rep.outputs["scalar_sum_obstruction"] = to_json(ob);
  rep.checks.push_back({"obstruction entry (1,3) = 1", std::abs(ob.obstruction_entry_13 - 1.0), 0.0});
  rep.checks.push_back({"obstruction grid minimum", ob.min_residual, 0.1, true});
  rep.inputs_digest = dg.hex();
  return rep;
}

void print_table(const RunReport& rep, std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    const char* status = c.pass() ? "PASS" : (c.informational ? "info" : "FAIL");
    if (!c.pass() && !c.informational) ++failed;
    char line[64];
    std::snprintf(line, sizeof line, "%-5s %11.3e %s %9.1e  ", status, c.residual, c.lower_bound ? ">" : "<=",
                  c.tolerance);
    out << line << c.name << '\n';
  }
  out << rep.checks.size() << " checks, " << failed << " failed\n";
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return kExitParse;
    case ErrorCode::NonSquare:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::WrongDimension:
      return kExitDimension;
    case ErrorCode::NumericalFailure:
      return kExitNumerical;
    default:
      return kExitDomain;
  }
}

bool RunReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.informational && !c.pass()) return false;
  }
  return true;
}

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  j["outputs"] = outputs;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["comparison"] = c.lower_bound ? ">" : "<=";
    e["pass"] = c.pass();
    if (c.informational) e["informational"] = true;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["pass"] = all_pass();
  return j;
}

void Digest::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  // Separator so that ("ab","c") and ("a","bc") differ.
  h_ ^= 0xff;
  h_ *= 0x100000001b3ULL;
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ptsim: PT-symmetric Hamiltonians, Hermitian dilations and simulation"};
  app.require_subcommand(1);
  const Tolerances tol;

  MatrixArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "classify H as unbroken, broken or defective");
  classify_cmd->add_option("matrix", classify_args.matrix, "matrix JSON file")->required();
  classify_cmd->add_option("--P", classify_args.p, "parity matrix JSON");
  classify_cmd->add_option("--T", classify_args.t, "time-reversal matrix JSON");

  MatrixArgs metric_args;
  auto* metric_cmd = app.add_subcommand("metric", "positive-definite metric of an unbroken H");
  metric_cmd->add_option("matrix", metric_args.matrix, "matrix JSON file")->required();
  metric_cmd->add_option("--P", metric_args.p, "parity matrix JSON");
  metric_cmd->add_option("--T", metric_args.t, "time-reversal matrix JSON");

  DilateArgs dilate_args;
  auto* dilate_cmd = app.add_subcommand("dilate", "Hermitian dilation of an unbroken H");
  dilate_cmd->add_option("matrix", dilate_args.m.matrix, "matrix JSON file")->required();
  dilate_cmd->add_option("--P", dilate_args.m.p, "parity matrix JSON");
  dilate_cmd->add_option("--T", dilate_args.m.t, "time-reversal matrix JSON");
  dilate_cmd->add_option("--margin", dilate_args.margin, "target lambda_min(eta) when rescaling")
      ->capture_default_str();
  dilate_cmd->add_option("--h1", dilate_args.h1, "zero | paper | matrix JSON file")->capture_default_str();
  dilate_cmd->add_option("--eta", dilate_args.eta, "metric JSON file, or 'paper' for the two-level family");
  dilate_cmd->add_flag("--no-autoscale", dilate_args.no_autoscale, "fail instead of rescaling eta");
  dilate_cmd->add_option("--out", dilate_args.out, "write the dilation JSON here");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "run the three-stage simulation from a config file");
  sim_cmd->add_option("config", sim_args.config, "config JSON file")->required();
  sim_cmd->add_option("--samples", sim_args.samples, "add binomial shot counts");
  sim_cmd->add_option("--seed", sim_args.seed, "seed for --samples");

  NosignalArgs ns_args;
  auto* ns_cmd = app.add_subcommand("nosignal", "two-party signaling test");
  ns_cmd->add_option("--alpha", ns_args.alpha, "alpha in radians");
  ns_cmd->add_option("--alpha-deg", ns_args.alpha_deg, "alpha in degrees");
  ns_cmd->add_option("--s", ns_args.s, "coupling s")->capture_default_str();
  ns_cmd->add_option("--E0", ns_args.e0, "energy offset")->capture_default_str();
  ns_cmd->add_option("--t", ns_args.t, "evolution time")->capture_default_str();
  ns_cmd->add_option("--scheme", ns_args.scheme, "identity | metric | custom")->capture_default_str();
  ns_cmd->add_option("--mode", ns_args.mode, "direct | simulated")->capture_default_str();
  ns_cmd->add_option("--rho", ns_args.rho, "rho matrix JSON (custom scheme)");
  ns_cmd->add_option("--rho-prime", ns_args.rho_prime, "rho' matrix JSON (custom scheme)");
  ns_cmd->add_option("--sweep", ns_args.sweep, "JSON file {\"alphas\": [...], \"ts\": [...]}; emits CSV");
  ns_cmd->add_option("--out", ns_args.out, "CSV output file for --sweep");
  ns_cmd->add_option("--jobs", ns_args.jobs, "worker threads for --sweep")->capture_default_str();

  bool paper_json = false;
  auto* paper_cmd = app.add_subcommand("paper", "regenerate the reference checks");
  paper_cmd->add_flag("--json", paper_json, "print the JSON report instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (ns_cmd->parsed()) return cmd_nosignal(ns_args, tol, out);
    RunReport rep;
    if (classify_cmd->parsed()) rep = cmd_classify(classify_args, tol);
    if (metric_cmd->parsed()) rep = cmd_metric(metric_args, tol);
    if (dilate_cmd->parsed()) rep = cmd_dilate(dilate_args, tol);
    if (sim_cmd->parsed()) rep = cmd_simulate(sim_args, tol);
    if (paper_cmd->parsed()) {
      rep = cmd_paper(tol);
      if (!paper_json) {
        print_table(rep, out);
        return rep.all_pass() ? kExitOk : kExitCheckFailed;
      }
    }
    emit_report(rep, out);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace ptsim::cli
