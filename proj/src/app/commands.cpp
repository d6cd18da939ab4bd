#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"
#include "splab/errors.hpp"
#include "verify_suite.hpp"

namespace splab::app {

namespace {

// Command-line overrides; unset fields keep the config-file value.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> family;
  std::optional<double> p;
  std::optional<int> r;
  std::optional<double> s;
  std::optional<double> alpha;
  std::optional<double> q;
  std::optional<int> d;
  std::optional<double> beta;
  std::optional<std::int64_t> nu0;
  std::optional<std::int64_t> base;
  std::optional<std::string> omega_kind;
  std::optional<double> omega_beta;
  std::optional<std::int64_t> cutoff;
  std::optional<std::string> rho_grid;
  std::optional<std::string> n_grid;
  std::optional<std::string> h_grid;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> slope_tolerance;
  std::optional<double> ratio_band;
  bool svg = false;
  bool strict = false;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration; flags override its fields");
  cmd->add_option("--family", f.family, "geometric | power | y_power | single_block | lacunary");
  cmd->add_option("--p", f.p, "exponent of S^p (>= 1)");
  cmd->add_option("--r", f.r, "order of the Taylor means (thm1)");
  cmd->add_option("--s", f.s, "order of the generalized Abel-Poisson means (thm2, equiv7)");
  cmd->add_option("--alpha", f.alpha, "exponent of the modulus omega");
  cmd->add_option("--q", f.q, "ratio of the geometric family");
  cmd->add_option("--d", f.d, "dimension");
  cmd->add_option("--beta", f.beta, "decay of the power families (default alpha + 1/p + order - 1)");
  cmd->add_option("--nu0", f.nu0, "order of the single block");
  cmd->add_option("--base", f.base, "base of the lacunary family");
  cmd->add_option("--omega-kind", f.omega_kind, "power | power_log");
  cmd->add_option("--omega-beta", f.omega_beta, "log exponent of power_log moduli");
  cmd->add_option("--cutoff", f.cutoff, "largest stored block order");
  cmd->add_option("--rho-grid", f.rho_grid, "j1..j2 for rho = 1 - 2^-j");
  cmd->add_option("--n-grid", f.n_grid, "j1..j2 for n = 2^j");
  cmd->add_option("--h-grid", f.h_grid, "j1..j2 for h = 2^-j");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed,--random-phase", f.seed, "random phases (S^p quantities do not depend on them)");
  cmd->add_option("--slope-tolerance", f.slope_tolerance, "largest tolerated ratio growth");
  cmd->add_option("--ratio-band", f.ratio_band, "half-width of the band around 1");
  cmd->add_flag("--svg", f.svg, "also write log-log SVG plots");
  cmd->add_flag("--strict", f.strict, "exit 3 when an uncertified tail is met");
}

RunConfig build_config(const Flags& f) {
  RunConfig c = f.config ? load_config(*f.config) : RunConfig{};
  if (f.family) c.family.name = *f.family;
  if (f.p) c.p = *f.p;
  if (f.r) c.r = *f.r;
  if (f.s) c.s = *f.s;
  if (f.alpha) c.omega.alpha = *f.alpha;
  if (f.q) c.family.q = *f.q;
  if (f.d) c.family.d = *f.d;
  if (f.beta) c.family.beta = *f.beta;
  if (f.nu0) c.family.nu0 = *f.nu0;
  if (f.base) c.family.base = *f.base;
  if (f.omega_kind) c.omega.kind = *f.omega_kind;
  if (f.omega_beta) c.omega.beta = *f.omega_beta;
  if (f.cutoff) c.cutoff = *f.cutoff;
  if (f.rho_grid) c.rho_grid = parse_range(*f.rho_grid);
  if (f.n_grid) c.n_grid = parse_range(*f.n_grid);
  if (f.h_grid) c.h_grid = parse_range(*f.h_grid);
  if (f.out) c.out_dir = *f.out;
  if (f.seed) c.seed = *f.seed;
  if (f.slope_tolerance) c.thresholds.slope_tolerance = *f.slope_tolerance;
  if (f.ratio_band) c.thresholds.ratio_band = *f.ratio_band;
  if (f.svg) c.svg = true;
  if (f.strict) c.strict = true;
  return c;
}

bool report_certified(const RateReport& r) {
  for (const auto& pt : r.points) {
    if (!std::isfinite(pt.value.upper)) return false;
  }
  return r.verdict != Verdict::kInconclusive || !r.points.empty();
}

int cmd_experiment(const std::string& kind, const Flags& flags, std::ostream& out) {
  const RunConfig cfg = build_config(flags).resolved(kind);
  const Family family = cfg.make_family();
  const Modulus omega = cfg.make_modulus();
  const std::int64_t cutoff = *cfg.cutoff;
  const ExperimentGrids grids = cfg.grids();

  // Non-Y spectra need their coefficients for the shift norm; everything
  // else runs on the closed-form profile.
  std::optional<Spectrum> spectrum;
  std::optional<BlockProfile> profile;
  if (family.y_supported()) {
    profile = family.profile(cfg.p, cutoff);
  } else {
    spectrum = family.spectrum(cfg.p, family.spectrum_cutoff(cutoff), cfg.seed);
  }

  std::vector<StatementReport> reports;
  std::vector<Implication> implications;
  Verdict overall = Verdict::kPass;
  if (kind == "equiv7") {
    const std::vector<double>& rho = grids.rho;
    RateReport r = spectrum ? equivalence7_experiment(*spectrum, cfg.p, cfg.s, rho, cfg.thresholds)
                            : equivalence7_experiment(*profile, cfg.s, rho, cfg.thresholds);
    overall = r.verdict;
    reports.push_back({"ratio", std::move(r)});
  } else {
    TheoremOutcome o;
    if (kind == "prop1") {
      o = spectrum ? proposition1_experiment(*spectrum, cfg.p, omega, grids, cfg.thresholds)
                   : proposition1_experiment(*profile, omega, grids, cfg.thresholds);
    } else if (kind == "thm1") {
      o = spectrum ? theorem1_experiment(*spectrum, cfg.p, cfg.r, omega, grids, cfg.thresholds)
                   : theorem1_experiment(*profile, cfg.r, omega, grids, cfg.thresholds);
    } else {
      o = spectrum ? theorem2_experiment(*spectrum, cfg.p, cfg.s, omega, grids, cfg.thresholds)
                   : theorem2_experiment(*profile, cfg.s, omega, grids, cfg.thresholds);
    }
    overall = o.overall();
    reports = std::move(o.reports);
    implications = std::move(o.implications);
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  nlohmann::ordered_json doc;
  doc["experiment"] = kind;
  doc["config"] = cfg.to_json();
  doc["reports"] = nlohmann::ordered_json::array();
  bool certified = true;
  for (const auto& s : reports) {
    const std::string stem = kind + "_" + s.statement;
    write_text_file((dir / (stem + ".csv")).string(), report_csv(s.report));
    if (cfg.svg) write_text_file((dir / (stem + ".svg")).string(), report_svg(stem, s.report));
    doc["reports"].push_back(report_json(s.statement, s.report));
    certified = certified && report_certified(s.report);
    out << s.statement << ": " << to_string(s.report.verdict);
    if (s.report.fitted_slope) out << " (slope " << format_number(*s.report.fitted_slope) << ")";
    out << "\n";
  }
  doc["implications"] = implications_json(implications);
  doc["verdict"] = to_string(overall);
  doc["version"] = kToolVersion;
  write_text_file((dir / (kind + ".json")).string(), doc.dump(2) + "\n");
  for (const auto& i : implications) out << i.name << ": " << to_string(i.verdict) << "\n";
  out << "overall: " << to_string(overall) << "\n";

  if (cfg.strict && !certified) return kExitUncertified;
  return overall == Verdict::kPass ? kExitPass : kExitFailure;
}

int cmd_norms(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = build_config(flags).resolved("norms");
  const Family family = cfg.make_family();
  const BlockProfile a = family.profile(cfg.p, *cfg.cutoff);
  const Interval n = sp_norm(a);
  nlohmann::ordered_json doc;
  doc["family"] = family.name();
  doc["p"] = cfg.p;
  doc["cutoff"] = *cfg.cutoff;
  doc["sp_norm"] = {{"lower", n.lower}, {"upper", n.certified() ? nlohmann::ordered_json(n.upper)
                                                                 : nlohmann::ordered_json("inf")}};
  doc["tail_bound"] = a.exact() ? 0.0 : a.tail().bound;
  doc["tail_rule"] = a.tail().rule ? a.tail().rule->describe() : "exact";
  nlohmann::ordered_json head = nlohmann::ordered_json::array();
  for (std::size_t nu = 0; nu < std::min<std::size_t>(10, a.values().size()); ++nu) head.push_back(a[nu]);
  doc["profile_head"] = head;
  out << doc.dump(2) << "\n";
  if (cfg.strict && !n.certified()) return kExitUncertified;
  return kExitPass;
}

int cmd_check_omega(const Flags& flags, std::ostream& out) {
  RunConfig cfg = build_config(flags);
  cfg.validate();
  const Modulus omega = cfg.make_modulus();
  const ConditionReport basic = check_basic_conditions(omega);
  const auto n_grid = dyadic_n_grid(cfg.n_grid.j1, cfg.n_grid.j2);
  const ConditionReport b = check_condition_B(omega, n_grid, 10'000, cfg.thresholds);
  nlohmann::ordered_json doc;
  doc["modulus"] = omega.name();
  doc["basic_conditions"] = {{"verdict", to_string(basic.verdict)}, {"detail", basic.detail}};
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < b.grid.size(); ++i) pts.push_back({{"n", b.grid[i]}, {"ratio", b.ratios[i]}});
  doc["condition_B"] = {{"verdict", to_string(b.verdict)}, {"detail", b.detail}, {"points", pts}};
  out << doc.dump(2) << "\n";
  const bool ok = basic.verdict == Verdict::kPass && b.verdict == Verdict::kPass;
  return ok ? kExitPass : kExitFailure;
}

int cmd_catalog(std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : catalog()) {
    doc.push_back({{"name", e.name},
                   {"parameters", e.parameters},
                   {"coefficients", e.coefficients},
                   {"tail_rule", e.tail_rule}});
  }
  out << doc.dump(2) << "\n";
  return kExitPass;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto results = run_verify_suite(options);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    nlohmann::ordered_json line = {{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    out << line.dump() << "\n";
  }
  nlohmann::ordered_json summary = {
      {"summary",
       {{"checks", results.size()}, {"passed", results.size() - failed}, {"failed", failed}}}};
  out << summary.dump() << "\n";
  return failed == 0 ? kExitPass : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximation experiments for multiple Fourier series in S^p spaces", "splab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "run the identity and oracle-agreement suite");
  verify->add_flag("--quick", verify_opts.quick, "skip the slower checks");
  verify->add_option("--inject-fault", verify_opts.inject_fault)->group("");

  Flags exp_flags;
  std::string kind;
  auto* experiment = app.add_subcommand("experiment", "run one statement family on a grid");
  experiment->add_option("kind", kind, "prop1 | thm1 | thm2 | equiv7")
      ->required()
      ->check(CLI::IsMember({"prop1", "thm1", "thm2", "equiv7"}));
  add_run_flags(experiment, exp_flags);

  auto* cat = app.add_subcommand("catalog", "list the function families");

  Flags norm_flags;
  auto* norms = app.add_subcommand("norms", "S^p norm interval and profile head of a family");
  add_run_flags(norms, norm_flags);

  Flags omega_flags;
  auto* omega = app.add_subcommand("check-omega", "basic conditions and condition B for a modulus");
  add_run_flags(omega, omega_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(verify_opts, out);
    if (*experiment) return cmd_experiment(kind, exp_flags, out);
    if (*cat) return cmd_catalog(out);
    if (*norms) return cmd_norms(norm_flags, out);
    if (*omega) return cmd_check_omega(omega_flags, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace splab::app
