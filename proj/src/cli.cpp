#include "eqsim/cli.hpp"

#include "eqsim/circuits.hpp"
#include "eqsim/embedding.hpp"
#include "eqsim/noise.hpp"
#include "eqsim/optics.hpp"
#include "eqsim/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <thread>

namespace eqsim::cli {

namespace {

using json = nlohmann::ordered_json;
using std::numbers::pi;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

// "0.5", "pi", "-pi/8", "3pi/4", "3*pi/4", "0.25*pi"
double parse_angle(std::string_view raw) {
  std::string t = trim(raw);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto fail = [&] { return ConfigError("gt-grid", "cannot parse angle \"" + std::string(raw) + "\""); };
  const auto p = t.find("pi");
  if (p == std::string::npos) {
    if (auto v = parse_number(t)) return *v;
    throw fail();
  }
  std::string coef = t.substr(0, p);
  std::string rest = t.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty()) {
    auto v = parse_number(coef);
    if (!v) throw fail();
    factor = *v;
  }
  double denom = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw fail();
    auto v = parse_number(std::string_view(rest).substr(1));
    if (!v || *v == 0.0) throw fail();
    denom = *v;
  }
  return factor * pi / denom;
}

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

DensityMatrix simulator_state(Mode mode, double gt) {
  switch (mode) {
    case Mode::Exact:
      return DensityMatrix::from_pure(embedded_protocol_state(gt).state());
    case Mode::Circuit:
    case Mode::Shots:
      return DensityMatrix::from_pure(run_circuit(full_circuit(gt), embed(protocol_initial_state()).state()));
    case Mode::Optics: {
      const auto ps = optics::run_eqs_optics(gt, embed(protocol_initial_state()).state());
      if (!ps.state) throw InvariantError("optics post-selection kept no amplitude");
      return DensityMatrix::from_pure(*ps.state);
    }
    case Mode::Tomography:
      break;
  }
  throw std::logic_error("tomography mode has no three-qubit simulator state");
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["mode"] = mode_name(cfg.mode);
  j["gt_grid"] = cfg.gt_grid;
  j["epsilon"] = cfg.epsilon ? json(*cfg.epsilon) : json(nullptr);
  j["pump"] = cfg.pump_percent ? json(*cfg.pump_percent) : json(nullptr);
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  return j;
}

std::ostream& open_output(const ExperimentConfig& cfg, std::ofstream& file, std::ostream& out) {
  if (cfg.output_path.empty()) return out;
  file.open(cfg.output_path, std::ios::binary);
  if (!file) throw ConfigError("out", "cannot open \"" + cfg.output_path + "\" for writing");
  return file;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const auto rows = concurrence_sweep(cfg);
  std::ofstream file;
  std::ostream& os = open_output(cfg, file, out);
  if (!cfg.json) {
    write_sweep_csv(os, rows);
    return kSuccess;
  }
  json doc;
  doc["command"] = "concurrence-sweep";
  doc["config"] = config_json(cfg);
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"gt", r.gt}, {"epsilon", r.epsilon}, {"c_exact", r.c_exact}, {"c_estimate", r.c_estimate},
                   {"c_sigma", r.c_sigma}, {"shots", r.shots}, {"seed", r.seed}, {"c_reference", r.c_reference}});
  }
  doc["rows"] = std::move(arr);
  os << doc.dump(2) << '\n';
  return kSuccess;
}

int cmd_tomography(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto result = tomography_run(cfg);
  std::ofstream file;
  std::ostream& os = open_output(cfg, file, out);
  const auto& fit = result.fit;
  if (!cfg.json) {
    write_tomography_csv(os, result.rows);
    err << "fit: amplitude " << fmt(fit.amplitude) << " (epsilon' " << fmt(fit.werner_epsilon)
        << "), proportional amplitude " << fmt(fit.proportional_amplitude) << ", rms residual "
        << fmt(fit.rms_residual) << '\n';
    return kSuccess;
  }
  json doc;
  doc["command"] = "tomography-run";
  doc["config"] = config_json(cfg);
  json arr = json::array();
  for (const auto& r : result.rows) {
    arr.push_back({{"gt", r.gt}, {"epsilon", r.epsilon}, {"c_exact", r.c_exact}, {"c_estimate", r.c_estimate},
                   {"c_sigma", r.c_sigma}, {"projected", r.projected}, {"shots", r.shots}, {"seed", r.seed},
                   {"c_reference", r.c_reference}});
  }
  doc["rows"] = std::move(arr);
  doc["fit"] = {{"amplitude", fit.amplitude},
                {"epsilon", fit.werner_epsilon},
                {"proportional_amplitude", fit.proportional_amplitude},
                {"rms_residual", fit.rms_residual}};
  os << doc.dump(2) << '\n';
  return kSuccess;
}

std::string basis_label(std::size_t index) {
  std::string s;
  for (int q = 2; q >= 0; --q) s.push_back(((index >> q) & 1U) ? 'v' : 'h');
  return s;
}

int cmd_optics_check(const ExperimentConfig& cfg, optics::PpbsSign sign, std::ostream& out, std::ostream& err) {
  const double scale = 3.0 * std::sqrt(3.0);
  const CMatrix t = optics::postselected_transfer_matrix(optics::cz_pair_network(sign));
  const auto expected = optics::expected_cz_pair_signs();
  bool all_ok = true;
  json rows = json::array();
  std::ofstream file;
  std::ostream& os = open_output(cfg, file, out);
  if (!cfg.json) os << "input,amplitude_re,amplitude_im,scaled_amplitude,expected_sign,success_probability,ok\n";
  for (std::size_t k = 0; k < 8; ++k) {
    const auto col = t.col(static_cast<Eigen::Index>(k));
    const auto kk = static_cast<Eigen::Index>(k);
    CVector ideal = CVector::Zero(8);
    ideal(kk) = expected[k] / scale;
    const double p = optics::run_eqs_optics(0.0, StateVector::basis(3, k), sign).success_probability;
    const bool ok = (col - ideal).cwiseAbs().maxCoeff() <= 1e-12 && std::abs(p - 1.0 / 27.0) <= 1e-12;
    all_ok = all_ok && ok;
    const Complex a = col(kk);
    if (cfg.json) {
      rows.push_back({{"input", basis_label(k)}, {"amplitude_re", a.real()}, {"amplitude_im", a.imag()},
                      {"scaled_amplitude", a.real() * scale}, {"expected_sign", expected[k]},
                      {"success_probability", p}, {"ok", ok}});
    } else {
      os << basis_label(k) << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ',' << fmt(a.real() * scale) << ','
         << expected[k] << ',' << fmt(p) << ',' << (ok ? "true" : "false") << '\n';
    }
  }
  if (cfg.json) {
    json doc;
    doc["command"] = "optics-check";
    doc["passed"] = all_ok;
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  }
  if (!all_ok) err << "optics-check: sign table or success probability mismatch\n";
  return all_ok ? kSuccess : kInvariantFailure;
}

int cmd_rates(const ExperimentConfig& cfg, std::ostream& out) {
  const double pump = cfg.pump_percent.value_or(100.0);
  const std::vector<std::pair<std::string, noise::RatePipeline>> pipelines = {
      {"two-photon", noise::RatePipeline::two_photon(pump / 100.0)},
      {"three-photon", noise::RatePipeline::three_photon(pump / 100.0)},
  };
  std::ofstream file;
  std::ostream& os = open_output(cfg, file, out);
  if (cfg.json) {
    json doc;
    doc["command"] = "rates";
    doc["pump"] = pump;
    json arr = json::array();
    for (const auto& [name, p] : pipelines) {
      json stages = json::array();
      for (const auto& s : p.stages()) {
        stages.push_back({{"label", s.label}, {"value", s.value}, {"unit", s.is_rate ? "Hz" : "factor"}});
      }
      arr.push_back({{"pipeline", name}, {"stages", std::move(stages)}, {"rate_hz", noise::rate_pipeline_evaluate(p)}});
    }
    doc["pipelines"] = std::move(arr);
    os << doc.dump(2) << '\n';
    return kSuccess;
  }
  os << "pipeline,stage,value,unit\n";
  for (const auto& [name, p] : pipelines) {
    for (const auto& s : p.stages()) {
      os << name << ',' << s.label << ',' << fmt(s.value) << ',' << (s.is_rate ? "Hz" : "factor") << '\n';
    }
    os << name << ",rate," << fmt(noise::rate_pipeline_evaluate(p)) << ",Hz\n";
  }
  return kSuccess;
}

int cmd_verify(const ExperimentConfig& cfg, optics::PpbsSign sign, std::ostream& out) {
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.ppbs_sign = sign;
  const auto results = run_invariant_suite(opts);
  const bool all = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  if (cfg.json) {
    json doc;
    doc["command"] = "verify";
    doc["passed"] = all;
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    doc["checks"] = std::move(arr);
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      char line[160];
      std::snprintf(line, sizeof line, "%-4s  %-24s %8.3f s  ", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
      out << line << r.detail << '\n';
    }
    out << (all ? "all invariants hold" : "invariant failure") << '\n';
  }
  return all ? kSuccess : kInvariantFailure;
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Exact: return "exact";
    case Mode::Circuit: return "circuit";
    case Mode::Optics: return "optics";
    case Mode::Tomography: return "tomography";
    case Mode::Shots: return "shots";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Exact, Mode::Circuit, Mode::Optics, Mode::Tomography, Mode::Shots}) {
    if (mode_name(m) == text) return m;
  }
  throw ConfigError("mode", "unknown mode \"" + std::string(text) + "\" (exact, circuit, optics, tomography, shots)");
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

void validate(const ExperimentConfig& cfg) {
  if (cfg.gt_grid.empty()) throw ConfigError("gt-grid", "grid is empty");
  for (double g : cfg.gt_grid) {
    if (!std::isfinite(g)) throw ConfigError("gt-grid", "grid contains a non-finite value");
  }
  if (cfg.epsilon && cfg.pump_percent) throw ConfigError("epsilon", "set either epsilon or pump, not both");
  if (cfg.epsilon && !(*cfg.epsilon >= 0.0 && *cfg.epsilon <= 1.0)) {
    throw ConfigError("epsilon", "must lie in [0, 1], got " + fmt(*cfg.epsilon));
  }
  if (cfg.pump_percent && !(*cfg.pump_percent > 0.0 && *cfg.pump_percent <= 100.0)) {
    throw ConfigError("pump", "must lie in (0, 100] percent, got " + fmt(*cfg.pump_percent));
  }
  if (cfg.mode == Mode::Shots && cfg.shots == 0) throw ConfigError("shots", "mode shots needs a positive shot count");
  if (cfg.jobs < 1) throw ConfigError("jobs", "must be at least 1");
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("gt-grid", "grid is empty");
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t p; (p = t.find(':', start)) != std::string::npos; start = p + 1) parts.push_back(t.substr(start, p - start));
    parts.push_back(t.substr(start));
    if (parts.size() != 3) throw ConfigError("gt-grid", "range must be start:stop:count");
    const double a = parse_angle(parts[0]);
    const double b = parse_angle(parts[1]);
    const auto n = parse_number(trim(parts[2]));
    if (!n || *n < 1 || *n != std::floor(*n)) throw ConfigError("gt-grid", "range count must be a positive integer");
    const int count = static_cast<int>(*n);
    if (count == 1) return {a};
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) grid[static_cast<std::size_t>(k)] = a + (b - a) * k / (count - 1);
    return grid;
  }
  std::vector<double> grid;
  std::size_t start = 0;
  while (true) {
    const auto p = t.find(',', start);
    grid.push_back(parse_angle(std::string_view(t).substr(start, p == std::string::npos ? std::string::npos : p - start)));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return grid;
}

double simulator_epsilon(const ExperimentConfig& cfg) {
  if (cfg.epsilon) return *cfg.epsilon;
  if (cfg.pump_percent) return noise::simulator_epsilon_for_pump(*cfg.pump_percent);
  return 1.0;
}

double tomography_epsilon(const ExperimentConfig& cfg) {
  if (cfg.epsilon) return *cfg.epsilon;
  if (cfg.pump_percent) {
    return noise::werner_epsilon_for_concurrence(noise::tomography_concurrence_for_pump(*cfg.pump_percent));
  }
  return 1.0;
}

std::vector<SweepRow> concurrence_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.mode == Mode::Tomography) throw ConfigError("mode", "tomography is served by tomography-run");
  const noise::WhiteNoiseModel model(simulator_epsilon(cfg));
  const std::uint64_t shots = cfg.shots;
  std::vector<SweepRow> rows(cfg.gt_grid.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t k) {
    SweepRow& r = rows[k];
    r.gt = cfg.gt_grid[k];
    r.epsilon = model.epsilon();
    r.seed = cfg.seed + k;
    r.shots = shots;
    r.c_reference = noise::expected_concurrence_embedded(model, r.gt);
    const DensityMatrix rho = noise::apply_white_noise(simulator_state(cfg.mode, r.gt), model);
    r.c_exact = noise::embedded_concurrence(rho);
    if (shots == 0) {
      r.c_estimate = r.c_exact;
      return;
    }
    Rng rng(r.seed);
    const std::uint64_t z_seed = rng();
    const std::uint64_t x_seed = rng();
    const std::uint64_t fallback_seed = rng();
    auto records = noise::sample_observable(rho, PauliString::parse("ZYY"), shots, z_seed).records;
    auto x_records = noise::sample_observable(rho, PauliString::parse("XYY"), shots, x_seed).records;
    records.insert(records.end(), x_records.begin(), x_records.end());
    const auto est = noise::concurrence_from_counts(records, fallback_seed);
    r.c_estimate = est.value;
    r.c_sigma = est.sigma;
  });
  return rows;
}

TomographyResult tomography_run(const ExperimentConfig& cfg) {
  validate(cfg);
  const double eps = tomography_epsilon(cfg);
  const noise::WhiteNoiseModel model(eps);
  TomographyResult result;
  result.rows.resize(cfg.gt_grid.size());
  parallel_for(result.rows.size(), cfg.jobs, [&](std::size_t k) {
    TomographyRow& r = result.rows[k];
    r.gt = cfg.gt_grid[k];
    r.epsilon = eps;
    r.seed = cfg.seed + k;
    r.shots = cfg.shots;
    r.c_reference = std::max(0.0, eps * std::abs(std::sin(2.0 * r.gt)) - (1.0 - eps) / 2.0);
    const DensityMatrix rho = noise::apply_white_noise(DensityMatrix::from_pure(protocol_state(r.gt)), model);
    r.c_exact = tomography::concurrence_mixed(rho);
    if (cfg.shots == 0) {
      r.c_estimate = r.c_exact;
      return;
    }
    Rng rng(r.seed);
    const std::uint64_t count_seed = rng();
    const std::uint64_t resample_seed = rng();
    const auto records = tomography::simulate_tomography_counts(rho, cfg.shots, count_seed);
    const auto est = tomography::concurrence_from_tomography(records, kTomographyResamples, resample_seed);
    r.c_estimate = est.value;
    r.c_sigma = est.sigma;
    r.projected = est.projected;
  });
  std::vector<double> gts;
  std::vector<double> cs;
  for (const auto& r : result.rows) {
    gts.push_back(r.gt);
    cs.push_back(r.c_estimate);
  }
  result.fit = tomography::fit_concurrence_curve(gts, cs);
  return result;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "gt,epsilon,c_exact,c_estimate,c_sigma,shots,seed,c_reference\n";
  for (const auto& r : rows) {
    os << fmt(r.gt) << ',' << fmt(r.epsilon) << ',' << fmt(r.c_exact) << ',' << fmt(r.c_estimate) << ','
       << fmt(r.c_sigma) << ',' << r.shots << ',' << r.seed << ',' << fmt(r.c_reference) << '\n';
  }
}

void write_tomography_csv(std::ostream& os, const std::vector<TomographyRow>& rows) {
  os << "gt,epsilon,c_exact,c_estimate,c_sigma,projected,shots,seed,c_reference\n";
  for (const auto& r : rows) {
    os << fmt(r.gt) << ',' << fmt(r.epsilon) << ',' << fmt(r.c_exact) << ',' << fmt(r.c_estimate) << ','
       << fmt(r.c_sigma) << ',' << (r.projected ? 1 : 0) << ',' << r.shots << ',' << r.seed << ','
       << fmt(r.c_reference) << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embedding quantum simulator: concurrence sweeps, tomography, optics checks"};
  app.name("eqsim");
  app.set_config("--config", "", "key = value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<std::string> grid_parts{"0:pi/2:17"};
  std::string mode_text;
  double epsilon = 1.0;
  double pump = 100.0;
  ExperimentConfig cfg;
  app.add_option("--gt-grid,--gt_grid", grid_parts, "angles gt: \"0,pi/8,pi/4\" or start:stop:count")
      ->capture_default_str();
  auto* mode_opt = app.add_option("--mode", mode_text, "exact | circuit | optics | tomography | shots");
  auto* eps_opt = app.add_option("--epsilon", epsilon, "white-noise weight in [0, 1]");
  auto* pump_opt = app.add_option("--pump", pump, "pump power in percent; selects epsilon from the pump fits");
  app.add_option("--shots", cfg.shots, "expected counts per projector setting (0 = exact)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base seed; grid point k uses seed + k")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output file (default stdout)");
  app.add_flag("--json", cfg.json, "JSON instead of CSV / text");
  app.add_option("--jobs", cfg.jobs, "worker threads over grid points")->capture_default_str();

  auto* sweep = app.add_subcommand("concurrence-sweep", "simulator concurrence over a gt grid");
  auto* tomo = app.add_subcommand("tomography-run", "two-qubit tomography concurrence over a gt grid");
  auto* optics_cmd = app.add_subcommand("optics-check", "post-selected sign table and success probability");
  auto* rates = app.add_subcommand("rates", "coincidence-rate pipelines");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  std::string fault;
  for (auto* sub : {optics_cmd, verify}) {
    sub->add_option("--inject-fault", fault)->check(CLI::IsMember({"ppbs-sign"}))->group("");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidConfig;
  }

  try {
    std::string grid_text;
    for (const auto& part : grid_parts) grid_text += (grid_text.empty() ? "" : ",") + part;
    cfg.gt_grid = parse_grid(grid_text);
    if (mode_opt->count() > 0) cfg.mode = parse_mode(mode_text);
    if (eps_opt->count() > 0) cfg.epsilon = epsilon;
    if (pump_opt->count() > 0) cfg.pump_percent = pump;
    const auto sign = fault.empty() ? optics::PpbsSign::ReflectedMinus : optics::PpbsSign::Unsigned;

    if (sweep->parsed()) {
      return cfg.mode == Mode::Tomography ? cmd_tomography(cfg, out, err) : cmd_sweep(cfg, out);
    }
    if (tomo->parsed()) {
      if (mode_opt->count() > 0 && cfg.mode != Mode::Tomography) {
        throw ConfigError("mode", "tomography-run only supports mode tomography");
      }
      cfg.mode = Mode::Tomography;
      return cmd_tomography(cfg, out, err);
    }
    validate(cfg);
    if (optics_cmd->parsed()) return cmd_optics_check(cfg, sign, out, err);
    if (rates->parsed()) return cmd_rates(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, sign, out);
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantFailure;
  }
  return kInvalidConfig;
}

}  // namespace eqsim::cli
