#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "fieldlab/csv.hpp"
#include "fieldlab/decoherence.hpp"
#include "fieldlab/density.hpp"
#include "fieldlab/dense.hpp"
#include "fieldlab/experiments.hpp"
#include "fieldlab/oracle.hpp"
#include "fieldlab/pointer.hpp"
#include "fieldlab/waves.hpp"

namespace fieldlab::runner {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& context) {
  if (!obj.is_object()) throw config_error(context + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const auto& a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) throw config_error(context + ": unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& key, double fallback,
                  const std::string& context) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw config_error(context + "." + key + ": expected a number");
  return obj.at(key).get<double>();
}

std::int64_t get_int(const json& obj, const std::string& key, std::int64_t fallback,
                     const std::string& context) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer())
    throw config_error(context + "." + key + ": expected an integer");
  return obj.at(key).get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback,
                       const std::string& context) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string())
    throw config_error(context + "." + key + ": expected a string");
  return obj.at(key).get<std::string>();
}

struct Artifacts {
  std::filesystem::path dir;
  std::vector<RunOutput> outputs;

  void add(const std::string& name, std::string body) {
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open output file " + path.string());
    out << body;
    outputs.push_back({path, body.size(), csv::fnv1a_hex(body)});
  }
};

// --- two-slit helpers ---

struct SlitSetup {
  waves::SlitGeometry geometry;
  waves::Grid1D screen;
  double detector_position = 0.0;
};

SlitSetup parse_slit(const json& params, const std::string& context) {
  require_keys(params,
               {"slit_separation", "slit_width", "wavenumber", "screen_distance", "theta_min",
                "theta_max", "points", "detector_position"},
               context);
  SlitSetup s;
  s.geometry.slit_separation = get_number(params, "slit_separation", 1.0, context);
  s.geometry.slit_width = get_number(params, "slit_width", 0.2, context);
  s.geometry.wavenumber = get_number(params, "wavenumber", 50.0, context);
  s.geometry.screen_distance = get_number(params, "screen_distance", 100.0, context);
  s.screen.x_min = get_number(params, "theta_min", -0.5, context);
  s.screen.x_max = get_number(params, "theta_max", 0.5, context);
  s.screen.points = static_cast<int>(get_int(params, "points", 2001, context));
  s.detector_position = get_number(params, "detector_position", 0.0, context);
  return s;
}

/// Local fringe contrast: extrema of the sampled intensity within one
/// fringe period around each point.
std::vector<double> local_visibility(const std::vector<double>& intensity,
                                     const waves::Grid1D& grid, double fringe_period) {
  const int half = std::max(1, static_cast<int>(std::lround(0.5 * fringe_period / grid.dx())));
  std::vector<double> vis(intensity.size(), 0.0);
  for (int k = 0; k < static_cast<int>(intensity.size()); ++k) {
    const int lo = std::max(0, k - half);
    const int hi = std::min(static_cast<int>(intensity.size()) - 1, k + half);
    double mn = intensity[lo], mx = intensity[lo];
    for (int i = lo; i <= hi; ++i) {
      mn = std::min(mn, intensity[i]);
      mx = std::max(mx, intensity[i]);
    }
    vis[k] = experiments::fringe_visibility(mx, mn);
  }
  return vis;
}

void run_two_slit(const ExperimentConfig& config, Artifacts& artifacts) {
  const auto setup = parse_slit(config.params, "two_slit");
  const auto one = waves::slit_pattern(setup.geometry, 1, setup.screen);
  const auto two = waves::slit_pattern(setup.geometry, 2, setup.screen);

  std::vector<double> i1(setup.screen.points), i2(setup.screen.points);
  for (int k = 0; k < setup.screen.points; ++k) {
    i1[k] = std::norm(one.value(k));
    i2[k] = std::norm(two.value(k));
  }
  const double period =
      2.0 * std::numbers::pi / (setup.geometry.wavenumber * setup.geometry.slit_separation);
  const auto vis = local_visibility(i2, setup.screen, period);

  csv::Table t({"theta", "intensity_k1", "intensity_k2", "visibility"});
  for (int k = 0; k < setup.screen.points; ++k) {
    t.begin_row().cell(setup.screen.x(k)).cell(i1[k]).cell(i2[k]).cell(vis[k]);
  }
  artifacts.add("screen.csv", t.body());
}

void run_which_path(const ExperimentConfig& config, Artifacts& artifacts) {
  const auto setup = parse_slit(config.params, "which_path");
  using experiments::ModeWave;
  fock::ModeSet set = fock::ModeSet::fermionic({"two_slit", "one_slit", "recoil"});
  const fock::ModeId m2 = set.id("two_slit"), m1 = set.id("one_slit"), mr = set.id("recoil");

  const std::vector<ModeWave> absorb{{m2, waves::slit_pattern(setup.geometry, 2, setup.screen)}};
  const std::vector<ModeWave> emit{{m1, waves::slit_pattern(setup.geometry, 1, setup.screen)}};

  const fock::Ket photon =
      fock::apply(fock::OpString::create(m2), fock::Ket::vacuum(set));
  const auto before = experiments::screen_intensity(photon, absorb);
  const fock::Ket scattered =
      experiments::compton_channel(photon, setup.detector_position, absorb, emit, mr);
  const auto after = experiments::screen_intensity(scattered, emit);

  const fock::Ket one_slit_photon =
      fock::apply(fock::OpString::create(m1), fock::Ket::vacuum(set));
  const auto reference = experiments::screen_intensity(one_slit_photon, emit);

  csv::Table t({"theta", "intensity_before", "intensity_after", "intensity_one_slit"});
  for (int k = 0; k < setup.screen.points; ++k) {
    t.begin_row().cell(setup.screen.x(k)).cell(before[k]).cell(after[k]).cell(reference[k]);
  }
  artifacts.add("screen.csv", t.body());

  // fringe summary at the central maximum and the first two-slit zero
  const double theta_zero = waves::first_fringe_zero_angle(setup.geometry);
  const int k_max = setup.screen.nearest_index(0.0);
  const int k_min = setup.screen.nearest_index(theta_zero);
  csv::Table s({"quantity", "value"});
  s.begin_row().cell(std::string("visibility_before")).cell(
      experiments::fringe_visibility(before[k_max], before[k_min]));
  s.begin_row().cell(std::string("visibility_after")).cell(
      experiments::fringe_visibility(after[k_max], after[k_min]));
  s.begin_row().cell(std::string("visibility_one_slit")).cell(
      experiments::fringe_visibility(reference[k_max], reference[k_min]));
  s.begin_row().cell(std::string("recoil_occupation")).cell([&] {
    double occ = 0.0;
    for (const auto& [state, amp] : scattered.terms())
      occ += std::norm(amp) * state.count(mr);
    return occ / (scattered.norm_sq() > 0 ? scattered.norm_sq() : 1.0);
  }());
  artifacts.add("summary.csv", s.body());
}

std::optional<experiments::FilterSpec> parse_filter(const json& params,
                                                    const std::string& context) {
  const std::string kind = get_string(params, "filter", "none", context);
  if (kind == "none") return std::nullopt;
  experiments::FilterSpec f;
  if (kind == "projection") {
    f.kind = experiments::FilterSpec::Kind::projection;
  } else if (kind == "spin_flip") {
    f.kind = experiments::FilterSpec::Kind::spin_flip;
  } else {
    throw config_error(context + ".filter: expected none|projection|spin_flip");
  }
  f.theta = get_number(params, "filter_theta", 0.0, context);
  f.phi = get_number(params, "filter_phi", 0.0, context);
  return f;
}

void run_epr(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"alpha", "beta", "filter", "filter_theta", "filter_phi"}, "epr");
  const double alpha = get_number(config.params, "alpha", 0.0, "epr");
  const double beta = get_number(config.params, "beta", 0.0, "epr");
  const auto filter = parse_filter(config.params, "epr");

  const auto state = experiments::EprState::singlet();
  const auto table = experiments::epr_coincidence_table(state, filter, alpha, beta);

  csv::Table t({"spin_at_X", "spin_at_minus_X", "probability"});
  t.begin_row().cell(std::string("+")).cell(std::string("+")).cell(table.pp);
  t.begin_row().cell(std::string("+")).cell(std::string("-")).cell(table.pm);
  t.begin_row().cell(std::string("-")).cell(std::string("+")).cell(table.mp);
  t.begin_row().cell(std::string("-")).cell(std::string("-")).cell(table.mm);
  artifacts.add("table.csv", t.body());
}

void run_chsh(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"settings", "sweep_points"}, "chsh");
  experiments::BellConfig bell;
  if (config.params.contains("settings")) {
    const auto& s = config.params.at("settings");
    if (!s.is_array() || s.size() != 4)
      throw config_error("chsh.settings: expected four [alpha, beta] pairs");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!s[i].is_array() || s[i].size() != 2 || !s[i][0].is_number() || !s[i][1].is_number())
        throw config_error("chsh.settings: expected four [alpha, beta] pairs");
      bell.chsh_settings[i] = {s[i][0].get<double>(), s[i][1].get<double>()};
    }
  }
  const int sweep = static_cast<int>(get_int(config.params, "sweep_points", 19, "chsh"));
  if (sweep < 2) throw config_error("chsh.sweep_points: need at least 2");

  const auto state = experiments::EprState::singlet();
  const auto result = experiments::chsh(state, bell);

  csv::Table t({"setting", "alpha", "beta", "E"});
  for (std::size_t i = 0; i < 4; ++i) {
    t.begin_row()
        .cell(std::string("E") + std::to_string(i + 1))
        .cell(bell.chsh_settings[i].first)
        .cell(bell.chsh_settings[i].second)
        .cell(result.correlations[i]);
  }
  t.begin_row().cell(std::string("S")).cell(std::string()).cell(std::string()).cell(result.statistic);
  artifacts.add("chsh.csv", t.body());

  csv::Table sweep_table({"alpha", "beta", "E"});
  for (int i = 0; i < sweep; ++i) {
    for (int j = 0; j < sweep; ++j) {
      const double a = 2.0 * std::numbers::pi * i / sweep;
      const double b = 2.0 * std::numbers::pi * j / sweep;
      sweep_table.begin_row().cell(a).cell(b).cell(experiments::bell_correlation(state, a, b));
    }
  }
  artifacts.add("correlation_sweep.csv", sweep_table.body());
}

void run_weyl(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params,
               {"energy", "half_width", "mass", "t0", "direction", "quadrature_points", "x_min",
                "x_max", "points", "times"},
               "weyl");
  waves::WeylPacket packet;
  packet.energy = get_number(config.params, "energy", 1.25, "weyl");
  packet.half_width = get_number(config.params, "half_width", 0.1, "weyl");
  packet.mass = get_number(config.params, "mass", 1.0, "weyl");
  packet.t0 = get_number(config.params, "t0", 0.0, "weyl");
  packet.direction = static_cast<int>(get_int(config.params, "direction", 1, "weyl"));
  packet.quadrature_points =
      static_cast<int>(get_int(config.params, "quadrature_points", 64, "weyl"));
  waves::Grid1D grid;
  grid.x_min = get_number(config.params, "x_min", -40.0, "weyl");
  grid.x_max = get_number(config.params, "x_max", 50.0, "weyl");
  grid.points = static_cast<int>(get_int(config.params, "points", 4501, "weyl"));

  std::vector<double> times{packet.t0, packet.t0 + 10.0};
  if (config.params.contains("times")) {
    const auto& ts = config.params.at("times");
    if (!ts.is_array() || ts.empty()) throw config_error("weyl.times: expected a non-empty array");
    times.clear();
    for (const auto& v : ts) {
      if (!v.is_number()) throw config_error("weyl.times: expected numbers");
      times.push_back(v.get<double>());
    }
  }

  try {
    packet.validate();
    grid.validate();
  } catch (const domain_error& e) {
    throw config_error(std::string("weyl: ") + e.what());
  }

  const double nc = waves::weyl_norm_constant(packet, grid);
  csv::Table peaks({"t", "peak_x", "norm"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto snapshot = waves::weyl_snapshot(packet, grid, times[i], nc);
    double norm = 0.0;
    for (const auto& v : snapshot) norm += std::norm(v);
    norm *= grid.dx();
    const auto mode = waves::WaveMode::normalized(grid, snapshot, "weyl");
    peaks.begin_row().cell(times[i]).cell(waves::packet_peak_position(mode)).cell(norm);

    artifacts.add("packet_" + std::to_string(i) + ".csv",
                  csv::wave_table(grid, snapshot).body());
  }
  artifacts.add("peaks.csv", peaks.body());
}

void run_thermal(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"temperature", "energies"}, "thermal");
  density::ThermalConfig cfg;
  cfg.temperature = get_number(config.params, "temperature", 1.0, "thermal");
  cfg.energies = {0.0, std::log(2.0)};
  if (config.params.contains("energies")) {
    const auto& es = config.params.at("energies");
    if (!es.is_array() || es.empty())
      throw config_error("thermal.energies: expected a non-empty array");
    cfg.energies.clear();
    for (const auto& v : es) {
      if (!v.is_number()) throw config_error("thermal.energies: expected numbers");
      cfg.energies.push_back(v.get<double>());
    }
  }
  density::DensityMatrix rho = [&] {
    try {
      return density::thermal_density(cfg);
    } catch (const domain_error& e) {
      throw config_error(std::string("thermal: ") + e.what());
    }
  }();

  artifacts.add("density.csv", csv::density_table(rho).body());

  csv::Table s({"quantity", "value"});
  s.begin_row().cell(std::string("boltzmann_entropy")).cell(density::boltzmann_entropy(rho));
  s.begin_row().cell(std::string("von_neumann_entropy")).cell(density::von_neumann_entropy(rho));
  s.begin_row().cell(std::string("purity")).cell(rho.purity());
  artifacts.add("entropy.csv", s.body());
}

void run_decohere(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"c", "n_max", "chain_steps", "chain_dim"}, "decohere");
  const double c = get_number(config.params, "c", 0.9, "decohere");
  const int n_max = static_cast<int>(get_int(config.params, "n_max", 100, "decohere"));
  if (!(c >= 0.0 && c < 1.0)) throw config_error("decohere.c: expected 0 <= c < 1");
  if (n_max < 1) throw config_error("decohere.n_max: expected >= 1");

  csv::Table decay({"N", "off_diagonal", "bound"});
  Eigen::VectorXcd v(2);
  v << std::sqrt(0.5), std::sqrt(0.5);
  const auto system = density::DensityMatrix::pure({"1", "2"}, v);
  for (int n = 1; n <= n_max; ++n) {
    const auto env = decoherence::EnvironmentModel::uniform(c, n);
    const auto outcome = decoherence::measure_with_chain(system, env);
    decay.begin_row()
        .cell(static_cast<std::int64_t>(n))
        .cell(outcome.off_diagonal_magnitude)
        .cell(decoherence::offdiagonal_suppression(env).bound);
  }
  artifacts.add("decay.csv", decay.body());

  // seeded random-unitary chain: purity and entropy trace, step by step
  const int steps = static_cast<int>(get_int(config.params, "chain_steps", 6, "decohere"));
  const int dim = static_cast<int>(get_int(config.params, "chain_dim", 3, "decohere"));
  if (steps < 1 || dim < 2) throw config_error("decohere: chain_steps >= 1 and chain_dim >= 2");
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amp(dim);
  for (int i = 0; i < dim; ++i) amp(i) = std::complex<double>(gauss(rng), gauss(rng));
  density::DensityMatrix rho = density::DensityMatrix::pure(
      [&] {
        std::vector<std::string> labels(dim);
        for (int i = 0; i < dim; ++i) labels[i] = "c" + std::to_string(i);
        return labels;
      }(),
      amp);

  csv::Table chain({"step", "purity", "entropy"});
  chain.begin_row().cell(std::int64_t{0}).cell(rho.purity()).cell(density::boltzmann_entropy(rho));
  for (int s = 1; s <= steps; ++s) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd q = qr.householderQ();
    decoherence::ChainStep step{q, {}, std::nullopt};
    rho = decoherence::evolve_chain(rho, std::span(&step, 1));
    chain.begin_row()
        .cell(static_cast<std::int64_t>(s))
        .cell(rho.purity())
        .cell(density::boltzmann_entropy(rho));
  }
  artifacts.add("chain.csv", chain.body());
}

void run_cat(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"c", "env_n", "p_live", "sigma", "directions"}, "cat");
  const double c = get_number(config.params, "c", 0.5, "cat");
  const int env_n = static_cast<int>(get_int(config.params, "env_n", 30, "cat"));
  const double p_live = get_number(config.params, "p_live", 0.5, "cat");
  const std::string sigma_kind = get_string(config.params, "sigma", "diagonal", "cat");
  const int directions = static_cast<int>(get_int(config.params, "directions", 181, "cat"));
  if (!(p_live >= 0.0 && p_live <= 1.0)) throw config_error("cat.p_live: expected [0, 1]");
  if (!(c >= 0.0 && c < 1.0)) throw config_error("cat.c: expected 0 <= c < 1");
  if (env_n < 0) throw config_error("cat.env_n: expected >= 0");
  if (directions < 2) throw config_error("cat.directions: expected >= 2");

  // photon polarization state feeding the transition
  Eigen::MatrixXcd sigma(2, 2);
  if (sigma_kind == "diagonal") {
    sigma << p_live, 0.0, 0.0, 1.0 - p_live;
  } else if (sigma_kind == "pure") {
    Eigen::Vector2cd a(std::sqrt(p_live), std::sqrt(1.0 - p_live));
    sigma = a * a.adjoint();
  } else {
    throw config_error("cat.sigma: expected diagonal|pure");
  }
  const density::DensityMatrix sigma_rho({"pol+", "pol-"}, sigma);
  const density::DensityMatrix beta =
      density::DensityMatrix::diagonal({"k0", "k1"}, Eigen::Vector2d(0.5, 0.5));
  const auto t = pointer_cat::TransitionModel::class_selective(2, 2);
  const auto rho_final = pointer_cat::final_state_density(t, sigma_rho, beta);
  artifacts.add("final_state.csv", csv::density_table(rho_final).body());

  // direction scan of the measurement operator on the emitted particle
  const waves::Grid1D dir_grid{0.0, 2.0 * std::numbers::pi * (directions - 1.0) / directions,
                               directions};
  std::vector<std::complex<double>> phi0(directions), phi1(directions);
  for (int k = 0; k < directions; ++k) {
    phi0[k] = 1.0;
    phi1[k] = std::sqrt(2.0) * std::cos(dir_grid.x(k));
  }
  pointer_cat::PointerMeasurement m;
  m.emission_waves.push_back(waves::WaveMode::normalized(dir_grid, phi0, "phi0"));
  m.emission_waves.push_back(waves::WaveMode::normalized(dir_grid, phi1, "phi1"));
  const auto reading = pointer_cat::measure_pointer(rho_final, m, 2, 2);
  csv::Table scan({"theta", "probability"});
  for (int k = 0; k < directions; ++k)
    scan.begin_row().cell(dir_grid.x(k)).cell(reading.direction_probability[k]);
  artifacts.add("direction_scan.csv", scan.body());

  // cat verdict after the amplification chain
  Eigen::Vector2cd cat_amp(std::sqrt(p_live), std::sqrt(1.0 - p_live));
  const auto cat_system = density::DensityMatrix::pure({"live", "dead"}, cat_amp);
  const auto outcome = [&] {
    if (env_n == 0) {
      // no environment: nothing decoheres, off-diagonal survives intact
      return decoherence::MeasurementOutcome{cat_system,
                                             {1.0, 1.0},
                                             {p_live, 1.0 - p_live},
                                             std::abs(cat_system.matrix()(0, 1))};
    }
    return decoherence::measure_with_chain(cat_system,
                                           decoherence::EnvironmentModel::uniform(c, env_n));
  }();
  const auto cat = pointer_cat::cat_verdict(outcome);
  artifacts.add("cat.csv", csv::density_table(cat.rho).body());
  csv::Table v({"quantity", "value"});
  v.begin_row().cell(std::string("p_live")).cell(cat.p_live);
  v.begin_row().cell(std::string("p_dead")).cell(cat.p_dead);
  v.begin_row().cell(std::string("off_diagonal")).cell(cat.off_diagonal);
  v.begin_row().cell(std::string("classical")).cell(std::int64_t{cat.classical ? 1 : 0});
  artifacts.add("verdict.csv", v.body());
}

void run_oracle(const ExperimentConfig& config, Artifacts& artifacts) {
  require_keys(config.params, {"filter"}, "oracle");
  const std::string filter = get_string(config.params, "filter", "*", "oracle");
  const auto reports = oracle::run_oracle_suite(filter, config.seed);
  std::ostringstream csv_body;
  oracle::write_report_csv(csv_body, reports);
  artifacts.add("oracle_report.csv", csv_body.str());
  oracle::print_report_table(std::cout, reports);
  for (const auto& r : reports) {
    if (!r.skipped && !r.pass)
      throw invariant_violation("oracle case failed: " + r.case_id);
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  require_keys(doc, {"experiment", "seed", "out", "params"}, "config");
  ExperimentConfig config;
  if (!doc.contains("experiment"))
    throw config_error("config.experiment: required field missing");
  config.experiment = get_string(doc, "experiment", "", "config");
  const auto& known = known_experiments();
  if (std::find(known.begin(), known.end(), config.experiment) == known.end())
    throw config_error("config.experiment: unknown experiment '" + config.experiment + "'");
  const std::int64_t seed = get_int(doc, "seed", 0, "config");
  if (seed < 0) throw config_error("config.seed: expected a non-negative integer");
  config.seed = static_cast<std::uint64_t>(seed);
  config.out_dir = get_string(doc, "out", "out", "config");
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw config_error("config.params: expected an object");
    config.params = doc.at("params");
  }
  return config;
}

json ExperimentConfig::to_json() const {
  return json{{"experiment", experiment},
              {"seed", seed},
              {"out", out_dir.string()},
              {"params", params}};
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("config parse error in " + path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> experiments{
      "two_slit", "which_path", "epr", "chsh", "weyl", "thermal", "decohere", "cat", "oracle"};
  return experiments;
}

RunResult run(const ExperimentConfig& config) {
  Artifacts artifacts{config.out_dir, {}};

  if (config.experiment == "two_slit") {
    run_two_slit(config, artifacts);
  } else if (config.experiment == "which_path") {
    run_which_path(config, artifacts);
  } else if (config.experiment == "epr") {
    run_epr(config, artifacts);
  } else if (config.experiment == "chsh") {
    run_chsh(config, artifacts);
  } else if (config.experiment == "weyl") {
    run_weyl(config, artifacts);
  } else if (config.experiment == "thermal") {
    run_thermal(config, artifacts);
  } else if (config.experiment == "decohere") {
    run_decohere(config, artifacts);
  } else if (config.experiment == "cat") {
    run_cat(config, artifacts);
  } else if (config.experiment == "oracle") {
    run_oracle(config, artifacts);
  } else {
    throw config_error("unknown experiment '" + config.experiment + "'");
  }

  // manifest: config echo, version, output checksums; the only place a
  // timestamp is allowed
  json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config.to_json();
  manifest["generated_at"] = [] {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string(buffer);
  }();
  json outputs = json::array();
  for (const auto& o : artifacts.outputs) {
    outputs.push_back({{"file", o.file.filename().string()},
                       {"bytes", o.bytes},
                       {"fnv1a", o.checksum}});
  }
  manifest["outputs"] = outputs;

  const auto manifest_path = config.out_dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open " + manifest_path.string());
  out << manifest.dump(2) << '\n';

  return RunResult{std::move(artifacts.outputs), manifest_path};
}

}  // namespace fieldlab::runner
