#include "fieldlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include "fieldlab/dense.hpp"
#include "fieldlab/decoherence.hpp"
#include "fieldlab/density.hpp"

namespace fieldlab::oracle {

using fock::Complex;
using fock::FockBasis;
using fock::FockState;
using fock::ModeId;
using fock::ModeSet;
using fock::OpString;

namespace {

struct DenseEpr {
  FockBasis basis;
  Eigen::MatrixXcd a_plus, a_minus, b_plus, b_minus;
  Eigen::VectorXcd singlet;

  DenseEpr()
      : basis(ModeSet::fermionic({"a+", "a-", "b+", "b-"})),
        a_plus(fock::dense_operator(basis, OpString::annihilate(ModeId{0}))),
        a_minus(fock::dense_operator(basis, OpString::annihilate(ModeId{1}))),
        b_plus(fock::dense_operator(basis, OpString::annihilate(ModeId{2}))),
        b_minus(fock::dense_operator(basis, OpString::annihilate(ModeId{3}))) {
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(basis.size());
    vac(0) = 1.0;
    const double n = 1.0 / std::sqrt(2.0);
    singlet = n * (a_plus.adjoint() * b_minus.adjoint() * vac -
                   a_minus.adjoint() * b_plus.adjoint() * vac);
  }

  Eigen::MatrixXcd rotated(const Eigen::MatrixXcd& plus, const Eigen::MatrixXcd& minus, int sign,
                           double theta, double phi) const {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex ephi = std::polar(1.0, phi);
    if (sign == +1) return c * plus + ephi * s * minus;
    return -std::conj(ephi) * s * plus + c * minus;
  }
};

const DenseEpr& dense_epr() {
  static const DenseEpr instance;
  return instance;
}

}  // namespace

experiments::CoincidenceTable dense_epr_table(
    const std::optional<experiments::FilterSpec>& filter, double alpha, double beta) {
  const DenseEpr& epr = dense_epr();
  Eigen::VectorXcd source = epr.singlet;
  if (filter) {
    const Eigen::MatrixXcd up =
        epr.rotated(epr.a_plus, epr.a_minus, +1, filter->theta, filter->phi);
    const Eigen::MatrixXcd down =
        epr.rotated(epr.a_plus, epr.a_minus, -1, filter->theta, filter->phi);
    const Eigen::MatrixXcd f = filter->kind == experiments::FilterSpec::Kind::projection
                                   ? (up.adjoint() * up).eval()
                                   : (up.adjoint() * down + down.adjoint() * up).eval();
    source = f * source;
  }

  auto amp = [&](int s1, int s2) {
    const Eigen::MatrixXcd d1 = epr.rotated(epr.a_plus, epr.a_minus, s1, alpha, 0.0);
    const Eigen::MatrixXcd d2 = epr.rotated(epr.b_plus, epr.b_minus, s2, beta, 0.0);
    return (d1 * (d2 * source))(0);
  };

  experiments::CoincidenceTable t;
  t.pp = std::norm(amp(+1, +1));
  t.pm = std::norm(amp(+1, -1));
  t.mp = std::norm(amp(-1, +1));
  t.mm = std::norm(amp(-1, -1));
  const double total = t.sum();
  if (total <= 0.0) throw invariant_violation("dense_epr_table: all branches vanish");
  t.pp /= total;
  t.pm /= total;
  t.mp /= total;
  t.mm /= total;
  return t;
}

double dense_bell_correlation(double alpha, double beta) {
  return dense_epr_table(std::nullopt, alpha, beta).correlation();
}

Eigen::Matrix2cd dense_singlet_reduced(int keep_arm) {
  if (keep_arm != 1 && keep_arm != 2) throw domain_error("dense_singlet_reduced: arm must be 1 or 2");
  // two-qubit amplitudes v(s1, s2) = <V| b_{s2} a_{s1} |singlet>
  const DenseEpr& epr = dense_epr();
  Eigen::Matrix2cd v;
  const Eigen::MatrixXcd* arm1[2] = {&epr.a_plus, &epr.a_minus};
  const Eigen::MatrixXcd* arm2[2] = {&epr.b_plus, &epr.b_minus};
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      v(s1, s2) = ((*arm1[s1]) * ((*arm2[s2]) * epr.singlet))(0);
    }
  }
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int s = 0; s < 2; ++s) {
    for (int sp = 0; sp < 2; ++sp) {
      for (int e = 0; e < 2; ++e) {
        if (keep_arm == 1) {
          out(s, sp) += v(s, e) * std::conj(v(sp, e));
        } else {
          out(s, sp) += v(e, s) * std::conj(v(e, sp));
        }
      }
    }
  }
  return out;
}

Eigen::Matrix2cd environment_traced_pointer(double p1, double p2, double phase,
                                            std::span<const double> overlaps) {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw domain_error("environment_traced_pointer: branch probabilities must sum to 1");
  const int n = static_cast<int>(overlaps.size());
  if (n < 0) throw domain_error("environment_traced_pointer: negative N");

  // modes: pointer1, pointer2, then (e_a, e_b) per environment constituent
  std::vector<std::string> labels = {"B1", "B2"};
  for (int m = 0; m < n; ++m) {
    labels.push_back("e" + std::to_string(m) + "a");
    labels.push_back("e" + std::to_string(m) + "b");
  }
  const ModeSet set(fock::Statistics::fermionic, std::move(labels));
  const fock::Ket vac = fock::Ket::vacuum(set);

  // branch 1: B1 and every d^(1) = e_a excited
  OpString branch1 = OpString::create(ModeId{0}, std::sqrt(p1));
  for (int m = 0; m < n; ++m)
    branch1 = OpString::create(ModeId{static_cast<std::uint32_t>(2 + 2 * m)}) * branch1;
  fock::Ket state = fock::apply(branch1, vac);

  // branch 2: B2 and every d^(2) = c e_a + sqrt(1 - c^2) e_b excited
  fock::Ket branch2 = fock::apply(
      OpString::create(ModeId{1}, std::sqrt(p2) * std::polar(1.0, phase)), vac);
  for (int m = 0; m < n; ++m) {
    const double c = overlaps[m];
    if (c < 0.0 || c >= 1.0)
      throw domain_error("environment_traced_pointer: overlaps must lie in [0, 1)");
    fock::OpSum d2;
    d2 += OpString::create(ModeId{static_cast<std::uint32_t>(2 + 2 * m)}, c);
    d2 += OpString::create(ModeId{static_cast<std::uint32_t>(2 + 2 * m + 1)},
                           std::sqrt(1.0 - c * c));
    branch2 = fock::apply(d2, branch2);
  }
  state += branch2;

  // partial trace over the environment modes by grouping equal patterns;
  // the pointer modes have the lowest indices, so stripping them off a
  // canonical state costs no reordering sign
  std::map<FockState, std::array<Complex, 2>> grouped;
  for (const auto& [fs, amp] : state.terms()) {
    const std::uint32_t on_b1 = fs.count(ModeId{0});
    const std::uint32_t on_b2 = fs.count(ModeId{1});
    if (on_b1 + on_b2 != 1)
      throw invariant_violation("environment_traced_pointer: term without a pointer excitation");
    std::vector<fock::ModeOccupation> env;
    for (const auto& occ : fs.occupations()) {
      if (occ.mode >= 2) env.push_back(occ);
    }
    FockState key(fock::Statistics::fermionic, std::move(env));
    auto& slot = grouped[key];
    slot[on_b1 ? 0 : 1] += amp;
  }

  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (const auto& [key, amps] : grouped) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) rho(i, j) += amps[i] * std::conj(amps[j]);
    }
  }
  return rho;
}

Eigen::Matrix2cd environment_traced_pointer(double p1, double p2, double phase, double overlap,
                                            int n) {
  const std::vector<double> overlaps(static_cast<std::size_t>(n), overlap);
  return environment_traced_pointer(p1, p2, phase, overlaps);
}

double bisected_first_fringe_zero(const waves::SlitGeometry& g) {
  g.validate();
  // walk out from theta = 0 until the amplitude changes sign, then bisect
  const double step = 1e-3;
  double lo = 0.0;
  double f_lo = waves::two_slit_amplitude(g, lo);
  double hi = step;
  while (hi < std::numbers::pi / 2) {
    const double f_hi = waves::two_slit_amplitude(g, hi);
    if (f_lo * f_hi <= 0.0) break;
    lo = hi;
    f_lo = f_hi;
    hi += step;
  }
  if (hi >= std::numbers::pi / 2)
    throw domain_error("bisected_first_fringe_zero: no sign change below pi/2");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = waves::two_slit_amplitude(g, mid);
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

double tracked_weyl_velocity(const waves::WeylPacket& p, const waves::Grid1D& grid,
                             double t_start, double t_end) {
  if (!(t_end > t_start)) throw domain_error("tracked_weyl_velocity: need t_end > t_start");
  const double x0 = waves::packet_peak_position(waves::weyl_mode(p, grid, t_start));
  const double x1 = waves::packet_peak_position(waves::weyl_mode(p, grid, t_end));
  return (x1 - x0) / (t_end - t_start);
}

namespace {

struct OracleCase {
  std::string id;
  double tolerance;
  bool enabled_by_default;
  std::function<std::pair<double, double>()> run;  // (primary, oracle)
};

std::vector<OracleCase> build_cases(std::uint64_t seed) {
  std::vector<OracleCase> cases;
  const auto singlet = experiments::EprState::singlet();

  // Bell correlations at seeded angle pairs: sparse algebra vs dense matrices.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < 12; ++k) {
    const double a = angle(rng);
    const double b = angle(rng);
    cases.push_back({"bell.E." + std::to_string(k), 1e-9, true, [=]() {
                       return std::pair(experiments::bell_correlation(singlet, a, b),
                                        dense_bell_correlation(a, b));
                     }});
  }

  cases.push_back({"bell.chsh", 1e-9, true, [=]() {
                     const experiments::BellConfig config;
                     const auto r = experiments::chsh(singlet, config);
                     double dense_sum = 0.0;
                     const auto& s = config.chsh_settings;
                     dense_sum = dense_bell_correlation(s[0].first, s[0].second) -
                                 dense_bell_correlation(s[1].first, s[1].second) +
                                 dense_bell_correlation(s[2].first, s[2].second) +
                                 dense_bell_correlation(s[3].first, s[3].second);
                     return std::pair(r.statistic, std::abs(dense_sum));
                   }});

  cases.push_back({"epr.table.same_axis.pm", 1e-10, true, [=]() {
                     const auto t = experiments::epr_coincidence_table(singlet, std::nullopt, 0.0, 0.0);
                     const auto d = dense_epr_table(std::nullopt, 0.0, 0.0);
                     return std::pair(t.pm, d.pm);
                   }});
  cases.push_back({"epr.table.filterF.pm", 1e-10, true, [=]() {
                     const experiments::FilterSpec f{experiments::FilterSpec::Kind::projection, 0.0, 0.0};
                     const auto t = experiments::epr_coincidence_table(singlet, f, 0.0, 0.0);
                     const auto d = dense_epr_table(f, 0.0, 0.0);
                     return std::pair(t.pm, d.pm);
                   }});
  cases.push_back({"epr.table.filterT.pp", 1e-10, true, [=]() {
                     const experiments::FilterSpec f{experiments::FilterSpec::Kind::spin_flip, 0.0, 0.0};
                     const auto t = experiments::epr_coincidence_table(singlet, f, 0.0, 0.0);
                     const auto d = dense_epr_table(f, 0.0, 0.0);
                     return std::pair(t.pp, d.pp);
                   }});

  cases.push_back({"singlet.ptrace.diag", 1e-12, true, []() {
                     // primary: density-module partial trace of the 4-dim singlet state
                     Eigen::VectorXcd v(4);
                     const double n = 1.0 / std::sqrt(2.0);
                     v << 0.0, n, -n, 0.0;
                     const auto rho = density::DensityMatrix::pure({"uu", "ud", "du", "dd"}, v);
                     const auto arm1 = density::partial_trace(rho, 2, 2, true);
                     return std::pair(arm1.matrix()(0, 0).real(),
                                      dense_singlet_reduced(1)(0, 0).real());
                   }});
  cases.push_back({"singlet.ptrace.offdiag", 1e-12, true, []() {
                     Eigen::VectorXcd v(4);
                     const double n = 1.0 / std::sqrt(2.0);
                     v << 0.0, n, -n, 0.0;
                     const auto rho = density::DensityMatrix::pure({"uu", "ud", "du", "dd"}, v);
                     const auto arm1 = density::partial_trace(rho, 2, 2, true);
                     return std::pair(std::abs(arm1.matrix()(0, 1)),
                                      std::abs(dense_singlet_reduced(1)(0, 1)));
                   }});

  for (int n = 1; n <= 10; ++n) {
    cases.push_back({"envtrace.N" + std::to_string(n), 1e-10, true, [=]() {
                       const double c = 0.6;
                       Eigen::VectorXcd v(2);
                       v << std::sqrt(0.5), std::sqrt(0.5);
                       const auto system = density::DensityMatrix::pure({"1", "2"}, v);
                       const auto outcome = decoherence::measure_with_chain(
                           system, decoherence::EnvironmentModel::uniform(c, n));
                       const auto exact = environment_traced_pointer(0.5, 0.5, 0.0, c, n);
                       return std::pair(outcome.off_diagonal_magnitude, std::abs(exact(0, 1)));
                     }});
  }

  cases.push_back({"weyl.velocity.m1", 0.018, true, []() {
                     waves::WeylPacket p{1.25, 0.1, 1.0, 0.0, +1, 64};
                     const waves::Grid1D grid{-40.0, 50.0, 4501};
                     return std::pair(tracked_weyl_velocity(p, grid, 0.0, 10.0),
                                      p.group_velocity());
                   }});
  cases.push_back({"weyl.velocity.m0", 1e-3, true, []() {
                     waves::WeylPacket p{1.0, 0.4, 0.0, 0.0, +1, 64};
                     const waves::Grid1D grid{-40.0, 50.0, 4501};
                     return std::pair(tracked_weyl_velocity(p, grid, 0.0, 10.0), 1.0);
                   }});

  cases.push_back({"slit.first_zero", 1e-9, true, []() {
                     const waves::SlitGeometry g{1.0, 0.2, 50.0, 100.0};
                     return std::pair(bisected_first_fringe_zero(g),
                                      waves::first_fringe_zero_angle(g));
                   }});

  cases.push_back({"thermal.boltzmann_ratio", 1e-12, true, []() {
                     density::ThermalConfig cfg;
                     cfg.temperature = 1.0;
                     cfg.energies = {0.0, std::log(2.0)};
                     const auto rho = density::thermal_density(cfg);
                     return std::pair(rho.matrix()(0, 0).real(), 2.0 / 3.0);
                   }});
  cases.push_back({"thermal.entropy", 1e-9, true, []() {
                     Eigen::VectorXd w(2);
                     w << 2.0 / 3.0, 1.0 / 3.0;
                     const auto rho = density::DensityMatrix::diagonal({"a", "b"}, w);
                     const double direct = (2.0 / 3.0) * std::log(1.5) + (1.0 / 3.0) * std::log(3.0);
                     return std::pair(density::boltzmann_entropy(rho), direct);
                   }});

  // Harness self-test: a deliberately impossible tolerance on an inexact
  // quantity. Runs only when named explicitly.
  cases.push_back({"selftest.zero_tolerance", 0.0, false, []() {
                     waves::WeylPacket p{1.25, 0.1, 1.0, 0.0, +1, 64};
                     const waves::Grid1D grid{-40.0, 50.0, 4501};
                     return std::pair(tracked_weyl_velocity(p, grid, 0.0, 10.0),
                                      p.group_velocity());
                   }});
  return cases;
}

bool matches(std::string_view token, std::string_view id) {
  if (token == "*") return true;
  if (!token.empty() && token.back() == '*') return id.starts_with(token.substr(0, token.size() - 1));
  return token == id;
}

std::vector<std::string> split_tokens(std::string_view filter) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= filter.size()) {
    const std::size_t comma = filter.find(',', start);
    const std::string_view token =
        filter.substr(start, comma == std::string_view::npos ? filter.size() - start : comma - start);
    if (!token.empty()) tokens.emplace_back(token);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return tokens;
}

}  // namespace

std::vector<OracleReport> run_oracle_suite(std::string_view filter, std::uint64_t seed) {
  const auto cases = build_cases(seed);
  const auto tokens = split_tokens(filter);
  std::vector<OracleReport> reports;

  std::vector<bool> token_used(tokens.size(), false);
  for (const auto& c : cases) {
    bool selected = false;
    bool exact = false;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (matches(tokens[t], c.id)) {
        token_used[t] = true;
        selected = true;
        if (tokens[t] == c.id) exact = true;
      }
    }
    if (!selected) continue;
    if (!c.enabled_by_default && !exact) continue;

    const auto [primary, reference] = c.run();
    OracleReport r;
    r.case_id = c.id;
    r.primary = primary;
    r.oracle = reference;
    r.abs_deviation = std::abs(primary - reference);
    const double scale = std::max(std::abs(primary), std::abs(reference));
    r.rel_deviation = scale > 0.0 ? r.abs_deviation / scale : 0.0;
    r.tolerance = c.tolerance;
    r.pass = r.abs_deviation <= c.tolerance;
    reports.push_back(std::move(r));
  }

  // unknown exact tokens are reported as skipped, not failed
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (token_used[t] || tokens[t] == "*" || tokens[t].back() == '*') continue;
    OracleReport r;
    r.case_id = tokens[t];
    r.skipped = true;
    reports.push_back(std::move(r));
  }
  std::sort(reports.begin(), reports.end(),
            [](const OracleReport& a, const OracleReport& b) { return a.case_id < b.case_id; });
  return reports;
}

void write_report_csv(std::ostream& out, const std::vector<OracleReport>& reports) {
  out << "case_id,primary,oracle,abs_deviation,rel_deviation,tolerance,pass,skipped\n";
  out << std::setprecision(17);
  for (const auto& r : reports) {
    out << r.case_id << ',' << r.primary << ',' << r.oracle << ',' << r.abs_deviation << ','
        << r.rel_deviation << ',' << r.tolerance << ',' << (r.pass ? 1 : 0) << ','
        << (r.skipped ? 1 : 0) << '\n';
  }
}

void print_report_table(std::ostream& out, const std::vector<OracleReport>& reports) {
  out << std::left << std::setw(28) << "case" << std::setw(22) << "primary" << std::setw(22)
      << "oracle" << std::setw(14) << "abs dev" << std::setw(12) << "tol"
      << "status\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(28) << r.case_id;
    if (r.skipped) {
      out << "-- skipped (unknown case id) --\n";
      continue;
    }
    out << std::setw(22) << std::setprecision(12) << r.primary << std::setw(22) << r.oracle
        << std::setw(14) << std::setprecision(3) << r.abs_deviation << std::setw(12)
        << r.tolerance << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace fieldlab::oracle
