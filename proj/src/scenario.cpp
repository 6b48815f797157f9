#include "prequant/scenario.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "prequant/checks.hpp"
#include "prequant/config.hpp"
#include "prequant/dequantization.hpp"
#include "prequant/io.hpp"
#include "prequant/koopman.hpp"
#include "prequant/mixed.hpp"
#include "prequant/notation.hpp"
#include "prequant/quantization.hpp"

namespace prequant {
namespace {

using nlohmann::json;

const std::set<std::string> kCommon = {"command", "hbar", "beta0"};
const std::set<std::string> kGridKeys = {"p_min", "p_max", "q_min", "q_max", "n_p", "n_q"};
const std::set<std::string> kGaussianKeys = {"p0", "q0", "w_p", "w_q"};

std::set<std::string> keys(std::initializer_list<std::set<std::string>> groups) {
  std::set<std::string> out;
  for (const auto& g : groups) out.insert(g.begin(), g.end());
  return out;
}

Constants read_constants(const Config& cfg) {
  Constants c{cfg.number("hbar", 1.0), cfg.number("beta0", 1.0)};
  if (!(c.hbar > 0.0)) throw cfg.error("hbar", "must be positive");
  if (!(c.beta0 > 0.0)) throw cfg.error("beta0", "must be positive");
  return c;
}

PhasePolynomial read_phase(const Config& cfg, const std::string& key, const Constants& c) {
  try {
    return parse_phase_polynomial(cfg.text(key), c);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw cfg.error(key, e.what());
  }
}

int positive_int(const Config& cfg, const std::string& key, int fallback, int minimum = 1) {
  const int v = cfg.integer(key, fallback);
  if (v < minimum) throw cfg.error(key, "must be at least " + std::to_string(minimum));
  return v;
}

PhaseGrid read_grid(const Config& cfg, double extent, int points) {
  const double p_min = cfg.number("p_min", -extent), p_max = cfg.number("p_max", extent);
  const double q_min = cfg.number("q_min", -extent), q_max = cfg.number("q_max", extent);
  const int n_p = positive_int(cfg, "n_p", points, 5), n_q = positive_int(cfg, "n_q", points, 5);
  if (!(p_max > p_min)) throw cfg.error("p_max", "must exceed p_min");
  if (!(q_max > q_min)) throw cfg.error("q_max", "must exceed q_min");
  return build_grid(p_min, p_max, q_min, q_max, n_p, n_q);
}

GaussianParams read_gaussian(const Config& cfg) {
  GaussianParams g{cfg.number("p0", 0.0), cfg.number("q0", 0.0), cfg.number("w_p", 1.0), cfg.number("w_q", 1.0)};
  if (!(g.w_p > 0.0)) throw cfg.error("w_p", "must be positive");
  if (!(g.w_q > 0.0)) throw cfg.error("w_q", "must be positive");
  return g;
}

Interpolation read_interpolation(const Config& cfg) {
  const std::string v = cfg.text("interpolation", "quintic");
  if (v == "quintic") return Interpolation::quintic;
  if (v == "cubic") return Interpolation::cubic;
  throw cfg.error("interpolation", "expected quintic or cubic");
}

json matrix_json(const FockMatrix& M) { return json::parse(matrix_to_json(M)); }

Complex json_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw std::invalid_argument("expected a number or [re, im]");
}

Eigen::MatrixXcd read_square_matrix(const Config& cfg, const std::string& key) {
  try {
    const json doc = json::parse(cfg.text(key));
    if (!doc.is_array() || doc.empty()) throw std::invalid_argument("expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(doc.size());
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!doc[i].is_array() || static_cast<Eigen::Index>(doc[i].size()) != n) {
        throw std::invalid_argument("matrix must be square");
      }
      for (Eigen::Index j = 0; j < n; ++j) M(i, j) = json_complex(doc[i][j]);
    }
    return M;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw cfg.error(key, e.what());
  }
}

std::vector<Complex> read_vector(const Config& cfg, const std::string& key) {
  try {
    const json doc = json::parse(cfg.text(key));
    if (!doc.is_array() || doc.empty()) throw std::invalid_argument("expected a non-empty array");
    std::vector<Complex> out;
    for (const auto& v : doc) out.push_back(json_complex(v));
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw cfg.error(key, e.what());
  }
}

json schmidt_json(const SchmidtSpectrum& s) {
  return json{{"schmidt", s.values}, {"entangled", s.entangled}};
}

std::string snapshot_name(const char* stem, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d.csv", stem, k);
  return buf;
}

// ---------------------------------------------------------------- commands

int run_quantize(const Config& cfg, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, {"f", "N", "quadrature_action", "quadrature_angle"}}));
  const Constants c = read_constants(cfg);
  const PhasePolynomial f = read_phase(cfg, "f", c);
  const int N = positive_int(cfg, "N", std::max(10, f.degree()), 0);
  if (N < f.degree()) throw cfg.error("N", "must be at least the degree of f (" + std::to_string(f.degree()) + ")");

  const LadderPolynomial T = toeplitz_quantize(f);
  const LadderPolynomial hG = quantize_generator(f);
  const LadderPolynomial G = hG * (1.0 / c.hbar);
  const FockMatrix T_matrix = projected_section(T, N);
  const FockMatrix hG_matrix = projected_section(hG, N);
  json doc{{"f", to_string(f)},
           {"N", N},
           {"hbar", c.hbar},
           {"observable", {{"ladder", to_string(T)}, {"matrix", matrix_json(T_matrix)}}},
           {"generator",
            {{"ladder_hbar_G", to_string(hG)},
             {"ladder_G", to_string(G)},
             {"matrix_hbar_G", matrix_json(hG_matrix)},
             {"matrix_G", matrix_json(hG_matrix / c.hbar)}}}};
  if (cfg.has("quadrature_action") || cfg.has("quadrature_angle")) {
    const int qa = positive_int(cfg, "quadrature_action", 32);
    const int qt = positive_int(cfg, "quadrature_angle", 64, 2);
    const QuadratureScheme quad = build_quadrature(qa, qt, c);
    const PolarizationBasis basis(N, c);
    const FockMatrix Tn = toeplitz_quantize_numeric(f, basis, quad);
    const FockMatrix Gn = quantize_generator_numeric(f, basis, quad);
    doc["numeric"] = {{"observable_max_deviation", (Tn - T_matrix).cwiseAbs().maxCoeff()},
                      {"generator_max_deviation", (Gn - hG_matrix).cwiseAbs().maxCoeff()}};
  }
  out.write("quantize.json", doc.dump(2) + "\n");
  out.write("quantize.txt", "T_f = " + to_string(T) + "\nhbar G_f = " + to_string(hG) + "\nG_f = " + to_string(G) + "\n");
  log << "T_f = " << to_string(T) << "\nhbar G_f = " << to_string(hG) << "\n";
  return 0;
}

int run_dequantize(const Config& cfg, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, kGridKeys, {"operator", "ordering", "matrix", "maxdeg"}}));
  const Constants c = read_constants(cfg);
  if (cfg.has("operator") == cfg.has("matrix")) {
    throw ConfigError("config: dequantize needs exactly one of 'operator' or 'matrix'");
  }
  LadderPolynomial L;
  json doc;
  if (cfg.has("operator")) {
    try {
      L = parse_ladder_polynomial(cfg.text("operator"), Ordering::normal);
    } catch (const std::exception& e) {
      throw cfg.error("operator", e.what());
    }
  } else {
    const int maxdeg = positive_int(cfg, "maxdeg", 2, 0);
    FockMatrix M;
    try {
      const json m = json::parse(cfg.text("matrix"));
      M = m.is_object() ? matrix_from_json(m.dump()) : read_square_matrix(cfg, "matrix");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw cfg.error("matrix", e.what());
    }
    double residual = 0.0;
    L = matrix_to_ladder(M, maxdeg, &residual);
    doc["fit_residual"] = residual;
  }
  const PhasePolynomial Q = q_symbol(L), P = p_symbol(L), H = dequantize_hamiltonian(L);
  doc["operator"] = to_string(L);
  doc["q_symbol"] = to_string(Q);
  doc["p_symbol"] = to_string(P);
  doc["hamiltonian"] = to_string(H);
  out.write("dequantize.json", doc.dump(2) + "\n");
  out.write("dequantize.txt", "Q = " + to_string(Q) + "\nP = " + to_string(P) + "\nH = " + to_string(H) + "\n");
  if (cfg.has("n_p") || cfg.has("n_q") || cfg.has("p_min")) {
    const PhaseGrid g = read_grid(cfg, 3.0, 33);
    std::ostringstream csv;
    csv << "p,q,q_symbol,p_symbol,hamiltonian\n";
    for (int i = 0; i < g.n_p; ++i) {
      for (int j = 0; j < g.n_q; ++j) {
        const Complex z = z_from_pq(g.p(i), g.q(j), c);
        csv << format_number(g.p(i)) << ',' << format_number(g.q(j)) << ',' << format_number(Q(z).real()) << ','
            << format_number(P(z).real()) << ',' << format_number(H(z).real()) << '\n';
      }
    }
    out.write("symbols.csv", csv.str());
  }
  log << "Q = " << to_string(Q) << "\nP = " << to_string(P) << "\nH = " << to_string(H) << "\n";
  return 0;
}

int run_prequantum(const Config& cfg, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, kGridKeys, kGaussianKeys,
                         {"H", "initial", "n", "t_final", "snapshots", "interpolation", "phase"}}));
  const Constants c = read_constants(cfg);
  const PhasePolynomial H = read_phase(cfg, "H", c);
  if (H.degree() > 2) throw cfg.error("H", "exact propagator requires quadratic Hamiltonian");
  const PhaseGrid grid = read_grid(cfg, 10.0, 128);
  const double t_final = cfg.number("t_final", 1.0);
  const int snapshots = positive_int(cfg, "snapshots", 1);
  PropagationOptions options;
  options.interpolation = read_interpolation(cfg);
  const std::string phase = cfg.text("phase", "prequantum");
  if (phase != "prequantum" && phase != "none") throw cfg.error("phase", "expected prequantum or none");
  options.phase_free = phase == "none";

  KoopmanState s0;
  const std::string initial = cfg.text("initial", "gaussian");
  if (initial == "gaussian") {
    const GaussianParams g = read_gaussian(cfg);
    if (!packet_contained(g, grid)) log << "warning: initial packet is closer than 6 widths to the grid edge\n";
    s0 = gaussian_packet(g, grid);
  } else if (initial == "eta") {
    const int n = positive_int(cfg, "n", 0, 0);
    s0 = sample_state(grid, [&](double p, double q) { return eval_eta(n, z_from_pq(p, q, c), c); });
  } else {
    throw cfg.error("initial", "expected gaussian or eta");
  }

  const PrequantumGenerator G = build_generator(H, c);
  const PqField field = field_pq(G);
  out.write("generator.txt", "multiplier = " + to_string(G.multiplier) + "\nd/dp = " + to_string(field.d_p) +
                                 "\nd/dq = " + to_string(field.d_q) + "\n");
  out.write(snapshot_name("snapshot", 0), koopman_csv(s0));
  json frames = json::array();
  frames.push_back({{"time", 0.0}, {"norm", s0.norm_squared()}});
  double lost = 0.0;
  for (int k = 1; k <= snapshots; ++k) {
    PropagationDiagnostics d;
    // Every snapshot is propagated from the initial state in one exact step.
    const KoopmanState s = propagate_quadratic(H, s0, t_final * k / snapshots, c, options, &d);
    lost = d.mass_lost;
    out.write(snapshot_name("snapshot", k), koopman_csv(s));
    frames.push_back({{"time", s.time}, {"norm", s.norm_squared()}, {"mass_lost", d.mass_lost}});
  }
  out.write("summary.json", json{{"frames", frames}, {"mass_lost", lost}}.dump(2) + "\n");
  log << "propagated to t = " << t_final << ", mass lost " << lost << "\n";
  return 0;
}

int run_heisenberg(const Config& cfg, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, {"f", "H", "t"}}));
  const Constants c = read_constants(cfg);
  const PhasePolynomial f = read_phase(cfg, "f", c), H = read_phase(cfg, "H", c);
  if (H.degree() > 2) throw cfg.error("H", "exact propagator requires quadratic Hamiltonian");
  const double t = cfg.number("t", 1.0);
  const PhasePolynomial ft = heisenberg_evolve(f, H, t, c);
  out.write("heisenberg.txt", "f(t) = " + to_string(ft) + "\n");
  out.write("heisenberg.json", json{{"f", to_string(f)}, {"H", to_string(H)}, {"t", t}, {"f_t", to_string(ft)}}.dump(2) + "\n");
  log << "f(t) = " << to_string(ft) << "\n";
  return 0;
}

int run_sterngerlach(const Config& cfg, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, kGridKeys, kGaussianKeys,
                         {"m", "b0", "b1", "s_plus", "s_minus", "t_final", "dt", "solver", "interpolation",
                          "snapshots"}}));
  const Constants c = read_constants(cfg);
  SternGerlachConfig sg{cfg.number("m", 1.0), cfg.number("b0", 0.5), cfg.number("b1", 1.0), c.hbar};
  if (!(sg.m > 0.0)) throw cfg.error("m", "must be positive");
  const PhaseGrid grid = read_grid(cfg, 10.0, 256);
  const GaussianParams g = read_gaussian(cfg);
  if (!packet_contained(g, grid)) log << "warning: initial packet is closer than 6 widths to the grid edge\n";
  const Complex sp = cfg.complex("s_plus", std::sqrt(0.5)), sm = cfg.complex("s_minus", std::sqrt(0.5));
  const double norm = std::sqrt(std::norm(sp) + std::norm(sm));
  if (norm == 0.0) throw cfg.error("s_plus", "spinor must be non-zero");
  const double t_final = cfg.number("t_final", 1.0);
  const double dt = cfg.number("dt", 1.0 / 256);
  if (!(t_final >= 0.0)) throw cfg.error("t_final", "must be non-negative");
  if (!(dt > 0.0)) throw cfg.error("dt", "must be positive");
  const int steps = static_cast<int>(std::llround(t_final / dt));
  if (std::abs(steps * dt - t_final) > 1e-9 * std::max(1.0, t_final)) {
    throw cfg.error("dt", "must divide t_final into a whole number of steps");
  }
  const int snapshots = positive_int(cfg, "snapshots", 1);
  if (steps % snapshots != 0) throw cfg.error("snapshots", "must divide the number of steps");
  const std::string solver = cfg.text("solver", "semilagrangian");
  if (solver != "semilagrangian" && solver != "exact") throw cfg.error("solver", "expected exact or semilagrangian");
  EvolutionOptions options;
  options.interpolation = read_interpolation(cfg);

  const Complex a = sp / norm, b = sm / norm;
  const MixedState s0 = product_state(gaussian_packet(g, grid), {a, b});
  auto v0p = [&](double p, double q) { return a * g(p, q); };
  auto v0m = [&](double p, double q) { return b * g(p, q); };

  MixedState s = s0;
  double lost = 0.0;
  out.write(snapshot_name("density", 0), density_csv(s0));
  json frames = json::array();
  for (int k = 1; k <= snapshots; ++k) {
    const int chunk = steps / snapshots;
    if (solver == "exact") {
      s = sg_exact_state(sg, v0p, v0m, grid, dt * chunk * k);
    } else {
      EvolutionDiagnostics d;
      s = sg_numeric_evolve(sg, s, dt, chunk, options, &d);
      lost += d.mass_lost * s.norm_squared();
    }
    out.write(snapshot_name("density", k), density_csv(s));
    const SchmidtSpectrum sch = schmidt_spectrum(s);
    frames.push_back({{"time", s.time}, {"norm", s.norm_squared()}, {"schmidt", sch.values}, {"entangled", sch.entangled}});
  }
  const SchmidtSpectrum sch = schmidt_spectrum(s);
  json summary{{"solver", solver},
               {"time", s.time},
               {"norm", s.norm_squared()},
               {"populations", s.populations()},
               {"mass_lost", lost},
               {"frames", frames}};
  summary.update(schmidt_json(sch));
  out.write("summary.json", summary.dump(2) + "\n");
  log << "t = " << s.time << ", norm " << format_number(s.norm_squared()) << ", sigma = (" << sch.values[0] << ", "
      << sch.values[1] << "), entangled = " << (sch.entangled ? "true" : "false") << "\n";
  return 0;
}

int run_mixed(const Config& cfg, OutputWriter& out, std::ostream& log) {
  std::set<std::string> allowed = keys({kCommon, kGridKeys, kGaussianKeys,
                                        {"H0", "HQ", "spinor", "dt", "steps", "interpolation"}});
  for (int i = 1; i <= 9; ++i) {
    allowed.insert("coupling" + std::to_string(i) + "_g");
    allowed.insert("coupling" + std::to_string(i) + "_mu");
  }
  cfg.require_only(allowed);
  const Constants c = read_constants(cfg);
  const PhasePolynomial H0 = cfg.has("H0") ? read_phase(cfg, "H0", c) : PhasePolynomial();
  const std::vector<Complex> spinor = read_vector(cfg, "spinor");
  const auto d = static_cast<Eigen::Index>(spinor.size());
  const Eigen::MatrixXcd HQ = cfg.has("HQ") ? read_square_matrix(cfg, "HQ") : Eigen::MatrixXcd::Zero(d, d);
  if (HQ.rows() != d) throw cfg.error("HQ", "dimension must match the spinor");
  std::vector<Coupling> couplings;
  for (int i = 1; i <= 9; ++i) {
    const std::string gk = "coupling" + std::to_string(i) + "_g", mk = "coupling" + std::to_string(i) + "_mu";
    if (cfg.has(gk) != cfg.has(mk)) throw ConfigError("config: " + gk + " and " + mk + " must be given together");
    if (!cfg.has(gk)) continue;
    Coupling cp{read_phase(cfg, gk, c), read_square_matrix(cfg, mk)};
    if (cp.mu.rows() != d) throw cfg.error(mk, "dimension must match the spinor");
    couplings.push_back(std::move(cp));
  }
  const PhaseGrid grid = read_grid(cfg, 10.0, 128);
  const GaussianParams g = read_gaussian(cfg);
  const double dt = cfg.number("dt", 0.01);
  if (!(dt > 0.0)) throw cfg.error("dt", "must be positive");
  const int steps = positive_int(cfg, "steps", 100, 0);

  double norm = 0.0;
  for (Complex v : spinor) norm += std::norm(v);
  if (norm == 0.0) throw cfg.error("spinor", "must be non-zero");
  std::vector<Complex> unit = spinor;
  for (Complex& v : unit) v /= std::sqrt(norm);

  const MixedEvolver evolver = build_mixed_generator(H0, HQ, couplings, c, read_interpolation(cfg));
  const MixedState s0 = product_state(gaussian_packet(g, grid), unit);
  EvolutionDiagnostics diag;
  const MixedState s = evolver.evolve(s0, dt, steps, &diag);
  out.write(snapshot_name("density", 0), density_csv(s0));
  out.write(snapshot_name("density", 1), density_csv(s));
  const SchmidtSpectrum sch = schmidt_spectrum(s);
  json summary{{"time", s.time},
               {"norm", s.norm_squared()},
               {"populations", s.populations()},
               {"commuting", evolver.commuting()},
               {"mass_lost", diag.mass_lost}};
  summary.update(schmidt_json(sch));
  out.write("summary.json", summary.dump(2) + "\n");
  log << "t = " << s.time << ", norm " << format_number(s.norm_squared()) << ", "
      << (evolver.commuting() ? "exact common eigenbasis" : "Strang splitting") << "\n";
  return 0;
}

int run_check(const Config& cfg, const std::string& override_filter, OutputWriter& out, std::ostream& log) {
  cfg.require_only(keys({kCommon, {"filter"}}));
  const std::string filter = override_filter.empty() ? cfg.text("filter", "") : override_filter;
  const std::vector<CheckResult> results = run_checks(filter);
  json doc = json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    log << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.value << " <= " << r.tolerance
        << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
    doc.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"value", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
                   {"tolerance", r.tolerance},
                   {"detail", r.detail}});
  }
  if (results.empty()) {
    log << "no check matches '" << filter << "'\n";
    all = false;
  }
  out.write("checks.json", doc.dump(2) + "\n");
  log << results.size() << " checks, " << (all ? "all passed" : "failures present") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int run_scenario(const std::string& config_text, const ScenarioOptions& options, std::ostream& log,
                 const std::string& source) {
  const Config cfg = Config::parse(config_text, source);
  std::string command = cfg.text("command", "");
  if (command.empty()) {
    if (options.check_filter.empty()) throw ConfigError(source + ": missing required key 'command'");
    command = "check";
  }
  static const std::set<std::string> kCommands = {"quantize", "dequantize", "prequantum", "heisenberg",
                                                  "sterngerlach", "mixed", "check"};
  if (!kCommands.count(command)) throw cfg.error("command", "unknown command '" + command + "'");

  OutputWriter out(options.output);
  int status = 0;
  if (command == "quantize") status = run_quantize(cfg, out, log);
  else if (command == "dequantize") status = run_dequantize(cfg, out, log);
  else if (command == "prequantum") status = run_prequantum(cfg, out, log);
  else if (command == "heisenberg") status = run_heisenberg(cfg, out, log);
  else if (command == "sterngerlach") status = run_sterngerlach(cfg, out, log);
  else if (command == "mixed") status = run_mixed(cfg, out, log);
  else status = run_check(cfg, options.check_filter, out, log);
  out.finish();
  return status;
}

}  // namespace prequant
