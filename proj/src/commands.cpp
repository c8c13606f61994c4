#include "polycurve/commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "polycurve/io.hpp"
#include "polycurve/parallel.hpp"
#include "polycurve/polycurve.hpp"

namespace polycurve::cli {

namespace {

struct Params {
  const std::map<std::string, std::string>& map;

  void require_known(std::initializer_list<const char*> known) const {
    for (const auto& [key, value] : map) {
      (void)value;
      if (std::find_if(known.begin(), known.end(),
                       [&](const char* k) { return key == k; }) == known.end())
        throw InvalidArgument("unknown parameter key: " + key);
    }
  }
  bool has(const std::string& key) const { return map.count(key) > 0; }
  std::string str(const std::string& key, const std::string& fallback = "") const {
    auto it = map.find(key);
    return it == map.end() ? fallback : it->second;
  }
  double real(const std::string& key) const {
    auto it = map.find(key);
    if (it == map.end()) throw InvalidArgument("missing parameter: " + key);
    return parse_real(key, it->second);
  }
  double real_or(const std::string& key, double fallback) const {
    auto it = map.find(key);
    return it == map.end() ? fallback : parse_real(key, it->second);
  }
  int integer(const std::string& key) const {
    auto it = map.find(key);
    if (it == map.end()) throw InvalidArgument("missing parameter: " + key);
    return parse_int(key, it->second);
  }
  int integer_or(const std::string& key, int fallback) const {
    auto it = map.find(key);
    return it == map.end() ? fallback : parse_int(key, it->second);
  }

  static double parse_real(const std::string& key, const std::string& text) {
    size_t consumed = 0;
    double value = 0;
    try {
      value = std::stod(text, &consumed);
    } catch (const std::exception&) {
      throw InvalidArgument("parameter " + key + " is not a real number: " + text);
    }
    if (consumed != text.size())
      throw InvalidArgument("parameter " + key + " is not a real number: " + text);
    return value;
  }
  static int parse_int(const std::string& key, const std::string& text) {
    size_t consumed = 0;
    int value = 0;
    try {
      value = std::stoi(text, &consumed);
    } catch (const std::exception&) {
      throw InvalidArgument("parameter " + key + " is not an integer: " + text);
    }
    if (consumed != text.size())
      throw InvalidArgument("parameter " + key + " is not an integer: " + text);
    return value;
  }
};

/// "min:max:count" inclusive grid specification.
std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ':')) parts.push_back(piece);
  if (parts.size() != 3)
    throw InvalidArgument("parameter " + key + " must look like min:max:count");
  const double lo = Params::parse_real(key, parts[0]);
  const double hi = Params::parse_real(key, parts[1]);
  const int count = Params::parse_int(key, parts[2]);
  if (count <= 0) throw InvalidArgument("parameter " + key + ": empty grid");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
  return grid;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty())
    out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  else
    io::write_file(config.output, text);
}

// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"family", "r", "a2", "n", "n-eval"});
  const std::string family = params.str("family", "r-circle");
  const Eigen::Index n_eval = params.integer_or("n-eval", 256);

  struct Check {
    std::string name;
    double max_norm;
    double l2_norm;
  };
  std::vector<Check> checks;
  FrenetDatad frenet;
  ClassificationCheckd relation;
  std::string curve_json;
  int r = 2;

  if (family == "r-circle") {
    r = params.integer("r");
    const int n = params.integer_or("n", 3);
    const auto curve = make_r_circle<double>(r, n);
    curve_json = io::curve_to_json(curve);
    if (r == 2) {
      const auto ode = residual_biharmonic_ode(curve, n_eval);
      checks.push_back({"extrinsic_ode_r2", ode.max_norm, ode.l2_norm});
    } else if (r == 3) {
      const auto ode = residual_triharmonic_ode(curve, n_eval);
      checks.push_back({"extrinsic_ode_r3", ode.max_norm, ode.l2_norm});
    } else if (r == 4) {
      const auto ode = residual_fourharmonic_ode(curve, n_eval);
      checks.push_back({"extrinsic_ode_r4", ode.max_norm, ode.l2_norm});
    }
    const auto intrinsic = residual_intrinsic(curve, r, SpaceFormd::unit_sphere(), n_eval);
    checks.push_back({"intrinsic_r", intrinsic.max_norm, intrinsic.l2_norm});
    frenet = frenet_data(curve);
    relation = check_relation<double>(1.0, r, frenet.k.maxCoeff(), 0.0);
  } else if (family == "biharmonic-two-freq") {
    r = 2;
    const double a2 = params.real("a2");
    const int n = params.integer_or("n", 3);
    const auto built = make_biharmonic_two_freq(std::sqrt(a2), n);
    curve_json = io::curve_to_json(built.curve);
    const auto ode = residual_biharmonic_ode(built.curve, n_eval);
    checks.push_back({"extrinsic_ode_r2", ode.max_norm, ode.l2_norm});
    const auto intrinsic = residual_intrinsic(built.curve, 2, SpaceFormd::unit_sphere(), n_eval);
    checks.push_back({"intrinsic_r", intrinsic.max_norm, intrinsic.l2_norm});
    frenet = frenet_data(built.curve);
    relation = check_relation<double>(1.0, 2, frenet.k.maxCoeff(),
                                      frenet.torsion_globally_defined ? frenet.tau.maxCoeff() : 0.0);
  } else {
    throw InvalidArgument("unknown family: " + family);
  }

  double worst = 0;
  for (const auto& check : checks) worst = std::max(worst, check.max_norm);
  const bool passed = worst <= kSolutionTolAnalytic && relation.satisfied;

  std::string text = "{\"family\":\"" + family + "\",\"r\":" + std::to_string(r);
  text += ",\"checks\":[";
  for (size_t i = 0; i < checks.size(); ++i) {
    if (i) text += ",";
    text += "{\"name\":\"" + checks[i].name + "\",\"max_norm\":" +
            io::format_real(checks[i].max_norm) +
            ",\"l2_norm\":" + io::format_real(checks[i].l2_norm) + "}";
  }
  text += "],\"frenet\":{\"k_sq\":" + io::format_real(frenet.k.maxCoeff() * frenet.k.maxCoeff());
  text += ",\"tau_abs\":" +
          io::format_real(frenet.torsion_globally_defined ? frenet.tau.maxCoeff() : 0.0);
  text += ",\"relation_satisfied\":" + std::string(relation.satisfied ? "true" : "false") + "}";
  text += ",\"threshold\":" + io::format_real(kSolutionTolAnalytic);
  text += ",\"passed\":" + std::string(passed ? "true" : "false");
  text += ",\"curve\":" + curve_json + "}";
  emit(config, out, text);
  return passed ? kExitOk : kExitNumerical;
}

int cmd_residual(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"kind", "r", "n-eval"});
  if (config.inputs.size() != 1)
    throw InvalidArgument("residual needs exactly one input curve file");
  const std::string kind = params.str("kind", "intrinsic");
  const Eigen::Index n_eval = params.integer_or("n-eval", 256);
  const auto curve = io::read_curve_json(config.inputs[0]);

  auto dispatch = [&](const auto& c) -> ResidualReportd {
    using Curve = std::decay_t<decltype(c)>;
    constexpr bool analytic = std::is_same_v<Curve, CircleAnsatzCurved>;
    if (kind == "geodesic") {
      if constexpr (analytic) return residual_geodesic(c, n_eval);
      else return residual_geodesic(c);
    }
    if (kind == "biharmonic") {
      if constexpr (analytic) return residual_biharmonic_ode(c, n_eval);
      else return residual_biharmonic_ode(c);
    }
    if (kind == "triharmonic") {
      if constexpr (analytic) return residual_triharmonic_ode(c, n_eval);
      else return residual_triharmonic_ode(c);
    }
    if (kind == "fourharmonic") {
      if constexpr (analytic) return residual_fourharmonic_ode(c, n_eval);
      else return residual_fourharmonic_ode(c);
    }
    if (kind == "intrinsic") {
      const int r = params.integer("r");
      if constexpr (analytic) return residual_intrinsic(c, r, SpaceFormd::unit_sphere(), n_eval);
      else return residual_intrinsic(c, r);
    }
    if (kind == "extrinsic") {
      const int r = params.integer("r");
      if constexpr (analytic) return residual_extrinsic(c, r, n_eval);
      else return residual_extrinsic(c, r);
    }
    throw InvalidArgument("unknown residual kind: " + kind);
  };
  const ResidualReportd report = std::visit(dispatch, curve);
  emit(config, out, config.format == "csv" ? io::to_csv(report) : io::to_json(report));
  return kExitOk;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"K", "r", "k", "tau"});
  std::string text = io::classification_csv_header() + "\n";
  if (!config.inputs.empty()) {
    if (config.inputs.size() != 1)
      throw InvalidArgument("classify takes at most one input CSV");
    std::istringstream stream(io::read_file(config.inputs[0]));
    std::string line;
    bool first = true;
    int rows = 0;
    while (std::getline(stream, line)) {
      if (line.empty()) continue;
      if (first && line.find_first_not_of("Krktau, \t") == std::string::npos) {
        first = false;
        continue;  // header row
      }
      first = false;
      std::stringstream fields(line);
      std::string field;
      std::vector<std::string> values;
      while (std::getline(fields, field, ',')) values.push_back(field);
      if (values.size() != 4)
        throw InvalidArgument("classify CSV rows need K,r,k,tau");
      const auto check = check_relation<double>(
          Params::parse_real("K", values[0]), Params::parse_int("r", values[1]),
          Params::parse_real("k", values[2]), Params::parse_real("tau", values[3]));
      text += io::classification_csv_row(check) + "\n";
      ++rows;
    }
    if (rows == 0) throw InvalidArgument("classify CSV contains no data rows");
  } else {
    const auto check = check_relation<double>(params.real("K"), params.integer("r"),
                                              params.real("k"), params.real("tau"));
    text += io::classification_csv_row(check) + "\n";
  }
  emit(config, out, text);
  return kExitOk;
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known(
      {"system", "r", "K", "tau", "eps1", "eps2", "eps3", "freq-axis", "simplex-axis"});
  const std::string system = params.str("system", "single-freq");

  if (system == "single-freq") {
    const int r = params.integer("r");
    const auto roots = solve_single_freq_polynomial<double>(r);
    std::string text = "{\"system\":\"single-freq\",\"r\":" + std::to_string(r) + ",\"roots\":[";
    for (size_t i = 0; i < roots.size(); ++i) {
      if (i) text += ",";
      text += "{\"a_sq\":" + io::format_real(roots[i].a_sq) +
              ",\"is_geodesic\":" + (roots[i].is_geodesic ? "true" : "false") + "}";
    }
    text += "]}";
    emit(config, out, text);
    return kExitOk;
  }
  if (system == "relation") {
    const double K = params.real("K");
    const int r = params.integer("r");
    const double tau = params.real("tau");
    const auto roots = solve_relation_for_k(K, r, tau);
    std::string text = "{\"system\":\"relation\",\"K\":" + io::format_real(K);
    text += ",\"r\":" + std::to_string(r) + ",\"tau\":" + io::format_real(tau);
    text += ",\"k_sq_roots\":[";
    for (size_t i = 0; i < roots.size(); ++i) {
      if (i) text += ",";
      text += io::format_real(roots[i]);
    }
    text += "]}";
    emit(config, out, text);
    return kExitOk;
  }
  if (system == "biharmonic-three-freq") {
    const auto solution = solve_biharmonic_three_freq<double>(
        params.real_or("eps1", 0.0), params.real_or("eps2", 0.0), params.real_or("eps3", 0.0));
    emit(config, out,
         "{\"system\":\"biharmonic-three-freq\",\"solution\":" +
             io::solution_to_json(solution) + "}");
    return kExitOk;
  }
  if (system == "triharmonic-two-freq") {
    const int freq_axis = params.integer_or("freq-axis", 25);
    const int simplex_axis = params.integer_or("simplex-axis", 16);
    const auto seeds = triharmonic_seed_grid<double>(freq_axis, simplex_axis);

    // seeds are independent; merge is deterministic (solver sorts + dedups)
    std::vector<std::vector<TriharmonicSeed<double>>> chunks(worker_count());
    for (size_t i = 0; i < seeds.size(); ++i) chunks[i % chunks.size()].push_back(seeds[i]);
    std::vector<TriharmonicSweepResult<double>> partial(chunks.size());
    parallel_for(static_cast<long>(chunks.size()),
                 [&](long i) { partial[i] = solve_triharmonic_two_freq(chunks[i]); });
    TriharmonicSweepResult<double> result;
    for (auto& part : partial) {
      result.diverged_seeds += part.diverged_seeds;
      result.infeasible_seeds += part.infeasible_seeds;
      for (auto& s : part.solutions) result.solutions.push_back(std::move(s));
    }
    // deterministic final order + dedup across chunks
    auto key = [](const AlgebraicSolutiond& s) {
      return std::array<double, 5>{s.unknowns.at("a_sq"), s.unknowns.at("b_sq"),
                                   s.unknowns.at("alpha1_sq"), s.unknowns.at("alpha3_sq"),
                                   s.unknowns.at("lambda")};
    };
    std::sort(result.solutions.begin(), result.solutions.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::vector<AlgebraicSolutiond> unique;
    for (auto& sol : result.solutions) {
      bool duplicate = false;
      for (const auto& kept : unique) {
        double dist = 0;
        const auto ka = key(sol), kb = key(kept);
        for (int i = 0; i < 5; ++i) dist = std::max(dist, std::abs(ka[i] - kb[i]));
        if (dist <= kTolDedup) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) unique.push_back(std::move(sol));
    }
    result.solutions = std::move(unique);
    emit(config, out, io::solutions_to_json(result));
    return kExitOk;
  }
  throw InvalidArgument("unknown system: " + system);
}

int cmd_minimize(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"r", "N", "mode", "max-iters", "seed", "alpha0-sq"});
  const int r = params.integer_or("r", 2);
  const Eigen::Index n = params.integer_or("N", 128);
  const std::string mode = params.str("mode", "restricted");
  FlowOptions<double> options;
  options.max_iters = params.integer_or("max-iters", kFlowMaxIters);
  options.restricted_samples = n;

  DiscreteCurved initial;
  if (mode == "restricted") {
    options.mode = FlowMode::Restricted;
    const double alpha_sq = params.real_or("alpha0-sq", 0.4);
    if (!(alpha_sq > 0.0) || !(alpha_sq < 1.0))
      throw InvalidArgument("alpha0-sq must lie in (0, 1)");
    CircleAnsatzCurved start;
    start.constant_axis = AmbientVectord::Zero(4);
    start.constant_axis[2] = std::sqrt(1.0 - alpha_sq);
    CircleTerm<double> term;
    term.frequency = 1.0 / std::sqrt(alpha_sq);
    term.cos_axis = AmbientVectord::Zero(4);
    term.sin_axis = AmbientVectord::Zero(4);
    term.cos_axis[0] = std::sqrt(alpha_sq);
    term.sin_axis[1] = std::sqrt(alpha_sq);
    start.terms.push_back(std::move(term));
    initial = sample(start, n);
  } else if (mode == "full") {
    options.mode = FlowMode::Full;
    const unsigned long seed = static_cast<unsigned long>(params.integer_or("seed", 0));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-0.1, 0.1);
    initial.period = 2.0 * EIGEN_PI;
    initial.samples.resize(n, 3);
    const double c2 = amp(rng), s2 = amp(rng), c3 = amp(rng);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = 2.0 * EIGEN_PI * double(i) / double(n);
      Eigen::Vector3d p(std::cos(s), std::sin(s),
                        c2 * std::cos(2 * s) + s2 * std::sin(2 * s) + c3 * std::cos(3 * s));
      p.normalize();
      initial.samples.row(i) = p;
    }
  } else {
    throw InvalidArgument("mode must be restricted or full");
  }

  const auto trace = gradient_flow(initial, r, options);
  const std::string text = io::trace_to_json(trace, mode, r);
  emit(config, out, text);
  if (!config.output.empty()) {
    std::string csv_path = config.output;
    const auto dot = csv_path.find_last_of('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
    io::write_file(csv_path, io::trace_to_csv(trace));
  }
  return trace.converged ? kExitOk : kExitNumerical;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"family", "r", "a2", "b2", "n-eval"});
  const std::string family = params.str("family", "single-freq");
  const Eigen::Index n_eval = params.integer_or("n-eval", 256);

  if (family == "single-freq") {
    const int r = params.integer("r");
    if (!params.has("a2")) throw InvalidArgument("sweep needs an a2 grid");
    const auto grid = parse_grid("a2", params.str("a2"));
    std::vector<std::string> rows(grid.size());
    parallel_for(static_cast<long>(grid.size()), [&](long i) {
      const double a_sq = grid[i];
      std::string row = io::format_real(a_sq);
      if (a_sq < 1.0) {  // alpha^2 = 1/a^2 > 1: no unit-speed representative
        rows[i] = row + ",false,,,";
        return;
      }
      const double alpha_sq = 1.0 / a_sq;
      CircleAnsatzCurved curve;
      curve.constant_axis = AmbientVectord::Zero(4);
      curve.constant_axis[2] = std::sqrt(1.0 - alpha_sq);
      CircleTerm<double> term;
      term.frequency = std::sqrt(a_sq);
      term.cos_axis = AmbientVectord::Zero(4);
      term.sin_axis = AmbientVectord::Zero(4);
      term.cos_axis[0] = std::sqrt(alpha_sq);
      term.sin_axis[1] = std::sqrt(alpha_sq);
      curve.terms.push_back(std::move(term));

      double ode = std::numeric_limits<double>::quiet_NaN();
      if (r == 2) ode = residual_biharmonic_ode(curve, n_eval).max_norm;
      if (r == 3) ode = residual_triharmonic_ode(curve, n_eval).max_norm;
      if (r == 4) ode = residual_fourharmonic_ode(curve, n_eval).max_norm;
      const double intrinsic =
          residual_intrinsic(curve, r, SpaceFormd::unit_sphere(), n_eval).max_norm;
      row += ",true," + io::format_real(alpha_sq) + "," +
             (std::isnan(ode) ? std::string("") : io::format_real(ode)) + "," +
             io::format_real(intrinsic);
      rows[i] = row;
    });
    std::string text = "a_sq,feasible,alpha_sq,ode_max_norm,intrinsic_max_norm\n";
    for (const auto& row : rows) text += row + "\n";
    emit(config, out, text);
    return kExitOk;
  }

  if (family == "two-freq") {
    if (!params.has("a2") || !params.has("b2"))
      throw InvalidArgument("two-freq sweep needs a2 and b2 grids");
    const auto a_grid = parse_grid("a2", params.str("a2"));
    const auto b_grid = parse_grid("b2", params.str("b2"));
    std::vector<std::string> rows(a_grid.size() * b_grid.size());
    parallel_for(static_cast<long>(rows.size()), [&](long index) {
      const double a_sq = a_grid[index / b_grid.size()];
      const double b_sq = b_grid[index % b_grid.size()];
      std::string row = io::format_real(a_sq) + "," + io::format_real(b_sq);
      try {
        const auto curve = make_two_freq_unit_speed(a_sq, b_sq);
        const double alpha1 = curve.terms.front().cos_axis.squaredNorm();
        const auto report = residual_biharmonic_ode(curve, n_eval);
        row += ",true," + io::format_real(alpha1) + "," + io::format_real(report.max_norm);
      } catch (const InvalidArgument&) {
        row += ",false,,";
      }
      rows[index] = row;
    });
    std::string text = "a_sq,b_sq,feasible,alpha1_sq,biharmonic_max_norm\n";
    for (const auto& row : rows) text += row + "\n";
    emit(config, out, text);
    return kExitOk;
  }
  throw InvalidArgument("unknown sweep family: " + family);
}

int cmd_probe(const RunConfig& config, std::ostream& out) {
  const Params params{config.params};
  params.require_known({"alpha", "beta", "smin", "smax", "num"});
  const double alpha = params.real("alpha");
  const double beta = params.real("beta");
  const double smin = params.real_or("smin", 1.0);
  const double smax = params.real_or("smax", 10.0);
  const Eigen::Index num = params.integer_or("num", 256);
  const auto report = conjecture_probe(alpha, beta, smin, smax, num);
  std::string text;
  if (config.format == "csv") {
    text = io::to_csv(report);
  } else {
    text = "{\"alpha\":" + io::format_real(alpha) + ",\"beta\":" + io::format_real(beta) +
           ",\"report\":" + io::to_json(report) + "}";
  }
  emit(config, out, text);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "csv")
      throw InvalidArgument("format must be json or csv");
    if (config.command == "verify") return cmd_verify(config, out);
    if (config.command == "residual") return cmd_residual(config, out);
    if (config.command == "classify") return cmd_classify(config, out);
    if (config.command == "solve") return cmd_solve(config, out);
    if (config.command == "minimize") return cmd_minimize(config, out);
    if (config.command == "sweep") return cmd_sweep(config, out);
    if (config.command == "probe") return cmd_probe(config, out);
    throw InvalidArgument("unknown command: " + config.command);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const LineSearchStall& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace polycurve::cli
