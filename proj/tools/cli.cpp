#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mqshape/criterion.hpp"
#include "mqshape/errors.hpp"
#include "mqshape/node_io.hpp"
#include "mqshape/rbf.hpp"

namespace mqshape::cli {

using nlohmann::json;

namespace {

struct SpecFlags {
  int n = 1;
  double beta = -1.0;
  double sigma = 1.0;
  double delta = 0.01;
  std::optional<double> b0;
  std::string mode = "practical";

  ProblemSpec to_spec() const {
    ProblemSpec spec;
    spec.n = n;
    spec.beta = beta;
    spec.sigma = sigma;
    spec.delta = delta;
    spec.b0 = b0;
    spec.mode = parse_mode(mode);
    validate(spec);
    return spec;
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--n", f.n, "space dimension")->capture_default_str();
  cmd->add_option("--beta", f.beta, "kernel exponent (not 0, 2, 4, ...)")->capture_default_str();
  cmd->add_option("--sigma", f.sigma, "E_sigma parameter")->capture_default_str();
  cmd->add_option("--delta", f.delta, "fill distance")->capture_default_str();
  cmd->add_option("--b0", f.b0, "cube side");
  cmd->add_option("--mode", f.mode, "practical | fixed-b0 | dilation-invariant")
      ->check(CLI::IsMember({"practical", "fixed-b0", "dilation-invariant"}))
      ->capture_default_str();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Cube bounding_cube(const Eigen::MatrixXd& points, std::optional<double> side) {
  Cube cube;
  cube.corner = points.colwise().minCoeff().transpose();
  const double extent = (points.colwise().maxCoeff() - points.colwise().minCoeff()).maxCoeff();
  cube.side = side ? *side : (extent > 0.0 ? extent : 1.0);
  return cube;
}

NodeData load_nodes(const std::string& nodes_path, const std::string& values_path, int n) {
  const CsvTable nodes_table = read_csv_file(nodes_path);
  if (values_path.empty()) return nodes_from_csv(nodes_table, n, true);
  NodeData data = nodes_from_csv(nodes_table, n, false);
  data.values = values_from_csv(read_csv_file(values_path));
  if (data.values.size() != data.points.rows())
    throw InputError("values file has a different number of rows than the nodes file");
  return data;
}

Precision parse_precision(const std::string& text) {
  return text == "extended" ? Precision::Extended : Precision::Double;
}

std::string render_curve(const std::vector<CurveSample>& curve, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& s : curve) arr.push_back({{"c", s.c}, {"logH", s.log_h}});
    os << arr.dump(2) << '\n';
    return os.str();
  }
  os << std::setprecision(17) << "c,logH\n";
  for (const auto& s : curve) os << s.c << ',' << s.log_h << '\n';
  return os.str();
}

}  // namespace

json constants_json(const ProblemSpec& spec, const DerivedConstants& dc) {
  json j;
  j["n"] = spec.n;
  j["beta"] = spec.beta;
  j["sigma"] = spec.sigma;
  j["delta"] = spec.delta;
  j["b0"] = optional_number(spec.b0);
  j["mode"] = std::string(to_string(spec.mode));
  j["m"] = dc.m;
  j["gamma_n"] = dc.gamma_n;
  j["rho"] = dc.rho;
  j["log_delta_0"] = dc.log_delta_0;
  j["alpha_n"] = dc.alpha_n;
  j["log_exp_term"] = dc.log_exp_term;
  j["log_c_min"] = dc.c_min.log();
  j["c_min"] = finite_or_null(dc.c_min.representable() ? dc.c_min.value() : NAN);
  j["log_c0"] = dc.c0 ? json(dc.c0->log()) : json(nullptr);
  j["c0"] = dc.c0 && dc.c0->representable() ? json(dc.c0->value()) : json(nullptr);
  j["log_neg_eta"] = dc.log_neg_eta;
  j["eta_delta"] = dc.eta_delta();
  j["log_d0"] = dc.log_d0 ? json(*dc.log_d0) : json(nullptr);
  // delta_0 = 1/(6 C gamma_n (m+1)), C = max{2 rho sqrt(n) e^{2n gamma_n}/c, 2/(3 b0)}
  json d0;
  d0["log_6_gamma_m1"] = std::log(6.0 * static_cast<double>(dc.gamma_n) * (dc.m + 1));
  d0["log_c_term_times_c"] = std::log(2.0 * dc.rho) + 0.5 * std::log(spec.n) + dc.log_exp_term;
  d0["log_b0_term"] = spec.b0 ? json(std::log(2.0 / (3.0 * *spec.b0))) : json(nullptr);
  j["delta0_inputs"] = d0;
  j["log_delta_admissible"] = spec.b0 ? json(log_delta_admissible(spec, dc)) : json(nullptr);
  return j;
}

json optimal_json(const ProblemSpec& spec, const CriterionKind& kind, const OptimalResult& r) {
  json j;
  j["n"] = spec.n;
  j["beta"] = spec.beta;
  j["sigma"] = spec.sigma;
  j["delta"] = spec.delta;
  j["b0"] = optional_number(spec.b0);
  j["mode"] = std::string(to_string(kind.mode));
  j["regime"] = std::string(to_string(kind.regime));
  j["c_star"] = r.c_star;
  j["log_h_star"] = r.log_h_star;
  j["clamped_lower"] = r.clamped_lower;
  j["iterations"] = r.iterations;
  j["bracket"] = {r.bracket.first, r.bracket.second};
  return j;
}

json bound_report_json(const BoundReport& report) {
  json j;
  j["c"] = report.c;
  j["delta_measured"] = report.delta_measured;
  j["log_bound"] = report.log_bound;
  j["max_error_measured"] = report.max_error_measured;
  j["satisfied"] = report.satisfied;
  j["margin_log"] = finite_or_null(report.margin_log);
  j["nodes"] = report.nodes;
  j["condition"] = report.condition;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-parameter selection for (inverse) multiquadric interpolation"};
  app.require_subcommand(1);

  SpecFlags flags;
  double c_lo = 0.0;
  double c_hi = 0.0;
  int count = 200;
  std::string format = "csv";
  double tol = kDefaultRelTol;
  std::string nodes_path;
  std::string values_path;
  std::optional<double> c_value;
  double gauss_a = 0.25;
  double amplitude = 1.0;
  int per_side = 0;
  int eval_grid = 0;
  std::string fit_precision = "double";
  std::string verify_precision = "extended";

  auto* constants = app.add_subcommand("constants", "derived constants as JSON");
  add_spec_flags(constants, flags);

  auto* criterion = app.add_subcommand("criterion", "sampled criterion curve (c, logH)");
  add_spec_flags(criterion, flags);
  criterion->add_option("--c-lo", c_lo, "left end of the sampled range (default c_min)");
  criterion->add_option("--c-hi", c_hi, "right end of the sampled range (default 100 max(c_lo, 1))");
  criterion->add_option("--count", count, "number of log-spaced samples")->capture_default_str();
  criterion->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "optimal shape parameter as JSON");
  add_spec_flags(optimize, flags);
  optimize->add_option("--tol", tol, "relative tolerance on c")->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "fit an interpolant to CSV data; JSON summary");
  add_spec_flags(fit_cmd, flags);
  fit_cmd->add_option("--nodes", nodes_path, "CSV rows: n coordinates then the value")->required();
  fit_cmd->add_option("--values", values_path, "CSV of values; nodes file then holds coordinates only");
  fit_cmd->add_option("--c", c_value, "shape parameter")->required();
  fit_cmd->add_option("--precision", fit_precision, "double | extended")
      ->check(CLI::IsMember({"double", "extended"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "bound experiment for a Gaussian; JSON report");
  add_spec_flags(verify, flags);
  verify->add_option("--nodes", nodes_path, "CSV of node coordinates (default: uniform cell-centred nodes)");
  verify->add_option("--per-side", per_side, "nodes per side for the default layout");
  verify->add_option("--c", c_value, "shape parameter (default: optimal c at the measured fill distance)");
  verify->add_option("--a", gauss_a, "Gaussian exponent a in exp(-a|x|^2)")->capture_default_str();
  verify->add_option("--amplitude", amplitude, "Gaussian amplitude")->capture_default_str();
  verify->add_option("--eval-grid", eval_grid, "evaluation grid points per side");
  verify->add_option("--precision", verify_precision, "double | extended")
      ->check(CLI::IsMember({"double", "extended"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::string document;
    const ProblemSpec spec = flags.to_spec();

    if (*constants) {
      document = constants_json(spec, derive_constants(spec)).dump(2) + "\n";
    } else if (*criterion) {
      const DerivedConstants dc = derive_constants(spec);
      const CriterionKind kind = classify(spec);
      double lo = c_lo;
      if (criterion->count("--c-lo") == 0) {
        if (!dc.c_min.representable()) throw NumericError("c_min is outside double range; pass --c-lo");
        lo = dc.c_min.value();
      }
      const double hi = criterion->count("--c-hi") ? c_hi : 100.0 * std::max(lo, 1.0);
      document = render_curve(sample_curve(spec, dc, kind, lo, hi, count), format);
    } else if (*optimize) {
      const DerivedConstants dc = derive_constants(spec);
      const CriterionKind kind = classify(spec);
      document = optimal_json(spec, kind, optimal_c(spec, dc, kind, tol)).dump(2) + "\n";
    } else if (*fit_cmd) {
      const NodeData data = load_nodes(nodes_path, values_path, spec.n);
      const NodeSet nodes(data.points, bounding_cube(data.points, spec.b0));
      const Interpolant s =
          fit(make_kernel(*c_value, spec.beta, spec.n), nodes, data.values, parse_precision(fit_precision));
      json j;
      j["n"] = spec.n;
      j["beta"] = spec.beta;
      j["c"] = *c_value;
      j["nodes"] = nodes.size();
      j["poly_terms"] = s.basis().size();
      j["precision"] = fit_precision;
      j["condition"] = s.condition();
      j["node_residual"] = s.node_residual();
      j["side_condition_residual"] = s.side_condition_residual();
      j["kernel_coeffs"] = std::vector<double>(s.kernel_coeffs().begin(), s.kernel_coeffs().end());
      j["poly_coeffs"] = std::vector<double>(s.poly_coeffs().begin(), s.poly_coeffs().end());
      document = j.dump(2) + "\n";
    } else if (*verify) {
      const double side = spec.b0.value_or(1.0);
      std::optional<NodeSet> nodes;
      if (!nodes_path.empty()) {
        const NodeData data = nodes_from_csv(read_csv_file(nodes_path), spec.n, false);
        Cube cube = bounding_cube(data.points, spec.b0);
        nodes.emplace(data.points, cube);
      } else {
        if (per_side < 1) throw DomainError("verify needs --nodes or --per-side");
        nodes.emplace(cell_center_nodes(Cube{Eigen::VectorXd::Zero(spec.n), side}, per_side));
      }
      const int grid = eval_grid > 0 ? eval_grid : (spec.n == 1 ? 4001 : 201);
      const GaussianFunction f = make_gaussian(spec.n, gauss_a, amplitude);
      double c = 0.0;
      if (c_value) {
        c = *c_value;
      } else {
        ProblemSpec measured = spec;
        measured.delta = fill_distance(nodes->cube(), *nodes, grid);
        measured.b0 = nodes->cube().side;
        const DerivedConstants dc = derive_constants(measured);
        c = optimal_c(measured, dc, classify(measured)).c_star;
      }
      document = bound_report_json(run_bound_experiment(spec, f, *nodes, c, grid, parse_precision(verify_precision))).dump(2) + "\n";
    }
    out << document << std::flush;
    return kOk;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace mqshape::cli
