#include "berezin/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "berezin/operand_file.hpp"
#include "berezin/plot.hpp"
#include "berezin/report_json.hpp"

namespace berezin {

namespace {

struct Flags {
  double rho = 0.5;
  double shift_re = 0.0;
  double shift_im = 0.0;
  int grid_r = 200;
  int grid_k = 256;
  int refine = 3;
  int trunc = 64;
  int angles = 720;
  std::string theorem;
  std::string operands;
  std::string operand;
  std::optional<double> theta;
  std::optional<double> alpha;
  int n = 2;
  int t_grid = 129;
  std::uint64_t seed = 42;
  int trials = 1000;
  std::string family;
  int dim = 4;
  std::string out;
  int figure = 0;
};

std::string csv_row(Complex z, const char* kind) {
  char buf[96];
  // adding 0.0 folds -0 into 0
  std::snprintf(buf, sizeof buf, "%.15g,%.15g,%s\n", z.real() + 0.0, z.imag() + 0.0, kind);
  return buf;
}

DiskGrid grid_from(const Flags& f) {
  DiskGrid g = DiskGrid::standard();
  g.radial = f.grid_r;
  g.angular = f.grid_k;
  g.validate();
  return g;
}

bool default_operator(const Flags& f) { return f.operands.empty(); }

OperatorModel dphi_from(const Flags& f) {
  OperatorModel op = OperatorModel::composition_differentiation(f.rho);
  const Complex shift(f.shift_re, f.shift_im);
  return shift == Complex(0.0, 0.0) ? op : shift_identity(op, shift);
}

/// The operator a single-operator subcommand acts on.
OperatorModel single_operator(const Flags& f) {
  if (default_operator(f)) return dphi_from(f);
  Operands ops = load_operands(f.operands);
  if (!f.operand.empty()) {
    auto it = ops.find(f.operand);
    if (it == ops.end()) throw Error(ErrorCode::InvalidArgument, "no operand named '" + f.operand + "'");
    return it->second;
  }
  if (ops.size() != 1)
    throw Error(ErrorCode::InvalidArgument, "operand file holds several operators; pick one with --operand");
  return ops.begin()->second;
}

VerifyParams params_from(const Flags& f) {
  VerifyParams p;
  p.theta = f.theta;
  p.alpha = f.alpha;
  p.n = f.n;
  p.t_grid = f.t_grid;
  p.grid = grid_from(f);
  p.truncation = f.trunc;
  p.refine_iters = f.refine;
  return p;
}

std::vector<Complex> circle_points(Complex center, double r, int count) {
  std::vector<Complex> pts(count);
  for (int k = 0; k < count; ++k) pts[k] = center + std::polar(r, 2.0 * std::numbers::pi * k / count);
  return pts;
}

std::string cmd_range(const Flags& f) {
  const OperatorModel op = single_operator(f);
  const RangeSampling s = sample_range(op, grid_from(f));
  std::string csv = "re,im,kind\n";
  for (Complex z : s.values) csv += csv_row(z, "berezin");
  if (default_operator(f)) {
    const DphiBounds b = dphi_closed_bounds(f.rho);
    const Complex c(f.shift_re, f.shift_im);
    for (Complex z : circle_points(c, b.r1, 256)) csv += csv_row(z, "circle_r1");
    for (Complex z : circle_points(c, b.r2, 256)) csv += csv_row(z, "circle_r2");
    for (Complex z : circle_points(c, b.r3, 256)) csv += csv_row(z, "circle_r3");
  }
  return csv;
}

std::string cmd_nrange(const Flags& f) {
  const OperatorModel op = single_operator(f);
  const int n = op.space().is_finite() ? 1 : f.trunc;
  std::string csv = "re,im,kind\n";
  for (Complex z : numerical_range_boundary(truncate(op, n), f.angles)) csv += csv_row(z, "nrange_boundary");
  return csv;
}

std::string cmd_sector(const Flags& f, std::ostream& err) {
  const Classification c = classify(single_operator(f), grid_from(f), f.trunc, f.angles);
  if (c.advisory)
    err << "advisory: numerical radius moved by " << c.radius_drift << " between N = " << c.truncation
        << " and N = " << 2 * c.truncation << "\n";
  return dump(to_json(c));
}

std::string cmd_bounds(const Flags& f) { return dump(to_json(dphi_closed_bounds(f.rho))); }

ComplexVector vector_from(const Json& v, const char* name) {
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string("'") + name + "' must be a list of [re, im] pairs");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& e = v[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw Error(ErrorCode::ParseError, std::string("'") + name + "' entries must be [re, im]");
    out[static_cast<Eigen::Index>(i)] = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

/// The vector lemma reads {"x": [...], "y": [...], "t": number} instead of operators.
InequalityReport verify_vectors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read operand file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "vector document must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "x" && key != "y" && key != "t") throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
  }
  if (!doc.contains("x") || !doc.contains("y") || !doc.contains("t") || !doc["t"].is_number())
    throw Error(ErrorCode::ParseError, "vector document needs x, y and numeric t");
  return verify_vector_lemma(vector_from(doc["x"], "x"), vector_from(doc["y"], "y"), doc["t"].get<double>());
}

std::string cmd_verify(const Flags& f, int& code) {
  if (f.theorem.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs --theorem");
  if (f.operands.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs --operands");
  const TheoremId id = parse_theorem(f.theorem);
  InequalityReport r = id == TheoremId::LEMMA_LAST30 ? verify_vectors(f.operands)
                                                     : verify(id, load_operands(f.operands), params_from(f));
  r.seed = f.seed;
  code = (!r.vacuous && !r.satisfied) ? kExitViolated : kExitOk;
  return dump(to_json(r));
}

std::string cmd_falsify(const Flags& f, int& code) {
  if (f.theorem.empty()) throw Error(ErrorCode::InvalidArgument, "falsify needs --theorem");
  const TheoremId id = parse_theorem(f.theorem);
  FalsifyOptions o;
  o.family = f.family.empty() ? default_family(id) : parse_family(f.family);
  o.dim = f.dim;
  o.seed = f.seed;
  o.trials = f.trials;
  o.params = params_from(f);
  const FalsifyReport r = falsify(id, o);
  code = r.violations > 0 ? kExitViolated : kExitOk;
  return dump(to_json(r));
}

std::string cmd_figure(const Flags& f, const std::string& command) {
  static constexpr double kShifts[] = {0.0, 0.41, 0.66};
  if (f.figure < 1 || f.figure > 3) throw Error(ErrorCode::InvalidArgument, "figure must be 1, 2 or 3");
  FigureData fig;
  fig.number = f.figure;
  fig.shift = kShifts[f.figure - 1];
  fig.bounds = dphi_closed_bounds(0.5);
  const OperatorModel op = fig.shift == 0.0 ? OperatorModel::composition_differentiation(0.5)
                                            : shift_identity(OperatorModel::composition_differentiation(0.5), fig.shift);
  fig.classes = classify(op, grid_from(f), f.trunc, f.angles);
  fig.nrange = numerical_range_boundary(truncate(op, f.trunc), f.angles);
  fig.command = command;
  fig.version = kVersion;
  return render_figure_svg(fig);
}

void add_grid(CLI::App* app, Flags& f) {
  app->add_option("--grid-r", f.grid_r, "radial grid points")->check(CLI::Range(2, 100000));
  app->add_option("--grid-k", f.grid_k, "angular grid points")->check(CLI::Range(4, 100000));
}

void add_dphi(CLI::App* app, Flags& f) {
  app->add_option("--rho", f.rho, "D_phi symbol phi(z) = rho z");
  app->add_option("--shift-re", f.shift_re, "real part of the identity shift");
  app->add_option("--shift-im", f.shift_im, "imaginary part of the identity shift");
  app->add_option("--operands", f.operands, "operand JSON file (replaces the D_phi default)");
  app->add_option("--operand", f.operand, "operand name inside the file");
}

void add_verify_params(CLI::App* app, Flags& f) {
  add_grid(app, f);
  app->add_option("--theorem", f.theorem, "registry id, e.g. cor_abba")->required();
  app->add_option("--theta", f.theta, "sector semi-angle of the hypothesis");
  app->add_option("--alpha", f.alpha, "fixed alpha for the kali0 family");
  app->add_option("--n", f.n, "power for the power-class entries")->check(CLI::Range(1, 64));
  app->add_option("--t-grid", f.t_grid, "t-search points")->check(CLI::Range(3, 100000));
  app->add_option("--refine", f.refine, "refinement rounds")->check(CLI::Range(0, 20));
  app->add_option("--trunc", f.trunc, "truncation N")->check(CLI::Range(1, 4096));
  app->add_option("--seed", f.seed, "seed recorded in (and driving) the report");
}

std::string join_command(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Berezin range, numerical range and inequality laboratory", "berezin-lab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--out", f.out, "write the result to this file instead of stdout");

  CLI::App* range = app.add_subcommand("range", "CSV sample of the Berezin range");
  add_dphi(range, f);
  add_grid(range, f);

  CLI::App* nrange = app.add_subcommand("nrange", "CSV boundary of the numerical range of a truncation");
  add_dphi(nrange, f);
  nrange->add_option("--trunc", f.trunc, "truncation N")->check(CLI::Range(1, 4096));
  nrange->add_option("--angles", f.angles, "support-function angles")->check(CLI::Range(8, 1000000));

  CLI::App* sector = app.add_subcommand("sector", "JSON Berezin and classical sector indices");
  add_dphi(sector, f);
  add_grid(sector, f);
  sector->add_option("--trunc", f.trunc, "truncation N")->check(CLI::Range(1, 2048));
  sector->add_option("--angles", f.angles, "support-function angles")->check(CLI::Range(8, 1000000));

  CLI::App* bounds = app.add_subcommand("bounds", "JSON closed-form bounds for D_phi");
  bounds->add_option("--rho", f.rho, "D_phi symbol phi(z) = rho z");

  CLI::App* ver = app.add_subcommand("verify", "JSON report for one registry inequality");
  add_verify_params(ver, f);
  ver->add_option("--operands", f.operands, "operand JSON file")->required();

  CLI::App* fal = app.add_subcommand("falsify", "JSON summary of seeded random trials");
  add_verify_params(fal, f);
  fal->add_option("--trials", f.trials, "number of trials")->check(CLI::Range(1, 100000000));
  fal->add_option("--family", f.family, "diagonal-sectorial, shifted-random, normal or toeplitz-harmonic");
  fal->add_option("--dim", f.dim, "matrix dimension")->check(CLI::Range(1, 256));

  CLI::App* fig = app.add_subcommand("figure", "SVG reproduction of figure 1, 2 or 3");
  fig->add_option("number", f.figure, "figure number")->required()->check(CLI::Range(1, 3));
  add_grid(fig, f);
  fig->add_option("--trunc", f.trunc, "truncation N")->check(CLI::Range(1, 2048));
  fig->add_option("--angles", f.angles, "support-function angles")->check(CLI::Range(8, 1000000));

  for (CLI::App* sub : {range, nrange, sector, bounds, ver, fal, fig})
    sub->add_option("--out", f.out, "write the result to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  int code = kExitOk;
  std::string text;
  try {
    if (range->parsed()) text = cmd_range(f);
    else if (nrange->parsed()) text = cmd_nrange(f);
    else if (sector->parsed()) text = cmd_sector(f, err);
    else if (bounds->parsed()) text = cmd_bounds(f);
    else if (ver->parsed()) text = cmd_verify(f, code);
    else if (fal->parsed()) text = cmd_falsify(f, code);
    else if (fig->parsed()) text = cmd_figure(f, join_command(argc, argv));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numeric() ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }

  if (f.out.empty()) {
    out << text;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << f.out << "'\n";
      return kExitInput;
    }
  }
  return code;
}

}  // namespace berezin
