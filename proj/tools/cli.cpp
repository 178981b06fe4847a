#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "radgab/approx.hpp"
#include "radgab/csv.hpp"
#include "radgab/embeddings.hpp"
#include "radgab/error.hpp"
#include "radgab/frames.hpp"
#include "radgab/lattice.hpp"
#include "radgab/omega.hpp"
#include "radgab/parallel.hpp"
#include "radgab/random.hpp"

namespace radgab::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Common {
  int d = 2;
  double theta_max = 8.0;
  std::size_t n_points = 1024;
  std::string out = ".";
  std::string config;
  std::uint64_t seed = 1;
};

struct LatticeArgs {
  double a = 0.5, b = 0.5;
  int jk_max = 4;
};

struct OmegaArgs {
  double r = 0.0, s = 0.0, c = 1.0;
  std::string profile = "figure";
  std::size_t phi_nodes = 0;
};

struct StftArgs {
  std::string r = "0,1,2", s = "0,1,2", c = "-1,0,1";
  double f_lambda = 1.0;
};

struct FrameArgs {
  LatticeArgs lattice{0.5, 0.5, 16};
  double tol = 1e-6;
  std::size_t max_iter = 5000;
  double f_lambda = 2.0;
  std::size_t test_dim = 6;
  bool unnormalized = false;
  bool calibrate = false;
};

struct EmbedArgs {
  std::string p = "2", q = "2", s = "0", t = "0";
  std::string family = "frequency";
};

struct ApproxArgs {
  LatticeArgs lattice{0.5, 0.5, 12};
  EmbedArgs embed{"1", "2", "-1/2", "0", "frequency"};
  std::string n_list = "0,1,2,4,8,16,32,64,128,256";
  std::string mode = "nterm";
  double f_lambda = 2.0;
  double tol = 1e-6;
  double box = 4.0;
};

struct CoveringArgs {
  LatticeArgs lattice{0.5, 0.5, 30};
  std::size_t points = 10000;
  double box = 5.0;
  std::size_t samples = 1024;
  bool rotations_only = false;
};

std::vector<double> parse_list(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(Rational::parse(item).to_double());
    } catch (const std::exception&) {
      throw ValidationError("--" + name + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError("--" + name + ": list is empty");
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& text, const std::string& name) {
  std::vector<std::size_t> out;
  for (double v : parse_list(text, name)) {
    if (!(v >= 0.0) || v != std::floor(v))
      throw ValidationError("--" + name + ": entries must be nonnegative integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Exponent parse_exponent(const std::string& text, const std::string& name) {
  try {
    return Exponent::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError("--" + name + ": " + e.what());
  }
}

Rational parse_rational(const std::string& text, const std::string& name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError("--" + name + ": " + e.what());
  }
}

EmbeddingQuery make_query(const EmbedArgs& args, int d) {
  EmbeddingQuery q;
  q.p = parse_exponent(args.p, "p");
  q.q = parse_exponent(args.q, "q");
  q.s = parse_rational(args.s, "s");
  q.t = parse_rational(args.t, "t");
  q.d = d;
  if (args.family == "frequency")
    q.family = WeightFamily::Frequency;
  else if (args.family == "phase-space")
    q.family = WeightFamily::PhaseSpace;
  else
    throw ValidationError("--family: expected 'frequency' or 'phase-space'");
  return q;
}

LatticeSpec make_spec(const LatticeArgs& args, int d) {
  const LatticeSpec spec{args.a, args.b, d, args.jk_max};
  if (!(spec.a > 0.0)) throw ValidationError("--a: must be > 0");
  if (!(spec.b > 0.0)) throw ValidationError("--b: must be > 0");
  if (spec.d < 2) throw ValidationError("--d: must be >= 2");
  if (spec.jk_max < 1) throw ValidationError("--J: must be >= 1");
  return spec;
}

GridPtr make_common_grid(const Common& c) {
  if (c.d < 2) throw ValidationError("--d: must be >= 2");
  if (!(c.theta_max > 0.0)) throw ValidationError("--theta-max: must be > 0");
  if (c.n_points < 16 || c.n_points % 8 != 0)
    throw ValidationError("--n-points: must be a multiple of 8 and >= 16");
  return make_grid(c.d, c.theta_max, c.n_points);
}

fs::path output_dir(const Common& c) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("--out: cannot create directory '" + c.out + "'");
  return dir;
}

std::string num(double v) { return format_double(v); }

void add_lattice_options(CLI::App* app, LatticeArgs& args) {
  app->add_option("--a", args.a, "space step");
  app->add_option("--b", args.b, "frequency step");
  app->add_option("--J", args.jk_max, "keep j + k <= J");
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--d", c.d, "dimension");
  app->add_option("--theta-max", c.theta_max, "radial grid extent");
  app->add_option("--n-points", c.n_points, "radial grid size (multiple of 8)");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--config", c.config, "key=value configuration file");
  app->add_option("--seed", c.seed, "random seed");
}

int cmd_lattice(const Common& c, const LatticeArgs& args, std::ostream& out) {
  const auto atoms = build_lattice(make_spec(args, c.d));
  const fs::path file = output_dir(c) / "lattice.csv";
  write_file_atomic(file, lattice_csv(atoms));
  out << json{{"command", "lattice"}, {"rows", atoms.size()}, {"file", file.string()}}.dump() << '\n';
  return 0;
}

int cmd_omega(const Common& c, const OmegaArgs& args, std::ostream& out) {
  const GridPtr grid = make_common_grid(c);
  RadialFunction f0;
  if (args.profile == "figure")
    f0 = [](double theta) -> cplx { return std::exp(-theta * theta); };
  else if (args.profile == "gaussian")
    f0 = normalized_gaussian(c.d);
  else
    throw ValidationError("--profile: expected 'figure' or 'gaussian'");
  if (!(args.r >= 0.0)) throw ValidationError("--r: must be >= 0");
  if (!(args.s >= 0.0)) throw ValidationError("--s: must be >= 0");
  if (!(std::abs(args.c) <= 1.0)) throw ValidationError("--c: must lie in [-1, 1]");
  const RadialProfile g = make_profile(grid, f0);
  const OrbitPoint p(args.r, args.s, args.c);
  const RadialProfile result = args.phi_nodes == 0 ? omega_apply(g, p) : omega_apply(g, p, args.phi_nodes);
  const fs::path file = output_dir(c) / "omega.csv";
  write_file_atomic(file, profile_csv(result));
  out << json{{"command", "omega"}, {"r", p.r}, {"s", p.s}, {"c", p.c}, {"file", file.string()}}.dump()
      << '\n';
  return 0;
}

int cmd_stft(const Common& c, const StftArgs& args, std::ostream& out) {
  const GridPtr grid = make_common_grid(c);
  if (!(args.f_lambda > 0.0)) throw ValidationError("--f-lambda: must be > 0");
  const auto rs = parse_list(args.r, "r");
  const auto ss = parse_list(args.s, "s");
  const auto cs = parse_list(args.c, "c");
  const RadialProfile g = make_profile(grid, normalized_gaussian(c.d));
  const RadialProfile f = make_profile(
      grid, gaussian(args.f_lambda, std::pow(2.0 * args.f_lambda, 0.25 * c.d)));
  struct Row {
    OrbitPoint p;
    cplx v;
  };
  std::vector<Row> rows;
  for (double r : rs)
    for (double s : ss)
      for (double cc : cs) {
        if (!(r >= 0.0)) throw ValidationError("--r: entries must be >= 0");
        if (!(s >= 0.0)) throw ValidationError("--s: entries must be >= 0");
        if (!(std::abs(cc) <= 1.0)) throw ValidationError("--c: entries must lie in [-1, 1]");
        rows.push_back({OrbitPoint(r, s, cc), {}});
      }
  parallel_for(rows.size(), [&](std::size_t i) { rows[i].v = radial_stft(f, g, rows[i].p); });
  std::ostringstream csv;
  csv << "r,s,c,re,im,abs\n";
  for (const Row& row : rows)
    csv << num(row.p.r) << ',' << num(row.p.s) << ',' << num(row.p.c) << ',' << num(row.v.real())
        << ',' << num(row.v.imag()) << ',' << num(std::abs(row.v)) << '\n';
  const fs::path file = output_dir(c) / "stft.csv";
  write_file_atomic(file, csv.str());
  out << json{{"command", "stft"}, {"rows", rows.size()}, {"file", file.string()}}.dump() << '\n';
  return 0;
}

int cmd_frame(const Common& c, const FrameArgs& args, std::ostream& out, std::ostream& err) {
  const GridPtr grid = make_common_grid(c);
  const LatticeSpec spec = make_spec(args.lattice, c.d);
  if (!(args.tol > 0.0)) throw ValidationError("--tol: must be > 0");
  if (!(args.f_lambda > 0.0)) throw ValidationError("--f-lambda: must be > 0");
  if (args.test_dim < 1) throw ValidationError("--test-dim: must be >= 1");
  const RadialProfile g = make_profile(grid, normalized_gaussian(c.d));
  const RadialProfile f = make_profile(grid, gaussian(args.f_lambda));
  const FrameSystem fr = build_frame(g, spec, !args.unnormalized);
  if (args.test_dim > fr.size()) throw ValidationError("--test-dim: exceeds the number of atoms");
  const Reconstruction rec = reconstruct(f, fr, {args.tol, args.max_iter, false});
  const FrameBounds bounds = frame_bounds(fr, args.test_dim);
  const fs::path dir = output_dir(c);
  write_file_atomic(dir / "coefficients.csv", coeff_csv(to_seq(rec.coefficients, fr)));
  write_file_atomic(dir / "reconstruction.csv", profile_csv(rec.profile));

  json summary{{"command", "frame"},
               {"atoms", fr.size()},
               {"iterations", rec.iterations},
               {"converged", rec.converged},
               {"relative_error", rec.relative_error},
               {"lower_bound", bounds.lower},
               {"upper_bound", bounds.upper}};
  if (args.calibrate) {
    const Calibration cal = calibrate_steps(g, spec.jk_max, args.test_dim);
    std::ostringstream csv;
    csv << "step,lower,upper,ratio\n";
    for (const auto& row : cal.rows)
      csv << num(row.step) << ',' << num(row.bounds.lower) << ',' << num(row.bounds.upper) << ','
          << num(row.bounds.ratio()) << '\n';
    write_file_atomic(dir / "calibration.csv", csv.str());
    summary["calibrated_step"] = cal.chosen ? json(*cal.chosen) : json(nullptr);
  }
  write_file_atomic(dir / "frame.json", summary.dump(2) + "\n");
  out << summary.dump() << '\n';
  if (!rec.converged) {
    err << "frame: reconstruction did not reach tol=" << args.tol << " within " << args.max_iter
        << " iterations (relative error " << rec.relative_error << ")\n";
    return 2;
  }
  return 0;
}

int cmd_embed(const Common& c, const EmbedArgs& args, std::ostream& out) {
  const EmbeddingQuery q = make_query(args, c.d);
  const EmbeddingVerdict v = classify_embedding(q);
  json line{{"p", q.p.to_string()},
            {"q", q.q.to_string()},
            {"s", q.s.to_string()},
            {"t", q.t.to_string()},
            {"d", q.d},
            {"status", to_string(v.status)},
            {"alpha", v.alpha.to_string()},
            {"threshold", v.threshold.to_string()}};
  if (q.p <= q.q) {
    line["entropy_decay"] = radial_entropy_decay(q.p, q.q, q.d).to_string();
    line["approx_decay"] = approx_number_exponent(q.p, q.q, q.d).to_string();
  } else {
    line["entropy_decay"] = nullptr;
    line["approx_decay"] = nullptr;
  }
  const std::string text = line.dump() + "\n";
  write_file_atomic(output_dir(c) / "embed.jsonl", text);
  out << text;
  return 0;
}

int cmd_approx(const Common& c, const ApproxArgs& args, std::ostream& out) {
  const GridPtr grid = make_common_grid(c);
  const LatticeSpec spec = make_spec(args.lattice, c.d);
  const EmbeddingQuery q = make_query(args.embed, c.d);
  if (q.p > q.q) throw ValidationError("--p: approx requires p <= q");
  if (!(args.f_lambda > 0.0)) throw ValidationError("--f-lambda: must be > 0");
  if (!(args.tol > 0.0)) throw ValidationError("--tol: must be > 0");
  const auto n_list = parse_counts(args.n_list, "n-list");
  const RadialProfile g = make_profile(grid, normalized_gaussian(c.d));
  const RadialFunction f0 = gaussian(args.f_lambda);
  const RadialProfile f = make_profile(grid, f0);
  const FrameSystem fr = build_frame(g, spec, true);

  ApproxReport radial;
  if (args.mode == "nterm")
    radial = nterm_curve(f, fr, q, n_list, {args.tol, 5000, false});
  else if (args.mode == "linear")
    radial = linear_approx(f, fr, q, n_list);
  else
    throw ValidationError("--mode: expected 'nterm' or 'linear'");

  std::optional<BaselineReport> baseline;
  std::size_t radial_count = 0;
  if (c.d == 2) {
    BaselineOptions opts;
    opts.box = args.box;
    baseline = gabor_baseline_2d(f0, 1.0, spec.a, spec.b, n_list, opts);
    const FrameSystem plain = build_frame(g, spec, false);
    radial_count = radial_count_above(f, plain, opts.threshold);
  }

  std::ostringstream csv;
  csv << "n,radial_error,baseline_error,slope_fit\n";
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    csv << n_list[i] << ',' << num(radial.errors[i]) << ',';
    if (baseline) csv << num(baseline->report.errors[i]);
    csv << ',' << num(radial.fitted_slope) << '\n';
  }
  const fs::path dir = output_dir(c);
  write_file_atomic(dir / "approx.csv", csv.str());
  json summary{{"command", "approx"},
               {"mode", args.mode},
               {"atoms", fr.size()},
               {"fitted_slope", radial.fitted_slope},
               {"reference_slope", radial.reference_slope}};
  if (baseline) {
    summary["baseline_slope"] = baseline->report.fitted_slope;
    summary["baseline_points"] = baseline->lattice_points;
    summary["baseline_count_above_1e-6"] = baseline->coefficients_above_threshold;
    summary["radial_count_above_1e-6"] = radial_count;
  }
  write_file_atomic(dir / "approx.json", summary.dump(2) + "\n");
  out << summary.dump() << '\n';
  return 0;
}

int cmd_covering(const Common& c, const CoveringArgs& args, std::ostream& out) {
  const LatticeSpec spec = make_spec(args.lattice, c.d);
  if (spec.d != 2) throw ValidationError("--d: covering is only available for d = 2");
  if (!(args.box > 0.0)) throw ValidationError("--box: must be > 0");
  if (args.samples < 8) throw ValidationError("--samples: must be >= 8");
  struct Row {
    Vec2 x, w;
    double margin = 0.0;
  };
  Rng rng(c.seed);
  std::vector<Row> rows(args.points);
  for (Row& row : rows) {
    row.x = {rng.uniform(-args.box, args.box), rng.uniform(-args.box, args.box)};
    row.w = {rng.uniform(-args.box, args.box), rng.uniform(-args.box, args.box)};
  }
  const CoveringOptions opts{args.samples, !args.rotations_only};
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i].margin = covering_margin(rows[i].x, rows[i].w, spec, opts);
  });
  std::ostringstream csv;
  csv << "x1,x2,w1,w2,margin,covered\n";
  std::size_t covered = 0;
  for (const Row& row : rows) {
    const bool hit = row.margin <= 1.0 + 1e-12;
    covered += hit;
    csv << num(row.x[0]) << ',' << num(row.x[1]) << ',' << num(row.w[0]) << ',' << num(row.w[1])
        << ',' << num(row.margin) << ',' << (hit ? 1 : 0) << '\n';
  }
  const fs::path file = output_dir(c) / "covering.csv";
  write_file_atomic(file, csv.str());
  out << json{{"command", "covering"},
              {"points", rows.size()},
              {"covered", covered},
              {"fraction", rows.empty() ? 1.0 : static_cast<double>(covered) / rows.size()},
              {"file", file.string()}}
             .dump()
      << '\n';
  return 0;
}

// Inserts tokens from a --config file right after the subcommand name, so
// explicit flags (parsed later, last one wins) override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> out{args.front()};
  const auto tokens = config_tokens(path);
  out.insert(out.end(), tokens.begin(), tokens.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--config: cannot read '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int number = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--config: line " + std::to_string(number) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config")
      throw ValidationError("--config: invalid key on line " + std::to_string(number));
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial time-frequency analysis experiments", "radgab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Common common;
  LatticeArgs lattice_args;
  OmegaArgs omega_args;
  StftArgs stft_args;
  FrameArgs frame_args;
  EmbedArgs embed_args;
  ApproxArgs approx_args;
  CoveringArgs covering_args;

  auto* lattice = app.add_subcommand("lattice", "write the lattice atoms as CSV");
  add_common(lattice, common);
  add_lattice_options(lattice, lattice_args);

  auto* omega = app.add_subcommand("omega", "write Omega(r,s,c) applied to a profile as CSV");
  add_common(omega, common);
  omega->add_option("--r", omega_args.r);
  omega->add_option("--s", omega_args.s);
  omega->add_option("--c", omega_args.c);
  omega->add_option("--profile", omega_args.profile, "figure: exp(-theta^2); gaussian: normalized");
  omega->add_option("--phi-nodes", omega_args.phi_nodes, "0 selects the minimum count");

  auto* stft = app.add_subcommand("stft", "radial STFT of normalized Gaussians on a point grid");
  add_common(stft, common);
  stft->add_option("--r", stft_args.r, "comma-separated list");
  stft->add_option("--s", stft_args.s, "comma-separated list");
  stft->add_option("--c", stft_args.c, "comma-separated list");
  stft->add_option("--f-lambda", stft_args.f_lambda, "f = normalized exp(-pi lambda theta^2)");

  auto* frame = app.add_subcommand("frame", "frame reconstruction and bound estimates");
  add_common(frame, common);
  add_lattice_options(frame, frame_args.lattice);
  frame->add_option("--tol", frame_args.tol);
  frame->add_option("--max-iter", frame_args.max_iter);
  frame->add_option("--f-lambda", frame_args.f_lambda, "f = exp(-pi lambda theta^2)");
  frame->add_option("--test-dim", frame_args.test_dim);
  frame->add_flag("--unnormalized", frame_args.unnormalized, "omit the sqrt(mu) scaling");
  frame->add_flag("--calibrate", frame_args.calibrate, "scan a = b for usable steps");

  auto* embed = app.add_subcommand("embed", "classify an embedding of radial modulation spaces");
  add_common(embed, common);
  embed->add_option("--p", embed_args.p);
  embed->add_option("--q", embed_args.q);
  embed->add_option("--s", embed_args.s);
  embed->add_option("--t", embed_args.t);
  embed->add_option("--family", embed_args.family, "frequency or phase-space");

  auto* approx = app.add_subcommand("approx", "n-term approximation curves");
  add_common(approx, common);
  add_lattice_options(approx, approx_args.lattice);
  approx->add_option("--p", approx_args.embed.p);
  approx->add_option("--q", approx_args.embed.q);
  approx->add_option("--s", approx_args.embed.s);
  approx->add_option("--t", approx_args.embed.t);
  approx->add_option("--n-list", approx_args.n_list, "comma-separated, increasing");
  approx->add_option("--mode", approx_args.mode, "nterm or linear");
  approx->add_option("--f-lambda", approx_args.f_lambda, "f = exp(-pi lambda theta^2)");
  approx->add_option("--tol", approx_args.tol);
  approx->add_option("--box", approx_args.box, "baseline lattice box half width");

  auto* covering = app.add_subcommand("covering", "check the d = 2 covering on random points");
  add_common(covering, common);
  add_lattice_options(covering, covering_args.lattice);
  covering->add_option("--points", covering_args.points);
  covering->add_option("--box", covering_args.box, "points are uniform in [-box, box]^4");
  covering->add_option("--samples", covering_args.samples, "angular samples per atom");
  covering->add_flag("--rotations-only", covering_args.rotations_only, "exclude reflections");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (lattice->parsed()) return cmd_lattice(common, lattice_args, out);
    if (omega->parsed()) return cmd_omega(common, omega_args, out);
    if (stft->parsed()) return cmd_stft(common, stft_args, out);
    if (frame->parsed()) return cmd_frame(common, frame_args, out, err);
    if (embed->parsed()) return cmd_embed(common, embed_args, out);
    if (approx->parsed()) return cmd_approx(common, approx_args, out);
    if (covering->parsed()) return cmd_covering(common, covering_args, out);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace radgab::cli
