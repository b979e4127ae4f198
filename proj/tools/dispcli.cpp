// Command-line front end: dispersion computation, witness extraction, point
// generation, bound verification and experiment sweeps over the torusdisp
// library. Machine-readable JSON/CSV output; see README for the schema.

#include <chrono>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusdisp/torusdisp.hpp"

using json = nlohmann::ordered_json;
using namespace torusdisp;

namespace {

// Exit codes: 0 success/pass, 1 verification failure, 2 budget exceeded,
// 3 input error.
constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

struct PointSource {
  std::string input_path;
  std::optional<int> dim;
  std::string kind;  // generator kind; empty when reading from --input
  int n = 0;
  int m = 0;
  int d = 0;  // 0 = not given; defaults per kind
  std::uint64_t seed = 0;
};

struct RunConfig {
  PointSource source;
  std::string ranges = "periodic";
  std::string mode = "exact";
  int trials = 1000;
  std::uint64_t sample_seed = 0;
  std::int64_t budget = 1'000'000'000;
  int workers = 1;
  bool best_axis = false;
  bool rational = false;
  bool timings = false;
  std::string format = "json";
  std::string output_path;
};

class cli_input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string dtos(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

GeneratorSpec spec_from_source(const PointSource& src) {
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(src.kind);
  spec.n = src.n;
  spec.m = src.m;
  spec.d = (src.d == 0) ? 2 : src.d;
  spec.seed = src.seed;
  switch (spec.kind) {
    case GeneratorKind::random:
    case GeneratorKind::kronecker:
      if (spec.n < 0) throw cli_input_error("generator needs --n >= 0");
      break;
    case GeneratorKind::grid:
      if (spec.m < 1) throw cli_input_error("grid generator needs --m >= 1");
      break;
    case GeneratorKind::fibonacci:
      if (src.d != 0 && src.d != 2) throw cli_input_error("fibonacci generator is 2-D");
      spec.d = 2;
      break;
    case GeneratorKind::equispaced_1d:
      if (src.d > 1) throw cli_input_error("equispaced-1d generator is 1-D");
      spec.d = 1;
      break;
  }
  return spec;
}

PointSet<double> load_points(const PointSource& src) {
  if (!src.input_path.empty()) return read_points_file(src.input_path, src.dim);
  if (src.kind.empty())
    throw cli_input_error("no point source: pass --input FILE or --kind GENERATOR");
  return generate<double>(spec_from_source(src));
}

std::string source_kind(const PointSource& src) {
  return src.input_path.empty() ? src.kind : std::string("input");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw cli_input_error("cannot open output file: " + cfg.output_path);
  out << text;
}

// One computed dispersion figure in scalar-independent form, ready for
// serialization.
struct Figure {
  double volume = 0;
  std::string volume_exact;  // "p/q", rational mode only
  bool has_box = false;
  std::vector<double> anchors;
  std::vector<double> lengths;
  bool exact = false;
  std::int64_t candidates_examined = 0;
};

template <class Real>
double to_plain_double(const Real& v) {
  return to_double(v);
}

double to_plain_double(const double& v) { return v; }

template <class Real>
void fill_box(Figure& fig, const PeriodicBox<Real>& box) {
  fig.has_box = true;
  for (const auto& iv : box.intervals) {
    fig.anchors.push_back(to_plain_double(iv.anchor));
    fig.lengths.push_back(to_plain_double(iv.length));
  }
}

template <class Real>
void fill_box(Figure& fig, const AnchoredBox<Real>& box) {
  fig.has_box = true;
  for (int a = 0; a < box.dim(); ++a) {
    fig.anchors.push_back(to_plain_double(box.lower[a]));
    fig.lengths.push_back(to_plain_double(Real(box.upper[a] - box.lower[a])));
  }
}

void note_exact_volume(Figure&, const double&) {}
void note_exact_volume(Figure& fig, const Rational& v) { fig.volume_exact = to_fraction_string(v); }

template <class Real, class Box>
Figure to_figure(const DispersionResult<Real, Box>& res) {
  Figure fig;
  fig.volume = to_plain_double(res.volume);
  note_exact_volume(fig, res.volume);
  if (res.box) fill_box(fig, *res.box);
  fig.exact = res.exact;
  fig.candidates_examined = res.candidates_examined;
  return fig;
}

template <class Real>
Figure to_figure(const WitnessResult<Real>& res) {
  Figure fig;
  fig.volume = to_plain_double(res.volume);
  note_exact_volume(fig, res.volume);
  fill_box(fig, res.box);
  fig.exact = false;  // a lower-bound certificate, not the dispersion itself
  fig.candidates_examined = 0;
  return fig;
}

template <class Real>
Figure run_mode(const PointSet<Real>& pts, const RunConfig& cfg) {
  SearchOptions opt;
  opt.budget = cfg.budget;
  opt.workers = cfg.workers;
  if (cfg.mode == "exact") {
    if (cfg.ranges == "boxes") return to_figure(exact_dispersion_boxes(pts, opt));
    return to_figure(exact_dispersion_periodic(pts, opt));
  }
  if (cfg.mode == "witness") {
    if (cfg.ranges != "periodic")
      throw cli_input_error("--mode witness requires --ranges periodic");
    return to_figure(witness_theorem1(pts, cfg.best_axis));
  }
  if (cfg.mode == "sample") {
    if (cfg.ranges != "periodic")
      throw cli_input_error("--mode sample requires --ranges periodic");
    return to_figure(sampled_dispersion_lower_bound(pts, cfg.trials, cfg.sample_seed));
  }
  if (cfg.mode == "gap1d") {
    if (cfg.ranges != "periodic")
      throw cli_input_error("--mode gap1d requires --ranges periodic");
    if (pts.dim() != 1) throw cli_input_error("--mode gap1d requires d = 1 input");
    return to_figure(cyclic_gap_dispersion_1d(pts));
  }
  throw cli_input_error("unknown mode: " + cfg.mode);
}

Figure compute_figure(const PointSet<double>& pts, const RunConfig& cfg) {
  if (!cfg.rational) return run_mode(pts, cfg);
  return run_mode(to_rational(pts), cfg);
}

json report_json(const PointSet<double>& pts, const RunConfig& cfg, const Figure& fig,
                 double wall_ms) {
  const int n = pts.size();
  const int d = pts.dim();
  const double bound = theorem1_bound(n, d);
  json rep;
  rep["n"] = n;
  rep["d"] = d;
  rep["ranges"] = cfg.ranges;
  rep["mode"] = cfg.mode;
  rep["volume"] = fig.volume;
  if (!fig.volume_exact.empty()) rep["volume_exact"] = fig.volume_exact;
  if (fig.has_box) {
    rep["witness"] = json{{"anchors", fig.anchors}, {"lengths", fig.lengths}};
  } else {
    rep["witness"] = nullptr;
  }
  rep["exact"] = fig.exact;
  rep["bound_theorem1"] = bound;
  rep["bound_split_cube"] = split_cube_bound(n);
  rep["meets_theorem1"] = fig.volume >= bound - kFloatTolerance;
  rep["candidates_examined"] = fig.candidates_examined;
  if (cfg.timings) rep["wall_time_ms"] = wall_ms;
  return rep;
}

std::string report_csv(const PointSet<double>& pts, const RunConfig& cfg, const Figure& fig) {
  const double bound = theorem1_bound(pts.size(), pts.dim());
  std::ostringstream out;
  out << "kind,n,d,mode,volume,theorem1_bound,ratio\n";
  out << source_kind(cfg.source) << ',' << pts.size() << ',' << pts.dim() << ',' << cfg.mode
      << ',' << dtos(fig.volume) << ',' << dtos(bound) << ',' << dtos(fig.volume / bound)
      << '\n';
  return out.str();
}

int cmd_compute(const RunConfig& cfg) {
  const PointSet<double> pts = load_points(cfg.source);
  const auto start = std::chrono::steady_clock::now();
  const Figure fig = compute_figure(pts, cfg);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (cfg.format == "csv") {
    emit(cfg, report_csv(pts, cfg, fig));
  } else {
    emit(cfg, report_json(pts, cfg, fig, wall_ms).dump(2) + "\n");
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.ranges != "periodic")
    throw cli_input_error("verify checks the periodic lower bound; use --ranges periodic");
  if (cfg.mode != "exact" && cfg.mode != "witness")
    throw cli_input_error("verify supports --mode exact or witness");
  const PointSet<double> pts = load_points(cfg.source);
  const Figure fig = compute_figure(pts, cfg);

  const int n = pts.size();
  const int d = pts.dim();
  const double bound = theorem1_bound(n, d);
  // The box was already verified empty by the library; re-check here so a
  // failed run cannot report success.
  bool box_empty = fig.has_box;
  if (fig.has_box) {
    PeriodicBox<double> box;
    for (std::size_t a = 0; a < fig.anchors.size(); ++a)
      box.intervals.push_back({fig.anchors[a], fig.lengths[a]});
    for (int i = 0; i < n && box_empty; ++i)
      if (box.contains(pts.point(i))) box_empty = false;
  }
  const bool meets = fig.volume >= bound - kFloatTolerance;
  const bool pass = meets && box_empty;

  json rep;
  rep["n"] = n;
  rep["d"] = d;
  rep["mode"] = cfg.mode;
  rep["volume"] = fig.volume;
  if (!fig.volume_exact.empty()) rep["volume_exact"] = fig.volume_exact;
  rep["bound_theorem1"] = bound;
  rep["meets_theorem1"] = meets;
  rep["witness_empty"] = box_empty;
  rep["pass"] = pass;
  emit(cfg, rep.dump(2) + "\n");
  return pass ? kExitPass : kExitVerifyFail;
}

int cmd_generate(const RunConfig& cfg) {
  if (cfg.source.kind.empty()) throw cli_input_error("generate needs --kind");
  const PointSet<double> pts = generate<double>(spec_from_source(cfg.source));
  std::ostringstream out;
  write_points(out, pts);
  emit(cfg, out.str());
  return kExitPass;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon != std::string::npos) {
      const int lo = std::stoi(item.substr(0, colon));
      const int hi = std::stoi(item.substr(colon + 1));
      if (hi < lo) throw cli_input_error("bad range in list: " + item);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  return out;
}

int cmd_sweep(const RunConfig& cfg, const std::string& n_list, const std::string& d_list) {
  if (cfg.source.kind.empty()) throw cli_input_error("sweep needs --kind");
  std::vector<int> ns = parse_int_list(n_list);
  std::vector<int> ds = parse_int_list(d_list);
  if (ds.empty()) ds.push_back(cfg.source.d);

  std::ostringstream out;
  out << "kind,n,d,mode,volume,theorem1_bound,ratio\n";
  for (int d : ds) {
    for (int n : ns) {
      RunConfig cell = cfg;
      cell.source.n = n;
      cell.source.m = n;  // grid sweeps range over m
      cell.source.d = d;
      const PointSet<double> pts = generate<double>(spec_from_source(cell.source));
      const Figure fig = compute_figure(pts, cell);
      const double bound = theorem1_bound(pts.size(), pts.dim());
      out << cell.source.kind << ',' << pts.size() << ',' << pts.dim() << ',' << cell.mode
          << ',' << dtos(fig.volume) << ',' << dtos(bound) << ',' << dtos(fig.volume / bound)
          << '\n';
    }
  }
  emit(cfg, out.str());
  return kExitPass;
}

void add_source_flags(CLI::App* cmd, PointSource& src) {
  cmd->add_option("--input", src.input_path, "CSV point file (one point per row)");
  cmd->add_option("--dim", src.dim, "declared dimension (required for empty input files)");
  cmd->add_option("--kind", src.kind,
                  "generator kind: random, grid, kronecker, fibonacci, equispaced-1d");
  cmd->add_option("--n", src.n, "point count for generators");
  cmd->add_option("--m", src.m, "per-axis resolution (grid generator)");
  cmd->add_option("--d", src.d, "dimension for generators (default 2)");
  cmd->add_option("--seed", src.seed, "random generator seed");
}

void add_compute_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--ranges", cfg.ranges, "range family: periodic or boxes")
      ->check(CLI::IsMember({"periodic", "boxes"}));
  cmd->add_option("--mode", cfg.mode, "exact, witness, sample or gap1d")
      ->check(CLI::IsMember({"exact", "witness", "sample", "gap1d"}));
  cmd->add_option("--trials", cfg.trials, "sample mode: number of sampled boxes");
  cmd->add_option("--sample-seed", cfg.sample_seed, "sample mode: RNG seed");
  cmd->add_option("--budget", cfg.budget, "candidate-product budget for exact mode");
  cmd->add_option("--workers", cfg.workers, "worker threads for exact mode")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--best-axis", cfg.best_axis, "witness mode: take the window on the best axis");
  cmd->add_flag("--rational", cfg.rational, "exact rational arithmetic");
  cmd->add_flag("--timings", cfg.timings, "include wall_time_ms in the JSON report");
  cmd->add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", cfg.output_path, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersion of point sets on the torus and in the unit cube"};
  app.footer(
      "Upper bounds from the literature are cited but not computed, because their\n"
      "constants are unspecified: disp(P_n) <= C^d/n for periodic boxes (Larcher)\n"
      "and N(eps) <= C d eps^-2 points for star discrepancy eps (Heinrich, Novak,\n"
      "Wasilkowski, Wozniakowski). C stays symbolic in all reports.");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string sweep_n, sweep_d;

  CLI::App* compute = app.add_subcommand("compute", "compute dispersion of a point set");
  add_source_flags(compute, cfg.source);
  add_compute_flags(compute, cfg);

  CLI::App* witness = app.add_subcommand("witness", "construct an empty-box certificate");
  add_source_flags(witness, cfg.source);
  add_compute_flags(witness, cfg);

  CLI::App* generate_cmd = app.add_subcommand("generate", "emit a generated point set as CSV");
  add_source_flags(generate_cmd, cfg.source);
  generate_cmd->add_option("--output", cfg.output_path, "write CSV here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "check the min{1, d/n} lower bound");
  add_source_flags(verify, cfg.source);
  add_compute_flags(verify, cfg);

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate volume against the d/n curve");
  add_source_flags(sweep, cfg.source);
  add_compute_flags(sweep, cfg);
  sweep->add_option("--n-list", sweep_n, "n values, e.g. 5,8,13 or 1:8");
  sweep->add_option("--d-list", sweep_d, "d values, e.g. 1:3 (default: single --d)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (app.got_subcommand(compute)) return cmd_compute(cfg);
    if (app.got_subcommand(witness)) {
      cfg.mode = "witness";
      return cmd_compute(cfg);
    }
    if (app.got_subcommand(generate_cmd)) return cmd_generate(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(sweep)) return cmd_sweep(cfg, sweep_n, sweep_d);
  } catch (const budget_error& e) {
    json err;
    err["error"] = json{{"type", "budget"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    json err;
    err["error"] = json{{"type", "input"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
