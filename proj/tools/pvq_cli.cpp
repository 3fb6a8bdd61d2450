// pvq: command-line front end for the pyramid vector quantizer library.
//
// Subcommands: quantize, sweep, heatmap, baselines, optimize-lattice.
// Exit codes: 0 success, 2 usage error, 3 contract violation, 4 I/O error.
// Every randomized command takes an explicit --seed (default 42), so all
// published tables are reproducible byte for byte.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pvq/pvq.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitContract = 3;
constexpr int kExitIo = 4;

/// Post-parse argument problems (malformed vector literal and the like);
/// mapped to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplerOption {
  std::string name = "cube";

  pvq::SampleLaw law() const {
    return name == "sphere" ? pvq::SampleLaw::kSphereUniform
                            : pvq::SampleLaw::kCubeDirection;
  }
};

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed coordinate: '" + item + "'");
    }
    while (used < item.size() &&
           std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (used != item.size())
      throw UsageError("malformed coordinate: '" + item + "'");
    values.push_back(value);
  }
  if (values.empty()) throw UsageError("expected comma-separated coordinates");
  return values;
}

std::vector<double> build_p_grid(double p_min, double p_max, double p_step) {
  pvq::detail::require(p_step > 0.0, "p grid: step must be positive");
  pvq::detail::require(p_min <= p_max, "p grid: min must not exceed max");
  std::vector<double> grid;
  const int count =
      static_cast<int>(std::floor((p_max - p_min) / p_step + 1e-9)) + 1;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid.push_back(p_min + i * p_step);
  return grid;
}

/// Writes text to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open for writing: " + path);
  os << text;
  os.flush();
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

std::string comma_joined(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += pvq::format_g6(values[i]);
  }
  return out;
}

int run_quantize(const std::string& vector_text, int l_option, int k,
                 double p) {
  std::vector<double> input = parse_vector(vector_text);
  const int l = static_cast<int>(input.size());
  if (l_option != 0 && l_option != l)
    throw UsageError("--l disagrees with the number of coordinates");
  const double n2 = pvq::norm(input, 2.0);
  if (n2 > 0.0 && std::abs(n2 - 1.0) > 1e-12) {
    std::cerr << "note: input norm is off 1 by " << pvq::format_g6(n2 - 1.0)
              << ", normalizing onto the unit sphere\n";
  }
  const pvq::UnitVector x = pvq::UnitVector::normalized(input);
  const pvq::QuantizerConfig cfg(l, k);
  const pvq::PowerParam param(p);

  const std::vector<double> simplex =
      pvq::power_project(x.coords(), param.value, 1.0);
  const pvq::PyramidPoint point = pvq::quantize(x, cfg, param);
  const pvq::EnumerativeCoder coder(l, k);
  const pvq::CodebookIndex index = coder.encode(point);
  const pvq::UnitVector rec = pvq::reconstruct(point, param);

  double err = 0.0;
  for (int i = 0; i < l; ++i) {
    const double d = x.coords()[static_cast<std::size_t>(i)] -
                     rec.coords()[static_cast<std::size_t>(i)];
    err += d * d;
  }

  std::string ints;
  for (std::size_t i = 0; i < point.ints.size(); ++i) {
    if (i) ints += ',';
    ints += std::to_string(point.ints[i]);
  }

  std::cout << "input (unit sphere)  " << comma_joined(x.coords()) << '\n'
            << "simplex point        " << comma_joined(simplex) << '\n'
            << "pyramid point        " << ints << "  (k=" << k << ")\n"
            << "index                " << pvq::index_to_string(index) << "  (codebook "
            << coder.size().str() << " points, "
            << pvq::format_g6(pvq::bit_cost(l, k)) << " bits)\n"
            << "reconstruction       " << comma_joined(rec.coords()) << '\n'
            << "squared error        " << pvq::format_g6(err) << '\n';
  return kExitOk;
}

int run_sweep(int l, int k, double p_min, double p_max, double p_step,
              long long samples, std::uint64_t seed, const SamplerOption& sampler,
              const std::string& out) {
  const std::vector<double> grid = build_p_grid(p_min, p_max, p_step);
  const pvq::ImprovementReport report =
      pvq::sweep_p(l, k, grid, samples, seed, sampler.law());

  std::cout << "l=" << report.l << " k=" << report.k
            << " best_p=" << pvq::format_g6(report.best_p)
            << " mse_radial=" << pvq::format_g6(report.mse_radial)
            << " mse_best=" << pvq::format_g6(report.mse_best)
            << " pct=" << pvq::format_g6(report.pct)
            << " db=" << pvq::format_g6(report.db) << " n=" << report.n_samples
            << " seed=" << report.seed << '\n';

  if (!out.empty()) {
    std::ostringstream csv;
    pvq::write_improvement_csv(csv, std::span(&report, 1));
    write_output(out, csv.str());
  }
  return kExitOk;
}

int run_heatmap(int l_min, int l_max, int k_min, int k_max, double p_min,
                double p_max, double p_step, long long samples,
                std::uint64_t seed, int threads, const SamplerOption& sampler,
                const std::string& out) {
  const std::vector<double> grid = build_p_grid(p_min, p_max, p_step);
  const std::vector<pvq::ImprovementReport> rows =
      pvq::improvement_table(l_min, l_max, k_min, k_max, grid, samples, seed,
                             sampler.law(), threads);
  std::ostringstream csv;
  pvq::write_improvement_csv(csv, rows);
  write_output(out, csv.str());
  if (!out.empty())
    std::cerr << "wrote " << rows.size() << " cells to " << out << " (law "
              << sampler.name << ", master seed " << seed << ")\n";
  return kExitOk;
}

int run_baselines(int l, long long samples, std::uint64_t seed,
                  const SamplerOption& sampler, const std::string& out) {
  const std::vector<int> ks{2, 4, 6, 8};
  const std::vector<pvq::BaselineRow> rows =
      pvq::baseline_comparison(l, ks, samples, seed, sampler.law());
  std::ostringstream csv;
  pvq::write_baseline_csv(csv, rows);
  write_output(out, csv.str());
  return kExitOk;
}

int run_optimize_lattice(int k, int steps, double step_size,
                         const std::string& out_prefix) {
  const pvq::LatticeGraph graph = pvq::build_lattice(k);
  const pvq::PointConfiguration baseline = pvq::radial_configuration(graph);
  const pvq::OptimizeResult result =
      pvq::optimize(graph, baseline, steps, step_size);

  for (std::size_t i = 0; i < result.trace.size(); ++i)
    std::cout << "step " << i << " objective "
              << pvq::format_g6(result.trace[i]) << '\n';
  std::cout << "vertices " << graph.vertices.size() << " edges "
            << graph.edges.size() << '\n'
            << "baseline objective  " << pvq::format_g6(result.trace.front())
            << '\n'
            << "optimized objective " << pvq::format_g6(result.trace.back())
            << " after " << result.trace.size() - 1 << " accepted steps\n";

  std::ostringstream base_csv;
  pvq::write_points_csv(base_csv, baseline);
  write_output(out_prefix + "_baseline.csv", base_csv.str());
  std::ostringstream opt_csv;
  pvq::write_points_csv(opt_csv, result.points);
  write_output(out_prefix + "_optimized.csv", opt_csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pvq - pyramid vector quantizer with a tunable power projection\n"
      "Exit codes: 0 ok, 2 usage error, 3 contract violation, 4 I/O error."};
  app.require_subcommand(1);

  // --- quantize ------------------------------------------------------------
  auto* quantize = app.add_subcommand(
      "quantize", "Run one vector through project/quantize/encode/reconstruct");
  std::string vector_text;
  int q_l = 0;
  int q_k = 15;
  double q_p = 1.0;
  quantize->add_option("vector", vector_text,
                       "comma-separated coordinates, e.g. 0.6,0.8")
      ->required();
  quantize->add_option("--l", q_l,
                       "dimension L (optional; must match the vector)");
  quantize->add_option("--k", q_k, "pyramid radius K")->check(CLI::PositiveNumber);
  quantize->add_option("--p", q_p, "power projection exponent");

  // --- shared benchmark options ---------------------------------------------
  int s_l = 2, s_k = 15;
  double p_min = 1.0, p_max = 1.5, p_step = 0.01;
  long long samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  SamplerOption sampler;
  std::string out;

  auto add_grid_options = [&](CLI::App* cmd) {
    cmd->add_option("--p-min", p_min, "exponent grid start (default 1.0)");
    cmd->add_option("--p-max", p_max, "exponent grid end (default 1.5)");
    cmd->add_option("--p-step", p_step, "exponent grid step (default 0.01)");
    cmd->add_option("--samples", samples, "Monte Carlo samples per estimate")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "master RNG seed (default 42)");
    cmd->add_option("--sampler", sampler.name,
                    "input law: cube (default) or sphere")
        ->check(CLI::IsMember({"cube", "sphere"}));
    cmd->add_option("--out", out, "output CSV path (default: stdout)");
  };

  // --- sweep -----------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Optimize the exponent over the grid for one (L, K) cell");
  sweep->add_option("--l", s_l, "dimension L (default 2)");
  sweep->add_option("--k", s_k, "pyramid radius K (default 15)");
  add_grid_options(sweep);

  // --- heatmap ----------------------------------------------------------------
  auto* heatmap = app.add_subcommand(
      "heatmap", "Sweep every cell of an (L, K) grid and emit the CSV table");
  int l_min = 2, l_max = 20, k_min = 1, k_max = 20, threads = 1;
  heatmap->add_option("--l-min", l_min, "first dimension (default 2)");
  heatmap->add_option("--l-max", l_max, "last dimension (default 20)");
  heatmap->add_option("--k-min", k_min, "first radius (default 1)");
  heatmap->add_option("--k-max", k_max, "last radius (default 20)");
  heatmap->add_option("--threads", threads,
                      "worker threads (results are identical at any count)")
      ->check(CLI::PositiveNumber);
  add_grid_options(heatmap);

  // --- baselines ----------------------------------------------------------------
  auto* baselines = app.add_subcommand(
      "baselines", "Compare sign, sign+max and PVQ quantizers at one dimension");
  int b_l = 15;
  baselines->add_option("--l", b_l, "dimension L (default 15)");
  baselines->add_option("--samples", samples, "Monte Carlo samples")
      ->check(CLI::PositiveNumber);
  baselines->add_option("--seed", seed, "master RNG seed (default 42)");
  baselines->add_option("--sampler", sampler.name,
                        "input law: cube (default) or sphere")
      ->check(CLI::IsMember({"cube", "sphere"}));
  baselines->add_option("--out", out, "output CSV path (default: stdout)");

  // --- optimize-lattice ------------------------------------------------------
  auto* lattice = app.add_subcommand(
      "optimize-lattice",
      "Optimize S(3,K)+ point placement on the sphere octant");
  int o_k = 15, o_steps = 10000;
  double o_step_size = 0.5;
  std::string out_prefix = "lattice";
  lattice->add_option("--k", o_k, "lattice radius K (default 15)")
      ->check(CLI::PositiveNumber);
  lattice->add_option("--steps", o_steps, "max accepted steps (default 10000)");
  lattice->add_option("--step-size", o_step_size,
                      "initial gradient step (default 0.5)");
  lattice->add_option("--out", out_prefix,
                      "output prefix for <prefix>_baseline.csv and "
                      "<prefix>_optimized.csv (default: lattice)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (quantize->parsed()) return run_quantize(vector_text, q_l, q_k, q_p);
    if (sweep->parsed())
      return run_sweep(s_l, s_k, p_min, p_max, p_step, samples, seed, sampler,
                       out);
    if (heatmap->parsed())
      return run_heatmap(l_min, l_max, k_min, k_max, p_min, p_max, p_step,
                         samples, seed, threads, sampler, out);
    if (baselines->parsed()) return run_baselines(b_l, samples, seed, sampler, out);
    if (lattice->parsed())
      return run_optimize_lattice(o_k, o_steps, o_step_size, out_prefix);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::out_of_range& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitUsage;
}
