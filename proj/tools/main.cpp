#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "bsmobo/csv.hpp"
#include "bsmobo/optimizer.hpp"
#include "bsmobo/problems.hpp"
#include "bsmobo/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CliOptions {
  std::string problem = "zdt1";
  std::size_t dim = 8;
  std::size_t budget = 160;
  std::size_t init = 60;
  std::size_t batch = 5;
  std::size_t pop = 100;
  std::size_t seeds = 1;
  std::string seed_list;
  bool gradients = false;
  std::size_t mc_samples = 20;
  std::size_t inner_gens = 100;
  std::size_t epochs = 2000;
  double lr = 1e-3;
  double sobolev_weight = 1.0;
  double dropout = 0.05;
  std::string out = "runs";
  std::string config_file;
};

std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BSMOBO_THREADS")) {
    try {
      const auto parsed = std::stoul(env);
      if (parsed >= 1) cap = parsed;
    } catch (const std::exception&) {
      // ignore malformed values, keep the hardware default
    }
  }
  return cap;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + value);
}

// line-oriented `key = value` file with # comments; values override flags
void apply_config_file(CliOptions& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "problem") opt.problem = value;
    else if (key == "dim") opt.dim = std::stoul(value);
    else if (key == "budget") opt.budget = std::stoul(value);
    else if (key == "init") opt.init = std::stoul(value);
    else if (key == "batch") opt.batch = std::stoul(value);
    else if (key == "pop") opt.pop = std::stoul(value);
    else if (key == "seeds") opt.seeds = std::stoul(value);
    else if (key == "seed-list") opt.seed_list = value;
    else if (key == "gradients") opt.gradients = parse_bool(value);
    else if (key == "mc-samples") opt.mc_samples = std::stoul(value);
    else if (key == "inner-gens") opt.inner_gens = std::stoul(value);
    else if (key == "epochs") opt.epochs = std::stoul(value);
    else if (key == "lr") opt.lr = std::stod(value);
    else if (key == "sobolev-weight") opt.sobolev_weight = std::stod(value);
    else if (key == "dropout") opt.dropout = std::stod(value);
    else if (key == "out") opt.out = value;
    else throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
}

std::vector<std::uint64_t> resolve_seeds(const CliOptions& opt) {
  std::vector<std::uint64_t> seeds;
  if (!opt.seed_list.empty()) {
    std::stringstream ss(opt.seed_list);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = trim(part);
      if (!part.empty()) seeds.push_back(std::stoull(part));
    }
    if (seeds.empty()) throw std::invalid_argument("seed-list is empty");
  } else {
    for (std::size_t s = 0; s < opt.seeds; ++s) seeds.push_back(s);
  }
  return seeds;
}

struct Aggregate {
  double mean = 0.0, stddev = 0.0, median = 0.0;
};

Aggregate aggregate(std::vector<double> values) {
  Aggregate a;
  const double count = static_cast<double>(values.size());
  for (double v : values) a.mean += v;
  a.mean /= count;
  for (double v : values) a.stddev += (v - a.mean) * (v - a.mean);
  a.stddev = std::sqrt(a.stddev / count);
  std::sort(values.begin(), values.end());
  const std::size_t half = values.size() / 2;
  a.median = values.size() % 2 == 1 ? values[half] : 0.5 * (values[half - 1] + values[half]);
  return a;
}

struct RunOutcome {
  std::uint64_t seed;
  double final_igd;
  double final_hv;
};

// summary over finished run directories (each holding manifest.json and
// seed_*/trace.csv); one row per problem
int summarize_dirs(const std::vector<std::string>& dirs, const fs::path& summary_path) {
  std::map<std::string, std::vector<RunOutcome>> by_problem;
  for (const auto& dir : dirs) {
    const fs::path root(dir);
    std::ifstream manifest_in(root / "manifest.json");
    if (!manifest_in) {
      std::cerr << "summarize: missing manifest in " << dir << "\n";
      return kExitRuntime;
    }
    json manifest = json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded()) {
      std::cerr << "summarize: unreadable manifest in " << dir << "\n";
      return kExitRuntime;
    }
    const std::string problem = manifest.at("problem").get<std::string>();
    for (const auto& [seed_str, rel] : manifest.at("runs").items()) {
      const fs::path trace_path = root / rel.get<std::string>() / "trace.csv";
      if (!fs::exists(trace_path)) {
        std::cerr << "summarize: missing " << trace_path.string() << "\n";
        return kExitRuntime;
      }
      const bsmobo::CsvTable trace = bsmobo::read_csv(trace_path);
      if (trace.rows.empty()) {
        std::cerr << "summarize: empty trace " << trace_path.string() << "\n";
        return kExitRuntime;
      }
      const auto& last = trace.rows.back();
      by_problem[problem].push_back({std::stoull(seed_str),
                                     std::stod(last[trace.column("igd")]),
                                     std::stod(last[trace.column("hypervolume")])});
    }
  }

  bsmobo::CsvTable summary;
  summary.header = {"problem", "runs",      "igd_mean", "igd_std", "igd_median",
                    "hv_mean", "hv_std",    "hv_median"};
  for (const auto& [problem, outcomes] : by_problem) {
    std::vector<double> igds, hvs;
    for (const auto& o : outcomes) {
      igds.push_back(o.final_igd);
      hvs.push_back(o.final_hv);
    }
    const Aggregate igd_agg = aggregate(igds);
    const Aggregate hv_agg = aggregate(hvs);
    summary.rows.push_back({problem, std::to_string(outcomes.size()),
                            bsmobo::format_double(igd_agg.mean), bsmobo::format_double(igd_agg.stddev),
                            bsmobo::format_double(igd_agg.median), bsmobo::format_double(hv_agg.mean),
                            bsmobo::format_double(hv_agg.stddev), bsmobo::format_double(hv_agg.median)});
    std::cout << problem << ": runs=" << outcomes.size() << " igd mean=" << igd_agg.mean
              << " std=" << igd_agg.stddev << " median=" << igd_agg.median
              << " | hv mean=" << hv_agg.mean << " std=" << hv_agg.stddev
              << " median=" << hv_agg.median << "\n";
  }
  bsmobo::write_csv(summary_path, summary);
  return kExitOk;
}

int run_benchmark(const CliOptions& opt) {
  bsmobo::Problem problem = bsmobo::Problem::make(opt.problem, opt.dim);

  bsmobo::RunConfig base = bsmobo::RunConfig::for_problem(problem);
  base.budget = opt.budget;
  base.init_count = opt.init;
  base.batch_size = opt.batch;
  base.population = opt.pop;
  base.mc_samples = opt.mc_samples;
  base.use_gradients = opt.gradients;
  base.inner_generations = opt.inner_gens;
  base.training.epochs = opt.epochs;
  base.training.learning_rate = opt.lr;
  base.training.sobolev_weight = opt.sobolev_weight;
  base.training.dropout_rate = opt.dropout;

  const auto violations = base.violations();
  if (!violations.empty()) {
    std::cerr << "invalid configuration:\n";
    for (const auto& v : violations) std::cerr << "  - " << v << "\n";
    return kExitConfig;
  }

  const auto seeds = resolve_seeds(opt);
  const fs::path out(opt.out);
  fs::create_directories(out);

  json manifest;
  manifest["version"] = bsmobo::kVersion;
  manifest["problem"] = problem.name();
  manifest["config"] = {{"dim", opt.dim},
                        {"objectives", problem.objectives()},
                        {"budget", opt.budget},
                        {"init", opt.init},
                        {"batch", opt.batch},
                        {"pop", opt.pop},
                        {"mc_samples", opt.mc_samples},
                        {"gradients", opt.gradients},
                        {"inner_gens", opt.inner_gens},
                        {"epochs", opt.epochs},
                        {"lr", opt.lr},
                        {"sobolev_weight", opt.sobolev_weight},
                        {"dropout", opt.dropout}};
  manifest["seeds"] = seeds;
  json runs = json::object();
  for (const auto seed : seeds) runs[std::to_string(seed)] = "seed_" + std::to_string(seed);
  manifest["runs"] = runs;
  {
    std::ofstream manifest_out(out / "manifest.json");
    manifest_out << manifest.dump(2) << "\n";
  }

  // cached so repeated summaries see the identical reference set
  const fs::path front_cache = out / "reference_front.csv";
  if (!fs::exists(front_cache)) {
    bsmobo::write_points_csv(
        front_cache, problem.reference_front(bsmobo::reference_front_size(problem.objectives())));
  }

  const std::size_t cap = thread_cap();
  const std::size_t jobs = std::min<std::size_t>(seeds.size(), cap);
  const std::size_t threads_per_run = std::max<std::size_t>(1, cap / jobs);

  auto run_one = [&](std::uint64_t seed) {
    bsmobo::RunConfig cfg = base;
    cfg.seed = seed;
    cfg.threads = threads_per_run;
    const auto result = bsmobo::run(cfg, problem);
    const fs::path seed_dir = out / ("seed_" + std::to_string(seed));
    fs::create_directories(seed_dir);
    bsmobo::write_archive_csv(seed_dir / "archive.csv", result.archive);
    bsmobo::write_front_csv(seed_dir / "front.csv", result.archive);
    bsmobo::write_trace_csv(seed_dir / "trace.csv", result.traces);
  };

  std::size_t next = 0;
  while (next < seeds.size()) {
    const std::size_t wave = std::min(jobs, seeds.size() - next);
    std::vector<std::future<void>> futures;
    for (std::size_t i = 0; i < wave; ++i) {
      futures.push_back(std::async(std::launch::async, run_one, seeds[next + i]));
    }
    for (auto& f : futures) f.get();
    next += wave;
  }

  return summarize_dirs({opt.out}, out / "summary.csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched scalable multi-objective Bayesian optimization benchmark harness"};
  app.set_version_flag("--version", bsmobo::kVersion);

  CliOptions opt;
  app.add_option("--problem", opt.problem, "Benchmark problem name");
  app.add_option("--dim", opt.dim, "Decision space dimension");
  app.add_option("--budget", opt.budget, "Total true evaluations");
  app.add_option("--init", opt.init, "Initial design size");
  app.add_option("--batch", opt.batch, "Points evaluated per iteration");
  app.add_option("--pop", opt.pop, "Inner solver population");
  app.add_option("--seeds", opt.seeds, "Number of seeds (0, 1, ...)");
  app.add_option("--seed-list", opt.seed_list, "Explicit comma-separated seed list");
  app.add_flag("--gradients", opt.gradients, "Evaluate with gradients and train the Sobolev loss");
  app.add_option("--mc-samples", opt.mc_samples, "Monte-Carlo dropout samples");
  app.add_option("--inner-gens", opt.inner_gens, "Inner solver generations per iteration");
  app.add_option("--epochs", opt.epochs, "Training epochs per network");
  app.add_option("--lr", opt.lr, "Learning rate");
  app.add_option("--sobolev-weight", opt.sobolev_weight, "Gradient-loss weight");
  app.add_option("--dropout", opt.dropout, "Dropout rate");
  app.add_option("--out", opt.out, "Output directory");
  app.add_option("--config", opt.config_file, "key = value file overriding flags");

  auto* summarize = app.add_subcommand("summarize", "Aggregate finished run directories");
  std::vector<std::string> summarize_dirs_arg;
  std::string summary_out = "summary.csv";
  summarize->add_option("dirs", summarize_dirs_arg, "Run directories")->required();
  summarize->add_option("--out", summary_out, "Summary CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*summarize) {
      return summarize_dirs(summarize_dirs_arg, summary_out);
    }
    if (!opt.config_file.empty()) apply_config_file(opt, opt.config_file);

    const auto& known = bsmobo::Problem::names();
    std::string lowered = opt.problem;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (std::find(known.begin(), known.end(), lowered) == known.end()) {
      std::cerr << "unknown problem '" << opt.problem << "'; valid names:";
      for (const auto& name : known) std::cerr << " " << name;
      std::cerr << "\n";
      return kExitConfig;
    }
    return run_benchmark(opt);
  } catch (const std::invalid_argument& e) {  // ConfigError included
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
