#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bsmobo/csv.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = BSMOBO_CLI_PATH;

int run_cli(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

const std::string kTinyArgs =
    "--dim 3 --budget 16 --init 8 --batch 3 --pop 8 --epochs 25 --inner-gens 4 --mc-samples 5";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bsmobo_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

}  // namespace

TEST_CASE("unknown problem names exit with the configuration code") {
  CHECK(run_cli("--problem nosuch") == 2);
}

TEST_CASE("invalid run configurations exit with the configuration code") {
  CHECK(run_cli("--problem zdt1 --dim 3 --budget 10 --init 8 --batch 5") == 2);
}

TEST_CASE("a run produces the advertised files and they re-parse losslessly") {
  const fs::path out = fresh_dir("run_zdt1");
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seeds 2 --out " + out.string()) == 0);

  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "reference_front.csv"));
  CHECK(fs::exists(out / "summary.csv"));

  for (const auto seed : {"seed_0", "seed_1"}) {
    const fs::path dir = out / seed;
    const auto archive = bsmobo::read_csv(dir / "archive.csv");
    CHECK(archive.rows.size() == 16);
    CHECK(archive.header.size() == 1 + 3 + 2);  // eval_index, x_0..x_2, f_0..f_1
    CHECK(archive.header[0] == "eval_index");

    // lossless round trip: rewrite what was parsed and compare bytes
    const fs::path copy = dir / "archive_copy.csv";
    bsmobo::write_csv(copy, archive);
    std::ifstream a(dir / "archive.csv"), b(copy);
    const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // trace rows = outer iterations: (16 - 8) / 3 -> 3 batches
    const auto trace = bsmobo::read_csv(dir / "trace.csv");
    CHECK(trace.rows.size() == 3);
    CHECK(trace.column("igd") == 2);

    // front.csv rows are a subset of archive.csv rows
    const auto front = bsmobo::read_csv(dir / "front.csv");
    CHECK(front.rows.size() <= archive.rows.size());
    CHECK(front.header == archive.header);
  }
}

TEST_CASE("identical seeds produce bitwise-identical archives") {
  const fs::path out1 = fresh_dir("repeat_a");
  const fs::path out2 = fresh_dir("repeat_b");
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seed-list 7 --out " + out1.string()) == 0);
  setenv("BSMOBO_THREADS", "1", 1);  // a different worker cap must not change results
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seed-list 7 --out " + out2.string()) == 0);
  unsetenv("BSMOBO_THREADS");
  std::ifstream a(out1 / "seed_7" / "archive.csv"), b(out2 / "seed_7" / "archive.csv");
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK_FALSE(sa.empty());
}

TEST_CASE("summarize recomputes the statistics written by the run") {
  const fs::path out = fresh_dir("summary_src");
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seeds 3 --out " + out.string()) == 0);

  const fs::path summary_path = fresh_dir("summary_again").string() + ".csv";
  REQUIRE(run_cli("summarize " + out.string() + " --out " + summary_path.string()) == 0);

  // independent recomputation from the trace files
  std::vector<double> igds;
  for (const auto seed : {"seed_0", "seed_1", "seed_2"}) {
    const auto trace = bsmobo::read_csv(out / seed / "trace.csv");
    igds.push_back(std::stod(trace.rows.back()[trace.column("igd")]));
  }
  const double mean = (igds[0] + igds[1] + igds[2]) / 3.0;
  double var = 0.0;
  for (double v : igds) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / 3.0);
  std::sort(igds.begin(), igds.end());

  const auto summary = bsmobo::read_csv(summary_path);
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0][summary.column("problem")] == "zdt1");
  CHECK(std::stod(summary.rows[0][summary.column("igd_mean")]) == doctest::Approx(mean).epsilon(1e-12));
  CHECK(std::stod(summary.rows[0][summary.column("igd_std")]) == doctest::Approx(stddev).epsilon(1e-12));
  CHECK(std::stod(summary.rows[0][summary.column("igd_median")]) == doctest::Approx(igds[1]).epsilon(1e-12));

  // single run: mean = median, std = 0
  const fs::path solo = fresh_dir("solo");
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seeds 1 --out " + solo.string()) == 0);
  const auto solo_summary = bsmobo::read_csv(solo / "summary.csv");
  CHECK(std::stod(solo_summary.rows[0][solo_summary.column("igd_std")]) == 0.0);
  CHECK(solo_summary.rows[0][solo_summary.column("igd_mean")] ==
        solo_summary.rows[0][solo_summary.column("igd_median")]);
}

TEST_CASE("summarize fails cleanly on missing traces") {
  const fs::path empty = fresh_dir("no_manifest");
  fs::create_directories(empty);
  CHECK(run_cli("summarize " + empty.string()) == 3);
}

TEST_CASE("config files override flags") {
  const fs::path out = fresh_dir("config_out");
  const fs::path config = fresh_dir("config_file").string() + ".cfg";
  {
    std::ofstream cfg(config);
    cfg << "# tiny smoke configuration\n";
    cfg << "problem = zdt2\n";
    cfg << "budget = 14   # overrides the flag\n";
    cfg << "init = 8\n";
  }
  REQUIRE(run_cli("--problem zdt1 " + kTinyArgs + " --seeds 1 --out " + out.string() +
                  " --config " + config.string()) == 0);
  const auto archive = bsmobo::read_csv(out / "seed_0" / "archive.csv");
  CHECK(archive.rows.size() == 14);
  std::ifstream manifest(out / "manifest.json");
  const std::string text((std::istreambuf_iterator<char>(manifest)),
                         std::istreambuf_iterator<char>());
  CHECK(text.find("zdt2") != std::string::npos);

  const fs::path bad = fresh_dir("bad_config").string() + ".cfg";
  {
    std::ofstream cfg(bad);
    cfg << "no_such_key = 1\n";
  }
  CHECK(run_cli("--problem zdt1 --config " + bad.string()) == 2);
}
