#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "parafis/csv.hpp"

using testutil::CommandResult;
using testutil::TempDir;

namespace {

std::string g_cli;  // absolute path to the parafis binary, from argv

std::string sh_quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

// Six-class blob dataset plus a protocol config exercising all three phases.
void write_toy_experiment(const TempDir& tmp, int repeats, const std::string& out_dir) {
  testutil::write_file(tmp.path / "blobs.csv", testutil::gaussian_blobs_csv(6, 250, 0.15, 3));
  const std::string config = R"({
  "dataset": {"path": "blobs.csv", "feature_count": 2, "label_position": "last"},
  "protocol": {"t1": 150, "t2": 280, "t3": 400, "n1": 2, "n2": 2, "n3": 2},
  "models": [
    {"name": "para", "creation_rule": "separability", "init_method": "anticipation"},
    {"name": "gefs", "creation_rule": "gefs_star", "init_method": "i2", "kappa": 2.5}
  ],
  "repeats": )" + std::to_string(repeats) +
                             R"(,
  "seed": 99,
  "smoothing": 5,
  "plot_smoothing": 20,
  "out_dir": ")" + out_dir + R"("
})";
  testutil::write_file(tmp.path / "experiment.json", config);
}

}  // namespace

TEST_CASE("run executes an experiment and writes the full output set") {
  TempDir tmp;
  write_toy_experiment(tmp, 2, "out");
  const CommandResult res = testutil::run_command(sh_quote(g_cli) + " run --config experiment.json", tmp.path);
  CHECK(res.exit_code == 0);
  INFO(res.err);
  REQUIRE(std::filesystem::exists(tmp.path / "out" / "summary.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "fits.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "record_para.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "plot_para.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "record_gefs.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "traces" / "para" / "r000.trace"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "traces" / "para" / "r001.trace"));
  CHECK(res.out.find("para") != std::string::npos);

  const parafis::CsvTable summary = parafis::read_csv(tmp.path / "out" / "summary.csv");
  REQUIRE(summary.rows.size() == 2);
  CHECK(summary.rows[0][summary.column("config")] == "para");
  const double acc = parafis::parse_double(summary.rows[0][summary.column("mean_acc")], "acc");
  CHECK(acc > 0.5);
  CHECK(acc <= 1.0);

  const parafis::CsvTable record = parafis::read_csv(tmp.path / "out" / "record_para.csv");
  CHECK(record.rows.size() == 400);
  CHECK(record.header == std::vector<std::string>{"step", "score", "smoothed", "phase"});
  CHECK(record.rows[0][3] == "A");
  CHECK(record.rows[399][3] == "C");
}

TEST_CASE("run twice produces byte-identical outputs") {
  TempDir tmp;
  write_toy_experiment(tmp, 2, "out1");
  const CommandResult first =
      testutil::run_command(sh_quote(g_cli) + " run --config experiment.json", tmp.path);
  REQUIRE(first.exit_code == 0);
  const CommandResult second = testutil::run_command(
      sh_quote(g_cli) + " run --config experiment.json --out out2", tmp.path);
  REQUIRE(second.exit_code == 0);
  CHECK(testutil::read_file(tmp.path / "out1" / "summary.csv") ==
        testutil::read_file(tmp.path / "out2" / "summary.csv"));
  CHECK(testutil::read_file(tmp.path / "out1" / "fits.csv") ==
        testutil::read_file(tmp.path / "out2" / "fits.csv"));
  CHECK(testutil::read_file(tmp.path / "out1" / "record_para.csv") ==
        testutil::read_file(tmp.path / "out2" / "record_para.csv"));
}

TEST_CASE("replay reproduces the recording run byte for byte") {
  TempDir tmp;
  write_toy_experiment(tmp, 2, "out");
  REQUIRE(testutil::run_command(sh_quote(g_cli) + " run --config experiment.json", tmp.path)
              .exit_code == 0);
  const CommandResult replay = testutil::run_command(
      sh_quote(g_cli) + " replay --config experiment.json --trace out/traces/para --out replayed",
      tmp.path);
  CHECK(replay.exit_code == 0);
  INFO(replay.err);
  CHECK(testutil::read_file(tmp.path / "out" / "record_para.csv") ==
        testutil::read_file(tmp.path / "replayed" / "record_para.csv"));
  CHECK(testutil::read_file(tmp.path / "out" / "traces" / "para" / "r000.trace") ==
        testutil::read_file(tmp.path / "replayed" / "traces" / "para" / "r000.trace"));
}

TEST_CASE("missing dataset file exits 2 and names the path") {
  TempDir tmp;
  write_toy_experiment(tmp, 1, "out");
  std::filesystem::remove(tmp.path / "blobs.csv");
  const CommandResult res =
      testutil::run_command(sh_quote(g_cli) + " run --config experiment.json", tmp.path);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("blobs.csv") != std::string::npos);
}

TEST_CASE("config errors exit 2 and name the field") {
  TempDir tmp;
  testutil::write_file(tmp.path / "bad.json", R"({
  "dataset": {"path": "x.csv", "feature_count": 2},
  "protocol": {"t1": 10, "t2": 20, "t3": 30, "n1": 1, "n2": 0, "n3": 0},
  "models": [{"name": "m", "creation_rule": "separability", "init_method": "anticipation", "alpha2": 7}],
  "seed": 1
})");
  const CommandResult res = testutil::run_command(sh_quote(g_cli) + " run --config bad.json", tmp.path);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("models[0]") != std::string::npos);

  testutil::write_file(tmp.path / "unknown.json", R"({"datasets": {}})");
  const CommandResult unknown =
      testutil::run_command(sh_quote(g_cli) + " run --config unknown.json", tmp.path);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("datasets") != std::string::npos);

  const CommandResult missing = testutil::run_command(sh_quote(g_cli) + " run", tmp.path);
  CHECK(missing.exit_code == 2);  // --config is required

  // a seed must come from the config or the flag
  testutil::write_file(tmp.path / "blobs.csv", testutil::gaussian_blobs_csv(2, 100, 0.15, 3));
  testutil::write_file(tmp.path / "noseed.json", R"({
  "dataset": {"path": "blobs.csv", "feature_count": 2},
  "protocol": {"t1": 20, "t2": 30, "t3": 40, "n1": 1, "n2": 1, "n3": 0},
  "models": [{"name": "m", "creation_rule": "separability", "init_method": "anticipation"}]
})");
  const CommandResult noseed =
      testutil::run_command(sh_quote(g_cli) + " run --config noseed.json", tmp.path);
  CHECK(noseed.exit_code == 2);
  CHECK(noseed.err.find("seed") != std::string::npos);
}

TEST_CASE("a truncated trace file exits 1 with the line number") {
  TempDir tmp;
  write_toy_experiment(tmp, 1, "out");
  REQUIRE(testutil::run_command(sh_quote(g_cli) + " run --config experiment.json", tmp.path)
              .exit_code == 0);
  testutil::write_file(tmp.path / "out" / "traces" / "para" / "r000.trace",
                       "0,0,new_class\n4,1");
  const CommandResult res = testutil::run_command(
      sh_quote(g_cli) + " replay --config experiment.json --trace out/traces/para", tmp.path);
  CHECK(res.exit_code == 1);
  CHECK(res.err.find(":2") != std::string::npos);
}

TEST_CASE("fit recovers parameters from a synthetic record CSV") {
  TempDir tmp;
  const double amplitude = 0.3, offset = 0.55, tau = 80.0;
  std::string csv = "step,score,smoothed,phase\n";
  for (int t = 0; t < 900; ++t) {
    const int local = t < 300 ? t : t < 600 ? t - 300 : t - 600;
    const char phase = t < 300 ? 'A' : t < 600 ? 'B' : 'C';
    const double v = offset + amplitude * (1.0 - std::exp(-local / tau));
    csv += std::to_string(t) + ",0," + parafis::format_double(v) + "," + phase + "\n";
  }
  testutil::write_file(tmp.path / "record_x.csv", csv);
  const CommandResult res = testutil::run_command(
      sh_quote(g_cli) + " fit --input record_x.csv --boundaries 300,600,900 --out fitted", tmp.path);
  REQUIRE(res.exit_code == 0);
  INFO(res.err);
  const parafis::CsvTable fits = parafis::read_csv(tmp.path / "fitted" / "fits.csv");
  REQUIRE(fits.rows.size() == 3);
  for (const auto& row : fits.rows) {
    const double s_plus = parafis::parse_double(row[fits.column("S_plus_smin")], "s");
    const double got_tau = parafis::parse_double(row[fits.column("tau")], "tau");
    CHECK(std::abs(s_plus - (amplitude + offset)) < 1e-4);
    CHECK(std::abs(got_tau - tau) / tau < 1e-4);
    CHECK(row[fits.column("config")] == "record_x");
  }
}

TEST_CASE("fit rejects bad invocations") {
  TempDir tmp;
  testutil::write_file(tmp.path / "r.csv", "step,score,smoothed,phase\n0,1,1,A\n");
  CHECK(testutil::run_command(sh_quote(g_cli) + " fit --input r.csv --boundaries 1,2", tmp.path)
            .exit_code == 2);
  CHECK(testutil::run_command(
            sh_quote(g_cli) + " fit --input r.csv --boundaries 0,0,1 --column bogus", tmp.path)
            .exit_code == 2);
  CHECK(testutil::run_command(sh_quote(g_cli) + " fit --input r.csv --boundaries 0,0,99", tmp.path)
            .exit_code == 2);
  // malformed CSV value
  testutil::write_file(tmp.path / "bad.csv", "step,score,smoothed,phase\n0,1,zap,A\n");
  const int bad_rows =
      testutil::run_command(sh_quote(g_cli) + " fit --input bad.csv --boundaries 0,0,1", tmp.path)
          .exit_code;
  CHECK(bad_rows == 1);
  CHECK(testutil::run_command(sh_quote(g_cli) + " fit --input missing.csv --boundaries 0,0,1",
                              tmp.path)
            .exit_code == 1);
}

TEST_CASE("unknown subcommands and --help behave") {
  TempDir tmp;
  CHECK(testutil::run_command(sh_quote(g_cli) + " frobnicate", tmp.path).exit_code == 2);
  const CommandResult help = testutil::run_command(sh_quote(g_cli) + " --help", tmp.path);
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("run") != std::string::npos);
}

int main(int argc, char** argv) {
  std::vector<char*> args(argv, argv + argc);
  if (args.size() >= 2 && args.back()[0] != '-') {
    g_cli = args.back();
    args.pop_back();
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest options] <path-to-parafis-binary>\n");
    return 1;
  }
  doctest::Context context(static_cast<int>(args.size()), args.data());
  return context.run();
}
