// End-to-end checks of the command-line tool. Each case invokes the built
// binary through the shell, captures its report, and asserts on exit codes
// and report contents.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(CVC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buffer.data(), buffer.size(), pipe))
    output += buffer.data();
  const int status = pclose(pipe);
  RunResult r;
  r.output = output;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "cvc_cli_tests";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string value_of(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return {};
}

// Timing lines vary run to run; everything else must be byte-identical.
std::string strip_timing(const std::string& report) {
  std::istringstream in(report);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("elapsed_ms", 0) != 0) out << line << '\n';
  return out.str();
}

const std::string kGallery =
    "0.1,0.2,7.1\n-0.3,0.4,6.8\n0.2,-0.1,7.3\n0.4,0.1,6.9\n"
    "7.2,0.1,0.0\n6.9,-0.2,0.3\n7.1,0.3,-0.1\n6.8,0.0,0.2\n";
const std::string kGalleryLabels = "1\n1\n1\n1\n2\n2\n2\n2\n";
// Probe points duplicated from gallery class 2.
const std::string kProbe =
    "7.2,0.1,0.0\n6.9,-0.2,0.3\n7.1,0.3,-0.1\n6.8,0.0,0.2\n";

}  // namespace

TEST_CASE("fiedler on the 2-node unit edge") {
  const auto dir = temp_dir();
  write_file(dir / "edge.csv", "0,1\n1,0\n");
  const auto r = run_cli("fiedler --affinity " + (dir / "edge.csv").string());
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.output, "fiedler_value") == "2");
  // Opposite-sign coefficients.
  CHECK(r.output.find("right") != std::string::npos);
  CHECK(r.output.find("left") != std::string::npos);
}

TEST_CASE("fiedler rejects a disconnected affinity with a pipeline error") {
  const auto dir = temp_dir();
  write_file(dir / "disc.csv", "0,1,0,0\n1,0,0,0\n0,0,0,1\n0,0,1,0\n");
  const auto r = run_cli("fiedler --affinity " + (dir / "disc.csv").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("components") != std::string::npos);
}

TEST_CASE("cluster on single-class data yields one cluster") {
  const auto dir = temp_dir();
  write_file(dir / "one.csv", "0,0\n0.1,0\n0,0.1\n0.1,0.1\n0.2,0\n");
  write_file(dir / "onelab.csv", "1\n1\n1\n1\n1\n");
  const auto r = run_cli("cluster --data " + (dir / "one.csv").string() +
                         " --labels " + (dir / "onelab.csv").string() +
                         " --proximity gaussian");
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.output, "n_clusters") == "1");
}

TEST_CASE("classify labels a duplicated probe correctly") {
  const auto dir = temp_dir();
  write_file(dir / "g.csv", kGallery);
  write_file(dir / "gl.csv", kGalleryLabels);
  write_file(dir / "p.csv", kProbe);
  const auto r = run_cli("classify --gallery " + (dir / "g.csv").string() +
                         " --gallery-labels " + (dir / "gl.csv").string() +
                         " --probe " + (dir / "p.csv").string() +
                         " --proximity gaussian --kernel-sigma 1.0");
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.output, "predicted_label") == "2");
}

TEST_CASE("classify with sum and mode fusion runs the ensemble") {
  const auto dir = temp_dir();
  write_file(dir / "g.csv", kGallery);
  write_file(dir / "gl.csv", kGalleryLabels);
  write_file(dir / "p.csv", kProbe);
  for (const std::string fusion : {"sum", "mode"}) {
    const auto r = run_cli("classify --gallery " + (dir / "g.csv").string() +
                           " --gallery-labels " + (dir / "gl.csv").string() +
                           " --probe " + (dir / "p.csv").string() +
                           " --fusion " + fusion +
                           " --nu 2 --proximity gaussian --kernel-sigma 1.0" +
                           " --seed 11");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.output, "predicted_label") == "2");
    CHECK(r.output.find("[per_dimension]") != std::string::npos);
  }
}

TEST_CASE("missing probe file exits with code 2") {
  const auto dir = temp_dir();
  write_file(dir / "g.csv", kGallery);
  write_file(dir / "gl.csv", kGalleryLabels);
  const auto r = run_cli("classify --gallery " + (dir / "g.csv").string() +
                         " --gallery-labels " + (dir / "gl.csv").string() +
                         " --probe " + (dir / "does_not_exist.csv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("input not found") != std::string::npos);
}

TEST_CASE("non-contiguous labels exit with code 2") {
  const auto dir = temp_dir();
  write_file(dir / "g.csv", kGallery);
  write_file(dir / "bad.csv", "1\n1\n1\n1\n3\n3\n3\n3\n");
  write_file(dir / "p.csv", kProbe);
  const auto r = run_cli("classify --gallery " + (dir / "g.csv").string() +
                         " --gallery-labels " + (dir / "bad.csv").string() +
                         " --probe " + (dir / "p.csv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("non-contiguous") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const auto dir = temp_dir();
  const std::string args =
      "experiment --d-values 2,7 --sizes 30 --seeds 2 --seed 5";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(strip_timing(a.output) == strip_timing(b.output));
  // A different seed must change the numbers.
  const auto c = run_cli("experiment --d-values 2,7 --sizes 30 --seeds 2 --seed 6");
  CHECK(strip_timing(a.output) != strip_timing(c.output));
}

TEST_CASE("experiment report carries the trend summary") {
  const auto r =
      run_cli("experiment --d-values 2,7 --sizes 60 --seeds 5 --seed 9");
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.output, "trend_fiedler_decreases") == "true");
  CHECK(value_of(r.output, "trend_error_decreases") == "true");
  CHECK(r.output.find("[cells]") != std::string::npos);
}

TEST_CASE("json format produces a parseable report") {
  const auto dir = temp_dir();
  write_file(dir / "edge.csv", "0,1\n1,0\n");
  const auto r = run_cli("fiedler --affinity " + (dir / "edge.csv").string() +
                         " --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"fiedler_value\": \"2\"") != std::string::npos);
  CHECK(r.output.find("\"fiedler_vector\"") != std::string::npos);
}

TEST_CASE("report goes to --out when requested") {
  const auto dir = temp_dir();
  write_file(dir / "edge.csv", "0,1\n1,0\n");
  const auto out = dir / "report.txt";
  std::error_code ec;
  fs::remove(out, ec);
  const auto r = run_cli("fiedler --affinity " + (dir / "edge.csv").string() +
                         " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str().find("fiedler_value = 2") != std::string::npos);
}

TEST_CASE("synth writes loadable data and labels") {
  const auto dir = temp_dir();
  const auto data = dir / "sd.csv";
  const auto labels = dir / "sl.csv";
  const auto r = run_cli("synth --d 6 --n 10 --seed 3 --data-out " +
                         data.string() + " --labels-out " + labels.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(data);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 20);

  // Same seed reproduces the files byte for byte.
  const auto data2 = dir / "sd2.csv";
  run_cli("synth --d 6 --n 10 --seed 3 --data-out " + data2.string() +
          " --labels-out " + (dir / "sl2.csv").string());
  std::ifstream a(data), b(data2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("basis cache is written and reused") {
  const auto dir = temp_dir();
  const auto cache = dir / "cache";
  fs::remove_all(cache);
  write_file(dir / "g.csv", kGallery);
  write_file(dir / "gl.csv", kGalleryLabels);
  write_file(dir / "p.csv", kProbe);
  const std::string args =
      "classify --gallery " + (dir / "g.csv").string() + " --gallery-labels " +
      (dir / "gl.csv").string() + " --probe " + (dir / "p.csv").string() +
      " --fusion sum --nu 2 --proximity gaussian --kernel-sigma 1.0 --seed 4" +
      " --cache-dir " + cache.string();
  const auto first = run_cli(args);
  CHECK(first.exit_code == 0);
  std::size_t cached = 0;
  for (const auto& entry : fs::directory_iterator(cache)) {
    (void)entry;
    ++cached;
  }
  CHECK(cached == 6);  // 3 sets x nu 2
  const auto second = run_cli(args);
  CHECK(second.exit_code == 0);
  CHECK(value_of(second.output, "predicted_label") ==
        value_of(first.output, "predicted_label"));
}

TEST_CASE("config file values are overridden by flags") {
  const auto dir = temp_dir();
  write_file(dir / "edge.csv", "0,1\n1,0\n");
  write_file(dir / "conf.ini",
             "[fiedler]\nmax-iterations=77\naffinity=" +
                 (dir / "edge.csv").string() + "\n");
  const auto r = run_cli("--config " + (dir / "conf.ini").string() +
                         " fiedler");
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.output, "max_iterations") == "77");

  const auto overridden = run_cli("--config " + (dir / "conf.ini").string() +
                                  " fiedler --max-iterations 55");
  CHECK(value_of(overridden.output, "max_iterations") == "55");
}
