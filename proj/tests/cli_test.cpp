#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const std::string& workdir) {
  const std::string cmd =
      "cd " + workdir + " && " + std::string(DIQSS_BIN) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) {
    result.output.append(buf, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("diqss_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("keyrate command emits a full JSON report") {
  const auto dir = fresh_dir("keyrate");
  const auto r = run_cli(
      "keyrate --set d=60.77 --set F=0.98 --set eta_l=0.9702 --set eta_M=0.8 "
      "--set N=3",
      dir);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("E_c").get<double>() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(j.at("meta").at("version").is_string());
  CHECK(j.at("meta").at("config_hash").is_string());
  CHECK(j.at("meta").at("interpretation") == "A");
  CHECK(j.at("meta").at("sense") == "min");
  CHECK(j.at("flags").at("below_threshold") == false);
}

TEST_CASE("keyrate flags a below-threshold point") {
  const auto dir = fresh_dir("below");
  const auto r = run_cli("keyrate --set F=0.5", dir);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("E_c").get<double>() == 0.0);
  CHECK(j.at("flags").at("below_threshold") == true);
}

TEST_CASE("config errors exit with code 2 and name the problem") {
  const auto dir = fresh_dir("config");
  auto r = run_cli("keyrate --set no_such_key=1", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("no_such_key") != std::string::npos);

  r = run_cli("keyrate --set eta_l=1.5", dir);
  CHECK(r.exit_code == 2);

  r = run_cli("scan --set axis=bogus", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("bogus") != std::string::npos);

  r = run_cli("scan --set axis=d --set start=0 --set stop=10 --set steps=5 "
              "--set outputs=[\\\"nope\\\"]",
              dir);
  CHECK(r.exit_code == 2);

  {
    std::ofstream cfg(fs::path(dir) / "bad.json");
    cfg << "{\"unknown_field\": 3}";
  }
  r = run_cli("keyrate --config bad.json", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown_field") != std::string::npos);
}

TEST_CASE("threshold command and bracket failures") {
  const auto dir = fresh_dir("threshold");
  auto r = run_cli(
      "threshold --set target=local_efficiency --set F=1 --set strategy=postselect",
      dir);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("root").get<double>() == doctest::Approx(0.9499).epsilon(2e-4));
  CHECK(std::abs(j.at("residual").get<double>()) < 1e-5);

  // no fidelity root exists at eta_l = 0.9
  r = run_cli("threshold --set target=fidelity --set eta_l=0.9", dir);
  CHECK(r.exit_code == 3);
}

TEST_CASE("scan emits deterministic CSV with metadata") {
  const auto dir = fresh_dir("scan");
  const std::string args =
      "scan --set axis=d --set start=0 --set stop=100 --set steps=5 "
      "--set F=0.98 --set eta_l=0.9702 --set eta_M=0.8 --set N=3 --out scan.csv";
  const auto r1 = run_cli(args, dir);
  CHECK(r1.exit_code == 0);
  const auto r2 = run_cli(args, dir);
  CHECK(r1.output == r2.output);  // byte identical

  const std::string csv = read_file(fs::path(dir) / "scan.csv");
  CHECK(csv == r1.output);
  CHECK(csv.rfind("# diqss version=", 0) == 0);
  CHECK(csv.find("config_hash=") != std::string::npos);
  CHECK(csv.find("d,E_m,E_c,R_inf,S,delta") != std::string::npos);

  // data rows: header + 5 rows after two comment lines
  int data_lines = 0;
  size_t pos = 0;
  while (pos < csv.size()) {
    const size_t eol = csv.find('\n', pos);
    const std::string line = csv.substr(pos, eol - pos);
    if (!line.empty() && line[0] != '#' && line.find("d,") != 0) ++data_lines;
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  CHECK(data_lines == 5);

  // printed numbers are stable under a parse/print round trip
  pos = csv.rfind('\n', csv.size() - 2);
  const std::string last = csv.substr(pos + 1);
  size_t comma = last.find(',');
  const std::string first_field = last.substr(0, comma);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", std::strtod(first_field.c_str(), nullptr));
  CHECK(first_field == buf);
}

TEST_CASE("scan JSON format carries the same table") {
  const auto dir = fresh_dir("scanjson");
  const auto r = run_cli(
      "scan --set axis=eta_M --set start=0.5 --set stop=1 --set steps=6 "
      "--set d=50 --set F=0.98 --set eta_l=0.9702 --set N=3 --format json",
      dir);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("rows").size() == 6);
  // E_c is non-decreasing along the storage-efficiency axis
  double prev = -1.0;
  for (const auto& row : j.at("rows")) {
    const double ec = row.at("E_c").get<double>();
    CHECK(ec >= prev - 1e-12);
    prev = ec;
  }
}

TEST_CASE("validate exits 0 in agreement and 4 when tampered") {
  const auto dir = fresh_dir("validate");
  const std::string base =
      "validate --set d=50 --set eta_M=0.8 --set N=3 --set F=0.98 "
      "--set eta_l=0.9702 --set trials=40000 --set rounds=60000 --set seed=1";
  const auto ok = run_cli(base, dir);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("E_m") != std::string::npos);

  const auto bad = run_cli(base + " --set validate_em_scale=2.5", dir);
  CHECK(bad.exit_code == 4);
  CHECK(bad.output.find("E_m") != std::string::npos);
  CHECK(bad.output.find("FAIL") != std::string::npos);
}

TEST_CASE("calibrate writes an idempotent stamp consumed by later runs") {
  const auto dir = fresh_dir("calibrate");
  const auto r1 = run_cli("calibrate", dir);
  CHECK(r1.exit_code == 0);
  const auto j = nlohmann::json::parse(r1.output);
  CHECK(j.at("selected").at("interpretation") == "A");
  CHECK(j.at("selected").at("sense") == "min");
  CHECK(std::abs(j.at("selected").at("anchor_residual").get<double>()) < 0.002);
  CHECK(j.at("sweep").size() == 4);

  const std::string stamp1 = read_file(fs::path(dir) / "diqss_calibration.json");
  const auto r2 = run_cli("calibrate", dir);
  CHECK(r2.exit_code == 0);
  const std::string stamp2 = read_file(fs::path(dir) / "diqss_calibration.json");
  CHECK(stamp1 == stamp2);

  // a keyrate run in the same directory reports the stamp as its source
  const auto kr = run_cli("keyrate", dir);
  CHECK(kr.exit_code == 0);
  const auto kj = nlohmann::json::parse(kr.output);
  CHECK(kj.at("meta").at("stamp_source").get<std::string>().find(
            "diqss_calibration.json") != std::string::npos);
}

TEST_CASE("keyrate --out mirrors stdout") {
  const auto dir = fresh_dir("out");
  const auto r = run_cli("keyrate --set d=10 --out report.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(read_file(fs::path(dir) / "report.json") == r.output);
}
