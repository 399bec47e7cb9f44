#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the built binary: exit codes, pinned CSV header,
// determinism, config-file merging.

namespace {

const char* cli_path() { return LFASYM_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_file(const char* name) {
  return std::string("/tmp/lfasym_test_") + name;
}

}  // namespace

TEST_CASE("help and catalog listing succeed") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("presets") == 0);
}

TEST_CASE("sweep writes the pinned CSV header and is deterministic") {
  const std::string out1 = tmp_file("sweep1.csv");
  const std::string out2 = tmp_file("sweep2.csv");
  const std::string args =
      "sweep --preset gauss1d --s 2 --k-min 4 --k-max 16 --k-count 3 "
      "--tol 1e-9 --out ";
  REQUIRE(run_cli(args + out1) == 0);
  REQUIRE(run_cli(args + out2) == 0);
  const std::string text = slurp(out1);
  CHECK(text.rfind("k,s,re_asym,im_asym,re_oracle,im_oracle,abs_err,rel_err\n",
                   0) == 0);
  CHECK(text == slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("json sweep output parses") {
  const std::string out = tmp_file("sweep.json");
  REQUIRE(run_cli("sweep --preset gauss1d --s 2 --k-min 4 --k-max 8 "
                  "--k-count 2 --tol 1e-9 --format json --out " +
                  out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"p_asym\"") != std::string::npos);
  CHECK(text.find("\"oracle_converged\": true") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("config and precondition failures exit with code 2") {
  CHECK(run_cli("sweep --preset no-such-preset") == 2);
  CHECK(run_cli("sweep") == 2);  // no preset at all
  CHECK(run_cli("symbols --preset spd2d --k-min 3") == 2);  // no 1d spec
  CHECK(run_cli("sweep --preset gauss1d --order 7") == 2);
  CHECK(run_cli("domain-ext --preset gauss1d") == 2);  // no transform
}

TEST_CASE("starved oracle budget exits with code 3") {
  CHECK(run_cli("sweep --preset gauss1d --s 2 --k-min 12 --k-max 16 "
                "--k-count 2 --tol 1e-13 --budget 500 --out /dev/null") == 3);
}

TEST_CASE("config file values are read and flags override them") {
  const std::string cfg = tmp_file("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"preset": "gauss1d", "s": 2.0, "k_min": 4.0, "k_max": 8.0,
             "k_count": 2, "tol": 1e-9})";
  }
  const std::string out = tmp_file("cfg_sweep.csv");
  REQUIRE(run_cli("sweep --config " + cfg + " --out " + out) == 0);
  std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows

  // flag overrides the config's k_count
  REQUIRE(run_cli("sweep --config " + cfg + " --k-count 4 --out " + out) == 0);
  text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("custom spec1d presets come in through the config file") {
  const std::string cfg = tmp_file("spec_config.json");
  {
    std::ofstream f(cfg);
    f << R"({"spec1d": {"alpha": 2.0, "beta": 1.0, "a": [1.0, 0.1],
             "f_crit": 0.0,
             "domain": {"kind": "two_sided", "b1": 2.0, "b2": 2.0}},
             "s": 2.0, "k_min": 4.0, "k_max": 8.0, "k_count": 2,
             "tol": 1e-8})";
  }
  CHECK(run_cli("sweep --config " + cfg + " --out /dev/null") == 0);
  std::remove(cfg.c_str());
}

TEST_CASE("decay-fit and symbols subcommands run end to end") {
  CHECK(run_cli("decay-fit --preset cubic-perturbed --s 3 --m 1 --k-min 8 "
                "--k-max 128 --k-count 5 --out /dev/null") == 0);
  CHECK(run_cli("decay-fit --preset cubic-perturbed --s 3 --m 1 --k-min 8 "
                "--k-max 128 --k-count 5 --path erdelyi --out /dev/null") == 0);
  CHECK(run_cli("symbols --preset cubic-perturbed --k-min 5 --lambda 1000 "
                "--m-max 2 --out /dev/null") == 0);
  CHECK(run_cli("symbols --preset cubic-perturbed --k-min 5 --lambda 1000 "
                "--m-max 2 --two-sided --out /dev/null") == 0);
  CHECK(run_cli("asym1d --preset gauss1d --s 2 --k-min 4 --k-max 8 "
                "--k-count 2 --out /dev/null") == 0);
  CHECK(run_cli("asymnd --preset spd2d --s 2 --k-dir 1,1 --k-min 4 --k-max 8 "
                "--k-count 2 --out /dev/null") == 0);
  CHECK(run_cli("oracle --preset gauss1d --s 2 --k-min 4 --k-max 8 "
                "--k-count 2 --tol 1e-9 --out /dev/null") == 0);
  CHECK(run_cli("domain-ext --preset negative-gaussian --s 2 --k-min 4 "
                "--k-max 12 --k-count 5 --tol 1e-6 --out /dev/null") == 0);
}
