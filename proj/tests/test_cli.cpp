#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pptd/cli.hpp"
#include "pptd/fidelity.hpp"
#include "pptd/random.hpp"
#include "pptd/state_io.hpp"

using namespace pptd;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("pptd_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("fidelity of an isotropic state") {
  const auto r = run_cli({"fidelity", "--family", "isotropic", "--d", "2", "--f", "0.85", "--K", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.85).epsilon(1e-6));
  CHECK(doc["closed_form"].get<double>() == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(doc.contains("provenance"));
  CHECK(doc.contains("closed_form_provenance"));
}

TEST_CASE("fidelity of the maximally entangled state at K = 1") {
  const auto r = run_cli({"fidelity", "--family", "maxent", "--d", "2", "--K", "1"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Werner LP at the antisymmetric threshold") {
  const auto r = run_cli({"werner-lp", "--d", "3", "--p", "1", "--n", "1", "--K", "1.6666667"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(std::abs(doc["value"].get<double>() - 1.0) <= 1e-5);
  CHECK(doc["B"].size() == 2);
  CHECK(doc["S"].size() == 2);
}

TEST_CASE("isotropic LP output") {
  const auto r = run_cli({"isotropic-lp", "--d", "2", "--f", "0.8", "--n", "2", "--K", "4"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["B"].size() == 3);
  CHECK(doc["value"].get<double>() > 0.0);
}

TEST_CASE("floats carry 12 significant digits") {
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(2.5e-13) == "2.5e-13");
  const auto r = run_cli({"bounds", "--family", "werner", "--d", "3", "--p", "0.8", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("name,kind,value,provenance\n", 0) == 0);
  CHECK(r.out.find("0.278071905") != std::string::npos);
}

TEST_CASE("bounds as JSON") {
  const auto r = run_cli({"bounds", "--family", "isotropic", "--d", "3", "--f", "0.9"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["consistent"].get<bool>());
  CHECK(doc["rows"].size() == 4);
  for (const auto& row : doc["rows"]) CHECK(row.contains("provenance"));
}

TEST_CASE("code LP and table") {
  const auto r = run_cli({"code-lp", "--n", "5", "--K", "2", "--d", "3"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["verdict"] == "feasible");
  CHECK(doc["verified"].get<bool>());
  CHECK(doc["enumerators"]["A"].size() == 6);

  const auto bad = json::parse(run_cli({"code-lp", "--n", "5", "--K", "2", "--d", "4"}).out);
  CHECK(bad["verdict"] == "infeasible");
  CHECK(bad.contains("certificate"));

  const auto t = run_cli({"code-table", "--n-max", "3"});
  REQUIRE(t.code == cli::kExitOk);
  std::istringstream lines(t.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,K,d,verdict,residual,verified");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 1 * 2 + 2 * 3 + 3 * 4);  // sum over n of n * (n + 1)
}

TEST_CASE("state round trip through a file keeps the fidelity") {
  Rng rng(51);
  const auto rho = random_density_matrix(TensorShape::bipartite(2, 2), rng);
  const auto path = scratch_file("roundtrip.json", write_state(rho));
  const auto r = run_cli({"fidelity", "--state", path.string(), "--K", "1.5"});
  REQUIRE(r.code == cli::kExitOk);
  const double direct = fidelity_ppt(rho, 1.5).value;
  const double via_file = fidelity_ppt(read_state_file(path.string()), 1.5).value;
  CHECK(std::abs(direct - via_file) <= 1e-10);
  CHECK(std::abs(json::parse(r.out)["value"].get<double>() - direct) <= 1e-10);

  // The state subcommand writes a file the fidelity subcommand reads back.
  const auto written = run_cli({"state", "--family", "werner", "--d", "2", "--p", "0.7"});
  REQUIRE(written.code == cli::kExitOk);
  const auto wpath = scratch_file("werner.json", written.out);
  const auto a = json::parse(run_cli({"fidelity", "--state", wpath.string(), "--K", "2"}).out);
  const auto b = json::parse(run_cli({"fidelity", "--family", "werner", "--d", "2", "--p", "0.7", "--K", "2"}).out);
  CHECK(std::abs(a["value"].get<double>() - b["value"].get<double>()) <= 1e-10);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run_cli({}).code == cli::kExitInputError);
  CHECK(run_cli({"fidelity", "--family", "nosuch", "--K", "2"}).code == cli::kExitInputError);
  CHECK(run_cli({"fidelity", "--family", "isotropic", "--d", "2", "--K", "2"}).code ==
        cli::kExitInputError);  // missing --f
  CHECK(run_cli({"fidelity", "--family", "isotropic", "--d", "2", "--f", "1.5", "--K", "2"}).code ==
        cli::kExitInputError);
  CHECK(run_cli({"fidelity", "--family", "maxent", "--d", "2", "--K", "2", "--tol", "1e-2"}).code ==
        cli::kExitInputError);
  CHECK(run_cli({"code-table", "--n-max", "13"}).code == cli::kExitInputError);
  CHECK(run_cli({"state", "--family", "maxent", "--d", "2", "--format", "csv"}).code ==
        cli::kExitInputError);

  const auto path = scratch_file("broken.json", "{\n  \"dims\": [2, 2],\n  \"re\": [[1, 0],\n}");
  const auto r = run_cli({"fidelity", "--state", path.string(), "--K", "2"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("line 4") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);

  CHECK(run_cli({"fidelity", "--state", "/nonexistent/state.json", "--K", "2"}).code ==
        cli::kExitInputError);
}

TEST_CASE("tolerance from the environment") {
  ::setenv("PPT_DISTILL_TOL", "1e-8", 1);
  CHECK(cli::default_tolerance() == 1e-8);
  const auto r = run_cli({"fidelity", "--family", "maxent", "--d", "2", "--K", "3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["tolerance"].get<double>() == 1e-8);
  ::setenv("PPT_DISTILL_TOL", "1", 1);
  CHECK(run_cli({"fidelity", "--family", "maxent", "--d", "2", "--K", "3"}).code ==
        cli::kExitInputError);
  // An explicit flag wins over the environment.
  CHECK(run_cli({"fidelity", "--family", "maxent", "--d", "2", "--K", "3", "--tol", "1e-6"}).code ==
        cli::kExitOk);
  ::unsetenv("PPT_DISTILL_TOL");
  CHECK(cli::default_tolerance() == solver::kDefaultTolerance);
}

TEST_CASE("help exits cleanly") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("code-table") != std::string::npos);
}
