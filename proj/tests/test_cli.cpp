#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qgeo/json_io.hpp"
#include "qgeo/sic.hpp"
#include "qgeo/states.hpp"
#include "qgeo/version.hpp"

using namespace qgeo;

namespace {

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "qgeo_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto dir = scratch_dir();
  const auto out_path = dir / ("out" + std::to_string(counter));
  const auto err_path = dir / ("err" + std::to_string(counter));
  ++counter;
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(QGEO_CLI_PATH) + " " + args + " >" + out_path.string() +
         " 2>" + err_path.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

json out_json(const CliResult& r) { return json::parse(r.out); }
json err_json(const CliResult& r) { return json::parse(r.err); }

std::string write_file(const std::string& name, const json& j) {
  const auto path = scratch_dir() / name;
  save_json_file(path.string(), j);
  return path.string();
}

std::string sic2_file() {
  static const std::string path =
      write_file("sic2.json",
                 resolution_to_json(sic_from_fiducial(builtin_fiducial(2))));
  return path;
}

std::string mixed2_file() {
  static const std::string path =
      write_file("mixed2.json", state_to_json(maximally_mixed(2)));
  return path;
}

}  // namespace

TEST_CASE("volumes payload matches the exact report") {
  const CliResult r = run_cli("volumes --dim 2");
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j.at("v_am_over_vw").get<double>() ==
        doctest::Approx(1.0 / 27.0).epsilon(1e-12));
  CHECK(j.at("conv_over_vw").get<double>() ==
        doctest::Approx(0.122518).epsilon(1e-4));
  CHECK(j.at("version").get<std::string>() == kVersion);
  CHECK(j.at("dim").get<std::size_t>() == 2);
  CHECK(j.at("seed").get<std::uint64_t>() == 424242);
  CHECK(j.at("tolerance").get<double>() == 1e-9);
}

TEST_CASE("volumes sweep emits lossless csv") {
  const CliResult r = run_cli("volumes --dim 2 --max-dim 5 --format csv");
  REQUIRE(r.status == 0);
  const auto rows = volume_reports_from_csv(r.out);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    const double expected =
        std::pow(double(row.dim) + 1.0, -double(row.dim * row.dim - 1));
    CHECK(row.vam_over_states == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("tomo-check reproduces the documented verdicts") {
  const CliResult bad = run_cli("tomo-check --a 0.5 --b 0.6");
  REQUIRE(bad.status == 0);
  const json jb = out_json(bad);
  CHECK_FALSE(jb.at("consistent").get<bool>());
  CHECK(jb.at("interval")[0].get<double>() == doctest::Approx(-0.5));
  CHECK(jb.at("interval")[1].get<double>() == doctest::Approx(0.5));

  const CliResult good = run_cli("tomo-check --a 0.5 --b 0.4");
  REQUIRE(good.status == 0);
  CHECK(out_json(good).at("consistent").get<bool>());

  const CliResult range = run_cli("tomo-check --a 1.5 --b 0.0");
  CHECK(range.status == 2);
  CHECK(err_json(range).at("error").get<std::string>() == "range");
}

TEST_CASE("sic verify reports builtin quality") {
  const CliResult r = run_cli("sic verify --dim 2");
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j.at("complete").get<bool>());
  CHECK(j.at("max_deviation").get<double>() < 1e-12);
  CHECK(j.at("provenance").get<std::string>() == "builtin");

  const CliResult missing = run_cli("sic verify --dim 4");
  CHECK(missing.status == 2);
  CHECK(err_json(missing).at("error").get<std::string>() == "no-builtin");
}

TEST_CASE("sic find converges and archives the fiducial") {
  const auto out_path = (scratch_dir() / "found2.json").string();
  const CliResult r = run_cli("sic find --dim 2 --seed 20260101 --restarts 8 --out " +
                              out_path);
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j.at("converged").get<bool>());
  CHECK(j.at("residual").get<double>() < 1e-10);
  CHECK(j.at("seed").get<std::uint64_t>() == 20260101);

  const Fiducial f = fiducial_from_json(load_json_file(out_path));
  CHECK(f.residual == j.at("residual").get<double>());

  const CliResult verify = run_cli("sic verify --dim 2 --fiducial " + out_path);
  REQUIRE(verify.status == 0);
  CHECK(out_json(verify).at("complete").get<bool>());
  CHECK(out_json(verify).at("max_deviation").get<double>() < 1e-9);
  CHECK(out_json(verify).at("provenance").get<std::string>() == "optimized");
}

TEST_CASE("identical argv and seed give byte-identical output") {
  const std::string args = "mc-volume --dim 2 --region vam --n 3000 --seed 17";
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);

  const CliResult c = run_cli("volumes --dim 3");
  const CliResult d = run_cli("volumes --dim 3");
  CHECK(c.out == d.out);
}

TEST_CASE("environment overrides the seed and flags beat the environment") {
  const CliResult env_only =
      run_cli("mc-volume --dim 2 --region vam --n 500", "QGEO_SEED=1234");
  REQUIRE(env_only.status == 0);
  CHECK(out_json(env_only).at("seed").get<std::uint64_t>() == 1234);

  const CliResult flag_wins = run_cli(
      "mc-volume --dim 2 --region vam --n 500 --seed 5", "QGEO_SEED=1234");
  REQUIRE(flag_wins.status == 0);
  CHECK(out_json(flag_wins).at("seed").get<std::uint64_t>() == 5);

  const CliResult bad_env = run_cli("volumes --dim 2", "QGEO_SEED=abc");
  CHECK(bad_env.status == 1);

  const CliResult tol = run_cli("volumes --dim 2", "QGEO_TOL=1e-7");
  REQUIRE(tol.status == 0);
  CHECK(out_json(tol).at("tolerance").get<double>() == 1e-7);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("volumes").status == 1);
  CHECK(run_cli("no-such-command").status == 1);
  CHECK(run_cli("volumes --dim 2 --format yaml").status == 1);
  CHECK(run_cli("--help").status == 0);
}

TEST_CASE("channel apply on a resolution file") {
  const CliResult r = run_cli("channel apply --resolution " + sic2_file() +
                              " --state " + mixed2_file());
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  for (const auto& p : j.at("probabilities"))
    CHECK(p.get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  const DensityMatrix out_state = state_from_json(j.at("state"));
  CHECK(hs_distance(out_state.matrix(), maximally_mixed(2).matrix()) < 1e-12);
}

TEST_CASE("channel apply rejects bad inputs with exit 2") {
  const std::string bad_state =
      write_file("bad_state.json",
                 json{{"dim", 2},
                      {"re", {{1.5, 0.0}, {0.0, -0.5}}},
                      {"im", {{0.0, 0.0}, {0.0, 0.0}}}});
  const CliResult not_psd = run_cli("channel apply --resolution " + sic2_file() +
                                    " --state " + bad_state);
  CHECK(not_psd.status == 2);
  CHECK(err_json(not_psd).at("error").get<std::string>() == "not-psd");

  const CliResult missing = run_cli("channel apply --resolution " + sic2_file() +
                                    " --state /nonexistent/state.json");
  CHECK(missing.status == 2);
  CHECK(err_json(missing).at("error").get<std::string>() == "io");

  const auto garbled = scratch_dir() / "garbled.json";
  std::ofstream(garbled) << "{not json";
  const CliResult parse_fail = run_cli("channel apply --resolution " +
                                       garbled.string() + " --state " +
                                       mixed2_file());
  CHECK(parse_fail.status == 2);
  CHECK(err_json(parse_fail).at("error").get<std::string>() == "parse");
}

TEST_CASE("membership verdicts land in the payload") {
  const auto sic = sic_from_fiducial(builtin_fiducial(2));
  const std::string q0 =
      write_file("q0.json", state_to_json(DensityMatrix(
                                sic.outcomes()[0].projector.matrix())));
  const CliResult r =
      run_cli("membership --resolution " + sic2_file() + " --state " + q0);
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j.at("in_linear_span").get<bool>());
  CHECK(j.at("in_conv").get<bool>());
  CHECK_FALSE(j.at("in_v_am").get<bool>());

  const std::string zbasis = write_file(
      "zbasis.json",
      json{{"dim", 2},
           {"outcomes",
            {{{"c", 1.0}, {"vector", {{"re", {1.0, 0.0}}, {"im", {0.0, 0.0}}}}},
             {{"c", 1.0},
              {"vector", {{"re", {0.0, 1.0}}, {"im", {0.0, 0.0}}}}}}}});
  const CliResult und =
      run_cli("membership --resolution " + zbasis + " --state " + mixed2_file());
  REQUIRE(und.status == 0);
  const json ju = out_json(und);
  CHECK(ju.at("in_v_am").is_string());
  CHECK(ju.at("in_v_am").get<std::string>() == "undecided");
  CHECK_FALSE(ju.at("undecided_reason").get<std::string>().empty());
}

TEST_CASE("mc-volume regions and the missing-builtin case") {
  const CliResult vam = run_cli("mc-volume --dim 2 --region vam --n 20000 --seed 31415");
  REQUIRE(vam.status == 0);
  const json jv = out_json(vam);
  const double est = jv.at("estimate").get<double>();
  const double se = jv.at("standard_error").get<double>();
  CHECK(std::abs(est - 1.0 / 27.0) < 3.0 * se);
  CHECK(jv.at("hits").get<std::size_t>() ==
        std::size_t(std::llround(est * 20000)));

  const CliResult conv = run_cli("mc-volume --dim 4 --region conv --n 100");
  CHECK(conv.status == 2);
  CHECK(err_json(conv).at("error").get<std::string>() == "no-builtin");
}

TEST_CASE("simulate entry emits records and csv") {
  const CliResult one = run_cli("simulate entry --dim 2 --max-n 2000 --step 1 --seed 7");
  REQUIRE(one.status == 0);
  const json j = out_json(one);
  CHECK(j.at("entered").get<bool>());
  CHECK(j.at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("n_entry").get<std::uint64_t>() >= 1);
  CHECK(j.at("n_touch").get<std::uint64_t>() <= j.at("n_entry").get<std::uint64_t>());

  const CliResult csv = run_cli(
      "simulate entry --dim 2 --max-n 2000 --step 1 --seed 100 --trajectories 3 --format csv");
  REQUIRE(csv.status == 0);
  const auto rows = entry_records_from_csv(csv.out);
  REQUIRE(rows.size() == 3);
  for (std::size_t t = 0; t < 3; ++t) CHECK(rows[t].seed == 100 + t);
}

TEST_CASE("simulate entry with a non-ic resolution exits 3") {
  const std::string zbasis = write_file(
      "zbasis3.json",
      json{{"dim", 2},
           {"outcomes",
            {{{"c", 1.0}, {"vector", {{"re", {1.0, 0.0}}, {"im", {0.0, 0.0}}}}},
             {{"c", 1.0},
              {"vector", {{"re", {0.0, 1.0}}, {"im", {0.0, 0.0}}}}}}}});
  const CliResult r = run_cli("simulate entry --dim 2 --resolution " + zbasis +
                              " --max-n 50 --seed 4");
  CHECK(r.status == 3);
  CHECK(err_json(r).at("error").get<std::string>() ==
        "not-informationally-complete");
}

TEST_CASE("naimark check confirms the dilation") {
  const CliResult r = run_cli("naimark check --resolution " + sic2_file() +
                              " --trials 50 --seed 11");
  REQUIRE(r.status == 0);
  const json j = out_json(r);
  CHECK(j.at("ok").get<bool>());
  CHECK(j.at("ancilla_dim").get<std::size_t>() == 4);
  CHECK(j.at("max_probability_deviation").get<double>() < 1e-10);
  CHECK(j.at("max_state_deviation").get<double>() < 1e-10);
  CHECK(j.at("isometry_residual").get<double>() < 1e-12);
}
