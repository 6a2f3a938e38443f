#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qgeo/ensemble.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/geometry.hpp"
#include "qgeo/json_io.hpp"
#include "qgeo/resolution.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/sic.hpp"
#include "qgeo/states.hpp"
#include "qgeo/version.hpp"

namespace {

using qgeo::json;

// bare invocations stay reproducible: the documented default seed
constexpr std::uint64_t kDefaultSeed = 424242;
constexpr double kDefaultTolerance = 1e-9;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Defaults {
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kDefaultTolerance;
};

// QGEO_SEED / QGEO_TOL override the built-in defaults; explicit flags beat both
Defaults defaults_from_env() {
  Defaults d;
  if (const char* s = std::getenv("QGEO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
      throw CLI::ValidationError("QGEO_SEED", "not an unsigned integer");
    d.seed = v;
  }
  if (const char* t = std::getenv("QGEO_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(t, &end);
    if (end == t || *end != '\0' || !(v > 0.0))
      throw CLI::ValidationError("QGEO_TOL", "not a positive number");
    d.tolerance = v;
  }
  return d;
}

json payload(std::size_t dim, std::uint64_t seed, double tolerance) {
  return {{"version", qgeo::kVersion},
          {"dim", dim},
          {"seed", seed},
          {"tolerance", tolerance}};
}

void merge(json& dst, const json& extra) {
  for (const auto& [key, value] : extra.items()) dst[key] = value;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

qgeo::RayResolution builtin_sic(std::size_t dim) {
  return qgeo::sic_from_fiducial(qgeo::builtin_fiducial(dim));
}

int classify(const qgeo::Error& e) {
  return e.code() == "not-informationally-complete" ? kExitNumerical
                                                    : kExitInput;
}

// ---- subcommand payload builders -------------------------------------------

json run_sic_verify(std::size_t dim, const std::string& fiducial_path,
                    const Defaults& dft) {
  const qgeo::Fiducial f =
      fiducial_path.empty()
          ? qgeo::builtin_fiducial(dim)
          : qgeo::fiducial_from_json(qgeo::load_json_file(fiducial_path));
  if (!fiducial_path.empty() && f.dim != dim)
    qgeo::fail("dimension", "fiducial dimension does not match --dim");
  const qgeo::SicReport report = qgeo::verify_sic(qgeo::sic_from_fiducial(f));
  json out = payload(dim, dft.seed, dft.tolerance);
  merge(out, qgeo::sic_report_to_json(report));
  out["provenance"] = f.provenance;
  return out;
}

json run_sic_find(std::size_t dim, std::uint64_t seed, std::size_t restarts,
                  const std::string& out_path, const Defaults& dft,
                  bool& converged) {
  const qgeo::Fiducial f = qgeo::find_fiducial(dim, seed, restarts);
  converged = f.residual < 1e-8;
  json out = payload(dim, seed, dft.tolerance);
  out["fiducial"] = qgeo::fiducial_to_json(f);
  out["residual"] = f.residual;
  out["restarts"] = restarts;
  out["converged"] = converged;
  if (!out_path.empty()) qgeo::save_json_file(out_path, qgeo::fiducial_to_json(f));
  return out;
}

json run_volumes(std::size_t dim, std::size_t max_dim, const std::string& format,
                 const Defaults& dft, std::string& csv_out) {
  if (max_dim == 0) max_dim = dim;
  if (max_dim < dim) qgeo::fail("range", "--max-dim must be >= --dim");
  std::vector<qgeo::VolumeReport> rows;
  for (std::size_t d = dim; d <= max_dim; ++d)
    rows.push_back(qgeo::volume_report(d));
  if (format == "csv") {
    csv_out = qgeo::volume_reports_to_csv(rows);
    return {};
  }
  json out = payload(dim, dft.seed, dft.tolerance);
  if (rows.size() == 1) {
    merge(out, qgeo::volume_report_to_json(rows.front()));
  } else {
    json reports = json::array();
    for (const auto& r : rows) reports.push_back(qgeo::volume_report_to_json(r));
    out["reports"] = std::move(reports);
    out["max_dim"] = max_dim;
  }
  return out;
}

json run_channel_apply(const std::string& resolution_path,
                       const std::string& state_path, const Defaults& dft) {
  const qgeo::RayResolution m =
      qgeo::resolution_from_json(qgeo::load_json_file(resolution_path));
  const qgeo::DensityMatrix w =
      qgeo::state_from_json(qgeo::load_json_file(state_path));
  const qgeo::DensityMatrix out_state = qgeo::apply_channel(m, w);
  json out = payload(m.dim(), dft.seed, dft.tolerance);
  out["kind"] = qgeo::kind_name(m.kind());
  out["probabilities"] = qgeo::probabilities(m, w);
  out["state"] = qgeo::state_to_json(out_state);
  return out;
}

json run_membership(const std::string& resolution_path,
                    const std::string& state_path, const Defaults& dft) {
  const qgeo::RayResolution m =
      qgeo::resolution_from_json(qgeo::load_json_file(resolution_path));
  const qgeo::DensityMatrix w =
      qgeo::state_from_json(qgeo::load_json_file(state_path));
  const qgeo::MembershipVerdict v = qgeo::membership(m, w, dft.tolerance);
  json out = payload(m.dim(), dft.seed, dft.tolerance);
  merge(out, qgeo::membership_to_json(v));
  return out;
}

json run_mc_volume(std::size_t dim, const std::string& region, std::size_t n,
                   std::uint64_t seed, const Defaults& dft) {
  std::function<bool(const qgeo::DensityMatrix&)> predicate;
  if (region == "vam") {
    const double tol = dft.tolerance;
    predicate = [tol](const qgeo::DensityMatrix& w) {
      return qgeo::in_v_am_sic(w, tol);
    };
  } else {
    const auto sic = std::make_shared<qgeo::RayResolution>(builtin_sic(dim));
    const double tol = dft.tolerance;
    predicate = [sic, tol](const qgeo::DensityMatrix& w) {
      return qgeo::membership(*sic, w, tol).in_conv;
    };
  }
  const qgeo::McEstimate e =
      qgeo::mc_fraction(predicate, dim, n, qgeo::Rng(seed));
  json out = payload(dim, seed, dft.tolerance);
  merge(out, qgeo::mc_estimate_to_json(e));
  out["region"] = region;
  return out;
}

json run_simulate_entry(std::size_t dim, const std::string& resolution_path,
                        const std::string& state_path, std::uint64_t max_n,
                        std::uint64_t step, std::uint64_t seed,
                        std::size_t trajectories, const std::string& format,
                        const Defaults& dft, std::string& csv_out) {
  const qgeo::RayResolution sic =
      resolution_path.empty()
          ? builtin_sic(dim)
          : qgeo::resolution_from_json(qgeo::load_json_file(resolution_path));
  if (sic.dim() != dim)
    qgeo::fail("dimension", "resolution dimension does not match --dim");
  const qgeo::DensityMatrix w =
      state_path.empty() ? qgeo::maximally_mixed(dim)
                         : qgeo::state_from_json(qgeo::load_json_file(state_path));
  std::vector<qgeo::EntryRecord> records;
  records.reserve(trajectories);
  for (std::size_t t = 0; t < trajectories; ++t) {
    qgeo::Rng rng(seed + t);
    records.push_back(qgeo::first_entry_time(sic, w, rng, max_n, step,
                                             dft.tolerance));
  }
  if (format == "csv") {
    csv_out = qgeo::entry_records_to_csv(records);
    return {};
  }
  json out = payload(dim, seed, dft.tolerance);
  out["max_n"] = max_n;
  out["step"] = step;
  if (records.size() == 1) {
    merge(out, qgeo::entry_record_to_json(records.front()));
  } else {
    json rows = json::array();
    for (const auto& r : records) rows.push_back(qgeo::entry_record_to_json(r));
    out["records"] = std::move(rows);
    out["trajectories"] = trajectories;
  }
  return out;
}

json run_tomo_check(double a, double b, const Defaults& dft) {
  const auto interval = qgeo::consistency_interval(a);  // rejects a outside [0,1]
  // an offset outside [-1/2, 1/2] is judged by the same bound rather than
  // rejected, so unphysical frequency pairs still get a verdict and exit 0
  const bool consistent = b * b <= a * (1.0 - a) + 1e-12;
  json out = payload(2, dft.seed, dft.tolerance);
  merge(out, qgeo::tomography_to_json({a, b}, consistent, interval));
  return out;
}

json run_naimark_check(const std::string& resolution_path, std::size_t trials,
                       std::uint64_t seed, const Defaults& dft) {
  const qgeo::RayResolution m =
      qgeo::resolution_from_json(qgeo::load_json_file(resolution_path));
  const qgeo::NaimarkModel model = qgeo::naimark_dilate(m);

  const qgeo::ComplexMatrix gram = model.isometry.adjoint() * model.isometry;
  const double isometry_residual = qgeo::hs_distance(
      gram, qgeo::ComplexMatrix::identity(model.system_dim));

  qgeo::Rng rng(seed);
  double max_prob_dev = 0.0, max_state_dev = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const qgeo::DensityMatrix w = qgeo::random_density_hs(m.dim(), rng);
    const auto direct = qgeo::probabilities(m, w);
    const auto joint = qgeo::naimark_probabilities(model, w);
    for (std::size_t k = 0; k < direct.size(); ++k)
      max_prob_dev = std::max(max_prob_dev, std::abs(direct[k] - joint[k]));
    max_state_dev = std::max(
        max_state_dev,
        qgeo::hs_distance(qgeo::naimark_after_state(model, w).matrix(),
                          qgeo::apply_channel(m, w).matrix()));
  }

  json out = payload(m.dim(), seed, dft.tolerance);
  out["ancilla_dim"] = model.ancilla_dim;
  out["trials"] = trials;
  out["isometry_residual"] = isometry_residual;
  out["max_probability_deviation"] = max_prob_dev;
  out["max_state_deviation"] = max_state_dev;
  out["ok"] = isometry_residual < 1e-10 && max_prob_dev < 1e-10 &&
              max_state_dev < 1e-10;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-geometry toolkit: SIC construction, channels, "
               "state-body volumes, membership, and finite-ensemble simulation"};
  app.require_subcommand(1);

  Defaults dft;

  // sic verify / sic find
  auto* sic = app.add_subcommand("sic", "SIC-POVM construction and checks");
  sic->require_subcommand(1);

  std::size_t sv_dim = 2;
  std::string sv_fiducial;
  auto* sic_verify = sic->add_subcommand("verify", "verify SIC symmetry");
  sic_verify->add_option("--dim", sv_dim, "dimension")->required();
  sic_verify->add_option("--fiducial", sv_fiducial,
                         "fiducial JSON file (default: builtin)");

  std::size_t sf_dim = 2, sf_restarts = 8;
  std::uint64_t sf_seed = 0;
  bool sf_seed_set = false;
  std::string sf_out;
  auto* sic_find = sic->add_subcommand("find", "numerical fiducial search");
  sic_find->add_option("--dim", sf_dim, "dimension (2..6)")->required();
  sic_find->add_option("--seed", sf_seed, "search seed")
      ->each([&](const std::string&) { sf_seed_set = true; });
  sic_find->add_option("--restarts", sf_restarts, "independent starts");
  sic_find->add_option("--out", sf_out, "write the fiducial archive here");

  // volumes
  std::size_t vol_dim = 2, vol_max_dim = 0;
  std::string vol_format = "json";
  auto* volumes = app.add_subcommand("volumes", "exact volume report");
  volumes->add_option("--dim", vol_dim, "dimension")->required();
  volumes->add_option("--max-dim", vol_max_dim, "sweep up to this dimension");
  volumes->add_option("--format", vol_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // channel apply
  std::string ca_resolution, ca_state;
  auto* channel = app.add_subcommand("channel", "measurement channel");
  channel->require_subcommand(1);
  auto* channel_apply = channel->add_subcommand("apply", "apply the channel");
  channel_apply->add_option("--resolution", ca_resolution, "resolution JSON")
      ->required();
  channel_apply->add_option("--state", ca_state, "state JSON")->required();

  // membership
  std::string mem_resolution, mem_state;
  auto* mem = app.add_subcommand("membership", "span/conv/V_am verdicts");
  mem->add_option("--resolution", mem_resolution, "resolution JSON")->required();
  mem->add_option("--state", mem_state, "state JSON")->required();

  // mc-volume
  std::size_t mc_dim = 2, mc_n = 100000;
  std::string mc_region;
  std::uint64_t mc_seed = 0;
  bool mc_seed_set = false;
  auto* mc = app.add_subcommand("mc-volume", "Monte Carlo volume fraction");
  mc->add_option("--dim", mc_dim, "dimension")->required();
  mc->add_option("--region", mc_region, "vam or conv")
      ->required()
      ->check(CLI::IsMember({"vam", "conv"}));
  mc->add_option("--n", mc_n, "sample count");
  mc->add_option("--seed", mc_seed, "sampling seed")
      ->each([&](const std::string&) { mc_seed_set = true; });

  // simulate entry
  std::size_t se_dim = 2, se_trajectories = 1;
  std::string se_resolution, se_state, se_format = "json";
  std::uint64_t se_max_n = 10000, se_step = 1, se_seed = 0;
  bool se_seed_set = false;
  auto* simulate = app.add_subcommand("simulate", "finite-ensemble simulation");
  simulate->require_subcommand(1);
  auto* entry = simulate->add_subcommand("entry", "first entry into V_am");
  entry->add_option("--dim", se_dim, "dimension (builtin SIC)")->required();
  entry->add_option("--resolution", se_resolution,
                    "resolution JSON (default: builtin SIC)");
  entry->add_option("--state", se_state, "state JSON (default: maximally mixed)");
  entry->add_option("--max-n", se_max_n, "shot budget");
  entry->add_option("--step", se_step, "test cadence");
  entry->add_option("--seed", se_seed, "trajectory seed")
      ->each([&](const std::string&) { se_seed_set = true; });
  entry->add_option("--trajectories", se_trajectories,
                    "consecutive seeds starting at --seed");
  entry->add_option("--format", se_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // tomo-check
  double tc_a = 0.0, tc_b = 0.0;
  auto* tomo = app.add_subcommand("tomo-check", "two-basis consistency bound");
  tomo->add_option("--a", tc_a, "S_z distribution parameter")->required();
  tomo->add_option("--b", tc_b, "S_x offset")->required();

  // naimark check
  std::string nc_resolution;
  std::size_t nc_trials = 100;
  std::uint64_t nc_seed = 0;
  bool nc_seed_set = false;
  auto* naimark = app.add_subcommand("naimark", "ancilla dilation");
  naimark->require_subcommand(1);
  auto* naimark_check = naimark->add_subcommand("check", "dilation equivalence");
  naimark_check->add_option("--resolution", nc_resolution, "resolution JSON")
      ->required();
  naimark_check->add_option("--trials", nc_trials, "random states to compare");
  naimark_check->add_option("--seed", nc_seed, "state-sampling seed")
      ->each([&](const std::string&) { nc_seed_set = true; });

  try {
    app.parse(argc, argv);
    dft = defaults_from_env();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", "usage"}, {"detail", e.what()}}.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (sic_verify->parsed()) {
      emit(run_sic_verify(sv_dim, sv_fiducial, dft));
    } else if (sic_find->parsed()) {
      bool converged = false;
      const json out = run_sic_find(sf_dim, sf_seed_set ? sf_seed : dft.seed,
                                    sf_restarts, sf_out, dft, converged);
      emit(out);
      if (!converged) return kExitNumerical;
    } else if (volumes->parsed()) {
      std::string csv;
      const json out = run_volumes(vol_dim, vol_max_dim, vol_format, dft, csv);
      if (vol_format == "csv")
        std::cout << csv;
      else
        emit(out);
    } else if (channel_apply->parsed()) {
      emit(run_channel_apply(ca_resolution, ca_state, dft));
    } else if (mem->parsed()) {
      emit(run_membership(mem_resolution, mem_state, dft));
    } else if (mc->parsed()) {
      emit(run_mc_volume(mc_dim, mc_region, mc_n,
                         mc_seed_set ? mc_seed : dft.seed, dft));
    } else if (entry->parsed()) {
      std::string csv;
      const json out = run_simulate_entry(
          se_dim, se_resolution, se_state, se_max_n, se_step,
          se_seed_set ? se_seed : dft.seed, se_trajectories, se_format, dft,
          csv);
      if (se_format == "csv")
        std::cout << csv;
      else
        emit(out);
    } else if (tomo->parsed()) {
      emit(run_tomo_check(tc_a, tc_b, dft));
    } else if (naimark_check->parsed()) {
      emit(run_naimark_check(nc_resolution, nc_trials,
                             nc_seed_set ? nc_seed : dft.seed, dft));
    }
  } catch (const qgeo::Error& e) {
    std::cerr << json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"detail", e.what()}}.dump()
              << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
