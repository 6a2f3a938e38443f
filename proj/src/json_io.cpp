#include "qgeo/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

double number_or_fail(const json& j, const char* what) {
  if (!j.is_number()) fail("parse", std::string("expected a number for ") + what);
  return j.get<double>();
}

std::vector<std::vector<double>> grid_or_fail(const json& j, std::size_t d,
                                              const char* what) {
  if (!j.is_array() || j.size() != d)
    fail("parse", std::string("expected a d x d array for ") + what);
  std::vector<std::vector<double>> out;
  out.reserve(d);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != d)
      fail("parse", std::string("ragged row in ") + what);
    std::vector<double> r;
    r.reserve(d);
    for (const auto& x : row) r.push_back(number_or_fail(x, what));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> list_or_fail(const json& j, const char* what) {
  if (!j.is_array()) fail("parse", std::string("expected an array for ") + what);
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number_or_fail(x, what));
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
    fail("parse", "matrix JSON needs dim/re/im");
  const std::size_t d = j.at("dim").get<std::size_t>();
  if (d == 0) fail("parse", "matrix dimension must be positive");
  const auto re = grid_or_fail(j.at("re"), d, "re");
  const auto im = grid_or_fail(j.at("im"), d, "im");
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) m(i, k) = cplx{re[i][k], im[i][k]};
  return m;
}

json state_to_json(const DensityMatrix& w) { return matrix_to_json(w.matrix()); }

DensityMatrix state_from_json(const json& j) {
  return DensityMatrix(matrix_from_json(j));
}

json cvector_to_json(const CVector& v) {
  json re = json::array(), im = json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

CVector cvector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    fail("parse", "vector JSON needs re/im");
  const auto re = list_or_fail(j.at("re"), "re");
  const auto im = list_or_fail(j.at("im"), "im");
  if (re.size() != im.size() || re.empty())
    fail("parse", "vector re/im length mismatch");
  CVector v(re.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx{re[i], im[i]};
  return v;
}

json resolution_to_json(const RayResolution& m) {
  json outcomes = json::array();
  for (const auto& [c, q] : m.outcomes())
    outcomes.push_back({{"c", c}, {"vector", cvector_to_json(q.vector())}});
  return {{"dim", m.dim()}, {"outcomes", std::move(outcomes)}};
}

RayResolution resolution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("outcomes"))
    fail("parse", "resolution JSON needs dim/outcomes");
  const std::size_t d = j.at("dim").get<std::size_t>();
  if (!j.at("outcomes").is_array() || j.at("outcomes").empty())
    fail("parse", "resolution needs a nonempty outcome list");
  std::vector<double> weights;
  std::vector<RayProjector> projectors;
  for (const auto& o : j.at("outcomes")) {
    if (!o.is_object() || !o.contains("c") || !o.contains("vector"))
      fail("parse", "outcome needs c/vector");
    weights.push_back(number_or_fail(o.at("c"), "c"));
    CVector v = cvector_from_json(o.at("vector"));
    if (v.size() != d) fail("parse", "outcome vector dimension mismatch");
    projectors.emplace_back(std::move(v));
  }
  return nrri_new(std::move(weights), std::move(projectors));
}

json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& a : k.operators) ops.push_back(matrix_to_json(a));
  return {{"dim", k.dim}, {"operators", std::move(ops)}};
}

KrausSet kraus_from_json(const json& j) {
  if (!j.is_object() || !j.contains("operators"))
    fail("parse", "Kraus JSON needs operators");
  std::vector<ComplexMatrix> ops;
  for (const auto& o : j.at("operators")) ops.push_back(matrix_from_json(o));
  return KrausSet(std::move(ops));
}

json fiducial_to_json(const Fiducial& f) {
  return {{"dim", f.dim},
          {"vector", cvector_to_json(f.vector)},
          {"residual", f.residual},
          {"provenance", f.provenance}};
}

Fiducial fiducial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vector"))
    fail("parse", "fiducial JSON needs dim/vector");
  Fiducial f{j.at("dim").get<std::size_t>(), cvector_from_json(j.at("vector")),
             j.value("provenance", std::string("optimized")),
             j.value("residual", 0.0)};
  if (f.vector.size() != f.dim) fail("parse", "fiducial dimension mismatch");
  if (std::abs(vec_norm(f.vector) - 1.0) > 1e-12)
    fail("parse", "fiducial vector is not normalized");
  return f;
}

json sic_report_to_json(const SicReport& r) {
  return {{"dim", r.dim},
          {"max_deviation", r.max_deviation},
          {"completeness_residual", r.completeness_residual},
          {"complete", r.completeness_residual < 1e-9}};
}

json volume_report_to_json(const VolumeReport& r) {
  return {{"dim", r.dim},
          {"simplex_volume", r.simplex_volume},
          {"state_volume", r.state_volume},
          {"v_am_volume", r.v_am_volume},
          {"log_simplex_volume", r.log_simplex_volume},
          {"log_state_volume", r.log_state_volume},
          {"log_v_am_volume", r.log_v_am_volume},
          {"conv_over_vw", r.conv_over_states},
          {"v_am_over_conv", r.vam_over_conv},
          {"v_am_over_vw", r.vam_over_states}};
}

json membership_to_json(const MembershipVerdict& v) {
  json j{{"in_linear_span", v.in_linear_span},
         {"in_conv", v.in_conv},
         {"coefficients", v.coefficients},
         {"residual", v.residual},
         {"coefficient_sum", v.coefficient_sum},
         {"min_coefficient", v.min_coefficient},
         {"span_dimension", v.span_dimension}};
  if (v.v_am_decided) {
    j["in_v_am"] = v.in_v_am;
    j["min_preimage_eigenvalue"] = v.min_preimage_eigenvalue;
  } else {
    j["in_v_am"] = "undecided";
    j["undecided_reason"] = v.v_am_reason;
  }
  return j;
}

json mc_estimate_to_json(const McEstimate& e) {
  return {{"estimate", e.estimate},
          {"standard_error", e.standard_error},
          {"hits", e.hits},
          {"n", e.n},
          {"measure", e.measure}};
}

json entry_record_to_json(const EntryRecord& r) {
  return {{"seed", r.seed},
          {"touched", r.touched},
          {"entered", r.entered},
          {"n_touch", r.n_touch},
          {"n_entry", r.n_entry},
          {"min_eig_final", r.min_eig_final}};
}

json tomography_to_json(const TomographyPair& p, bool consistent,
                        const std::pair<double, double>& interval) {
  return {{"a", p.a},
          {"b", p.b},
          {"consistent", consistent},
          {"interval", {interval.first, interval.second}}};
}

namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string volume_reports_to_csv(const std::vector<VolumeReport>& rows) {
  std::ostringstream os;
  os << "dim,simplex_volume,state_volume,v_am_volume,log_simplex_volume,"
        "log_state_volume,log_v_am_volume,conv_over_vw,v_am_over_conv,"
        "v_am_over_vw\n";
  for (const auto& r : rows) {
    os << r.dim << ',' << format_double(r.simplex_volume) << ','
       << format_double(r.state_volume) << ',' << format_double(r.v_am_volume)
       << ',' << format_double(r.log_simplex_volume) << ','
       << format_double(r.log_state_volume) << ','
       << format_double(r.log_v_am_volume) << ','
       << format_double(r.conv_over_states) << ','
       << format_double(r.vam_over_conv) << ','
       << format_double(r.vam_over_states) << '\n';
  }
  return os.str();
}

std::vector<VolumeReport> volume_reports_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) fail("parse", "empty CSV");
  std::vector<VolumeReport> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) fail("parse", "volume CSV row needs 10 fields");
    VolumeReport r;
    r.dim = static_cast<std::size_t>(std::stoull(f[0]));
    r.simplex_volume = std::stod(f[1]);
    r.state_volume = std::stod(f[2]);
    r.v_am_volume = std::stod(f[3]);
    r.log_simplex_volume = std::stod(f[4]);
    r.log_state_volume = std::stod(f[5]);
    r.log_v_am_volume = std::stod(f[6]);
    r.conv_over_states = std::stod(f[7]);
    r.vam_over_conv = std::stod(f[8]);
    r.vam_over_states = std::stod(f[9]);
    rows.push_back(r);
  }
  return rows;
}

std::string entry_records_to_csv(const std::vector<EntryRecord>& rows) {
  std::ostringstream os;
  os << "seed,N_touch,N_entry,min_eig_final\n";
  for (const auto& r : rows)
    os << r.seed << ',' << r.n_touch << ',' << r.n_entry << ','
       << format_double(r.min_eig_final) << '\n';
  return os.str();
}

std::vector<EntryRecord> entry_records_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) fail("parse", "empty CSV");
  std::vector<EntryRecord> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) fail("parse", "entry CSV row needs 4 fields");
    EntryRecord r{};
    r.seed = std::stoull(f[0]);
    r.n_touch = std::stoull(f[1]);
    r.n_entry = std::stoull(f[2]);
    r.min_eig_final = std::stod(f[3]);
    r.touched = r.n_touch != 0;
    r.entered = r.n_entry != 0;
    rows.push_back(r);
  }
  return rows;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("parse", std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("io", "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail("io", "cannot open " + path + " for writing");
  out << text;
}

}  // namespace qgeo
