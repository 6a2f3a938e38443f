#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qgeo/ensemble.hpp"
#include "qgeo/geometry.hpp"
#include "qgeo/matrix.hpp"
#include "qgeo/resolution.hpp"
#include "qgeo/sic.hpp"
#include "qgeo/states.hpp"

namespace qgeo {

using json = nlohmann::json;

// matrix schema: {"dim": d, "re": [[...]], "im": [[...]]}, row-major
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json state_to_json(const DensityMatrix& w);
DensityMatrix state_from_json(const json& j);

json cvector_to_json(const CVector& v);  // {"re": [...], "im": [...]}
CVector cvector_from_json(const json& j);

// {"dim": d, "outcomes": [{"c": real, "vector": {"re": [...], "im": [...]}}]}
json resolution_to_json(const RayResolution& m);
RayResolution resolution_from_json(const json& j);

json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const json& j);

// {"dim": d, "vector": {...}, "residual": r, "provenance": "..."}
json fiducial_to_json(const Fiducial& f);
Fiducial fiducial_from_json(const json& j);

json sic_report_to_json(const SicReport& r);
json volume_report_to_json(const VolumeReport& r);
json membership_to_json(const MembershipVerdict& v);
json mc_estimate_to_json(const McEstimate& e);
json entry_record_to_json(const EntryRecord& r);
json tomography_to_json(const TomographyPair& p, bool consistent,
                        const std::pair<double, double>& interval);

// one row per dimension: dim,simplex_volume,state_volume,v_am_volume,
// log_simplex_volume,log_state_volume,log_v_am_volume,conv_over_states,
// vam_over_conv,vam_over_states
std::string volume_reports_to_csv(const std::vector<VolumeReport>& rows);
std::vector<VolumeReport> volume_reports_from_csv(const std::string& text);

// columns: seed,N_touch,N_entry,min_eig_final  (0 = not reached)
std::string entry_records_to_csv(const std::vector<EntryRecord>& rows);
std::vector<EntryRecord> entry_records_from_csv(const std::string& text);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qgeo
