#ifndef MUCERT_IO_HPP
#define MUCERT_IO_HPP

#include <string>

#include "json.hpp"

#include "mucert/criteria.hpp"
#include "mucert/elliptic.hpp"
#include "mucert/iwasawa.hpp"
#include "mucert/quadforms.hpp"

namespace mucert {

inline constexpr const char* kToolkitVersion = "0.1.0";

// --- ingestion -----------------------------------------------------------

CurveRecord curve_from_json(const nlohmann::json& j);
CurveRecord load_curve(const std::string& path);

NewformRecord newform_from_json(const nlohmann::json& j);
NewformRecord load_newform(const std::string& path);

DihedralScenario scenario_from_json(const nlohmann::json& j);
DihedralScenario load_scenario(const std::string& path);

/// Presentation matrix: JSON 2D array of series literals
/// ("c0 + c1*T + c2*T^2 + ...").
LambdaPresentation presentation_from_json(const nlohmann::json& j, const PrecisionProfile& prof);
LambdaPresentation load_presentation(const std::string& path, const PrecisionProfile& prof);

/// Field record {"D": 239}.
QuadField quad_field_from_json(const nlohmann::json& j);

/// External class-group cross-check record {"D", "h", "structure": [..]}.
struct ClassGroupCrossCheck {
    u64 D = 0;
    u64 h = 0;
    std::vector<u64> structure;
};
ClassGroupCrossCheck crosscheck_from_json(const nlohmann::json& j);

// --- serialization -------------------------------------------------------

nlohmann::ordered_json certificate_to_json(const Certificate& cert, bool with_timestamp);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::ordered_json obstruction_report_to_json(const ObstructionReport& rep,
                                                  bool with_timestamp);
nlohmann::ordered_json congruence_to_json(const CongruenceCandidates& c, const std::string& f,
                                          const std::string& g, bool with_timestamp);
nlohmann::ordered_json density_report_to_json(const DensityReport& rep, const DihedralScenario& sc,
                                              bool with_timestamp);
/// Bulk per-prime rows: "prime,mod3,splitting,in_S1,in_S2" (the residue
/// column holds ell mod p for whatever p the scenario fixes).
std::string density_report_to_csv(const DensityReport& rep);

nlohmann::json load_json(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace mucert

#endif
