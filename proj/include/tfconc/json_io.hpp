#pragma once

#include <string>

#include <json.hpp>

#include "tfconc/compactness.hpp"
#include "tfconc/frames.hpp"
#include "tfconc/moments.hpp"
#include "tfconc/separation.hpp"
#include "tfconc/systems.hpp"
#include "tfconc/verify.hpp"

namespace tfconc {

// All report JSON uses insertion-ordered objects so identical runs serialize
// to identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "tfconc-report-v1";

Json to_json(const ConcentrationReport& report);
ConcentrationReport concentration_report_from_json(const Json& j);

Json to_json(const SystemSpec& spec);
SystemSpec system_spec_from_json(const Json& j);

Json to_json(const SeparationResult& result);
Json to_json(const CompactnessProfile& profile);
Json to_json(const DualityReport& report);
Json to_json(const FrameDiagnostics& diagnostics);
Json to_json(const RSCheck& check);
Json to_json(const ObstructionReport& report);
Json to_json(const std::vector<VerifyCheck>& checks);

} // namespace tfconc
