#include "tfconc/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace tfconc {

namespace {

Json index_to_json(const GaborIndex& index) { return Json::array({index.m, index.n}); }

GaborIndex index_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("system_spec_from_json: index must be a pair [m, n]");
  return GaborIndex{j[0].get<int>(), j[1].get<int>()};
}

Json pairs_to_json(const std::vector<std::pair<double, double>>& pairs) {
  Json out = Json::array();
  for (const auto& [x, y] : pairs) out.push_back(Json::array({x, y}));
  return out;
}

} // namespace

Json to_json(const ConcentrationReport& report) {
  Json j;
  j["p"] = report.p;
  j["q"] = report.q;
  j["time_mean"] = report.time_mean;
  j["time_dispersion"] = report.time_dispersion;
  j["freq_mean"] = report.freq_mean;
  j["freq_dispersion"] = report.freq_dispersion;
  j["heisenberg_product"] = report.heisenberg_product;
  return j;
}

ConcentrationReport concentration_report_from_json(const Json& j) {
  ConcentrationReport report;
  report.p = j.at("p").get<double>();
  report.q = j.at("q").get<double>();
  report.time_mean = j.at("time_mean").get<double>();
  report.time_dispersion = j.at("time_dispersion").get<double>();
  report.freq_mean = j.at("freq_mean").get<double>();
  report.freq_dispersion = j.at("freq_dispersion").get<double>();
  report.heisenberg_product = j.at("heisenberg_product").get<double>();
  return report;
}

Json to_json(const SystemSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["count"] = spec.count;
  j["epsilon"] = spec.epsilon;
  Json indices = Json::array();
  for (const GaborIndex& index : spec.indices) indices.push_back(index_to_json(index));
  j["indices"] = std::move(indices);
  j["alphas"] = spec.alphas;
  return j;
}

SystemSpec system_spec_from_json(const Json& j) {
  SystemSpec spec;
  spec.kind = system_kind_from_string(j.at("kind").get<std::string>());
  spec.count = j.at("count").get<std::size_t>();
  spec.epsilon = j.value("epsilon", 0.0);
  if (j.contains("indices"))
    for (const Json& index : j.at("indices")) spec.indices.push_back(index_from_json(index));
  if (j.contains("alphas")) spec.alphas = j.at("alphas").get<std::vector<double>>();
  return spec;
}

Json to_json(const SeparationResult& result) {
  Json j;
  j["selected"] = result.selected;
  j["threshold"] = result.threshold;
  j["d_count"] = result.d_count;
  j["guarantee"] = result.guarantee;
  j["hypothesis_ok"] = result.hypothesis_ok;
  return j;
}

Json to_json(const CompactnessProfile& profile) {
  Json j;
  j["shift_modulus"] = pairs_to_json(profile.shift_modulus);
  j["decay_modulus"] = pairs_to_json(profile.decay_modulus);
  j["dual_decay_modulus"] = pairs_to_json(profile.dual_decay_modulus);
  return j;
}

Json to_json(const DualityReport& report) {
  Json j;
  j["shift_modulus"] = pairs_to_json(report.shift_modulus);
  j["dual_decay_modulus"] = pairs_to_json(report.dual_decay_modulus);
  Json rows = Json::array();
  for (const DualityReport::HeuristicRow& row : report.heuristic)
    rows.push_back(Json::array({row.a, row.R, row.bound}));
  j["heuristic"] = std::move(rows);
  return j;
}

Json to_json(const FrameDiagnostics& diagnostics) {
  Json j;
  j["lower_bound_est"] = diagnostics.lower_bound_est;
  j["upper_bound_est"] = diagnostics.upper_bound_est;
  j["smallest_singular_value"] = diagnostics.smallest_singular_value;
  j["section_size"] = diagnostics.section_size;
  return j;
}

Json to_json(const RSCheck& check) {
  Json j;
  j["r"] = check.r;
  j["s"] = check.s;
  // +infinity (no finite constant exists) serializes as null.
  j["lower_const_est"] =
      std::isfinite(check.lower_const_est) ? Json(check.lower_const_est) : Json(nullptr);
  j["upper_const_est"] =
      std::isfinite(check.upper_const_est) ? Json(check.upper_const_est) : Json(nullptr);
  j["zero_coefficient_witnesses"] = check.zero_coefficient_witnesses;
  return j;
}

Json to_json(const ObstructionReport& report) {
  Json j;
  Json elements = Json::array();
  for (const ObstructionElement& element : report.elements) {
    Json e;
    e["ordinal"] = element.ordinal;
    e["index"] = element.index ? index_to_json(*element.index) : Json(nullptr);
    e["report"] = to_json(element.report);
    e["premise_flags"] =
        Json::array({element.mean_ok, element.time_disp_ok, element.freq_disp_ok});
    e["kaq_ok"] = element.kaq_ok;
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);
  j["growth_certificate"] = report.growth_certificate;
  j["evasion_flag"] = report.evasion_flag;
  j["narrative"] = report.narrative;
  j["rs_check"] = report.rs ? to_json(*report.rs) : Json(nullptr);
  return j;
}

Json to_json(const std::vector<VerifyCheck>& checks) {
  Json j = Json::array();
  for (const VerifyCheck& check : checks) {
    Json c;
    c["name"] = check.name;
    c["passed"] = check.passed;
    c["detail"] = check.detail;
    j.push_back(std::move(c));
  }
  return j;
}

} // namespace tfconc
