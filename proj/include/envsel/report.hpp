#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <envsel/confidence.hpp>
#include <envsel/io.hpp>

namespace envsel {

namespace detail {
inline nlohmann::json json_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace detail

// Stable report schema, versioned via the `schema` field (currently 1).
// Undefined measures serialize as null; profiles are empty arrays when the
// curve is all-zero.
inline nlohmann::json report_to_json(const ConfidenceReport& report) {
  nlohmann::json j;
  j["schema"] = 1;
  j["curve"] = {{"K", report.K}, {"v0", report.v0}};
  j["i_env"] = report.env.i_env;
  j["suggested_k"] = report.env.suggested;
  j["a_hat"] = report.env.a_hat;
  j["methods"] = nlohmann::json::array();
  for (const MethodEntry& m : report.methods) {
    nlohmann::json e;
    e["name"] = m.name;
    e["lambda"] = m.lambda;
    e["k_e"] = m.k_e;
    e["ci_at_ke"] = detail::json_or_null(m.ci_at_ke);
    e["ci_at_ke_minus_1"] = detail::json_or_null(m.ci_at_ke_minus_1);
    e["r_d"] = detail::json_or_null(m.r_d);
    if (m.degenerate) e["degenerate"] = true;
    if (m.error) e["error"] = *m.error;
    j["methods"].push_back(std::move(e));
  }
  j["external"] = nlohmann::json::array();
  for (const ExternalEntry& x : report.external) {
    nlohmann::json e;
    e["label"] = x.label;
    e["k_e"] = x.k_e;
    e["ci"] = detail::json_or_null(x.ci);
    e["r_d"] = detail::json_or_null(x.r_d);
    j["external"].push_back(std::move(e));
  }
  j["profiles"] = {{"ci", report.ci}, {"cu", report.cu}, {"w_bar", report.w_bar}};
  return j;
}

inline void write_report_json(const std::filesystem::path& path,
                              const ConfidenceReport& report) {
  atomic_write_file(path, report_to_json(report).dump(2) + "\n");
}

// Plot-ready CSV: `k,v,c_<method>...,ci,cu`. Cost columns are recomputed from
// each method's resolved slope; ci/cu cells stay empty when undefined.
inline void write_plot_csv(const std::filesystem::path& path, const ErrorCurve& curve,
                           const ConfidenceReport& report) {
  std::ostringstream out;
  out << "k,v";
  std::vector<std::vector<double>> costs;
  std::map<std::string, int> seen;
  for (const MethodEntry& m : report.methods) {
    if (m.error) continue;
    const int uses = ++seen[m.name];
    out << ",c_" << m.name;
    if (uses > 1) out << '_' << uses;
    costs.push_back(cost_profile(curve, m.lambda));
  }
  out << ",ci,cu\n";
  for (std::size_t k = 0; k <= curve.K(); ++k) {
    out << k << ',' << detail::format_double(curve[k]);
    for (const auto& c : costs) out << ',' << detail::format_double(c[k]);
    out << ',';
    if (!report.ci.empty()) out << detail::format_double(report.ci[k]);
    out << ',';
    if (!report.cu.empty()) out << detail::format_double(report.cu[k]);
    out << '\n';
  }
  atomic_write_file(path, out.str());
}

}  // namespace envsel
