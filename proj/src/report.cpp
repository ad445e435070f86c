#include "ngdef/analysis/report.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "ngdef/core/numeric.hpp"

namespace ngd {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

ordered_json report_json(const CheckReport& r) {
  ordered_json j;
  j["check"] = r.check;
  j["model"] = r.model;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_violation"] = number(r.max_violation);
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["witnesses"] = r.witnesses;
  j["params"] = ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  return j;
}

}  // namespace

std::string to_json(const CheckReport& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(const std::vector<CheckReport>& rs, int indent) {
  ordered_json a = ordered_json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a.dump(indent);
}

std::string limit_csv_header(std::size_t n) {
  std::string h = "label,eps";
  for (std::size_t i = 0; i < n; ++i) h += ",value_" + std::to_string(i);
  return h + ",residual,order,converged";
}

void write_limit_csv(std::ostream& out, const LimitEstimate& est, const std::string& label) {
  for (std::size_t k = 0; k < est.values.size(); ++k) {
    out << label << ',' << format_number(est.eps[k]);
    for (Eigen::Index i = 0; i < est.values[k].size(); ++i) out << ',' << format_number(est.values[k](i));
    out << ',';
    if (k > 0) out << format_number(est.residuals[k - 1]);
    out << ",,\n";
  }
  out << label << ",limit";
  for (Eigen::Index i = 0; i < est.value.size(); ++i) out << ',' << format_number(est.value(i));
  out << ',';
  if (!est.residuals.empty()) out << format_number(est.residuals.back());
  out << ',' << format_number(est.order) << ',' << (est.converged ? 1 : 0) << '\n';
}

}  // namespace ngd
