#include "lmvar/report.hpp"

#include <charconv>

#include <json.hpp>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

using nlohmann::json;

json metrics_to_json(const LandmarkMetrics& m) {
  return json{{"cvar_mm", m.cvar_mm},
              {"psv_mm", m.psv_mm},
              {"anisotropy", m.anisotropy},
              {"wcvar_mm", m.wcvar_mm}};
}

json metadata_to_json(const ReportMetadata& meta) {
  return json{{"seed", meta.seed},
              {"n_folds", meta.n_folds},
              {"bin_size", meta.bin_size},
              {"bin_order", meta.bin_order},
              {"epsilon_aniso", meta.epsilon_aniso},
              {"epsilon_wcvar", meta.epsilon_wcvar},
              {"metric_space_id", meta.metric_space_id},
              {"sdr_thresholds_mm", meta.sdr_thresholds_mm},
              {"partial_bin_rule", meta.partial_bin_rule},
              {"aggregation", meta.aggregation},
              {"ground_truth", meta.ground_truth}};
}

json coefficients_to_json(const CorrelationTable& table) {
  json out = json::object();
  for (const std::string& name : metric_names()) {
    const auto& coefficient = table.coefficients.at(name);
    if (coefficient) {
      out[name] = *coefficient;
    } else {
      out[name] = nullptr;
    }
  }
  return out;
}

void append_metric_row_csv(std::string& out, const std::string& scan_id,
                           const std::string& landmark_id, std::size_t n_points,
                           const LandmarkMetrics& m) {
  out += scan_id;
  out += ',';
  out += landmark_id;
  out += ',';
  out += std::to_string(n_points);
  out += ',';
  out += fmt_double(m.cvar_mm);
  out += ',';
  out += fmt_double(m.psv_mm);
  out += ',';
  out += fmt_double(m.anisotropy);
  out += ',';
  out += fmt_double(m.wcvar_mm);
  out += '\n';
}

std::string coefficient_csv(const std::optional<double>& c) {
  return c ? fmt_double(*c) : "NA";
}

}  // namespace

std::string fmt_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) {
    throw InternalError("failed to format double");
  }
  return std::string(buffer, ptr);
}

std::string metric_table_csv(const MetricTableReport& report) {
  std::string out = "scan_id,landmark_id,n_points,cvar_mm,psv_mm,anisotropy,wcvar_mm\n";
  for (const auto& row : report.rows) {
    append_metric_row_csv(out, row.key.scan_id, std::to_string(row.key.landmark_id),
                          row.n_points, row.metrics);
  }
  std::size_t total_points = 0;
  for (const auto& row : report.rows) {
    total_points += row.n_points;
  }
  append_metric_row_csv(out, "ALL", "", total_points, report.means);
  return out;
}

std::string metric_table_json(const MetricTableReport& report,
                              const ReportMetadata& meta) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"scan_id", row.key.scan_id},
                        {"landmark_id", row.key.landmark_id},
                        {"n_points", row.n_points},
                        {"metrics", metrics_to_json(row.metrics)}});
  }
  const json doc{{"metadata", metadata_to_json(meta)},
                 {"means", metrics_to_json(report.means)},
                 {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string uncertainty_csv(const UncertaintyReport& report) {
  std::string out =
      "strategy,scan_id,landmark_id,n_samples,cvar_mm,psv_mm,anisotropy,wcvar_mm\n";
  for (const auto& [strategy, table] : report.strategies) {
    const std::string name = to_string(strategy);
    for (const auto& row : table.rows) {
      out += name;
      out += ',';
      append_metric_row_csv(out, row.key.scan_id, std::to_string(row.key.landmark_id),
                            row.n_points, row.metrics);
    }
    out += name;
    out += ',';
    std::size_t total_points = 0;
    for (const auto& row : table.rows) {
      total_points += row.n_points;
    }
    append_metric_row_csv(out, "ALL", "", total_points, table.means);
  }
  return out;
}

std::string uncertainty_json(const UncertaintyReport& report,
                             const ReportMetadata& meta) {
  json strategies = json::array();
  for (const auto& [strategy, table] : report.strategies) {
    json rows = json::array();
    for (const auto& row : table.rows) {
      rows.push_back(json{{"scan_id", row.key.scan_id},
                          {"landmark_id", row.key.landmark_id},
                          {"n_samples", row.n_points},
                          {"metrics", metrics_to_json(row.metrics)}});
    }
    strategies.push_back(json{{"strategy", to_string(strategy)},
                              {"means", metrics_to_json(table.means)},
                              {"rows", rows}});
  }
  const json doc{{"metadata", metadata_to_json(meta)}, {"strategies", strategies}};
  return doc.dump(2) + "\n";
}

std::string accuracy_csv(const AccuracyReport& report,
                         const std::vector<double>& thresholds_mm) {
  std::string out = "strategy,mre_mm";
  for (double t : thresholds_mm) {
    out += ",sdr_" + fmt_double(t) + "mm";
  }
  out += '\n';
  for (const auto& row : report.rows) {
    out += to_string(row.strategy);
    out += ',';
    out += fmt_double(row.mre_mm);
    for (double rate : row.sdr_pct) {
      out += ',';
      out += fmt_double(rate);
    }
    out += '\n';
  }
  return out;
}

std::string accuracy_json(const AccuracyReport& report, const ReportMetadata& meta) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"strategy", to_string(row.strategy)},
                        {"mre_mm", row.mre_mm},
                        {"sdr_pct", row.sdr_pct},
                        {"per_fold_mre_mm", row.per_fold_mre_mm}});
  }
  const json doc{{"metadata", metadata_to_json(meta)}, {"strategies", rows}};
  return doc.dump(2) + "\n";
}

std::string correlation_variability_csv(const CorrelationReport& report) {
  std::string out =
      "strategy,mean_cvar_mm,mean_psv_mm,mean_anisotropy,mean_wcvar_mm,"
      "corr_cvar,corr_psv,corr_anisotropy,corr_wcvar\n";
  for (const auto& row : report.rows) {
    out += to_string(row.strategy);
    out += ',';
    out += fmt_double(row.mean_uncertainty.cvar_mm);
    out += ',';
    out += fmt_double(row.mean_uncertainty.psv_mm);
    out += ',';
    out += fmt_double(row.mean_uncertainty.anisotropy);
    out += ',';
    out += fmt_double(row.mean_uncertainty.wcvar_mm);
    for (const std::string& name : metric_names()) {
      out += ',';
      out += coefficient_csv(row.vs_variability.coefficients.at(name));
    }
    out += '\n';
  }
  return out;
}

std::string correlation_error_csv(const CorrelationReport& report) {
  std::string out = "strategy,corr_cvar,corr_psv,corr_anisotropy,corr_wcvar\n";
  for (const auto& row : report.rows) {
    out += to_string(row.strategy);
    for (const std::string& name : metric_names()) {
      out += ',';
      out += coefficient_csv(row.vs_error.coefficients.at(name));
    }
    out += '\n';
  }
  return out;
}

std::string correlation_json(const CorrelationReport& report,
                             const ReportMetadata& meta) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"strategy", to_string(row.strategy)},
                        {"mean_uncertainty", metrics_to_json(row.mean_uncertainty)},
                        {"vs_variability",
                         json{{"coefficients", coefficients_to_json(row.vs_variability)},
                              {"n_pairs", row.vs_variability.n_pairs},
                              {"bin_size", row.vs_variability.bin_size},
                              {"bin_order", to_string(row.vs_variability.order)}}},
                        {"vs_error",
                         json{{"coefficients", coefficients_to_json(row.vs_error)},
                              {"n_pairs", row.vs_error.n_pairs}}}});
  }
  const json doc{{"metadata", metadata_to_json(meta)}, {"strategies", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace lmvar
