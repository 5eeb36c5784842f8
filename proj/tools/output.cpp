#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "diqss/version.hpp"

namespace diqss::cli {

std::string format_g9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

Json make_meta(const RunConfig& cfg) {
  return {
      {"version", diqss::kVersion},
      {"config_hash", cfg.config_hash()},
      {"seed", cfg.integer("seed")},
      {"interpretation", cfg.text("interpretation")},
      {"sense", cfg.text("sense")},
      {"strategy", cfg.text("strategy")},
      {"stamp_source", cfg.stamp_source()},
      {"units", "d km, R_rep Hz, E_c bits/s, probabilities dimensionless"},
  };
}

std::string csv_meta_block(const RunConfig& cfg) {
  std::string block;
  block += "# diqss version=" + std::string(diqss::kVersion) +
           " config_hash=" + cfg.config_hash() +
           " seed=" + std::to_string(cfg.integer("seed")) +
           " interpretation=" + cfg.text("interpretation") +
           " sense=" + cfg.text("sense") + " strategy=" + cfg.text("strategy") +
           "\n";
  block += "# units: d km, R_rep Hz, E_c bits/s, probabilities dimensionless\n";
  return block;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + out_path);
    out << text;
  }
}

std::string Table::to_csv(const RunConfig& cfg) const {
  std::string text = csv_meta_block(cfg);
  for (size_t i = 0; i < header.size(); ++i) {
    text += header[i];
    text += (i + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      text += format_g9(row[i]);
      text += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return text;
}

Json Table::to_json(const RunConfig& cfg) const {
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r = Json::object();
    for (size_t i = 0; i < row.size(); ++i) {
      r[header[i]] = row[i];
    }
    rows_json.push_back(r);
  }
  return {{"meta", make_meta(cfg)}, {"columns", header}, {"rows", rows_json}};
}

}  // namespace diqss::cli
