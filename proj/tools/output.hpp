#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace diqss::cli {

/// Emitted documents keep insertion order so the metadata block leads.
using Json = nlohmann::ordered_json;

/// Numbers are printed with 9 significant digits everywhere.
std::string format_g9(double value);

/// Metadata stamped into every emitted document: version, config hash, seed,
/// interpretation/sense flags, units note.
Json make_meta(const RunConfig& cfg);

/// "# key=value ..." comment block carrying the same metadata for CSV files.
std::string csv_meta_block(const RunConfig& cfg);

/// Writes `text` to stdout and, when out_path is nonempty, to the file.
void emit(const std::string& text, const std::string& out_path);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_csv(const RunConfig& cfg) const;
  Json to_json(const RunConfig& cfg) const;
};

}  // namespace diqss::cli
