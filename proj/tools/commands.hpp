#pragma once

#include <string>

#include "config.hpp"

namespace diqss::cli {

// Exit-code contract: 0 ok, 2 config, 3 bracket, 4 validation, 5 calibration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBracket = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitCalibration = 5;

struct CommandIo {
  std::string out_path;  // empty: stdout only
  std::string format;    // "csv" or "json"
};

int cmd_keyrate(const RunConfig& cfg, const CommandIo& io);
int cmd_scan(const RunConfig& cfg, const CommandIo& io);
int cmd_threshold(const RunConfig& cfg, const CommandIo& io);
int cmd_validate(const RunConfig& cfg, const CommandIo& io);
int cmd_calibrate(const RunConfig& cfg, const CommandIo& io);

}  // namespace diqss::cli
