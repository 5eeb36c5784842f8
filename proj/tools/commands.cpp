#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "diqss/errors.hpp"
#include "diqss/mc/simulate.hpp"
#include "diqss/quantum/correlations.hpp"
#include "diqss/quantum/ghz.hpp"
#include "diqss/support/parallel.hpp"
#include "diqss/version.hpp"
#include "output.hpp"

namespace diqss::cli {

namespace {

Json report_to_json(const keyrate::KeyRateReport& r, const RunConfig& cfg) {
  Json j = {
      {"meta", make_meta(cfg)},
      {"S", r.chsh},
      {"S_ABC", r.svetlichny},
      {"delta", r.delta},
      {"E_tilde", r.e_tilde ? Json(*r.e_tilde) : Json(nullptr)},
      {"r_111", r.r_111},
      {"r_212", r.r_212 ? Json(*r.r_212) : Json(nullptr)},
      {"R_inf", r.r_inf},
      {"E_m", r.e_m},
      {"E_c", r.e_c},
      {"flags",
       {{"r_inf_clamped", r.r_inf_clamped},
        {"below_chsh", r.below_chsh},
        {"below_threshold", r.r_inf <= 0.0}}},
  };
  if (r.r_inf <= 0.0) j["note"] = "below fidelity/efficiency threshold";
  j["params"] = cfg.raw();
  return j;
}

}  // namespace

int cmd_keyrate(const RunConfig& cfg, const CommandIo& io) {
  const auto report = keyrate::evaluate_keyrate(cfg.channel(), cfg.noise(), cfg.proto());
  const auto j = report_to_json(report, cfg);
  if (io.format == "csv") {
    std::string text = csv_meta_block(cfg);
    text += "key,value\n";
    for (const char* k : {"S", "S_ABC", "delta", "r_111", "R_inf", "E_m", "E_c"}) {
      text += std::string(k) + "," + format_g9(j.at(k).get<double>()) + "\n";
    }
    emit(text, io.out_path);
  } else {
    emit(j.dump(2) + "\n", io.out_path);
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, const CommandIo& io) {
  const std::string axis = cfg.text("axis");
  static const std::map<std::string, int> kAxes = {
      {"d", 0}, {"T", 1}, {"eta_M", 2}, {"eta_l", 3}, {"F", 4}, {"q", 5}};
  if (!kAxes.count(axis)) {
    throw ConfigError("unknown scan axis: '" + axis +
                      "' (expected d|T|eta_M|eta_l|F|q)");
  }
  const double start = cfg.number("start");
  const double stop = cfg.number("stop");
  const int steps = static_cast<int>(cfg.integer("steps"));
  const bool log_scale = cfg.text("scale") == "log";
  if (steps < 2) throw ConfigError("steps must be >= 2");
  if (!(start < stop)) throw ConfigError("start must be < stop");
  if (log_scale && start <= 0.0) throw ConfigError("log scale requires start > 0");

  const auto names = cfg.outputs();
  for (const auto& n : names) {
    if (n != "E_m" && n != "E_c" && n != "R_inf" && n != "S" && n != "delta") {
      throw ConfigError("unknown output name: " + n);
    }
  }

  std::vector<double> values(steps);
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    values[i] = log_scale ? start * std::pow(stop / start, f)
                          : start + (stop - start) * f;
  }

  auto point_config = [&](double v) {
    auto channel = cfg.channel();
    auto noise = cfg.noise();
    auto proto = cfg.proto();
    switch (kAxes.at(axis)) {
      case 0: channel.distance_km = v; break;
      case 1: channel.transmittance = v; break;
      case 2: channel.memory_efficiency = v; break;
      case 3: noise.local_efficiency = v; break;
      case 4: noise.fidelity = v; break;
      case 5: proto.noise_preprocessing = v; break;
    }
    return std::tuple(channel, noise, proto);
  };

  Table table;
  table.header.push_back(axis);
  for (const auto& n : names) table.header.push_back(n);
  table.rows.resize(steps);

  const auto rows = support::parallel_blocks<std::vector<double>>(
      steps, std::function<std::vector<double>(int)>([&](int i) {
        const auto [channel, noise, proto] = point_config(values[i]);
        const auto rep = keyrate::evaluate_keyrate(channel, noise, proto);
        std::vector<double> row{values[i]};
        for (const auto& n : names) {
          if (n == "E_m") row.push_back(rep.e_m);
          else if (n == "E_c") row.push_back(rep.e_c);
          else if (n == "R_inf") row.push_back(rep.r_inf);
          else if (n == "S") row.push_back(rep.chsh);
          else row.push_back(rep.delta);
        }
        return row;
      }));
  for (int i = 0; i < steps; ++i) table.rows[i] = rows[i];

  if (io.format == "json") {
    emit(table.to_json(cfg).dump(2) + "\n", io.out_path);
  } else {
    emit(table.to_csv(cfg), io.out_path);
  }
  return kExitOk;
}

int cmd_threshold(const RunConfig& cfg, const CommandIo& io) {
  const auto proto = cfg.proto();
  const std::string target = cfg.text("target");
  double root;
  if (target == "fidelity") {
    root = keyrate::threshold_fidelity(cfg.number("eta_l"), proto.strategy, proto);
  } else {
    root = keyrate::threshold_local_efficiency(cfg.number("F"), proto.strategy,
                                               proto.noise_preprocessing, proto);
  }
  auto at_root = cfg.noise();
  if (target == "fidelity") {
    at_root.fidelity = root;
  } else {
    at_root.local_efficiency = root;
  }
  const double residual = keyrate::r_infinity_raw(at_root, proto);

  const Json j = {
      {"meta", make_meta(cfg)}, {"target", target},     {"root", root},
      {"residual", residual},   {"strategy", cfg.text("strategy")},
      {"q", cfg.number("q")},
  };
  emit(j.dump(2) + "\n", io.out_path);
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, const CommandIo& io) {
  const auto loading_cfg = cfg.sim(cfg.integer("trials"));
  const auto rounds_cfg = cfg.sim(cfg.integer("rounds"));

  const auto loading = mc::simulate_loading(loading_cfg);
  const auto rounds = mc::simulate_rounds(rounds_cfg);

  const auto noise = cfg.noise();
  const auto proto = cfg.proto();
  const auto strategy = proto.strategy;

  const double em_scale = cfg.number("validate_em_scale");
  const double analytic_em =
      heralding::loading_stats(cfg.channel()).efficiency * em_scale;
  const double analytic_qber = quantum::qber(
      noise, strategy,
      strategy == quantum::Strategy::advanced
          ? std::optional<double>(proto.noise_preprocessing)
          : std::nullopt);
  const auto rho = quantum::white_noise_state(noise.fidelity);
  const double analytic_s = quantum::chsh_value(rho, noise.local_efficiency);
  const double analytic_sabc = quantum::svetlichny_value(rho, noise.local_efficiency);

  const double p = proto.first_basis_prob;
  const double pc = proto.test_basis_prob;
  double key_frac = (1.0 - pc) * p * p;
  if (strategy == quantum::Strategy::advanced) {
    key_frac += (1.0 - pc) * (1.0 - p) * (1.0 - p);
  }
  const double test_frac = pc;
  const double discard_frac = 1.0 - key_frac - test_frac;

  // GSM success rate from the projection-level outcome distribution.
  double analytic_gsm = 0.0;
  for (const auto& o :
       quantum::entanglement_swap(quantum::loaded_pairs_state(), {3, 4, 5})) {
    if (quantum::gsm_classify(o.label) == quantum::GsmResult::success) {
      analytic_gsm += o.probability;
    }
  }

  const double classified = static_cast<double>(rounds.rounds_classified);
  auto frac_se = [&](double frac) {
    return classified > 0 ? std::sqrt(frac * (1.0 - frac) / classified) : 0.0;
  };

  struct Row {
    std::string name;
    double analytic;
    double empirical;
    double se;
  };
  const std::vector<Row> rows = {
      {"E_m", analytic_em, loading.loading_efficiency.value,
       loading.loading_efficiency.std_error},
      {"qber", analytic_qber, rounds.qber.value, rounds.qber.std_error},
      {"S", analytic_s, rounds.chsh.value, rounds.chsh.std_error},
      {"S_ABC", analytic_sabc, rounds.svetlichny.value, rounds.svetlichny.std_error},
      {"sift_key", key_frac, rounds.sift_key, frac_se(key_frac)},
      {"sift_test", test_frac, rounds.sift_test, frac_se(test_frac)},
      {"sift_discard", discard_frac, rounds.sift_discard, frac_se(discard_frac)},
      {"gsm_success_rate", analytic_gsm, rounds.gsm_success_rate.value,
       rounds.gsm_success_rate.std_error},
  };

  Json failures = Json::array();
  Json json_rows = Json::array();
  std::string text;
  text += "quantity           analytic      empirical     SE            |z|\n";
  for (const auto& row : rows) {
    const double diff = row.empirical - row.analytic;
    const double z = row.se > 0.0 ? std::abs(diff) / row.se
                                  : (diff == 0.0 ? 0.0 : INFINITY);
    const bool ok = z <= 3.0;
    char line[160];
    std::snprintf(line, sizeof(line), "%-18s %-13.6g %-13.6g %-13.6g %-8.3g %s\n",
                  row.name.c_str(), row.analytic, row.empirical, row.se, z,
                  ok ? "ok" : "FAIL");
    text += line;
    json_rows.push_back({{"name", row.name},
                         {"analytic", row.analytic},
                         {"empirical", row.empirical},
                         {"se", row.se},
                         {"z", z},
                         {"ok", ok}});
    if (!ok) failures.push_back(row.name);
  }

  if (io.format == "json") {
    const Json j = {{"meta", make_meta(cfg)},
                              {"rows", json_rows},
                              {"failures", failures},
                              {"trials", loading_cfg.trials},
                              {"rounds", rounds_cfg.trials}};
    emit(j.dump(2) + "\n", io.out_path);
  } else {
    if (!failures.empty()) {
      text += "disagreement beyond 3 SE: " + failures.dump() + "\n";
    }
    emit(text, io.out_path);
  }
  return failures.empty() ? kExitOk : kExitValidation;
}

int cmd_calibrate(const RunConfig& cfg, const CommandIo& io) {
  // Anchor values the sweep is judged against.
  constexpr double kEtaBaseAnchor = 0.9632;
  constexpr double kEtaPostAnchor = 0.9499;
  constexpr double kEtaAdvancedAnchor = 0.9341;
  constexpr double kTolerance = 0.002;  // 0.2 percentage points
  constexpr double kSweepQ = 0.499;

  auto base_proto = cfg.proto();

  const double eta_base =
      keyrate::threshold_local_efficiency(1.0, quantum::Strategy::base, 0.0, base_proto);
  const double eta_post = keyrate::threshold_local_efficiency(
      1.0, quantum::Strategy::postselect, 0.0, base_proto);

  struct Combo {
    keyrate::Interpretation interpretation;
    keyrate::Sense sense;
  };
  const std::vector<Combo> combos = {
      {keyrate::Interpretation::kCorrelator, keyrate::Sense::max},
      {keyrate::Interpretation::kCorrelator, keyrate::Sense::min},
      {keyrate::Interpretation::kLiteral, keyrate::Sense::max},
      {keyrate::Interpretation::kLiteral, keyrate::Sense::min},
  };

  Json sweep = Json::array();
  int selected = -1;
  double best_residual = 1e300;
  for (size_t i = 0; i < combos.size(); ++i) {
    auto proto = base_proto;
    proto.interpretation = combos[i].interpretation;
    proto.sense = combos[i].sense;
    Json entry = {
        {"interpretation", keyrate::to_string(combos[i].interpretation)},
        {"sense", keyrate::to_string(combos[i].sense)},
    };
    try {
      const double root = keyrate::threshold_local_efficiency(
          1.0, quantum::Strategy::advanced, kSweepQ, proto);
      const double residual = root - kEtaAdvancedAnchor;
      entry["eta_threshold"] = root;
      entry["residual_9341"] = residual;
      entry["status"] = "ok";
      if (std::abs(residual) < std::abs(best_residual) &&
          std::abs(residual) <= kTolerance) {
        best_residual = residual;
        selected = static_cast<int>(i);
      }
    } catch (const std::exception& e) {
      entry["status"] = std::string("failed: ") + e.what();
      entry["eta_threshold"] = nullptr;
      entry["residual_9341"] = nullptr;
    }
    sweep.push_back(entry);
  }

  Json report = {
      {"meta", make_meta(cfg)},
      {"chain_anchors",
       {{"eta_threshold_base", eta_base},
        {"eta_base_residual", eta_base - kEtaBaseAnchor},
        {"eta_threshold_postselect", eta_post},
        {"eta_postselect_residual", eta_post - kEtaPostAnchor}}},
      {"sweep", sweep},
      {"anchor", kEtaAdvancedAnchor},
      {"sweep_q", kSweepQ},
  };

  if (selected < 0) {
    report["selected"] = nullptr;
    std::cout << report.dump(2) << std::endl;
    std::cerr << "calibration failed: no combination reproduces the anchor within "
              << kTolerance << std::endl;
    return kExitCalibration;
  }

  const Json stamp = {
      {"version", diqss::kVersion},
      {"interpretation", keyrate::to_string(combos[selected].interpretation)},
      {"sense", keyrate::to_string(combos[selected].sense)},
      {"anchor_residual", best_residual},
  };
  report["selected"] = stamp;

  const std::string stamp_path =
      io.out_path.empty() ? "diqss_calibration.json" : io.out_path;
  {
    std::string text = stamp.dump(2) + "\n";
    std::ofstream out(stamp_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write calibration stamp: " + stamp_path);
    out << text;
  }
  report["stamp_path"] = stamp_path;
  std::cout << report.dump(2) << std::endl;
  return kExitOk;
}

}  // namespace diqss::cli
