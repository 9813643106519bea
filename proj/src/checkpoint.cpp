#include "knlab/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "knlab/json_io.hpp"

namespace knlab {

namespace {

constexpr int kCheckpointVersion = 1;

// Fields that decide the unit plan and unit results.
Json run_identity(const SearchConfig& c) {
  return {{"n", c.n},
          {"mode", std::string(to_string(c.mode))},
          {"symmetry", c.use_symmetry},
          {"samples", c.samples},
          {"seed", c.seed},
          {"p", c.p},
          {"q", c.q},
          {"prune", c.prune},
          {"realize_all", c.realize_all},
          {"collect_profiles", c.collect_profiles}};
}

}  // namespace

void save_checkpoint(const std::string& path, const SearchReport& report) {
  Json j = {{"format", "knlab-search-checkpoint"},
            {"version", kCheckpointVersion},
            {"run", run_identity(report.config)},
            {"units_done", report.units_done},
            {"units_total", report.units_total},
            {"checkpoint_id", report.checkpoint_id},
            {"counters", to_json(report.counters)}};
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(format_partition(v));
  j["violations"] = std::move(violations);
  Json samples = Json::array();
  for (const auto& p : report.relaxation_samples) samples.push_back(to_json(p));
  j["relaxation_samples"] = std::move(samples);
  Json set = Json::array();
  for (const auto& p : report.realizable_set) set.push_back(to_json(p));
  j["realizable_set"] = std::move(set);

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
    if (!out.flush()) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void resume_from_checkpoint(const std::string& path, SearchReport& report) {
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw SearchConfigError("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  try {
    if (j.at("format") != "knlab-search-checkpoint" || j.at("version") != kCheckpointVersion)
      throw SearchConfigError("checkpoint " + path + " has an unknown format");
    if (j.at("run") != run_identity(report.config))
      throw SearchConfigError("checkpoint " + path + " belongs to a different run: " + j.at("run").dump());
    if (j.at("units_total").get<std::uint64_t>() != report.units_total)
      throw SearchConfigError("checkpoint " + path + " has a different unit plan");
    const auto done = j.at("units_done").get<std::uint64_t>();
    if (done > report.units_total) throw SearchConfigError("checkpoint " + path + " cursor out of range");

    report.units_done = done;
    report.counters = counters_from_json(j.at("counters"));
    report.violations.clear();
    for (const auto& v : j.at("violations")) report.violations.push_back(parse_partition(v.get<std::string>()));
    report.relaxation_samples.clear();
    for (const auto& p : j.at("relaxation_samples")) report.relaxation_samples.push_back(profile_from_json(p));
    report.realizable_set.clear();
    for (const auto& p : j.at("realizable_set")) report.realizable_set.push_back(profile_from_json(p));
    report.complete = report.units_done == report.units_total;
  } catch (const Json::exception& e) {
    throw SearchConfigError("checkpoint " + path + " is malformed: " + e.what());
  } catch (const ParseError& e) {
    throw SearchConfigError("checkpoint " + path + " holds a malformed witness: " + e.what());
  }
}

}  // namespace knlab
