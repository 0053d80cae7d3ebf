#include "dress/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dress/error.hpp"
#include "json.hpp"

namespace dress {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& path,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw parse_error(path, "expected an object");
  for (const char* key : required) {
    if (!j.contains(key)) throw parse_error(path + "." + key, "missing field");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : required) known |= key == k;
    for (const char* k : optional) known |= key == k;
    if (!known) throw parse_error(path + "." + key, "unknown field");
  }
}

std::int64_t get_int(const json& j, const std::string& path, std::int64_t min) {
  if (!j.is_number_integer()) throw parse_error(path, "expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < min) throw parse_error(path, "must be >= " + std::to_string(min));
  return v;
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw parse_error(path, "expected a number");
  return j.get<double>();
}

ResourceVector get_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw parse_error(path, "expected a nonempty array");
  std::vector<std::int64_t> amounts;
  for (std::size_t p = 0; p < j.size(); ++p) {
    amounts.push_back(get_int(j[p], path + "[" + std::to_string(p) + "]", 0));
  }
  return ResourceVector(std::move(amounts));
}

PhaseSpec parse_phase(const json& j, const std::string& path) {
  require_object(j, path,
                 {"tasks", "base_duration", "demand", "spread", "heading",
                  "trailing", "stretch"},
                 {"fill"});
  PhaseSpec ph;
  ph.task_count = static_cast<int>(get_int(j["tasks"], path + ".tasks", 1));
  ph.base_duration = get_int(j["base_duration"], path + ".base_duration", 1);
  ph.demand = get_vector(j["demand"], path + ".demand");
  ph.spread = get_int(j["spread"], path + ".spread", 0);
  ph.heading = static_cast<int>(get_int(j["heading"], path + ".heading", 0));
  ph.trailing = static_cast<int>(get_int(j["trailing"], path + ".trailing", 0));
  ph.stretch = get_double(j["stretch"], path + ".stretch");
  if (j.contains("fill")) ph.fill = get_double(j["fill"], path + ".fill");
  return ph;
}

SchedulerConfig parse_config(const json& j, const std::string& path) {
  require_object(j, path,
                 {"ts", "te", "pw", "delta0", "theta", "delta_min", "delta_max"},
                 {"delays", "classify_on"});
  SchedulerConfig c;
  c.ts = static_cast<int>(get_int(j["ts"], path + ".ts", 0));
  c.te = static_cast<int>(get_int(j["te"], path + ".te", 0));
  c.pw = get_int(j["pw"], path + ".pw", 1);
  c.delta0 = get_double(j["delta0"], path + ".delta0");
  c.theta = get_double(j["theta"], path + ".theta");
  c.delta_min = get_double(j["delta_min"], path + ".delta_min");
  c.delta_max = get_double(j["delta_max"], path + ".delta_max");
  if (j.contains("delays")) {
    const auto& d = j["delays"];
    if (!d.is_array() || d.size() != 3) {
      throw parse_error(path + ".delays", "expected [reserved, allocated, acquired]");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      c.delays[i] = get_int(d[i], path + ".delays[" + std::to_string(i) + "]", 0);
    }
  }
  if (j.contains("classify_on")) {
    const auto& v = j["classify_on"];
    if (v == "total") {
      c.classify_on = SchedulerConfig::ClassifyBasis::kTotal;
    } else if (v == "free") {
      c.classify_on = SchedulerConfig::ClassifyBasis::kFree;
    } else {
      throw parse_error(path + ".classify_on", "expected \"total\" or \"free\"");
    }
  }
  return c;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error("$", e.what());
  }
  require_object(root, "$", {"version", "k", "servers", "jobs", "config", "seed"});
  Scenario s;
  s.version = static_cast<int>(get_int(root["version"], "version", 1));
  if (s.version != 1) throw parse_error("version", "unsupported version");
  s.k = static_cast<std::size_t>(get_int(root["k"], "k", 1));
  const auto& servers = root["servers"];
  if (!servers.is_array()) throw parse_error("servers", "expected an array");
  for (std::size_t i = 0; i < servers.size(); ++i) {
    s.servers.push_back(get_vector(servers[i], "servers[" + std::to_string(i) + "]"));
  }
  const auto& jobs = root["jobs"];
  if (!jobs.is_array()) throw parse_error("jobs", "expected an array");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string path = "jobs[" + std::to_string(i) + "]";
    require_object(jobs[i], path, {"id", "submit", "phases"});
    JobSpec job;
    job.id = get_int(jobs[i]["id"], path + ".id", 0);
    job.submit = get_int(jobs[i]["submit"], path + ".submit", 0);
    const auto& phases = jobs[i]["phases"];
    if (!phases.is_array()) throw parse_error(path + ".phases", "expected an array");
    for (std::size_t p = 0; p < phases.size(); ++p) {
      job.phases.push_back(
          parse_phase(phases[p], path + ".phases[" + std::to_string(p) + "]"));
    }
    s.jobs.push_back(std::move(job));
  }
  s.config = parse_config(root["config"], "config");
  if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
    throw parse_error("seed", "expected an integer");
  }
  s.seed = root["seed"].get<std::uint64_t>();
  try {
    validate(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json root = json::object();
  root["version"] = s.version;
  root["k"] = s.k;
  root["servers"] = json::array();
  for (const auto& cap : s.servers) root["servers"].push_back(cap.amounts());
  root["jobs"] = json::array();
  for (const auto& job : s.jobs) {
    json jj = {{"id", job.id}, {"submit", job.submit}, {"phases", json::array()}};
    for (const auto& ph : job.phases) {
      jj["phases"].push_back({{"tasks", ph.task_count},
                              {"base_duration", ph.base_duration},
                              {"demand", ph.demand.amounts()},
                              {"spread", ph.spread},
                              {"heading", ph.heading},
                              {"trailing", ph.trailing},
                              {"stretch", ph.stretch},
                              {"fill", ph.fill}});
    }
    root["jobs"].push_back(std::move(jj));
  }
  const auto& c = s.config;
  root["config"] = {{"ts", c.ts},
                    {"te", c.te},
                    {"pw", c.pw},
                    {"delta0", c.delta0},
                    {"theta", c.theta},
                    {"delta_min", c.delta_min},
                    {"delta_max", c.delta_max},
                    {"delays", c.delays},
                    {"classify_on", to_string(c.classify_on)}};
  root["seed"] = s.seed;
  return root.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path);
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_file(path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_file(path, scenario_to_json(scenario));
}

}  // namespace dress
