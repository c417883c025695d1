#include "pvclass_cli/config.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace pvclass::cli {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kMethods{"plugin", "knn", "logistic", "typicality"};
const std::set<std::string> kModes{"exact-swap", "valid-shortcut", "naive"};
const std::set<std::string> kFormats{"csv", "json", "svg"};
const std::set<std::string> kExperiments{"validity", "convergence", "region-map"};
const std::set<std::string> kModels{"two-class", "example22"};
const std::set<std::string> kSources{"oracle", "sample", "train"};

void check_member(const std::set<std::string>& allowed, const std::string& value, const std::string& what) {
  if (!allowed.count(value)) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw UsageError("invalid " + what + " '" + value + "' (expected one of: " + list + ")");
  }
}

template <typename T>
std::vector<T> one_or_many(const ordered_json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::size_t get_count(const ordered_json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw UsageError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

bool SessionConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void apply_json(SessionConfig& c, const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "train") c.train = v.get<std::string>();
      else if (key == "query") c.query = v.get<std::string>();
      else if (key == "label") c.label = v.get<std::string>();
      else if (key == "method") c.methods = one_or_many<std::string>(v);
      else if (key == "mode") c.modes = one_or_many<std::string>(v);
      else if (key == "alpha") c.alphas = one_or_many<double>(v);
      else if (key == "k") c.k = get_count(v, key);
      else if (key == "scale-features") c.scale_features = v.get<bool>();
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(get_count(v, key));
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") c.formats = one_or_many<std::string>(v);
      else if (key == "threads") c.threads = static_cast<unsigned>(get_count(v, key));
      else if (key == "model") c.model = v.get<std::string>();
      else if (key == "source") c.source = v.get<std::string>();
      else if (key == "replications") c.replications = get_count(v, key);
      else if (key == "group-size") c.group_size = get_count(v, key);
      else if (key == "n") c.schedule = one_or_many<std::size_t>(v);
      else if (key == "queries") c.queries = get_count(v, key);
      else if (key == "mc-samples") c.mc_samples = get_count(v, key);
      else if (key == "grid") c.grid = get_count(v, key);
      else if (key == "command" || key == "experiment") {
        // echoed by to_json; accepted only if consistent
        const auto s = v.get<std::string>();
        const auto& have = key == "command" ? c.command : c.experiment;
        if (!have.empty() && s != have) throw UsageError("config: " + key + " '" + s + "' conflicts with '" + have + "'");
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    } catch (const ordered_json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

void finalize(SessionConfig& c) {
  const bool validity = c.command == "simulate" && c.experiment == "validity";
  if (c.command == "simulate") check_member(kExperiments, c.experiment, "experiment");

  if (c.modes.empty() && !validity) c.modes = {"valid-shortcut"};
  for (const auto& m : c.methods) check_member(kMethods, m, "method");
  for (const auto& m : c.modes) check_member(kModes, m, "mode");
  if (!validity) {
    if (c.methods.size() > 1) throw UsageError("--method may be given once for this command");
    if (c.modes.size() > 1) throw UsageError("--mode may be given once for this command");
    if (c.methods.empty()) c.methods = {"plugin"};
  }

  if (c.alphas.empty()) c.alphas = validity ? std::vector<double>{0.05, 0.10, 0.25} : std::vector<double>{0.05};
  for (double a : c.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha must lie in (0,1)");
  }
  std::sort(c.alphas.begin(), c.alphas.end());
  c.alphas.erase(std::unique(c.alphas.begin(), c.alphas.end()), c.alphas.end());

  if (c.formats.empty()) c.formats = {"csv"};
  for (const auto& f : c.formats) check_member(kFormats, f, "format");
  std::sort(c.formats.begin(), c.formats.end());
  c.formats.erase(std::unique(c.formats.begin(), c.formats.end()), c.formats.end());

  if (c.command == "classify" || c.command == "crossval") {
    if (c.train.empty()) throw UsageError(c.command + " requires --train");
  }
  if (c.command == "classify" && c.query.empty()) throw UsageError("classify requires --query");

  if (c.command == "simulate") {
    if (c.model.empty()) c.model = c.experiment == "region-map" ? "example22" : "two-class";
    check_member(kModels, c.model, "model");
    check_member(kSources, c.source, "source");
    if (c.experiment == "region-map" && c.source == "train" && c.train.empty()) {
      throw UsageError("--source train requires --train");
    }
    if (c.group_size == 0) c.group_size = validity ? 19 : 100;
    if (c.group_size < 2) throw UsageError("--group-size must be at least 2");
    if (c.schedule.empty()) c.schedule = {200, 800, 3200};
    if (c.replications == 0) throw UsageError("--replications must be positive");
    if (c.queries == 0) throw UsageError("--queries must be positive");
    if (c.mc_samples == 0) throw UsageError("--mc-samples must be positive");
    if (c.grid < 2) throw UsageError("--grid must be at least 2");
  }
}

std::string to_json(const SessionConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  if (c.command == "simulate") j["experiment"] = c.experiment;
  if (!c.train.empty()) j["train"] = c.train;
  if (!c.query.empty()) j["query"] = c.query;
  j["label"] = c.label;
  j["method"] = c.methods;
  j["mode"] = c.modes;
  j["alpha"] = c.alphas;
  j["k"] = c.k;
  j["scale-features"] = c.scale_features;
  if (c.seed) j["seed"] = *c.seed;
  j["out"] = c.out;
  j["format"] = c.formats;
  if (c.command == "simulate") {
    j["model"] = c.model;
    if (c.experiment == "region-map") {
      j["source"] = c.source;
      j["grid"] = c.grid;
    }
    if (c.experiment == "validity") j["replications"] = c.replications;
    if (c.experiment != "convergence") j["group-size"] = c.group_size;
    if (c.experiment == "convergence") {
      j["n"] = c.schedule;
      j["queries"] = c.queries;
    }
    j["mc-samples"] = c.mc_samples;
  }
  return j.dump(2) + "\n";
}

}  // namespace pvclass::cli
