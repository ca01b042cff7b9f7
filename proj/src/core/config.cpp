#include "spikewave/core/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spikewave/core/error.hpp"

namespace spikewave {

using nlohmann::json;

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Original: return "original";
    case Rule::Nessler: return "nessler";
    case Rule::Probabilistic: return "probabilistic";
  }
  return "?";
}

std::string_view to_string(NeuronModel neuron) {
  switch (neuron) {
    case NeuronModel::IF: return "if";
    case NeuronModel::IzhikevichRS: return "izhikevich_rs";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  if (text == "original") return Rule::Original;
  if (text == "nessler") return Rule::Nessler;
  if (text == "probabilistic") return Rule::Probabilistic;
  throw ConfigError("unknown rule '" + std::string(text) + "'");
}

NeuronModel parse_neuron(std::string_view text) {
  if (text == "if") return NeuronModel::IF;
  if (text == "izhikevich_rs") return NeuronModel::IzhikevichRS;
  throw ConfigError("unknown neuron '" + std::string(text) + "'");
}

namespace {

// Single list of (key, member) pairs used for load, save and hashing.
template <typename Cfg, typename Visitor>
void visit_fields(Cfg& c, Visitor&& v) {
  v("n_scales", c.n_scales);
  v("n_orientations", c.n_orientations);
  v("n_features", c.n_features);
  v("scale_factors", c.scale_factors);
  v("image_size", c.image_size);
  v("s1_threshold", c.s1_threshold);
  v("c1_window", c.c1_window);
  v("c1_stride", c.c1_stride);
  v("s2_rf", c.s2_rf);
  v("inhibition_radius", c.inhibition_radius);
  v("rule", c.rule);
  v("a_plus_init", c.a_plus_init);
  v("a_plus_max", c.a_plus_max);
  v("ratio", c.ratio);
  v("schedule_period", c.schedule_period);
  v("epsilon", c.epsilon);
  v("n_iterations", c.n_iterations);
  v("snapshot_every", c.snapshot_every);
  v("seed", c.seed);
  v("neuron", c.neuron);
  v("if_threshold", c.if_threshold);
  v("izh_a", c.izh_a);
  v("izh_b", c.izh_b);
  v("izh_C", c.izh_C);
  v("izh_k", c.izh_k);
  v("izh_vth", c.izh_vth);
  v("izh_vrest", c.izh_vrest);
  v("izh_qscale", c.izh_qscale);
  v("classes", c.classes);
  v("n_sample", c.n_sample);
  v("synthetic_per_class", c.synthetic_per_class);
  v("ridge", c.ridge);
}

template <typename T>
json encode(const T& value) {
  return json(value);
}
json encode(Rule r) { return json(std::string(to_string(r))); }
json encode(NeuronModel n) { return json(std::string(to_string(n))); }

template <typename T>
void decode(const json& j, T& out) {
  out = j.get<T>();
}
void decode(const json& j, Rule& out) { out = parse_rule(j.get<std::string>()); }
void decode(const json& j, NeuronModel& out) {
  out = parse_neuron(j.get<std::string>());
}

json to_json_object(const RunConfig& cfg) {
  json j = json::object();
  visit_fields(cfg, [&](const char* key, const auto& member) {
    j[key] = encode(member);
  });
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

}  // namespace

void RunConfig::validate() const {
  require(n_scales >= 1, "n_scales must be >= 1");
  require(n_orientations == 4, "n_orientations must be 4");
  require(n_features >= 1, "n_features must be >= 1");
  require(static_cast<int>(scale_factors.size()) == n_scales,
          "scale_factors must list n_scales entries");
  for (double f : scale_factors) {
    require(f > 0.0 && f <= 1.0, "scale factors must lie in (0, 1]");
  }
  require(image_size >= 8, "image_size must be >= 8");
  require(s1_threshold >= 0.0 && s1_threshold < 1.0,
          "s1_threshold must lie in [0, 1)");
  require(c1_window >= c1_stride && c1_stride >= 1,
          "c1_window >= c1_stride >= 1");
  require(s2_rf >= 1, "s2_rf must be >= 1");
  require(inhibition_radius >= 0, "inhibition_radius must be >= 0");
  require(a_plus_init >= 0.0 && a_plus_init <= a_plus_max,
          "0 <= a_plus_init <= a_plus_max");
  require(ratio > 0.0 && std::isfinite(ratio), "ratio must be > 0");
  require(schedule_period >= 1, "schedule_period must be >= 1");
  require(epsilon > 0.0, "epsilon must be > 0");
  require(n_iterations >= 0, "n_iterations must be >= 0");
  require(snapshot_every >= 1, "snapshot_every must be >= 1");
  require(if_threshold >= 0.0, "if_threshold must be >= 0 (0 = derived)");
  require(izh_C > 0.0, "izh_C must be > 0");
  require(izh_k > 0.0, "izh_k must be > 0");
  require(izh_vth > izh_vrest, "izh_vth must exceed izh_vrest");
  require(izh_qscale >= 0.0, "izh_qscale must be >= 0 (0 = derived)");
  require(classes.size() == 2, "exactly two classes (positive first)");
  require(n_sample >= 2, "n_sample must be >= 2");
  require(synthetic_per_class >= 4, "synthetic_per_class must be >= 4");
  require(ridge >= 0.0, "ridge must be >= 0");
}

void apply_variant(RunConfig& cfg, std::string_view variant) {
  if (variant == "snn1") {
    cfg.neuron = NeuronModel::IF;
    cfg.rule = Rule::Original;
  } else if (variant == "snn2") {
    cfg.neuron = NeuronModel::IF;
    cfg.rule = Rule::Probabilistic;
  } else if (variant == "snn3") {
    cfg.neuron = NeuronModel::IzhikevichRS;
    cfg.rule = Rule::Original;
  } else if (variant == "snn4") {
    cfg.neuron = NeuronModel::IzhikevichRS;
    cfg.rule = Rule::Probabilistic;
  } else {
    throw ConfigError("unknown variant '" + std::string(variant) +
                      "' (expected snn1..snn4)");
  }
}

std::string config_to_json(const RunConfig& cfg) {
  return to_json_object(cfg).dump(2) + "\n";
}

RunConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  std::set<std::string> known;
  visit_fields(cfg, [&](const char* key, auto& member) {
    known.insert(key);
    if (auto it = j.find(key); it != j.end()) {
      try {
        decode(*it, member);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " +
                          e.what());
      }
    }
  });
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void save_config(const RunConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << config_to_json(cfg);
}

std::uint64_t config_hash(const RunConfig& cfg) {
  json j = to_json_object(cfg);
  j.erase("seed");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace spikewave
