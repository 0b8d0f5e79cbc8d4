#include "config.hpp"

#include <cmath>
#include <set>

#include <yaml-cpp/yaml.h>

#include <radbcs/errors.hpp>

namespace radbcs::app {

namespace {

using Keys = std::set<std::string>;

const Keys kTopKeys{"command", "dimension", "mu",      "temperature",   "temperatures",
                    "potential", "grid",    "solver",  "sectors",       "sweep",
                    "weak_coupling", "rotation", "verify", "output"};

void reject_unknown(const YAML::Node& node, const Keys& allowed, const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

template <class T>
T read(const YAML::Node& node, const std::string& name) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("invalid value for '" + name + "'");
  }
}

template <class T>
void read_into(const YAML::Node& parent, const char* key, const std::string& prefix, T& out) {
  if (const auto n = parent[key]) out = read<T>(n, prefix + key);
}

template <class T>
void read_into(const YAML::Node& parent, const char* key, const std::string& prefix,
               std::optional<T>& out) {
  if (const auto n = parent[key]) out = read<T>(n, prefix + key);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void apply_override(YAML::Node& root, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + text + "' is not of the form key=value");
  const auto path = text.substr(0, eq);
  YAML::Node value;
  try {
    value = YAML::Load(text.substr(eq + 1));
  } catch (const YAML::Exception&) {
    throw ConfigError("override '" + text + "' has an unparsable value");
  }
  YAML::Node cur = root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const auto part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override '" + text + "' has an empty key");
    if (dot == std::string::npos) {
      cur[part] = value;
      return;
    }
    YAML::Node next = cur[part];
    if (!next.IsDefined() || next.IsNull()) cur[part] = YAML::Node(YAML::NodeType::Map);
    cur.reset(cur[part]);
    start = dot + 1;
  }
}

void parse_potential(const YAML::Node& node, RunConfig& cfg,
                     const std::filesystem::path& base_dir) {
  reject_unknown(node, {"kind", "strength", "range", "terms", "table", "scale"}, "potential");
  auto& pot = cfg.potential;
  if (const auto k = node["kind"]) pot.kind = parse_potential_kind(read<std::string>(k, "potential.kind"));
  read_into(node, "scale", "potential.", pot.scale);
  switch (pot.kind) {
    case PotentialKind::gaussian: {
      require(!node["terms"] && !node["table"],
              "potential: 'terms' and 'table' do not apply to kind gaussian");
      GaussianTerm t = pot.terms.front();
      read_into(node, "strength", "potential.", t.strength);
      read_into(node, "range", "potential.", t.range);
      pot.terms = {t};
      break;
    }
    case PotentialKind::two_gaussian: {
      require(!node["strength"] && !node["range"] && !node["table"],
              "potential: kind two-gaussian takes a 'terms' list");
      const auto terms = node["terms"];
      require(terms && terms.IsSequence() && terms.size() == 2,
              "potential.terms must list exactly two {strength, range} entries");
      pot.terms.clear();
      for (std::size_t i = 0; i < 2; ++i) {
        const auto prefix = "potential.terms[" + std::to_string(i) + "].";
        reject_unknown(terms[i], {"strength", "range"}, prefix.substr(0, prefix.size() - 1));
        GaussianTerm t;
        require(terms[i]["strength"] && terms[i]["range"], prefix + "strength/range missing");
        t.strength = read<double>(terms[i]["strength"], prefix + "strength");
        t.range = read<double>(terms[i]["range"], prefix + "range");
        pot.terms.push_back(t);
      }
      break;
    }
    case PotentialKind::tabulated: {
      require(!node["strength"] && !node["range"] && !node["terms"],
              "potential: kind tabulated takes a 'table' path");
      require(static_cast<bool>(node["table"]), "potential.table is required for kind tabulated");
      std::filesystem::path table = read<std::string>(node["table"], "potential.table");
      pot.table = table.is_absolute() ? table : base_dir / table;
      pot.terms.clear();
      break;
    }
  }
  require(std::isfinite(pot.scale), "potential.scale must be finite");
}

void parse_temperatures(const YAML::Node& node, RunConfig& cfg) {
  TemperatureMesh mesh;
  if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      mesh.values.push_back(read<double>(node[i], "temperatures[" + std::to_string(i) + "]"));
  } else {
    reject_unknown(node, {"min", "max", "count"}, "temperatures");
    require(node["min"] && node["max"] && node["count"],
            "temperatures needs min, max and count");
    const double lo = read<double>(node["min"], "temperatures.min");
    const double hi = read<double>(node["max"], "temperatures.max");
    const int count = read<int>(node["count"], "temperatures.count");
    require(count >= 2 && lo > 0.0 && hi > lo, "temperatures: need 0 < min < max, count >= 2");
    for (int i = 0; i < count; ++i) mesh.values.push_back(lo + (hi - lo) * i / (count - 1));
  }
  require(!mesh.values.empty(), "temperatures must not be empty");
  for (std::size_t i = 0; i < mesh.values.size(); ++i) {
    require(std::isfinite(mesh.values[i]) && mesh.values[i] > 0.0,
            "temperatures must be positive");
    require(i == 0 || mesh.values[i] > mesh.values[i - 1],
            "temperatures must be strictly increasing");
  }
  cfg.temperatures = std::move(mesh);
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read config file " + path.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  for (const auto& o : overrides) apply_override(root, o);
  reject_unknown(root, kTopKeys, "");

  RunConfig cfg;
  read_into(root, "command", "", cfg.command);
  read_into(root, "dimension", "", cfg.dimension);
  read_into(root, "mu", "", cfg.mu);
  read_into(root, "temperature", "", cfg.temperature);
  if (const auto n = root["temperatures"]) parse_temperatures(n, cfg);
  if (const auto n = root["potential"]) parse_potential(n, cfg, path.parent_path());
  if (const auto n = root["grid"]) {
    reject_unknown(n, {"n_points", "p_max"}, "grid");
    read_into(n, "n_points", "grid.", cfg.n_points);
    read_into(n, "p_max", "grid.", cfg.p_max);
  }
  if (const auto n = root["solver"]) {
    reject_unknown(n, {"tol", "max_iter", "mixing"}, "solver");
    read_into(n, "tol", "solver.", cfg.tol);
    read_into(n, "max_iter", "solver.", cfg.max_iter);
    read_into(n, "mixing", "solver.", cfg.mixing);
  }
  if (const auto n = root["sectors"]) {
    reject_unknown(n, {"ell_max", "ell"}, "sectors");
    read_into(n, "ell_max", "sectors.", cfg.ell_max);
    read_into(n, "ell", "sectors.", cfg.ell);
  }
  if (const auto n = root["sweep"]) {
    reject_unknown(n, {"k_first", "k_last"}, "sweep");
    read_into(n, "k_first", "sweep.", cfg.k_first);
    read_into(n, "k_last", "sweep.", cfg.k_last);
  }
  if (const auto n = root["weak_coupling"]) {
    reject_unknown(n, {"scale"}, "weak_coupling");
    read_into(n, "scale", "weak_coupling.", cfg.weak_scale);
  }
  if (const auto n = root["rotation"]) {
    reject_unknown(n, {"n_angles", "n_rotations", "m_max", "anisotropy"}, "rotation");
    read_into(n, "n_angles", "rotation.", cfg.n_angles);
    read_into(n, "n_rotations", "rotation.", cfg.n_rotations);
    read_into(n, "m_max", "rotation.", cfg.m_max);
    read_into(n, "anisotropy", "rotation.", cfg.anisotropy);
  }
  if (const auto n = root["verify"]) {
    reject_unknown(n, {"positivity_samples", "free_energy_points"}, "verify");
    read_into(n, "positivity_samples", "verify.", cfg.positivity_samples);
    read_into(n, "free_energy_points", "verify.", cfg.free_energy_points);
  }
  if (const auto n = root["output"]) cfg.output = read<std::string>(n, "output");

  require(cfg.dimension == 2 || cfg.dimension == 3, "dimension must be 2 or 3");
  require(std::isfinite(cfg.mu), "mu must be finite");
  if (cfg.temperature)
    require(std::isfinite(*cfg.temperature) && *cfg.temperature > 0.0,
            "temperature must be positive");
  require(cfg.n_points >= 16, "grid.n_points must be at least 16");
  if (cfg.p_max) require(std::isfinite(*cfg.p_max) && *cfg.p_max > 0.0, "grid.p_max must be positive");
  require(cfg.tol > 0.0, "solver.tol must be positive");
  require(cfg.max_iter >= 1, "solver.max_iter must be positive");
  require(cfg.mixing > 0.0 && cfg.mixing <= 1.0, "solver.mixing must lie in (0, 1]");
  require(cfg.ell_max >= 0 && cfg.ell_max % 2 == 0, "sectors.ell_max must be even and >= 0");
  if (cfg.ell) {
    require(*cfg.ell >= 0, "sectors.ell must be >= 0 (ell and -ell coincide)");
    try {
      check_sector(cfg.dimension, *cfg.ell);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("sectors.ell: ") + e.what());
    }
  }
  require(cfg.k_first >= 1 && cfg.k_last >= cfg.k_first, "sweep: need 1 <= k_first <= k_last");
  require(std::isfinite(cfg.weak_scale) && cfg.weak_scale > 0.0, "weak_coupling.scale must be positive");
  require(cfg.n_rotations >= 1 && cfg.n_angles % cfg.n_rotations == 0,
          "rotation.n_angles must be a multiple of rotation.n_rotations");
  require(cfg.m_max >= 0 && 2 * cfg.m_max < cfg.n_angles, "rotation.m_max must be below n_angles / 2");
  require(std::isfinite(cfg.anisotropy), "rotation.anisotropy must be finite");
  require(cfg.positivity_samples >= 1, "verify.positivity_samples must be positive");
  require(cfg.free_energy_points >= 2, "verify.free_energy_points must be >= 2");
  const double pm = cfg.effective_p_max();
  require(pm * pm > std::abs(cfg.mu), "grid must enclose Fermi surface (p_max^2 > |mu|)");
  // Surfaces potential errors (missing table, bad ranges) before any output.
  (void)cfg.make_potential();
  return cfg;
}

double RunConfig::effective_p_max() const { return p_max ? *p_max : default_p_max(mu); }

PotentialSpec RunConfig::make_potential() const {
  PotentialSpec spec = [&] {
    switch (potential.kind) {
      case PotentialKind::gaussian:
        return PotentialSpec::gaussian(potential.terms.at(0).strength,
                                       potential.terms.at(0).range, dimension);
      case PotentialKind::two_gaussian:
        return PotentialSpec::two_gaussian(potential.terms.at(0), potential.terms.at(1),
                                           dimension);
      case PotentialKind::tabulated:
        break;
    }
    return PotentialSpec::from_csv(potential.table, dimension);
  }();
  return potential.scale == 1.0 ? spec : spec.scaled(potential.scale);
}

GridPtr RunConfig::make_grid() const {
  return build_grid(effective_p_max(), n_points, mu, dimension);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["dimension"] = c.dimension;
  j["mu"] = c.mu;
  j["temperature"] = c.temperature ? nlohmann::ordered_json(*c.temperature) : nullptr;
  j["temperatures"] = c.temperatures ? nlohmann::ordered_json(c.temperatures->values) : nullptr;
  auto& p = j["potential"];
  p["kind"] = std::string(to_string(c.potential.kind));
  if (c.potential.kind == PotentialKind::tabulated) {
    p["table"] = c.potential.table.string();
  } else {
    p["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : c.potential.terms)
      p["terms"].push_back({{"strength", t.strength}, {"range", t.range}});
  }
  p["scale"] = c.potential.scale;
  j["grid"] = {{"n_points", c.n_points}, {"p_max", c.effective_p_max()}};
  j["solver"] = {{"tol", c.tol}, {"max_iter", c.max_iter}, {"mixing", c.mixing}};
  j["sectors"] = {{"ell_max", c.ell_max},
                  {"ell", c.ell ? nlohmann::ordered_json(*c.ell) : nullptr}};
  j["sweep"] = {{"k_first", c.k_first}, {"k_last", c.k_last}};
  j["weak_coupling"] = {{"scale", c.weak_scale}};
  j["rotation"] = {{"n_angles", c.n_angles},
                   {"n_rotations", c.n_rotations},
                   {"m_max", c.m_max},
                   {"anisotropy", c.anisotropy}};
  j["verify"] = {{"positivity_samples", c.positivity_samples},
                 {"free_energy_points", c.free_energy_points}};
  j["output"] = c.output.string();
  return j;
}

}  // namespace radbcs::app
