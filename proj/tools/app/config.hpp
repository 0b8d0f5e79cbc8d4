#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <radbcs/grid.hpp>
#include <radbcs/potential.hpp>

namespace radbcs::app {

struct PotentialConfig {
  PotentialKind kind = PotentialKind::gaussian;
  std::vector<GaussianTerm> terms{{2.0, 1.0}};
  std::filesystem::path table;  // tabulated kind, resolved against the config dir
  double scale = 1.0;
};

struct TemperatureMesh {
  std::vector<double> values;  // explicit list, or filled from min/max/count
};

struct RunConfig {
  std::string command;
  int dimension = 2;
  double mu = 1.0;
  std::optional<double> temperature;
  std::optional<TemperatureMesh> temperatures;
  PotentialConfig potential;

  int n_points = 256;
  std::optional<double> p_max;

  double tol = 1e-9;
  int max_iter = 10000;
  double mixing = 0.5;

  int ell_max = 12;
  std::optional<int> ell;

  int k_first = 3;
  int k_last = 8;
  double weak_scale = 0.05;

  int n_angles = 128;
  int n_rotations = 64;
  int m_max = 16;
  double anisotropy = 0.5;

  int positivity_samples = 5;
  int free_energy_points = 10;

  std::filesystem::path output = "out";

  PotentialSpec make_potential() const;
  GridPtr make_grid() const;
  double effective_p_max() const;
};

/// Reads a YAML config, applies `key.path=value` overrides, validates every
/// key and value. Throws ConfigError on any problem.
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace radbcs::app
