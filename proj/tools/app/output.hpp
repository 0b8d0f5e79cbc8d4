#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace radbcs::app {

/// Round-trip representation (17 significant digits).
std::string format_number(double value);

/// Comma-separated rows with a header, LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  void add_row(const std::vector<std::string>& row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

std::string sha256_hex(const std::string& bytes);

/// Writes `bytes` to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

/// Collects artifacts of one run; the manifest is written last and lists
/// every artifact with its checksum.
class RunOutput {
 public:
  RunOutput(std::filesystem::path dir, std::string command, nlohmann::ordered_json config);

  const std::filesystem::path& dir() const { return dir_; }
  void write(const std::string& name, const std::string& bytes);
  void write_json(const std::string& name, const nlohmann::ordered_json& json);
  nlohmann::ordered_json& convergence() { return convergence_; }
  void finish();

 private:
  std::filesystem::path dir_;
  std::string command_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json files_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json convergence_ = nlohmann::ordered_json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace radbcs::app
