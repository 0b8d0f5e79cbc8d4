#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include <radbcs/errors.hpp>
#include <radbcs/version.hpp>

namespace radbcs::app {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);  // no "-0"
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  add_row(header);
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_number(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
  if (row.size() != columns_) throw InvalidInput("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text_ += ',';
    text_ += row[i];
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

RunOutput::RunOutput(std::filesystem::path dir, std::string command,
                     nlohmann::ordered_json config)
    : dir_(std::move(dir)),
      command_(std::move(command)),
      config_(std::move(config)),
      start_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(dir_);
}

void RunOutput::write(const std::string& name, const std::string& bytes) {
  write_atomic(dir_ / name, bytes);
  files_.push_back({{"name", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
}

void RunOutput::write_json(const std::string& name, const nlohmann::ordered_json& json) {
  write(name, json.dump(2) + "\n");
}

void RunOutput::finish() {
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  for (const auto& f : files_)
    if (!std::filesystem::exists(dir_ / f["name"].get<std::string>()))
      throw Error("artifact " + f["name"].get<std::string>() + " vanished before the manifest");
  nlohmann::ordered_json m;
  m["version"] = kVersion;
  m["command"] = command_;
  m["config"] = config_;
  m["files"] = files_;
  m["convergence"] = convergence_;
  m["wall_clock_seconds"] = seconds;
  write_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
}

}  // namespace radbcs::app
