#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace stolev::report {

// Fixed formatting used by every CSV column: 15 significant digits.
std::string fmt(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Header row plus fmt()-formatted cells; stable byte output for equal input.
void write_csv(const CsvTable& table, const std::filesystem::path& file);

void write_text(const std::string& body, const std::filesystem::path& file);

// FNV-1a over the file bytes, hex-encoded.
std::string file_checksum(const std::filesystem::path& file);
std::string string_digest(const std::string& s);

struct RunManifest {
  std::string config_digest;
  std::string toolkit_version;
  std::string started;
  std::string finished;
  std::map<std::string, std::string> output_checksums;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& file);

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace stolev::report
