#include "stolev/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace stolev::report {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_csv(const CsvTable& table, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << ',';
    os << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv row width mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << fmt(row[c]);
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + file.string());
}

void write_text(const std::string& body, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
  os << body;
  if (!os) throw std::runtime_error("write failed: " + file.string());
}

namespace {
std::uint64_t fnv1a(const char* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}
}  // namespace

std::string file_checksum(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for checksum: " + file.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (is) {
    is.read(buf, sizeof(buf));
    h = fnv1a(buf, static_cast<std::size_t>(is.gcount()), h);
  }
  return hex64(h);
}

std::string string_digest(const std::string& s) {
  return hex64(fnv1a(s.data(), s.size()));
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& file) {
  nlohmann::ordered_json j;
  j["config_digest"] = manifest.config_digest;
  j["toolkit_version"] = manifest.toolkit_version;
  j["started"] = manifest.started;
  j["finished"] = manifest.finished;
  j["outputs"] = manifest.output_checksums;
  write_text(j.dump(2) + "\n", file);
}

}  // namespace stolev::report
