#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spm {

inline constexpr const char* kToolkitVersion = "0.3.0";

/// Written as manifest.json into every output directory. `args` is the
/// fully resolved command line (output directory excluded, seed included),
/// which is what replay feeds back to the CLI.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::map<std::string, std::string> config;        // resolved settings, for reading
  std::map<std::string, std::string> input_sha256;  // path -> hex digest
  std::optional<std::uint64_t> seed;
  std::string version = kToolkitVersion;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> outputs;  // file names inside the output directory
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// ISO-8601 UTC timestamp with second resolution.
std::string utc_now();

std::string to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace spm
