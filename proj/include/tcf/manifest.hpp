#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcf/diagnostics.hpp"

namespace tcf {

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string checksum_hex(const std::string& bytes);  // fnv1a-64 as hex

struct ManifestEntry {
    std::string name;  // relative to the manifest's directory
    std::uint64_t size = 0;
    std::string checksum;  // fnv1a-64, lowercase hex
};

struct RunManifest {
    std::string code_version;
    std::string config_hash;  // hash of the embedded canonical config
    std::string config;       // canonical serialized configuration
    std::string started_at;
    std::string finished_at;
    std::vector<ManifestEntry> files;
};

extern const char* const kCodeVersion;

// Write text atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::string energy_csv_header();
std::string energy_csv(const std::vector<EnergyRecord>& records);

// manifest.json in dir; entries must already list the files in dir.
void write_manifest(const std::string& dir, const RunManifest& man);
RunManifest read_manifest(const std::string& dir);

// Recomputes size and checksum of every inventoried file; throws IoError
// naming the first mismatch.
void verify_manifest(const std::string& dir);

// Checksum one file into a manifest entry.
ManifestEntry make_entry(const std::string& dir, const std::string& name);

std::string now_utc_iso();

}  // namespace tcf
