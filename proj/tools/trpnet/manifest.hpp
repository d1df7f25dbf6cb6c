#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace trpnet::cli {

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Reads a whole file; throws DomainError when unreadable.
std::string slurp(const std::filesystem::path& path);

/// Accumulates the reproducibility record for one CLI run and writes
/// `<prefix>.manifest.json`. Re-running from the manifest regenerates every
/// output byte-for-byte.
class ManifestBuilder {
public:
    ManifestBuilder(std::string command, const std::vector<std::string>& argv);

    nlohmann::json& parameters() { return doc_["parameters"]; }
    nlohmann::json& tolerances() { return doc_["tolerances"]; }
    nlohmann::json& constants() { return doc_["constants"]; }

    void add_input(const std::string& role, const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    void add_timing(const std::string& stage, double seconds);

    void write(const std::filesystem::path& prefix_path);

private:
    nlohmann::json doc_;
    std::chrono::steady_clock::time_point start_;
};

/// Simple wall-clock stage timer.
class StageTimer {
public:
    StageTimer() : start_(std::chrono::steady_clock::now()) {}
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace trpnet::cli
