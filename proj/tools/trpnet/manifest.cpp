#include "trpnet/manifest.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "trpnet/digest.hpp"
#include "trpnet/errors.hpp"

namespace trpnet::cli {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();

    std::random_device rd;
    fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DomainError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DomainError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ManifestBuilder::ManifestBuilder(std::string command,
                                 const std::vector<std::string>& argv)
    : start_(std::chrono::steady_clock::now()) {
    doc_["tool"] = "trpnet";
    doc_["command"] = std::move(command);
    doc_["argv"] = argv;
    doc_["parameters"] = nlohmann::json::object();
    doc_["constants"] = nlohmann::json::object();
    doc_["tolerances"] = nlohmann::json::object();
    doc_["inputs"] = nlohmann::json::object();
    doc_["outputs"] = nlohmann::json::array();
    doc_["timings_s"] = nlohmann::json::object();
}

void ManifestBuilder::add_input(const std::string& role,
                                const std::filesystem::path& path) {
    doc_["inputs"][role] = {{"path", path.string()},
                            {"sha1", git_blob_sha1(slurp(path))}};
}

void ManifestBuilder::add_output(const std::filesystem::path& path) {
    doc_["outputs"].push_back(
        {{"path", path.string()}, {"sha1", git_blob_sha1(slurp(path))}});
}

void ManifestBuilder::add_timing(const std::string& stage, double seconds) {
    doc_["timings_s"][stage] = seconds;
}

void ManifestBuilder::write(const std::filesystem::path& prefix_path) {
    const auto total = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
    doc_["timings_s"]["total"] = total;
    const std::filesystem::path path = prefix_path.string() + ".manifest.json";
    atomic_write(path, doc_.dump(2) + "\n");
}

} // namespace trpnet::cli
