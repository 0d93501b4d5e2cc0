#pragma once

// Run manifests: content hashes (SHA-256 via OpenSSL) of every file a run produced.
//
// Links OpenSSL libcrypto.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "flexfet/config.hpp"
#include "flexfet/errors.hpp"
#include "flexfet/table.hpp"
#include "flexfet/version.hpp"

namespace flexfet {

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw OutputError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string config_hash(const SystemConfig& cfg) { return sha256_hex(to_document(cfg).dump()); }

/// Manifest document for files (relative to dir) produced from cfg.
inline nlohmann::json make_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files,
                                    const SystemConfig& cfg, const nlohmann::json& specs, std::uint64_t seed) {
    nlohmann::json m;
    m["tool"] = tool_name;
    m["version"] = tool_version;
    m["seed"] = seed;
    m["config_sha256"] = config_hash(cfg);
    m["config"] = to_document(cfg);
    m["specs"] = specs;
    m["files"] = nlohmann::json::array();
    for (const auto& f : files) {
        const auto content = read_file(dir / f);
        m["files"].push_back({{"path", f}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
    }
    return m;
}

} // namespace flexfet
