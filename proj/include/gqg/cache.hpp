#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "gqg/json_io.hpp"

namespace gqg {

// ---- content addressing ----------------------------------------------------------
//
// Cache entries are keyed by what they mathematically depend on: the field, the
// q-matrix, and (for graded payloads) the degree bound.  The key is hashed to a
// filename, so renaming presets or reordering job files never aliases entries.

namespace detail {

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace detail

inline std::string cache_key(const std::string& kind, const Bicharacter& chi, long degree = -1) {
    std::ostringstream key;
    key << kind << '|' << chi.field.str() << '|' << chi.rank;
    for (const auto& row : chi.q)
        for (const auto& v : row) key << '|' << v.str();
    if (degree >= 0) key << "|deg:" << degree;
    return detail::fnv1a_hex(key.str());
}

// --cache beats the default, GQG_CACHE beats --cache
inline std::string cache_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("GQG_CACHE"); env && *env) return env;
    return flag_value;
}

// a corrupt entry is treated as a miss; the caller recomputes and overwrites it
inline std::optional<Json> cache_get(const std::string& dir, const std::string& key) {
    if (dir.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        Json j = Json::parse(buf.str());
        if (!j.is_object()) return std::nullopt;
        return j;
    } catch (const Json::parse_error&) {
        return std::nullopt;
    }
}

// best effort: an unwritable cache costs a recompute, never a failure
inline bool cache_put(const std::string& dir, const std::string& key, const Json& payload) {
    if (dir.empty()) return false;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
    std::ofstream out(p);
    if (!out) {
        std::cerr << "warning: cache directory '" << dir << "' is not writable; recomputing\n";
        return false;
    }
    out << payload.dump(2) << "\n";
    if (!out) {
        std::cerr << "warning: cache write to '" << p.string() << "' failed\n";
        return false;
    }
    return true;
}

}  // namespace gqg
