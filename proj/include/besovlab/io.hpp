#pragma once

#include <nlohmann/json.hpp>

#include <bit>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace besov {

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

static_assert(std::endian::native == std::endian::little, "container format is little-endian");

namespace io {

/// 17 significant digits: enough for any double to survive a text round trip
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
    return in;
}

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::filesystem::path& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw io_error("truncated file '" + path.string() + "'");
    return v;
}

/// tensor container: uint64 rank, uint64 dims[rank], float64 row-major data
inline void write_tensor(const std::filesystem::path& path, std::span<const std::uint64_t> dims,
                         std::span<const double> data) {
    std::uint64_t count = 1;
    for (auto x : dims) count *= x;
    if (count != data.size()) throw std::logic_error("tensor dims do not match data size");
    auto out = open_out(path);
    put<std::uint64_t>(out, dims.size());
    for (auto x : dims) put<std::uint64_t>(out, x);
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size() * sizeof(double)));
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

inline std::vector<double> read_tensor(const std::filesystem::path& path, std::vector<std::uint64_t>& dims) {
    auto in = open_in(path);
    auto rank = get<std::uint64_t>(in, path);
    if (rank > 16) throw io_error("bad tensor rank in '" + path.string() + "'");
    dims.resize(rank);
    std::uint64_t count = 1;
    for (auto& x : dims) {
        x = get<std::uint64_t>(in, path);
        count *= x;
    }
    std::vector<double> data(count);
    in.read(reinterpret_cast<char*>(data.data()), std::streamsize(count * sizeof(double)));
    if (!in) throw io_error("truncated tensor data in '" + path.string() + "'");
    return data;
}

inline std::filesystem::path sidecar(const std::filesystem::path& path) {
    auto p = path;
    p += ".json";
    return p;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw io_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace io
}  // namespace besov
