#include "flep/field_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace flep {

static_assert(std::endian::native == std::endian::little,
              "FLEP I/O assumes a little-endian host");

namespace {
template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& off) {
    check_numeric(off + sizeof(T) <= in.size(), "field file truncated");
    T v;
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}
}  // namespace

void atomic_write(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        check_numeric(out.good(), "cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), std::streamsize(bytes.size()));
        check_numeric(out.good(), "write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_field(const std::string& path, const Field& f, double s,
                 std::optional<std::uint64_t> config_hash) {
    const Grid& g = f.grid();
    std::string bytes;
    bytes.reserve(28 + f.size() * 8 + 16);
    bytes.append("FLEP", 4);
    put<std::uint32_t>(bytes, 1);
    put<std::uint32_t>(bytes, std::uint32_t(g.d));
    put<std::uint32_t>(bytes, std::uint32_t(g.n));
    put<double>(bytes, g.L);
    put<double>(bytes, s);
    for (std::size_t i = 0; i < f.size(); ++i) put<double>(bytes, f[i]);
    if (config_hash) {
        bytes.append("FLEPHASH", 8);
        put<std::uint64_t>(bytes, *config_hash);
    }
    atomic_write(path, bytes);
}

FieldFile read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_numeric(in.good(), "cannot open field file " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t off = 0;
    check_numeric(bytes.size() >= 4 && bytes.compare(0, 4, "FLEP") == 0,
                  "not a FLEP field file: " + path);
    off = 4;
    auto version = take<std::uint32_t>(bytes, off);
    check_numeric(version == 1, "unsupported FLEP version");
    auto d = take<std::uint32_t>(bytes, off);
    auto n = take<std::uint32_t>(bytes, off);
    auto L = take<double>(bytes, off);
    auto s = take<double>(bytes, off);
    Grid g = Grid::make(int(d), int(n), L);
    std::vector<double> vals(g.size());
    for (double& v : vals) v = take<double>(bytes, off);
    FieldFile out{Field(g, std::move(vals)), s, std::nullopt};
    if (bytes.size() >= off + 16 && bytes.compare(off, 8, "FLEPHASH") == 0) {
        off += 8;
        out.config_hash = take<std::uint64_t>(bytes, off);
    }
    return out;
}

}  // namespace flep
