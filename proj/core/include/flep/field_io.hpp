#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "flep/grid.hpp"

namespace flep {

/// Binary field format "FLEP":
///   magic "FLEP", version u32=1, d u32, n u32, L f64, s f64 (0 if n/a),
///   then n^d little-endian f64 samples, row-major (axis 0 slowest).
/// An optional trailer "FLEPHASH" + u64 carries the config hash so
/// downstream commands can refuse fields from a different configuration.
struct FieldFile {
    Field field;
    double s = 0.0;
    std::optional<std::uint64_t> config_hash;
};

void write_field(const std::string& path, const Field& f, double s,
                 std::optional<std::uint64_t> config_hash = std::nullopt);

FieldFile read_field(const std::string& path);

/// Write bytes to a temp file in the same directory, then rename over the
/// target, so interrupted runs never leave truncated artifacts.
void atomic_write(const std::string& path, const std::string& bytes);

}  // namespace flep
