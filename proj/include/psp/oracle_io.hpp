#pragma once

#include <iosfwd>
#include <string>

#include "psp/oracle.hpp"

namespace psp {

// Binary oracle format, little-endian:
//   magic "PSP1", version u32, n u64, k u64, b u64,
//   permutation (n x u64, original id -> reordered id),
//   assignment (n x u64, reordered id -> component),
//   boundary flags (n bits, LSB-first),
//   component offsets ((k+1) x u64, reordered vertex ranges),
//   component tables then boundary tables (row-major f64, +inf unreachable),
//   CRC-64 of all preceding bytes.
// Placement is runtime state and is not stored, so files are byte-identical
// across worker counts.
inline constexpr std::uint32_t kOracleFormatVersion = 1;

void write_oracle(std::ostream& out, const Oracle& o);

// `name` labels error messages, typically the file path.
// Throws IoError (truncation, trailing bytes, inconsistent sizes),
// FormatVersionError, or ChecksumError.
Oracle read_oracle(std::istream& in, const std::string& name);

void save_oracle(const Oracle& o, const std::string& path);
Oracle load_oracle(const std::string& path);

// In-memory image identical to the file contents; used for byte-level
// determinism checks.
std::string serialize_oracle(const Oracle& o);

}  // namespace psp
