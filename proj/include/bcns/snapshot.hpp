#pragma once

#include <filesystem>
#include <iosfwd>

#include "bcns/spectral_field.hpp"

namespace bcns {

/// On-disk spectral snapshot.
///
/// Layout: one ASCII header line `BCNS1 d N rank t\n` (rank 0 = scalar,
/// 1 = vector; t printed with round-trip precision), followed by the
/// coefficients as little-endian IEEE-754 doubles (re, im), components
/// outermost, modes in Grid lattice order.
struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

void write_snapshot(std::ostream& os, const SpectralField& field, double time);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time);

/// Throws std::runtime_error on a malformed header or truncated payload.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace bcns
