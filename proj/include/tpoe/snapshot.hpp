// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>

#include "tpoe/field.hpp"

namespace tpoe {

/// Binary field snapshot, format version 1 (see docs/snapshot_format.md).
///
///   offset  size  content
///   0       8     magic "TPOESNAP"
///   8       4     uint32 format version (1)
///   12      4     uint32 n
///   16      8     float64 L
///   24      4     uint32 N
///   28      8     float64 T
///   36      4     uint32 Nt
///   40      4     uint32 components
///   44      8*K   float64 samples, component-major, then t, x1, ..., xn
///
/// All integers and floats are little-endian. No timestamps are embedded.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void save_snapshot(const SpaceTimeField& field, const std::filesystem::path& path);
SpaceTimeField load_snapshot(const std::filesystem::path& path);

}  // namespace tpoe
