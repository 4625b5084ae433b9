// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_SNAPSHOT_HPP
#define MAXMAJ_SNAPSHOT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "maxmaj/solver.hpp"

namespace maxmaj
{

/**
 * Field snapshot archive:
 *
 *   bytes 0..7   magic "MAXMAJ01"
 *   uint32 LE    format version
 *   uint32 LE    header length in bytes
 *   header       UTF-8 JSON: grid, field list (name, kind, node count, per-component
 *                extents, byte offset into the data block) and free-form metadata
 *   data         little-endian float64 values; for each field, node by node, components
 *                x, y, z in turn, each in k-fastest order
 *
 * Fields that are absent (for example Ht of a pure E approximation) are omitted.
 */
inline constexpr char kSnapshotMagic[9] = "MAXMAJ01";
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot
{
  GridSpec grid;
  SolveOutput fields;
  nlohmann::json meta = nlohmann::json::object();
};

void WriteSnapshot(const std::string &path, const Snapshot &snap);
// Throws DataMismatchError for unreadable, truncated or inconsistent archives.
Snapshot ReadSnapshot(const std::string &path);

}  // namespace maxmaj

#endif  // MAXMAJ_SNAPSHOT_HPP
