#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "lcflow/errors.hpp"
#include "lcflow/field.hpp"

namespace lcflow {

// Snapshot files: `<stem>.bin` holds the raw samples as little-endian float64,
// component-major, x fastest within a component; `<stem>.json` records
// {"name", "n", "L", "components", "t"}.

struct SnapshotMeta {
  std::string name;
  int n = 0;
  double length = 0.0;
  int components = 0;
  double t = 0.0;

  bool operator==(const SnapshotMeta&) const = default;
};

struct RawSnapshot {
  SnapshotMeta meta;
  std::vector<double> values;
};

void write_snapshot(const std::filesystem::path& stem, const SnapshotMeta& meta,
                    std::span<const double> values);
RawSnapshot read_snapshot(const std::filesystem::path& stem);

template <int C>
void write_snapshot(const std::filesystem::path& stem, const Field<C>& f, const std::string& name,
                    double t) {
  write_snapshot(stem, SnapshotMeta{name, f.grid().n(), f.grid().length(), C, t}, f.values());
}

/// Throws IoError if the stored component count differs from C.
template <int C>
Field<C> read_field(const std::filesystem::path& stem, SnapshotMeta* meta_out = nullptr) {
  RawSnapshot raw = read_snapshot(stem);
  if (raw.meta.components != C) {
    throw IoError("snapshot " + stem.string() + " has " + std::to_string(raw.meta.components) +
                  " components, expected " + std::to_string(C));
  }
  Field<C> f(Grid(raw.meta.n, raw.meta.length));
  std::copy(raw.values.begin(), raw.values.end(), f.values().begin());
  if (meta_out != nullptr) *meta_out = raw.meta;
  return f;
}

}  // namespace lcflow
