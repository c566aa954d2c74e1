#pragma once

// CSV export of a hybrid arc: vertices.csv, edges.csv, dimension.csv and
// jumps.csv.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "graphstate/hybrid.hpp"

namespace gss {

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExportOptions {
  /// Keep every stride-th sample of a segment plus its last one.
  std::size_t stride = 1;
};

/// Shortest form that reads back exactly, at most 17 significant digits.
std::string format_real(double v);

/// Creates `dir` if needed. Output is byte-identical for identical arcs.
void export_trajectory(const HybridArc& arc, const std::filesystem::path& dir,
                       const ExportOptions& opts = {});

}  // namespace gss
