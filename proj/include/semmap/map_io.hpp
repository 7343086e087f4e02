#pragma once

#include <string>
#include <vector>

#include "semmap/classes.hpp"
#include "semmap/geometry.hpp"
#include "semmap/tracker.hpp"

namespace semmap {

enum class CellState : unsigned char { free, occupied, unknown };

// Trinary 2D metric map. Cell (0, 0) sits at the grid origin pose; cells
// are stored row-major with the row index increasing along +y.
struct OccupancyGrid {
  double resolution = 0.05;
  Pose2D origin;
  int width = 0;
  int height = 0;
  std::vector<CellState> cells;

  CellState& at(int col, int row) { return cells[row * width + col]; }
  CellState at(int col, int row) const { return cells[row * width + col]; }
  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width && row >= 0 && row < height;
  }

  // World <-> cell conversions; world_of returns the cell center.
  std::pair<int, int> cell_of(double x, double y) const;
  std::pair<double, double> world_of(int col, int row) const;

  static OccupancyGrid filled(double resolution, const Pose2D& origin,
                              int width, int height, CellState fill);
};

struct GroundTruthAnnotation {
  ClassLabel class_label = ClassLabel::door;
  Pose2D pose;
};

// Tracker output bound to the grid it augments (by path).
struct AugmentedMap {
  std::string grid_path;
  std::vector<TrackedInstance> instances;
};

// Grid persistence: binary P5 PGM (payload 0 = occupied, 254 = free,
// 205 = unknown) plus a "<path>.meta" sidecar carrying resolution and
// origin. Round trips are byte-identical.
void save_grid(const OccupancyGrid& grid, const std::string& path);
OccupancyGrid load_grid(const std::string& path);

// Plain text, one "class x y theta" record per line.
std::vector<GroundTruthAnnotation> load_annotations(const std::string& path);
void save_annotations(const std::vector<GroundTruthAnnotation>& annotations,
                      const std::string& path);

// Line-delimited JSON: one header record, then one record per instance.
void save_augmented(const AugmentedMap& map, const std::string& path);
AugmentedMap load_augmented(const std::string& path);

// Rasterized overlay (binary P6 PPM): grayscale grid plus a 5x5-cell
// class-colored square and 7-cell orientation tick per instance.
// Returns the number of instances clamped to the border because they
// fell outside the grid.
int render(const OccupancyGrid& grid, const AugmentedMap& map,
           const std::string& path);

}  // namespace semmap
