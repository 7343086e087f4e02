#include "semmap/map_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semmap/version.hpp"

namespace semmap {

namespace {

using nlohmann::json;

constexpr unsigned char kOccupiedByte = 0;
constexpr unsigned char kFreeByte = 254;
constexpr unsigned char kUnknownByte = 205;

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

unsigned char cell_byte(CellState s) {
  switch (s) {
    case CellState::occupied: return kOccupiedByte;
    case CellState::free: return kFreeByte;
    case CellState::unknown: return kUnknownByte;
  }
  return kUnknownByte;
}

CellState byte_cell(unsigned char b, const std::string& path) {
  switch (b) {
    case kOccupiedByte: return CellState::occupied;
    case kFreeByte: return CellState::free;
    case kUnknownByte: return CellState::unknown;
  }
  throw ConfigError(path + ": unknown cell byte " + std::to_string(b));
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

json pose_json(const Pose2D& p) { return json::array({p.x, p.y, p.theta}); }

Pose2D pose_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("pose must be a 3-element array");
  return Pose2D{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::pair<int, int> OccupancyGrid::cell_of(double x, double y) const {
  const Eigen::Vector2d local = apply(inverse(origin), {x, y});
  return {static_cast<int>(std::floor(local.x() / resolution)),
          static_cast<int>(std::floor(local.y() / resolution))};
}

std::pair<double, double> OccupancyGrid::world_of(int col, int row) const {
  const Eigen::Vector2d w =
      apply(origin, {(col + 0.5) * resolution, (row + 0.5) * resolution});
  return {w.x(), w.y()};
}

OccupancyGrid OccupancyGrid::filled(double resolution, const Pose2D& origin,
                                    int width, int height, CellState fill) {
  OccupancyGrid g;
  g.resolution = resolution;
  g.origin = origin;
  g.width = width;
  g.height = height;
  g.cells.assign(static_cast<std::size_t>(width) * height, fill);
  return g;
}

void save_grid(const OccupancyGrid& grid, const std::string& path) {
  auto out = open_out(path, true);
  out << "P5\n" << grid.width << " " << grid.height << "\n255\n";
  // Image rows run top to bottom; grid rows run along +y.
  std::vector<unsigned char> line(grid.width);
  for (int row = grid.height - 1; row >= 0; --row) {
    for (int col = 0; col < grid.width; ++col)
      line[col] = cell_byte(grid.at(col, row));
    out.write(reinterpret_cast<const char*>(line.data()), line.size());
  }

  auto meta = open_out(path + ".meta", false);
  meta << "resolution " << format_double(grid.resolution) << "\n"
       << "origin_x " << format_double(grid.origin.x) << "\n"
       << "origin_y " << format_double(grid.origin.y) << "\n"
       << "origin_theta " << format_double(grid.origin.theta) << "\n";
}

OccupancyGrid load_grid(const std::string& path) {
  auto in = open_in(path, true);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (!in || magic != "P5" || maxval != 255 || width <= 0 || height <= 0)
    throw ConfigError(path + ": malformed PGM header");
  in.get();  // single whitespace after maxval

  OccupancyGrid grid;
  grid.width = width;
  grid.height = height;
  grid.cells.resize(static_cast<std::size_t>(width) * height);
  std::vector<unsigned char> payload(grid.cells.size());
  in.read(reinterpret_cast<char*>(payload.data()), payload.size());
  if (in.gcount() != static_cast<std::streamsize>(payload.size()))
    throw ConfigError(path + ": truncated payload");
  for (int row = 0; row < height; ++row)
    for (int col = 0; col < width; ++col)
      grid.at(col, row) =
          byte_cell(payload[(height - 1 - row) * width + col], path);

  auto meta = open_in(path + ".meta", false);
  bool have_res = false, have_x = false, have_y = false, have_theta = false;
  std::string key;
  double value = 0.0;
  while (meta >> key >> value) {
    if (key == "resolution") { grid.resolution = value; have_res = true; }
    else if (key == "origin_x") { grid.origin.x = value; have_x = true; }
    else if (key == "origin_y") { grid.origin.y = value; have_y = true; }
    else if (key == "origin_theta") { grid.origin.theta = value; have_theta = true; }
    else throw ConfigError(path + ".meta: unknown key " + key);
  }
  if (!(have_res && have_x && have_y && have_theta))
    throw ConfigError(path + ".meta: missing required keys");
  if (grid.resolution <= 0.0)
    throw ConfigError(path + ".meta: resolution must be positive");
  return grid;
}

std::vector<GroundTruthAnnotation> load_annotations(const std::string& path) {
  auto in = open_in(path, false);
  std::vector<GroundTruthAnnotation> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string cls;
    double x = 0, y = 0, theta = 0;
    std::string extra;
    if (!(ss >> cls >> x >> y >> theta) || (ss >> extra))
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'class x y theta'");
    const auto label = class_from_name(cls);
    if (!label || *label == ClassLabel::person)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": unknown class '" + cls + "'");
    out.push_back({*label, Pose2D::make(x, y, theta)});
  }
  return out;
}

void save_annotations(const std::vector<GroundTruthAnnotation>& annotations,
                      const std::string& path) {
  auto out = open_out(path, false);
  for (const auto& a : annotations)
    out << class_name(a.class_label) << " " << format_double(a.pose.x) << " "
        << format_double(a.pose.y) << " " << format_double(a.pose.theta)
        << "\n";
}

void save_augmented(const AugmentedMap& map, const std::string& path) {
  auto out = open_out(path, false);
  json header = {{"count", map.instances.size()},
                 {"grid", map.grid_path},
                 {"type", "augmented_map"},
                 {"version", kEngineVersion}};
  out << header.dump() << "\n";
  for (const auto& inst : map.instances) {
    const Eigen::Matrix3d& S = inst.covariance;
    if (!std::isfinite(inst.state.x) || !std::isfinite(inst.state.y) ||
        !std::isfinite(inst.state.theta) || !S.allFinite())
      throw DataError("save_augmented: non-finite instance state");
    json rec = {{"anchor_node", inst.anchor_node},
                {"class", class_name(inst.class_label)},
                {"covariance",
                 {S(0, 0), S(0, 1), S(0, 2), S(1, 1), S(1, 2), S(2, 2)}},
                {"id", inst.id},
                {"last_seen", inst.last_seen},
                {"observation_count", inst.observation_count},
                {"offset", pose_json(inst.offset_from_anchor)},
                {"pose", pose_json(inst.state)},
                {"type", "instance"}};
    out << rec.dump() << "\n";
  }
}

AugmentedMap load_augmented(const std::string& path) {
  auto in = open_in(path, false);
  AugmentedMap map;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (line_no == 1) {
        if (type != "augmented_map")
          throw ConfigError(path + ": missing augmented_map header");
        map.grid_path = j.at("grid").get<std::string>();
        continue;
      }
      if (type != "instance")
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": unexpected record type " + type);
      TrackedInstance inst;
      inst.id = j.at("id").get<std::int64_t>();
      const auto label = class_from_name(j.at("class").get<std::string>());
      if (!label)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": unknown class");
      inst.class_label = *label;
      inst.state = pose_from_json(j.at("pose"));
      inst.offset_from_anchor = pose_from_json(j.at("offset"));
      const auto& cov = j.at("covariance");
      if (!cov.is_array() || cov.size() != 6)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": covariance must have 6 entries");
      const double xx = cov[0], xy = cov[1], xt = cov[2], yy = cov[3],
                   yt = cov[4], tt = cov[5];
      if (xx < 0.0 || yy < 0.0 || tt < 0.0)
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": covariance diagonal must be non-negative");
      inst.covariance << xx, xy, xt, xy, yy, yt, xt, yt, tt;
      inst.observation_count = j.at("observation_count").get<int>();
      inst.last_seen = j.at("last_seen").get<double>();
      inst.anchor_node = j.at("anchor_node").get<std::int64_t>();
      map.instances.push_back(std::move(inst));
    } catch (const json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (map.grid_path.empty() && map.instances.empty() && line_no == 0)
    throw ConfigError(path + ": empty augmented map file");
  return map;
}

namespace {

struct Rgb {
  unsigned char r, g, b;
};

Rgb class_color(ClassLabel label) {
  switch (label) {
    case ClassLabel::door: return {0, 255, 0};
    case ClassLabel::fire_extinguisher: return {255, 0, 0};
    case ClassLabel::trash_bin: return {255, 255, 0};
    case ClassLabel::water_fountain: return {0, 255, 255};
    case ClassLabel::bench: return {0, 0, 139};
    case ClassLabel::person: return {255, 0, 255};
  }
  return {255, 0, 255};
}

}  // namespace

int render(const OccupancyGrid& grid, const AugmentedMap& map,
           const std::string& path) {
  if (grid.width <= 0 || grid.height <= 0)
    throw DataError("render: empty grid");

  std::vector<Rgb> image(static_cast<std::size_t>(grid.width) * grid.height);
  for (int row = 0; row < grid.height; ++row)
    for (int col = 0; col < grid.width; ++col) {
      Rgb px{205, 205, 205};
      switch (grid.at(col, row)) {
        case CellState::free: px = {255, 255, 255}; break;
        case CellState::occupied: px = {0, 0, 0}; break;
        case CellState::unknown: break;
      }
      image[row * grid.width + col] = px;
    }

  auto paint = [&](int col, int row, Rgb color) {
    if (grid.in_bounds(col, row)) image[row * grid.width + col] = color;
  };

  int clamped = 0;
  for (const auto& inst : map.instances) {
    auto [col, row] = grid.cell_of(inst.state.x, inst.state.y);
    if (!grid.in_bounds(col, row)) {
      ++clamped;
      col = std::clamp(col, 0, grid.width - 1);
      row = std::clamp(row, 0, grid.height - 1);
    }
    const Rgb color = class_color(inst.class_label);
    for (int dr = -2; dr <= 2; ++dr)
      for (int dc = -2; dc <= 2; ++dc) paint(col + dc, row + dr, color);
    for (int k = 0; k < 7; ++k)
      paint(col + static_cast<int>(std::lround(k * std::cos(inst.state.theta))),
            row + static_cast<int>(std::lround(k * std::sin(inst.state.theta))),
            color);
  }

  auto out = open_out(path, true);
  out << "P6\n" << grid.width << " " << grid.height << "\n255\n";
  std::vector<unsigned char> line(static_cast<std::size_t>(grid.width) * 3);
  for (int row = grid.height - 1; row >= 0; --row) {
    for (int col = 0; col < grid.width; ++col) {
      const Rgb& px = image[row * grid.width + col];
      line[col * 3] = px.r;
      line[col * 3 + 1] = px.g;
      line[col * 3 + 2] = px.b;
    }
    out.write(reinterpret_cast<const char*>(line.data()), line.size());
  }
  return clamped;
}

}  // namespace semmap
