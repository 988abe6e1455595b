#include <fstream>
#include <sstream>

#include "ovigo/io.hpp"
#include "ovigo/json_util.hpp"

namespace ovigo {

Json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

Json parse_json_text(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError,
                context + ": " + e.what() + " (byte offset " + std::to_string(e.byte) + ")");
  }
}

const Json& require_field(const Json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(Errc::ParseError, context + ": missing field \"" + key + "\"");
  }
  return *it;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::array<double, 16> parse_pose(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 16) {
    throw Error(Errc::ParseError, context + ": pose must be 16 row-major numbers");
  }
  std::array<double, 16> pose{};
  for (std::size_t i = 0; i < 16; ++i) pose[i] = j[i].get<double>();
  if (pose[12] != 0.0 || pose[13] != 0.0 || pose[14] != 0.0 || pose[15] != 1.0) {
    throw Error(Errc::ParseError, context + ": pose bottom row must be (0,0,0,1)");
  }
  return pose;
}

Intrinsics parse_intrinsics(const Json& j, const std::string& context) {
  Intrinsics k;
  k.fx = require_field(j, "fx", context).get<double>();
  k.fy = require_field(j, "fy", context).get<double>();
  k.cx = require_field(j, "cx", context).get<double>();
  k.cy = require_field(j, "cy", context).get<double>();
  if (!(k.fx > 0.0) || !(k.fy > 0.0)) {
    throw Error(Errc::ParseError, context + ": fx and fy must be positive");
  }
  return k;
}

Json intrinsics_json(const Intrinsics& k) {
  return Json{{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}};
}

GridFrame parse_grid_frame(const Json& j, const std::string& context) {
  GridFrame frame;
  frame.height = require_field(j, "h", context).get<int>();
  frame.width = require_field(j, "w", context).get<int>();
  frame.meters_per_pixel = require_field(j, "meters_per_pixel", context).get<double>();
  const Json& origin = require_field(j, "origin_xy", context);
  if (!origin.is_array() || origin.size() != 2) {
    throw Error(Errc::ParseError, context + ": origin_xy must be [x, y]");
  }
  frame.origin_x = origin[0].get<double>();
  frame.origin_y = origin[1].get<double>();
  if (frame.height <= 0 || frame.width <= 0 || !(frame.meters_per_pixel > 0.0)) {
    throw Error(Errc::ParseError, context + ": invalid frame dimensions");
  }
  return frame;
}

Json grid_frame_json(const GridFrame& frame) {
  return Json{{"h", frame.height},
              {"w", frame.width},
              {"meters_per_pixel", frame.meters_per_pixel},
              {"origin_xy", Json::array({frame.origin_x, frame.origin_y})}};
}

}  // namespace

FrameDetections read_frame_detections(const std::filesystem::path& path) {
  const Json j = parse_json_file(path);
  const std::string ctx = path.string();
  FrameDetections frame;
  frame.frame_id = require_field(j, "frame_id", ctx).get<int>();
  frame.width = require_field(j, "width", ctx).get<int>();
  frame.height = require_field(j, "height", ctx).get<int>();
  frame.intrinsics = parse_intrinsics(require_field(j, "intrinsics", ctx), ctx);
  frame.pose = parse_pose(require_field(j, "pose", ctx), ctx);
  frame.depth_scale = require_field(j, "depth_scale", ctx).get<double>();
  if (!(frame.depth_scale > 0.0)) {
    throw Error(Errc::ParseError, ctx + ": depth_scale must be positive");
  }
  const std::size_t cells =
      static_cast<std::size_t>(frame.width) * static_cast<std::size_t>(frame.height);
  for (const Json& dj : require_field(j, "detections", ctx)) {
    Detection det;
    det.tag = require_field(dj, "tag", ctx).get<std::string>();
    det.score = require_field(dj, "score", ctx).get<double>();
    const Json& box = require_field(dj, "box2d", ctx);
    if (!box.is_array() || box.size() != 4) {
      throw Error(Errc::ParseError, ctx + ": box2d must be [x, y, w, h]");
    }
    for (std::size_t i = 0; i < 4; ++i) det.box2d[i] = box[i].get<double>();
    det.mask_rle = require_field(dj, "mask", ctx).get<std::vector<int64_t>>();
    // Validate the RLE now and check the mask stays inside its box.
    const std::vector<uint8_t> bits = rle_decode(det.mask_rle, cells);
    for (std::size_t p = 0; p < bits.size(); ++p) {
      if (!bits[p]) continue;
      const double u = static_cast<double>(p % static_cast<std::size_t>(frame.width));
      const double v = static_cast<double>(p / static_cast<std::size_t>(frame.width));
      if (u < det.box2d[0] || u >= det.box2d[0] + det.box2d[2] || v < det.box2d[1] ||
          v >= det.box2d[1] + det.box2d[3]) {
        throw Error(Errc::ParseError,
                    ctx + ": mask pixel outside box2d for tag \"" + det.tag + "\"");
      }
    }
    frame.detections.push_back(std::move(det));
  }
  return frame;
}

void write_frame_detections(const FrameDetections& frame,
                            const std::filesystem::path& path) {
  Json dets = Json::array();
  for (const Detection& det : frame.detections) {
    dets.push_back(Json{{"tag", det.tag},
                        {"score", det.score},
                        {"box2d", det.box2d},
                        {"mask", det.mask_rle}});
  }
  const Json j{{"frame_id", frame.frame_id},
               {"width", frame.width},
               {"height", frame.height},
               {"intrinsics", intrinsics_json(frame.intrinsics)},
               {"pose", frame.pose},
               {"depth_scale", frame.depth_scale},
               {"detections", dets}};
  write_text_file(path, j.dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& path) {
  const Json j = parse_json_file(path);
  const std::string ctx = path.string();
  Manifest manifest;
  if (j.contains("cloud_path") && !j["cloud_path"].is_null()) {
    manifest.cloud_path = j["cloud_path"].get<std::string>();
  }
  if (j.contains("frames")) {
    for (const Json& fj : j["frames"]) {
      FrameRecord rec;
      rec.frame_id = require_field(fj, "frame_id", ctx).get<int>();
      if (fj.contains("rgb_path") && !fj["rgb_path"].is_null()) {
        rec.rgb_path = fj["rgb_path"].get<std::string>();
      }
      rec.depth_path = require_field(fj, "depth_path", ctx).get<std::string>();
      rec.detections_path = require_field(fj, "detections_path", ctx).get<std::string>();
      rec.pose = parse_pose(require_field(fj, "pose", ctx), ctx);
      rec.intrinsics = parse_intrinsics(require_field(fj, "intrinsics", ctx), ctx);
      rec.depth_scale = require_field(fj, "depth_scale", ctx).get<double>();
      manifest.frames.push_back(std::move(rec));
    }
  }
  if (manifest.cloud_path.empty() && manifest.frames.empty()) {
    throw Error(Errc::ParseError, ctx + ": manifest needs frames or a cloud_path");
  }
  return manifest;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  Json frames = Json::array();
  for (const FrameRecord& rec : manifest.frames) {
    Json fj{{"frame_id", rec.frame_id},
            {"depth_path", rec.depth_path},
            {"detections_path", rec.detections_path},
            {"pose", rec.pose},
            {"intrinsics", intrinsics_json(rec.intrinsics)},
            {"depth_scale", rec.depth_scale}};
    if (!rec.rgb_path.empty()) fj["rgb_path"] = rec.rgb_path;
    frames.push_back(std::move(fj));
  }
  Json j;
  if (!manifest.cloud_path.empty()) j["cloud_path"] = manifest.cloud_path;
  j["frames"] = frames;
  write_text_file(path, j.dump(2) + "\n");
}

LocationMaskFile read_location_masks(const std::filesystem::path& path) {
  const Json j = parse_json_file(path);
  const std::string ctx = path.string();
  LocationMaskFile file;
  file.floor = require_field(j, "floor", ctx).get<int>();
  file.frame = parse_grid_frame(require_field(j, "frame", ctx), ctx);
  for (const Json& mj : require_field(j, "masks", ctx)) {
    BinaryMask mask;
    mask.frame = file.frame;
    mask.values = rle_decode(mj.get<std::vector<int64_t>>(), file.frame.cells());
    file.masks.push_back(std::move(mask));
  }
  return file;
}

void write_location_masks(const LocationMaskFile& file,
                          const std::filesystem::path& path) {
  Json masks = Json::array();
  for (const BinaryMask& mask : file.masks) {
    masks.push_back(rle_encode(mask.values));
  }
  const Json j{{"floor", file.floor},
               {"frame", grid_frame_json(file.frame)},
               {"masks", masks}};
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace ovigo
