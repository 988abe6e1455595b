#include "ovigo/rooms.hpp"

#include <iostream>

#include "ovigo/geometry.hpp"
#include "ovigo/prompts.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

RoomSegmentation segment_rooms(const FloorSlab& floor, const PipelineConfig& config) {
  if (floor.cloud.empty()) {
    throw Error(Errc::EmptyInput, "room segmentation on empty floor cloud");
  }
  RoomSegmentation out;
  out.bev = project_bev(floor.cloud, config.bev.meters_per_pixel);

  out.wall_mask.frame = out.bev.frame;
  out.wall_mask.values.assign(out.bev.frame.cells(), 0);
  for (std::size_t i = 0; i < out.bev.values.size(); ++i) {
    out.wall_mask.values[i] = out.bev.values[i] > config.rooms.delta_wall ? 1 : 0;
  }
  if (out.wall_mask.count() == 0) {
    throw Error(Errc::NoWalls, floor.tag + ": no BEV cells above delta_wall");
  }

  const DistanceField edf = euclidean_distance_field(out.wall_mask);
  const BinaryMask seed_mask = otsu_threshold(edf);
  LabelGrid seeds = connected_components(seed_mask, 8);

  // Drop sub-pixel seed specks, keep labels compact.
  std::vector<int64_t> seed_sizes(static_cast<std::size_t>(seeds.max_label) + 1, 0);
  for (int32_t label : seeds.labels) {
    if (label > 0) ++seed_sizes[static_cast<std::size_t>(label)];
  }
  std::vector<int32_t> remap(seed_sizes.size(), 0);
  int32_t kept_seeds = 0;
  for (int32_t label = 1; label <= seeds.max_label; ++label) {
    if (seed_sizes[static_cast<std::size_t>(label)] >= config.rooms.min_seed_pixels) {
      remap[static_cast<std::size_t>(label)] = ++kept_seeds;
    }
  }
  for (int32_t& label : seeds.labels) {
    label = label > 0 ? remap[static_cast<std::size_t>(label)] : 0;
  }
  seeds.max_label = kept_seeds;
  if (kept_seeds == 0) {
    throw Error(Errc::NoSeeds, floor.tag + ": Otsu produced no usable region seeds");
  }

  const LabelGrid regions = watershed(edf, seeds, out.wall_mask);

  // One room per region; points map by (x, y) cell, wall cells stay unassigned.
  std::vector<RoomSegment> rooms(static_cast<std::size_t>(regions.max_label));
  for (RoomSegment& room : rooms) {
    room.mask.frame = out.bev.frame;
    room.mask.values.assign(out.bev.frame.cells(), 0);
  }
  for (std::size_t i = 0; i < regions.labels.size(); ++i) {
    if (regions.labels[i] > 0) {
      rooms[static_cast<std::size_t>(regions.labels[i] - 1)].mask.values[i] = 1;
    }
  }
  const bool with_ids = floor.cloud.has_object_ids();
  for (std::size_t i = 0; i < floor.cloud.points.size(); ++i) {
    const Vec3& p = floor.cloud.points[i];
    int ix = 0, iy = 0;
    if (!frame_cell(out.bev.frame, p.x, p.y, &ix, &iy)) continue;
    const int32_t label = regions.at(ix, iy);
    if (label <= 0) continue;
    RoomSegment& room = rooms[static_cast<std::size_t>(label - 1)];
    if (with_ids) room.cloud.append(p, floor.cloud.object_ids[i]);
    else room.cloud.append(p);
    room.bbox.extend(p);
  }

  const double cell_area =
      config.bev.meters_per_pixel * config.bev.meters_per_pixel;
  std::vector<RoomSegment> kept;
  for (RoomSegment& room : rooms) {
    const double area = static_cast<double>(room.mask.count()) * cell_area;
    if (area < config.rooms.min_area_m2 || room.cloud.empty()) {
      std::cerr << "[rooms] " << floor.tag << ": dropping region (area " << area
                << " m2, " << room.cloud.size() << " points)\n";
      continue;
    }
    kept.push_back(std::move(room));
  }
  out.rooms = std::move(kept);
  return out;
}

std::string assign_room_tag(const std::vector<std::string>& contents, ChatClient* llm) {
  if (contents.empty()) return "unknown room";
  if (llm == nullptr) return "unknown room";
  try {
    const std::string raw = llm->send(prompts::room_tag_request(contents));
    const std::string tag = trim(raw);
    return tag.empty() ? "unknown room" : tag;
  } catch (const Error& e) {
    std::cerr << "[rooms] tagging failed, falling back to \"unknown room\": " << e.what()
              << "\n";
    return "unknown room";
  }
}

}  // namespace ovigo
