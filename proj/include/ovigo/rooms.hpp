#pragma once

#include <string>
#include <vector>

#include "ovigo/chat.hpp"
#include "ovigo/config.hpp"
#include "ovigo/floors.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

// One untagged room carved out of a floor: its BEV mask, the floor points
// whose (x, y) cell falls inside the mask, and their bounds.
struct RoomSegment {
  BinaryMask mask;
  PointCloud cloud;
  Box3D bbox;
};

struct RoomSegmentation {
  BevImage bev;          // the floor's BEV frame, reused by later stages
  BinaryMask wall_mask;  // values > delta_wall
  std::vector<RoomSegment> rooms;
};

// BEV -> wall mask -> EDF -> Otsu region seeds -> watershed. Watershed
// regions smaller than min_area_m2 or containing no floor points are
// discarded as artifacts.
RoomSegmentation segment_rooms(const FloorSlab& floor, const PipelineConfig& config);

// Asks the chat client for a room type from the room's object and location
// tags. Empty contents short-circuit to "unknown room" without a call; a
// failing client also falls back to "unknown room" (with a warning on
// stderr). The response is whitespace-trimmed.
std::string assign_room_tag(const std::vector<std::string>& contents, ChatClient* llm);

}  // namespace ovigo
