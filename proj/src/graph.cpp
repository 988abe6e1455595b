#include "ovigo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "ovigo/geometry.hpp"
#include "ovigo/io.hpp"

namespace ovigo {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Building: return "building";
    case NodeKind::Floor: return "floor";
    case NodeKind::Room: return "room";
    case NodeKind::Location: return "location";
    case NodeKind::Object: return "object";
  }
  return "?";
}

const FloorNode* SceneGraph::find_floor(int id) const {
  for (const FloorNode& n : floors) {
    if (n.id == id) return &n;
  }
  return nullptr;
}
const RoomNode* SceneGraph::find_room(int id) const {
  for (const RoomNode& n : rooms) {
    if (n.id == id) return &n;
  }
  return nullptr;
}
const LocationNode* SceneGraph::find_location(int id) const {
  for (const LocationNode& n : locations) {
    if (n.id == id) return &n;
  }
  return nullptr;
}
const ObjectNode* SceneGraph::find_object(int id) const {
  for (const ObjectNode& n : objects) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<int> SceneGraph::objects_of_room(int room_id) const {
  std::vector<int> out;
  for (const ObjectNode& n : objects) {
    if (n.room_id == room_id) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Fraction of the object's points landing in the room (z within the floor
// slab, (x, y) cell inside the room mask).
double room_point_share(const ObjectNode& object, const RoomNode& room,
                        const FloorNode& floor) {
  std::size_t hits = 0;
  for (const Vec3& p : object.cloud.points) {
    if (p.z < floor.z_low || p.z > floor.z_high) continue;
    int ix = 0, iy = 0;
    if (!frame_cell(room.mask.frame, p.x, p.y, &ix, &iy)) continue;
    if (room.mask.at(ix, iy)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(object.cloud.size());
}

double location_point_share(const ObjectNode& object, const LocationNode& loc,
                            const FloorNode& floor) {
  std::size_t hits = 0;
  for (const Vec3& p : object.cloud.points) {
    if (p.z < floor.z_low || p.z > floor.z_high) continue;
    if (loc.polygon.contains(p.x, p.y)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(object.cloud.size());
}

// Share of the location's polygon area covered by the room mask, measured on
// the room's own grid.
double polygon_room_share(const LocationNode& loc, const RoomNode& room) {
  const BinaryMask raster = rasterize_polygon(loc.polygon, room.mask.frame);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < raster.values.size(); ++i) {
    if (!raster.values[i]) continue;
    ++total;
    if (room.mask.values[i]) ++hits;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

SceneGraph build_graph(std::vector<FloorNode> floors, std::vector<RoomNode> rooms,
                       std::vector<LocationNode> locations,
                       std::vector<ObjectNode> objects) {
  if (floors.empty()) throw Error(Errc::EmptyHierarchy, "graph without floors");
  SceneGraph g;
  g.floors = std::move(floors);
  g.rooms = std::move(rooms);
  g.locations = std::move(locations);
  g.objects = std::move(objects);

  for (const RoomNode& room : g.rooms) {
    if (g.find_floor(room.floor_id) == nullptr) {
      throw Error(Errc::EmptyHierarchy,
                  "room " + std::to_string(room.id) + " references missing floor " +
                      std::to_string(room.floor_id));
    }
  }

  // Location -> room by polygon-area share within the location's floor.
  for (LocationNode& loc : g.locations) {
    double best = 0.0;
    int best_room = -1;
    for (const RoomNode& room : g.rooms) {
      if (room.floor_id != loc.floor_id) continue;
      const double share = polygon_room_share(loc, room);
      if (share > best) {
        best = share;
        best_room = room.id;
      }
    }
    loc.room_id = best_room;
  }
  // Drop locations that land in no room at all.
  std::erase_if(g.locations, [](const LocationNode& loc) {
    if (loc.room_id < 0) {
      std::cerr << "[graph] location " << loc.id << " overlaps no room, dropped\n";
      return true;
    }
    return false;
  });

  // Object -> room by contained point fraction; fall back to the nearest
  // room center when nothing overlaps.
  for (ObjectNode& object : g.objects) {
    double best = 0.0;
    int best_room = -1;
    for (const RoomNode& room : g.rooms) {
      const FloorNode* floor = g.find_floor(room.floor_id);
      const double share = room_point_share(object, room, *floor);
      if (share > best) {
        best = share;
        best_room = room.id;
      }
    }
    if (best_room < 0) {
      double best_dist = std::numeric_limits<double>::infinity();
      for (const RoomNode& room : g.rooms) {
        const Vec3 d = object.bbox.center() - room.bbox.center();
        const double dist = d.norm();
        if (dist < best_dist) {
          best_dist = dist;
          best_room = room.id;
        }
      }
      std::cerr << "[graph] object " << object.id << " (" << object.primary_tag
                << ") overlaps no room; attached to nearest room " << best_room << "\n";
    }
    object.room_id = best_room;

    // Object -> location: >= 50% of points inside the polygon, same floor.
    const RoomNode* room = g.find_room(object.room_id);
    const FloorNode* floor = room ? g.find_floor(room->floor_id) : nullptr;
    object.location_id = -1;
    double best_loc_share = 0.0;
    if (floor != nullptr) {
      for (const LocationNode& loc : g.locations) {
        if (loc.floor_id != floor->id) continue;
        const double share = location_point_share(object, loc, *floor);
        if (share >= 0.5 && share > best_loc_share) {
          best_loc_share = share;
          object.location_id = loc.id;
        }
      }
    }
  }

  for (const FloorNode& floor : g.floors) {
    g.edges.push_back({NodeKind::Building, 0, NodeKind::Floor, floor.id});
  }
  for (const RoomNode& room : g.rooms) {
    g.edges.push_back({NodeKind::Floor, room.floor_id, NodeKind::Room, room.id});
  }
  for (const LocationNode& loc : g.locations) {
    g.edges.push_back({NodeKind::Room, loc.room_id, NodeKind::Location, loc.id});
  }
  for (const ObjectNode& object : g.objects) {
    g.edges.push_back({NodeKind::Room, object.room_id, NodeKind::Object, object.id});
    if (object.location_id >= 0) {
      g.edges.push_back({NodeKind::Location, object.location_id, NodeKind::Object, object.id});
    }
  }
  return g;
}

// --- serialization ----------------------------------------------------------

Json box_json(const Box3D& box) {
  return Json{{"min", Json::array({box.min.x, box.min.y, box.min.z})},
              {"max", Json::array({box.max.x, box.max.y, box.max.z})}};
}

Box3D box_from_json(const Json& j, const std::string& context) {
  const Json& mn = require_field(j, "min", context);
  const Json& mx = require_field(j, "max", context);
  if (!mn.is_array() || mn.size() != 3 || !mx.is_array() || mx.size() != 3) {
    throw Error(Errc::ParseError, context + ": box min/max must be [x, y, z]");
  }
  Box3D box;
  box.min = {mn[0].get<double>(), mn[1].get<double>(), mn[2].get<double>()};
  box.max = {mx[0].get<double>(), mx[1].get<double>(), mx[2].get<double>()};
  return box;
}

namespace {

Json frame_json(const GridFrame& frame) {
  return Json{{"h", frame.height},
              {"w", frame.width},
              {"meters_per_pixel", frame.meters_per_pixel},
              {"origin_xy", Json::array({frame.origin_x, frame.origin_y})}};
}

GridFrame frame_from_json(const Json& j, const std::string& context) {
  GridFrame frame;
  frame.height = require_field(j, "h", context).get<int>();
  frame.width = require_field(j, "w", context).get<int>();
  frame.meters_per_pixel = require_field(j, "meters_per_pixel", context).get<double>();
  frame.origin_x = require_field(j, "origin_xy", context)[0].get<double>();
  frame.origin_y = require_field(j, "origin_xy", context)[1].get<double>();
  return frame;
}

std::string zero_pad(int value, int width = 4) {
  std::ostringstream os;
  os.width(width);
  os.fill('0');
  os << value;
  return os.str();
}

std::string cloud_ref(const char* kind, int id) {
  return std::string("clouds/") + kind + "_" + zero_pad(id) + ".ply";
}
std::string mask_ref(const char* kind, int id) {
  return std::string("masks/") + kind + "_" + zero_pad(id) + ".json";
}

const char* edge_group_name(NodeKind parent, NodeKind child) {
  if (parent == NodeKind::Building && child == NodeKind::Floor) return "BF";
  if (parent == NodeKind::Floor && child == NodeKind::Room) return "FR";
  if (parent == NodeKind::Room && child == NodeKind::Location) return "RL";
  if (parent == NodeKind::Room && child == NodeKind::Object) return "RO";
  if (parent == NodeKind::Location && child == NodeKind::Object) return "LO";
  throw Error(Errc::ParseError, "unsupported edge group");
}

}  // namespace

std::string graph_json_bytes(const SceneGraph& graph) {
  Json j;
  j["schema"] = graph.schema;
  j["config"] = graph.config;
  j["building"] = Json{{"tag", graph.building_tag}};

  Json floors = Json::array();
  for (const FloorNode& n : graph.floors) {
    floors.push_back(Json{{"id", n.id},
                          {"tag", n.tag},
                          {"z_low", n.z_low},
                          {"z_high", n.z_high},
                          {"bbox", box_json(n.bbox)},
                          {"frame", frame_json(n.bev_frame)},
                          {"cloud_ref", cloud_ref("floor", n.id)}});
  }
  j["floors"] = std::move(floors);

  Json rooms = Json::array();
  for (const RoomNode& n : graph.rooms) {
    rooms.push_back(Json{{"id", n.id},
                         {"floor_id", n.floor_id},
                         {"tag", n.tag},
                         {"bbox", box_json(n.bbox)},
                         {"cloud_ref", cloud_ref("room", n.id)},
                         {"mask_ref", mask_ref("room", n.id)}});
  }
  j["rooms"] = std::move(rooms);

  Json locations = Json::array();
  for (const LocationNode& n : graph.locations) {
    Json poly = Json::array();
    for (const auto& v : n.polygon.vertices) poly.push_back(Json::array({v[0], v[1]}));
    locations.push_back(Json{{"id", n.id},
                             {"floor_id", n.floor_id},
                             {"room_id", n.room_id},
                             {"tag", n.tag},
                             {"polygon", std::move(poly)},
                             {"bbox", box_json(n.bbox)},
                             {"cloud_ref", cloud_ref("location", n.id)},
                             {"mask_ref", mask_ref("location", n.id)}});
  }
  j["locations"] = std::move(locations);

  Json objects = Json::array();
  for (const ObjectNode& n : graph.objects) {
    Json tags = Json::object();
    for (const auto& [tag, count] : n.tags) tags[tag] = count;
    Json node{{"id", n.id},
              {"tag", n.primary_tag},
              {"tags", std::move(tags)},
              {"bbox", box_json(n.bbox)},
              {"room_id", n.room_id},
              {"cloud_ref", cloud_ref("object", n.id)}};
    if (n.location_id >= 0) node["location_id"] = n.location_id;
    objects.push_back(std::move(node));
  }
  j["objects"] = std::move(objects);

  Json edges = Json::object();
  for (const char* group : {"BF", "FR", "RL", "RO", "LO"}) edges[group] = Json::array();
  for (const InterEdge& e : graph.edges) {
    edges[edge_group_name(e.parent_kind, e.child_kind)].push_back(
        Json::array({e.parent_id, e.child_id}));
  }
  j["edges"] = std::move(edges);

  return j.dump(2) + "\n";
}

void save_graph(const SceneGraph& graph, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "clouds");
  std::filesystem::create_directories(dir / "masks");
  write_text_file(dir / "graph.json", graph_json_bytes(graph));

  auto write_mask = [&](const char* kind, int id, const BinaryMask& mask) {
    Json j{{"frame", frame_json(mask.frame)}, {"rle", rle_encode(mask.values)}};
    write_text_file(dir / mask_ref(kind, id), j.dump() + "\n");
  };
  for (const FloorNode& n : graph.floors) write_ply(n.cloud, dir / cloud_ref("floor", n.id));
  for (const RoomNode& n : graph.rooms) {
    write_ply(n.cloud, dir / cloud_ref("room", n.id));
    write_mask("room", n.id, n.mask);
  }
  for (const LocationNode& n : graph.locations) {
    write_ply(n.cloud, dir / cloud_ref("location", n.id));
    write_mask("location", n.id, n.mask);
  }
  for (const ObjectNode& n : graph.objects) {
    write_ply(n.cloud, dir / cloud_ref("object", n.id));
  }
}

SceneGraph load_graph(const std::filesystem::path& dir) {
  const std::filesystem::path graph_path = dir / "graph.json";
  const Json j = parse_json_file(graph_path);
  const std::string ctx = graph_path.string();

  SceneGraph g;
  g.schema = require_field(j, "schema", ctx).get<std::string>();
  if (g.schema != "ovigo-hsg/1") {
    throw Error(Errc::ParseError, ctx + ": unsupported schema \"" + g.schema + "\"");
  }
  g.config = require_field(j, "config", ctx);
  g.building_tag = require_field(require_field(j, "building", ctx), "tag", ctx)
                       .get<std::string>();

  auto load_mask = [&](const Json& node) {
    const std::string ref = require_field(node, "mask_ref", ctx).get<std::string>();
    const Json mj = parse_json_file(dir / ref);
    BinaryMask mask;
    mask.frame = frame_from_json(require_field(mj, "frame", ref), ref);
    mask.values = rle_decode(require_field(mj, "rle", ref).get<std::vector<int64_t>>(),
                             mask.frame.cells());
    return mask;
  };
  auto load_cloud = [&](const Json& node) {
    return read_ply(dir / require_field(node, "cloud_ref", ctx).get<std::string>());
  };

  for (const Json& nj : require_field(j, "floors", ctx)) {
    FloorNode n;
    n.id = require_field(nj, "id", ctx).get<int>();
    n.tag = require_field(nj, "tag", ctx).get<std::string>();
    n.z_low = require_field(nj, "z_low", ctx).get<double>();
    n.z_high = require_field(nj, "z_high", ctx).get<double>();
    n.bbox = box_from_json(require_field(nj, "bbox", ctx), ctx);
    n.bev_frame = frame_from_json(require_field(nj, "frame", ctx), ctx);
    n.cloud = load_cloud(nj);
    g.floors.push_back(std::move(n));
  }
  for (const Json& nj : require_field(j, "rooms", ctx)) {
    RoomNode n;
    n.id = require_field(nj, "id", ctx).get<int>();
    n.floor_id = require_field(nj, "floor_id", ctx).get<int>();
    n.tag = require_field(nj, "tag", ctx).get<std::string>();
    n.bbox = box_from_json(require_field(nj, "bbox", ctx), ctx);
    n.cloud = load_cloud(nj);
    n.mask = load_mask(nj);
    g.rooms.push_back(std::move(n));
  }
  for (const Json& nj : require_field(j, "locations", ctx)) {
    LocationNode n;
    n.id = require_field(nj, "id", ctx).get<int>();
    n.floor_id = require_field(nj, "floor_id", ctx).get<int>();
    n.room_id = require_field(nj, "room_id", ctx).get<int>();
    n.tag = require_field(nj, "tag", ctx).get<std::string>();
    for (const Json& vj : require_field(nj, "polygon", ctx)) {
      n.polygon.vertices.push_back({vj[0].get<double>(), vj[1].get<double>()});
    }
    n.bbox = box_from_json(require_field(nj, "bbox", ctx), ctx);
    n.cloud = load_cloud(nj);
    n.mask = load_mask(nj);
    g.locations.push_back(std::move(n));
  }
  for (const Json& nj : require_field(j, "objects", ctx)) {
    ObjectNode n;
    n.id = require_field(nj, "id", ctx).get<int>();
    n.primary_tag = require_field(nj, "tag", ctx).get<std::string>();
    for (const auto& [tag, count] : require_field(nj, "tags", ctx).items()) {
      n.tags[tag] = count.get<int>();
    }
    n.bbox = box_from_json(require_field(nj, "bbox", ctx), ctx);
    n.room_id = require_field(nj, "room_id", ctx).get<int>();
    n.location_id = nj.contains("location_id") ? nj["location_id"].get<int>() : -1;
    n.cloud = load_cloud(nj);
    g.objects.push_back(std::move(n));
  }

  const Json& edges = require_field(j, "edges", ctx);
  auto load_edges = [&](const char* group, NodeKind parent, NodeKind child) {
    if (!edges.contains(group)) return;
    for (const Json& ej : edges[group]) {
      g.edges.push_back({parent, ej[0].get<int>(), child, ej[1].get<int>()});
    }
  };
  load_edges("BF", NodeKind::Building, NodeKind::Floor);
  load_edges("FR", NodeKind::Floor, NodeKind::Room);
  load_edges("RL", NodeKind::Room, NodeKind::Location);
  load_edges("RO", NodeKind::Room, NodeKind::Object);
  load_edges("LO", NodeKind::Location, NodeKind::Object);
  return g;
}

std::string textualize_layer(const SceneGraph& graph, NodeKind kind) {
  std::vector<std::pair<int, std::string>> entries;
  switch (kind) {
    case NodeKind::Building:
      entries.emplace_back(0, graph.building_tag);
      break;
    case NodeKind::Floor:
      for (const FloorNode& n : graph.floors) entries.emplace_back(n.id, n.tag);
      break;
    case NodeKind::Room:
      for (const RoomNode& n : graph.rooms) entries.emplace_back(n.id, n.tag);
      break;
    case NodeKind::Location:
      for (const LocationNode& n : graph.locations) entries.emplace_back(n.id, n.tag);
      break;
    case NodeKind::Object:
      for (const ObjectNode& n : graph.objects) entries.emplace_back(n.id, n.primary_tag);
      break;
  }
  std::sort(entries.begin(), entries.end());
  std::string out;
  for (const auto& [id, tag] : entries) {
    if (!out.empty()) out += '\n';
    out += std::to_string(id) + ": " + tag;
  }
  return out;
}

}  // namespace ovigo
