#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ovigo/json_util.hpp"
#include "ovigo/objects.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

enum class NodeKind { Building, Floor, Room, Location, Object };
const char* node_kind_name(NodeKind kind);

struct FloorNode {
  int id = 0;
  double z_low = 0.0;
  double z_high = 0.0;
  std::string tag;
  PointCloud cloud;
  Box3D bbox;
  GridFrame bev_frame;

  friend bool operator==(const FloorNode&, const FloorNode&) = default;
};

struct RoomNode {
  int id = 0;
  int floor_id = 0;
  std::string tag;
  BinaryMask mask;
  PointCloud cloud;
  Box3D bbox;

  friend bool operator==(const RoomNode&, const RoomNode&) = default;
};

struct LocationNode {
  int id = 0;
  int floor_id = 0;
  int room_id = -1;
  std::string tag;
  Polygon2D polygon;
  BinaryMask mask;
  PointCloud cloud;
  Box3D bbox;

  friend bool operator==(const LocationNode&, const LocationNode&) = default;
};

// Boolean inter-layer containment edge (parent contains child).
struct InterEdge {
  NodeKind parent_kind;
  int parent_id;
  NodeKind child_kind;
  int child_id;

  friend bool operator==(const InterEdge&, const InterEdge&) = default;
};

// Five-layer hierarchical scene graph: building -> floors -> rooms ->
// {locations, objects}, plus location -> object cross links. IDs are global
// per node kind and stable once assigned.
struct SceneGraph {
  std::string schema = "ovigo-hsg/1";
  std::string building_tag = "building";
  Json config = Json::object();  // effective pipeline config, for provenance
  std::vector<FloorNode> floors;
  std::vector<RoomNode> rooms;
  std::vector<LocationNode> locations;
  std::vector<ObjectNode> objects;
  std::vector<InterEdge> edges;

  const FloorNode* find_floor(int id) const;
  const RoomNode* find_room(int id) const;
  const LocationNode* find_location(int id) const;
  const ObjectNode* find_object(int id) const;
  std::vector<int> objects_of_room(int room_id) const;

  friend bool operator==(const SceneGraph& a, const SceneGraph& b) {
    return a.schema == b.schema && a.building_tag == b.building_tag &&
           a.config == b.config && a.floors == b.floors && a.rooms == b.rooms &&
           a.locations == b.locations && a.objects == b.objects && a.edges == b.edges;
  }
};

// Computes containment (location -> room by polygon-area share, object ->
// room by point fraction with z restricted to the floor slab, object ->
// location when >= 50% of its points fall inside the polygon) and emits the
// full inter-layer edge set. Objects overlapping no room attach to the
// nearest room by bbox-center distance with a warning. Ties resolve toward
// the lower parent ID.
SceneGraph build_graph(std::vector<FloorNode> floors, std::vector<RoomNode> rooms,
                       std::vector<LocationNode> locations,
                       std::vector<ObjectNode> objects);

// Canonical graph JSON (sorted keys, stable float formatting); clouds and
// masks are referenced as sidecar paths relative to the graph directory.
std::string graph_json_bytes(const SceneGraph& graph);
void save_graph(const SceneGraph& graph, const std::filesystem::path& dir);
SceneGraph load_graph(const std::filesystem::path& dir);

// One "id: tag" line per entity, ascending by ID; objects list primary_tag.
std::string textualize_layer(const SceneGraph& graph, NodeKind kind);

Json box_json(const Box3D& box);
Box3D box_from_json(const Json& j, const std::string& context);

}  // namespace ovigo
