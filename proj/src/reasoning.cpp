#include "ovigo/reasoning.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "ovigo/geometry.hpp"
#include "ovigo/prompts.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

std::string PipelineTrace::to_jsonl() const {
  std::string out;
  for (const TraceEntry& e : entries) {
    Json messages = Json::array();
    for (const ChatMessage& m : e.messages) {
      messages.push_back(Json{{"role", m.role}, {"content", m.content}});
    }
    const Json j{{"stage", e.stage},
                 {"template_digest", template_digest},
                 {"request_digest", e.request_digest},
                 {"messages", std::move(messages)},
                 {"response", e.response}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

std::string traced_send(const std::string& stage, const std::vector<ChatMessage>& messages,
                        ChatClient& llm, PipelineTrace* trace) {
  const std::string response = llm.send(messages);
  if (trace != nullptr) {
    trace->entries.push_back({stage, request_digest(messages), messages, response});
  }
  return response;
}

std::optional<Json> try_parse(const std::string& text) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  return j;
}

std::vector<int> parse_id_array(const Json& j, const std::string& stage) {
  if (!j.is_array()) {
    throw Error(Errc::SelectionError, stage + ": response is not a JSON array of IDs");
  }
  std::vector<int> ids;
  for (const Json& item : j) {
    if (!item.is_number_integer()) {
      throw Error(Errc::SelectionError, stage + ": non-integer ID in response");
    }
    ids.push_back(item.get<int>());
  }
  return ids;
}

// Keep IDs that exist in the candidate set, warn about the rest, dedupe.
std::vector<int> validate_ids(std::vector<int> ids, const std::vector<int>& candidates,
                              const std::string& stage) {
  const std::set<int> known(candidates.begin(), candidates.end());
  std::vector<int> out;
  std::set<int> seen;
  for (int id : ids) {
    if (!known.count(id)) {
      std::cerr << "[reasoning] " << stage << ": dropping unknown id " << id << "\n";
      continue;
    }
    if (seen.insert(id).second) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string listing_for(const SceneGraph& graph, NodeKind layer,
                        const std::vector<int>& ids) {
  // "id: tag" lines restricted to the surviving candidates.
  const std::set<int> keep(ids.begin(), ids.end());
  std::string full = textualize_layer(graph, layer);
  std::string out;
  std::size_t start = 0;
  while (start <= full.size() && !full.empty()) {
    std::size_t end = full.find('\n', start);
    if (end == std::string::npos) end = full.size();
    const std::string line = full.substr(start, end - start);
    const int id = std::stoi(line.substr(0, line.find(':')));
    if (keep.count(id)) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    start = end + 1;
    if (end == full.size()) break;
  }
  return out;
}

std::string object_listing(const SceneGraph& graph, const std::vector<int>& ids) {
  std::string out;
  for (int id : ids) {
    const ObjectNode* node = graph.find_object(id);
    if (node == nullptr) continue;
    const Vec3 c = node->bbox.center();
    if (!out.empty()) out += '\n';
    out += std::to_string(id) + ": " + node->primary_tag + " [" + format_coord(c.x) +
           ", " + format_coord(c.y) + ", " + format_coord(c.z) + "]";
  }
  return out;
}

std::array<double, 2> room_viewpoint(const SceneGraph& graph, int room_id) {
  const RoomNode* room = graph.find_room(room_id);
  if (room != nullptr && room->mask.count() > 0) {
    return mask_centroid(room->mask);
  }
  if (room != nullptr) {
    const Vec3 c = room->bbox.center();
    return {c.x, c.y};
  }
  return {0.0, 0.0};
}

}  // namespace

Json repair_json(const std::string& raw, ChatClient& llm, PipelineTrace* trace) {
  if (auto parsed = try_parse(raw)) return *parsed;  // valid input never calls out
  const std::string repaired =
      traced_send("repair", prompts::repair_request(raw), llm, trace);
  if (auto parsed = try_parse(repaired)) return *parsed;
  throw Error(Errc::RepairFailed,
              "repair produced invalid JSON; raw=\"" + raw + "\" repaired=\"" + repaired +
                  "\"");
}

std::vector<int> select_related(const SceneGraph& graph, NodeKind layer,
                                const std::vector<int>& candidate_ids,
                                const GroundingQuery& query, ChatClient& llm,
                                PipelineTrace* trace) {
  const std::string stage = std::string("select_") + node_kind_name(layer);
  const std::string listing = listing_for(graph, layer, candidate_ids);
  if (listing.empty()) return candidate_ids;  // nothing to choose from
  const std::string response = traced_send(
      stage, prompts::layer_select_request(node_kind_name(layer), query.text, listing),
      llm, trace);
  Json parsed;
  try {
    parsed = repair_json(response, llm, trace);
  } catch (const Error& e) {
    if (e.code() == Errc::RepairFailed) {
      throw Error(Errc::SelectionError, stage + ": " + e.what());
    }
    throw;
  }
  return validate_ids(parse_id_array(parsed, stage), candidate_ids, stage);
}

std::pair<std::vector<int>, std::vector<int>> select_targets_anchors(
    const SceneGraph& graph, const ObjectGroup& group, const GroundingQuery& query,
    ChatClient& llm, PipelineTrace* trace) {
  if (group.object_ids.empty()) {
    throw Error(Errc::EmptySelection, "target/anchor selection over an empty group");
  }
  const std::string stage = "targets_anchors[room " + std::to_string(group.room_id) + "]";
  const std::string response = traced_send(
      stage,
      prompts::targets_anchors_request(query.text, object_listing(graph, group.object_ids)),
      llm, trace);
  Json parsed;
  try {
    parsed = repair_json(response, llm, trace);
  } catch (const Error& e) {
    if (e.code() == Errc::RepairFailed) {
      throw Error(Errc::SelectionError, stage + ": " + e.what());
    }
    throw;
  }
  if (!parsed.is_object() || !parsed.contains("target_ids") ||
      !parsed.contains("anchor_ids")) {
    throw Error(Errc::SelectionError,
                stage + ": response lacks target_ids/anchor_ids");
  }
  std::vector<int> targets = validate_ids(parse_id_array(parsed["target_ids"], stage),
                                          group.object_ids, stage);
  std::vector<int> anchors = validate_ids(parse_id_array(parsed["anchor_ids"], stage),
                                          group.object_ids, stage);
  // Overlaps stay targets.
  const std::set<int> target_set(targets.begin(), targets.end());
  std::erase_if(anchors, [&](int id) { return target_set.count(id) > 0; });
  if (targets.empty()) {
    throw Error(Errc::SelectionError, stage + ": no valid target IDs selected");
  }
  return {std::move(targets), std::move(anchors)};
}

GroundingResult ground(const GroundingQuery& query,
                       const std::vector<EnrichedGroup>& groups, const SceneGraph& graph,
                       ChatClient& llm, PipelineTrace* trace) {
  if (groups.empty()) throw Error(Errc::EmptySelection, "grounding without groups");

  std::string groups_text;
  std::set<int> known_ids;
  for (const EnrichedGroup& group : groups) {
    if (!groups_text.empty()) groups_text += '\n';
    groups_text += "group (room " + std::to_string(group.room_id) + ": " +
                   group.room_tag + ")\nobjects:\n";
    std::vector<int> ids = group.targets;
    ids.insert(ids.end(), group.anchors.begin(), group.anchors.end());
    std::sort(ids.begin(), ids.end());
    groups_text += object_listing(graph, ids);
    known_ids.insert(ids.begin(), ids.end());
    groups_text += "\nedges:";
    for (const SemanticEdge& e : group.semantic) groups_text += "\n" + e.text;
    for (const MetricEdge& e : group.metric) groups_text += "\n" + e.text;
  }

  const std::string response = traced_send(
      "ground", prompts::grounding_request(query.text, groups_text), llm, trace);
  Json parsed;
  try {
    parsed = repair_json(response, llm, trace);
  } catch (const Error& e) {
    if (e.code() == Errc::RepairFailed) {
      throw Error(Errc::GroundingError, std::string("grounding: ") + e.what());
    }
    throw;
  }
  if (!parsed.is_object() || !parsed.contains("object_id") ||
      !parsed["object_id"].is_number_integer()) {
    throw Error(Errc::GroundingError, "grounding response lacks an integer object_id");
  }
  GroundingResult result;
  result.raw_response = response;
  result.object_id = parsed["object_id"].get<int>();
  if (parsed.contains("reasoning") && parsed["reasoning"].is_string()) {
    result.reasoning = parsed["reasoning"].get<std::string>();
  }
  if (parsed.contains("explanation") && parsed["explanation"].is_string()) {
    result.explanation = parsed["explanation"].get<std::string>();
  }
  if (!known_ids.count(result.object_id)) {
    throw Error(Errc::GroundingError,
                "grounded object_id " + std::to_string(result.object_id) +
                    " is not part of the enriched subgraphs");
  }
  result.bbox = graph.find_object(result.object_id)->bbox;
  return result;
}

GroundingResult run_pipeline(const SceneGraph& graph, const GroundingQuery& query,
                             ChatClient& llm, PipelineTrace* trace) {
  if (query.text.empty()) throw Error(Errc::EmptyInput, "empty grounding query");
  if (trace != nullptr) trace->template_digest = prompts::template_digest();
  const uint64_t pairs_before = edge_pairs_evaluated();

  std::string stage = "select_floor";
  try {
    std::vector<int> floor_ids;
    for (const FloorNode& f : graph.floors) floor_ids.push_back(f.id);
    const std::vector<int> floors =
        select_related(graph, NodeKind::Floor, floor_ids, query, llm, trace);

    stage = "select_room";
    std::vector<int> room_ids;
    for (const RoomNode& r : graph.rooms) {
      if (std::find(floors.begin(), floors.end(), r.floor_id) != floors.end()) {
        room_ids.push_back(r.id);
      }
    }
    const std::vector<int> rooms =
        select_related(graph, NodeKind::Room, room_ids, query, llm, trace);

    // Location selection is skipped (everything passes) when the surviving
    // rooms hold no locations.
    stage = "select_location";
    std::vector<int> location_ids;
    for (const LocationNode& l : graph.locations) {
      if (std::find(rooms.begin(), rooms.end(), l.room_id) != rooms.end()) {
        location_ids.push_back(l.id);
      }
    }
    std::vector<int> locations = location_ids;
    if (!location_ids.empty()) {
      locations = select_related(graph, NodeKind::Location, location_ids, query, llm, trace);
    }

    // Group the surviving objects per room: an object survives when its room
    // survived and it either has no location or its location survived.
    stage = "group_objects";
    const std::set<int> location_set(locations.begin(), locations.end());
    std::vector<ObjectGroup> groups;
    for (int room_id : rooms) {
      ObjectGroup group;
      group.room_id = room_id;
      for (int object_id : graph.objects_of_room(room_id)) {
        const ObjectNode* object = graph.find_object(object_id);
        if (object->location_id >= 0 && !location_set.count(object->location_id)) continue;
        group.object_ids.push_back(object_id);
      }
      if (!group.object_ids.empty()) groups.push_back(std::move(group));
    }
    if (groups.empty()) {
      throw Error(Errc::SelectionError, "layer selection left no object groups");
    }

    std::vector<EnrichedGroup> enriched;
    for (const ObjectGroup& group : groups) {
      stage = "targets_anchors[room " + std::to_string(group.room_id) + "]";
      auto [targets, anchors] = select_targets_anchors(graph, group, query, llm, trace);
      stage = "enrich[room " + std::to_string(group.room_id) + "]";
      enriched.push_back(enrich_subgraph(graph, group.room_id, targets, anchors,
                                         room_viewpoint(graph, group.room_id)));
    }

    stage = "ground";
    GroundingResult result = ground(query, enriched, graph, llm, trace);
    if (trace != nullptr) trace->edge_pairs = edge_pairs_evaluated() - pairs_before;
    return result;
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + stage + ": " + e.what());
  }
}

}  // namespace ovigo
