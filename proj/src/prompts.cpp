#include "ovigo/prompts.hpp"

#include "ovigo/text.hpp"

namespace ovigo::prompts {

namespace {

constexpr const char* kTagSystem =
    "You are an indoor scene analyst. Answer with a short type name only, no "
    "punctuation and no explanation.";

constexpr const char* kRoomTagUser =
    "One room of a building contains the following object and location tags:\n"
    "{contents}\n"
    "Name the room type.";

constexpr const char* kLocationTagUser =
    "A group of objects standing close together inside one room has the "
    "following tags:\n"
    "{contents}\n"
    "Name the location type (a short phrase such as \"seating area\").";

constexpr const char* kLayerSelectSystem =
    "You select scene-graph entities that can relate to a user query. Respond "
    "with a JSON array of integer IDs only.";

constexpr const char* kLayerSelectUser =
    "Query: {query}\n"
    "Layer: {layer}\n"
    "Entities (one \"id: tag\" per line):\n"
    "{listing}\n"
    "Return a JSON array with the IDs of every entity on this layer that may "
    "relate to the query. Keep an entity when in doubt.";

constexpr const char* kTargetsAnchorsSystem =
    "You pick target and anchor objects for grounding a query. Targets are "
    "candidate objects the query may refer to; anchors are reference objects "
    "whose spatial relations to the targets are needed to disambiguate. "
    "Respond with JSON {\"target_ids\": [...], \"anchor_ids\": [...]} only.";

constexpr const char* kTargetsAnchorsUser =
    "Query: {query}\n"
    "Objects (one \"id: tag [x, y, z]\" per line):\n"
    "{listing}";

constexpr const char* kGroundingSystem =
    "You ground a user query to exactly one object ID in a 3D scene. Work "
    "step by step inside the reasoning field, summarize for the user in the "
    "explanation field, and answer with JSON "
    "{\"reasoning\": string, \"explanation\": string, \"object_id\": integer} "
    "only.";

constexpr const char* kGroundingUser =
    "Example.\n"
    "Query: find the chair near the desk\n"
    "Scene:\n"
    "group (room 2: office)\n"
    "objects:\n"
    "4: desk [1.0, 2.0, 0.4]\n"
    "7: chair [1.5, 2.0, 0.5]\n"
    "9: chair [6.0, 4.0, 0.5]\n"
    "edges:\n"
    "object chair with id 7 is in 0.5 meters of object desk with id 4\n"
    "object chair with id 9 is in 5.4 meters of object desk with id 4\n"
    "Answer: {\"reasoning\": \"There are two chairs. Chair 7 is 0.5 meters "
    "from the desk while chair 9 is 5.4 meters away, so chair 7 is the one "
    "near the desk.\", \"explanation\": \"Chair 7 stands next to the desk.\", "
    "\"object_id\": 7}\n"
    "\n"
    "Query: {query}\n"
    "Scene:\n"
    "{groups}\n"
    "Answer:";

constexpr const char* kRepairSystem =
    "You convert text into strict JSON. Respond with the JSON value only, "
    "without prose or code fences.";

constexpr const char* kRepairUser =
    "Extract the JSON value contained in the following text:\n{raw}";

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

}  // namespace

std::vector<ChatMessage> room_tag_request(const std::vector<std::string>& contents) {
  return {{"system", kTagSystem},
          {"user", render_template(kRoomTagUser, {{"contents", join_lines(contents)}})}};
}

std::vector<ChatMessage> location_tag_request(const std::vector<std::string>& contents) {
  return {{"system", kTagSystem},
          {"user", render_template(kLocationTagUser, {{"contents", join_lines(contents)}})}};
}

std::vector<ChatMessage> layer_select_request(const std::string& layer_name,
                                              const std::string& query,
                                              const std::string& listing) {
  return {{"system", kLayerSelectSystem},
          {"user", render_template(kLayerSelectUser, {{"query", query},
                                                      {"layer", layer_name},
                                                      {"listing", listing}})}};
}

std::vector<ChatMessage> targets_anchors_request(const std::string& query,
                                                 const std::string& listing) {
  return {{"system", kTargetsAnchorsSystem},
          {"user", render_template(kTargetsAnchorsUser,
                                   {{"query", query}, {"listing", listing}})}};
}

std::vector<ChatMessage> grounding_request(const std::string& query,
                                           const std::string& groups_text) {
  return {{"system", kGroundingSystem},
          {"user", render_template(kGroundingUser,
                                   {{"query", query}, {"groups", groups_text}})}};
}

std::vector<ChatMessage> repair_request(const std::string& raw) {
  return {{"system", kRepairSystem},
          {"user", render_template(kRepairUser, {{"raw", raw}})}};
}

std::string template_digest() {
  std::string all;
  for (const char* t :
       {kTagSystem, kRoomTagUser, kLocationTagUser, kLayerSelectSystem, kLayerSelectUser,
        kTargetsAnchorsSystem, kTargetsAnchorsUser, kGroundingSystem, kGroundingUser,
        kRepairSystem, kRepairUser, kMetricEdgeTemplate, kSemanticEdgeTemplate,
        kPromptVersion}) {
    all += t;
    all += '\x1e';
  }
  return fnv1a64_hex(all);
}

}  // namespace ovigo::prompts
