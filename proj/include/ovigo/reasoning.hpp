#pragma once

#include <string>
#include <vector>

#include "ovigo/chat.hpp"
#include "ovigo/edges.hpp"
#include "ovigo/graph.hpp"
#include "ovigo/json_util.hpp"

namespace ovigo {

struct GroundingQuery {
  std::string text;
};

struct GroundingResult {
  int object_id = -1;
  Box3D bbox;
  std::string reasoning;
  std::string explanation;
  std::string raw_response;
};

struct TraceEntry {
  std::string stage;
  std::string request_digest;
  std::vector<ChatMessage> messages;
  std::string response;
};

// Per-query log: every chat call in order plus the number of target-anchor
// pairs enriched. Serializes to JSON Lines.
struct PipelineTrace {
  std::string template_digest;
  std::vector<TraceEntry> entries;
  uint64_t edge_pairs = 0;

  std::size_t client_calls() const { return entries.size(); }
  std::string to_jsonl() const;
};

// Objects that survived the layer pruning, grouped per room.
struct ObjectGroup {
  int room_id = -1;
  std::vector<int> object_ids;
};

// One layer-selection step: prompts the query plus "id: tag" lines, parses a
// JSON array of IDs (one repair attempt), drops unknown IDs with a warning.
std::vector<int> select_related(const SceneGraph& graph, NodeKind layer,
                                const std::vector<int>& candidate_ids,
                                const GroundingQuery& query, ChatClient& llm,
                                PipelineTrace* trace);

// Target/anchor selection inside one object group. Targets must be
// non-empty; IDs listed as both target and anchor stay targets only.
std::pair<std::vector<int>, std::vector<int>> select_targets_anchors(
    const SceneGraph& graph, const ObjectGroup& group, const GroundingQuery& query,
    ChatClient& llm, PipelineTrace* trace);

// Strict-parses raw; on failure makes exactly one repair call and parses the
// result, raising RepairFailed (with both texts) when that fails too.
Json repair_json(const std::string& raw, ChatClient& llm, PipelineTrace* trace);

// Grounding call over the textualized enriched groups; the answer must be
// valid JSON whose object_id belongs to one of the groups.
GroundingResult ground(const GroundingQuery& query,
                       const std::vector<EnrichedGroup>& groups, const SceneGraph& graph,
                       ChatClient& llm, PipelineTrace* trace);

// Full deductive pipeline: floor -> room -> location selection, per-group
// target/anchor selection, target x anchor enrichment, grounding. Stage
// failures are rethrown with the stage name attached.
GroundingResult run_pipeline(const SceneGraph& graph, const GroundingQuery& query,
                             ChatClient& llm, PipelineTrace* trace = nullptr);

}  // namespace ovigo
