#pragma once

#include <string>
#include <vector>

#include "ovigo/chat.hpp"

namespace ovigo::prompts {

// Prompt templates, version-pinned in-repo. Reasoning transcripts key on the
// digest of the rendered request, so any edit here invalidates recorded
// transcripts; bump kPromptVersion when changing templates.
inline constexpr const char* kPromptVersion = "ovigo-prompts/1";

std::vector<ChatMessage> room_tag_request(const std::vector<std::string>& contents);
std::vector<ChatMessage> location_tag_request(const std::vector<std::string>& contents);
std::vector<ChatMessage> layer_select_request(const std::string& layer_name,
                                              const std::string& query,
                                              const std::string& listing);
std::vector<ChatMessage> targets_anchors_request(const std::string& query,
                                                 const std::string& listing);
std::vector<ChatMessage> grounding_request(const std::string& query,
                                           const std::string& groups_text);
std::vector<ChatMessage> repair_request(const std::string& raw);

// Digest over every template above; recorded in pipeline traces so replays
// can detect template drift.
std::string template_digest();

// Default intra-layer edge sentence templates (configurable per call in the
// edges module, documented verbatim in the README).
inline constexpr const char* kMetricEdgeTemplate =
    "object {tag_a} with id {id_a} is in {distance} meters of object {tag_b} with id {id_b}";
inline constexpr const char* kSemanticEdgeTemplate =
    "object {tag_a} with id {id_a} is {labels} of object {tag_b} with id {id_b}";

}  // namespace ovigo::prompts
