#pragma once

#include <filesystem>
#include <optional>

#include "ovigo/chat.hpp"
#include "ovigo/config.hpp"
#include "ovigo/graph.hpp"
#include "ovigo/io.hpp"

namespace ovigo {

// Accumulated cloud: manifest cloud_path when present, otherwise every
// frame's depth back-projected at the configured pixel stride.
PointCloud accumulate_cloud(const Manifest& manifest, const PipelineConfig& config,
                            const std::filesystem::path& base_dir);

// Full scene-graph construction: floors, per-floor rooms, object layer from
// the frame detections, the location layer, containment edges, then room and
// location tags through the chat client (nullptr degrades to "unknown ..."
// tags). Location masks come from `location_masks_path` when given; otherwise
// the geometric detector runs on the per-point object partition when the
// accumulated cloud has one, else on the aggregated object nodes.
SceneGraph build_scene_graph(const Manifest& manifest, const PipelineConfig& config,
                             const std::filesystem::path& base_dir, ChatClient* llm,
                             const std::optional<std::filesystem::path>&
                                 location_masks_path = std::nullopt);

}  // namespace ovigo
