#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ovigo/graph.hpp"
#include "ovigo/types.hpp"

namespace ovigo {

enum class RelationLabel { Left, Right, Back, Front, Above, Below };
const char* relation_label_name(RelationLabel label);

// Directional labels between a target and an anchor box, seen from a
// horizontal viewpoint. At most one of left/right/front/back plus at most
// one of above/below; boundary configurations yield neither side.
struct SemanticEdge {
  int target_id = 0;
  int anchor_id = 0;
  std::vector<RelationLabel> labels;
  std::string text;
};

struct MetricEdge {
  int target_id = 0;
  int anchor_id = 0;
  double distance = 0.0;  // center-to-center, exact
  std::string text;       // distance rendered to 0.1 m
};

// Node handle used for edge textualization.
struct ObjectRef {
  int id = 0;
  std::string tag;
  Box3D bbox;
};

// Horizontal relations use the frame from the viewpoint toward the midpoint
// of the two box centers (quadrants at +-45 degrees, strict inequalities), so
// swapping target and anchor flips left<->right and front<->back exactly.
// above/below require the target's z-center beyond the anchor's z-extent with
// its horizontal center inside the anchor footprint inflated by 0.5 m.
std::vector<RelationLabel> semantic_relation(const Box3D& target, const Box3D& anchor,
                                             std::array<double, 2> viewpoint);

MetricEdge metric_edge(const ObjectRef& target, const ObjectRef& anchor,
                       const std::string& text_template = "");

// Object subgraph for one reasoning group: the selected targets and anchors
// plus edges computed for target x anchor pairs only (never all pairs).
struct EnrichedGroup {
  int room_id = -1;
  std::string room_tag;
  std::vector<int> targets;
  std::vector<int> anchors;
  std::vector<SemanticEdge> semantic;
  std::vector<MetricEdge> metric;
};

EnrichedGroup enrich_subgraph(const SceneGraph& graph, int room_id,
                              const std::vector<int>& targets,
                              const std::vector<int>& anchors,
                              std::array<double, 2> viewpoint);

// Global count of target-anchor pairs evaluated, for the no-all-pairs
// instrumentation.
uint64_t edge_pairs_evaluated();
void reset_edge_pair_counter();

}  // namespace ovigo
