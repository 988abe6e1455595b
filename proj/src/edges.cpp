#include "ovigo/edges.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "ovigo/prompts.hpp"
#include "ovigo/text.hpp"

namespace ovigo {

namespace {

std::atomic<uint64_t> g_pair_counter{0};

constexpr double kFootprintInflation = 0.5;  // meters, for above/below

}  // namespace

const char* relation_label_name(RelationLabel label) {
  switch (label) {
    case RelationLabel::Left: return "left";
    case RelationLabel::Right: return "right";
    case RelationLabel::Back: return "back";
    case RelationLabel::Front: return "front";
    case RelationLabel::Above: return "above";
    case RelationLabel::Below: return "below";
  }
  return "?";
}

std::vector<RelationLabel> semantic_relation(const Box3D& target, const Box3D& anchor,
                                             std::array<double, 2> viewpoint) {
  const Vec3 tc = target.center();
  const Vec3 ac = anchor.center();
  const double mx = (tc.x + ac.x) / 2.0;
  const double my = (tc.y + ac.y) / 2.0;

  double dir_x = mx - viewpoint[0];
  double dir_y = my - viewpoint[1];
  if (dir_x == 0.0 && dir_y == 0.0) {
    throw Error(Errc::DegenerateViewpoint, "viewpoint coincides with the pair midpoint");
  }
  if (viewpoint[0] == ac.x && viewpoint[1] == ac.y) {
    throw Error(Errc::DegenerateViewpoint, "viewpoint coincides with the anchor center");
  }

  std::vector<RelationLabel> labels;

  // Horizontal quadrant of the target relative to the anchor in the
  // viewpoint->midpoint frame. Strict comparisons exclude the +-45 degree
  // boundaries; the midpoint frame is symmetric in the two boxes, which makes
  // the swap antisymmetry (left<->right, front<->back) exact.
  const double rel_x = tc.x - ac.x;
  const double rel_y = tc.y - ac.y;
  if (rel_x != 0.0 || rel_y != 0.0) {
    const double along = dir_x * rel_x + dir_y * rel_y;   // +: beyond the anchor
    const double across = dir_x * rel_y - dir_y * rel_x;  // +: viewer's left
    const double aa = std::abs(along);
    const double ac_ = std::abs(across);
    if (along > 0.0 && aa > ac_) labels.push_back(RelationLabel::Front);
    else if (along < 0.0 && aa > ac_) labels.push_back(RelationLabel::Back);
    else if (across > 0.0 && ac_ > aa) labels.push_back(RelationLabel::Left);
    else if (across < 0.0 && ac_ > aa) labels.push_back(RelationLabel::Right);
  }

  const bool footprint = tc.x >= anchor.min.x - kFootprintInflation &&
                         tc.x <= anchor.max.x + kFootprintInflation &&
                         tc.y >= anchor.min.y - kFootprintInflation &&
                         tc.y <= anchor.max.y + kFootprintInflation;
  if (footprint) {
    if (tc.z > anchor.max.z) labels.push_back(RelationLabel::Above);
    else if (tc.z < anchor.min.z) labels.push_back(RelationLabel::Below);
  }
  return labels;
}

MetricEdge metric_edge(const ObjectRef& target, const ObjectRef& anchor,
                       const std::string& text_template) {
  MetricEdge edge;
  edge.target_id = target.id;
  edge.anchor_id = anchor.id;
  const Vec3 d = target.bbox.center() - anchor.bbox.center();
  edge.distance = d.norm();
  const std::string& tmpl =
      text_template.empty() ? prompts::kMetricEdgeTemplate : text_template;
  edge.text = render_template(tmpl, {{"tag_a", target.tag},
                                     {"id_a", std::to_string(target.id)},
                                     {"distance", format_meters(edge.distance)},
                                     {"tag_b", anchor.tag},
                                     {"id_b", std::to_string(anchor.id)}});
  return edge;
}

EnrichedGroup enrich_subgraph(const SceneGraph& graph, int room_id,
                              const std::vector<int>& targets,
                              const std::vector<int>& anchors,
                              std::array<double, 2> viewpoint) {
  if (targets.empty()) {
    throw Error(Errc::EmptySelection, "subgraph enrichment without targets");
  }
  EnrichedGroup group;
  group.room_id = room_id;
  if (const RoomNode* room = graph.find_room(room_id)) group.room_tag = room->tag;
  group.targets = targets;
  group.anchors = anchors;
  std::sort(group.targets.begin(), group.targets.end());
  std::sort(group.anchors.begin(), group.anchors.end());

  // Edges for target x anchor pairs only; canonical (target, anchor) order.
  for (int target_id : group.targets) {
    const ObjectNode* target = graph.find_object(target_id);
    if (target == nullptr) continue;
    for (int anchor_id : group.anchors) {
      if (anchor_id == target_id) continue;
      const ObjectNode* anchor = graph.find_object(anchor_id);
      if (anchor == nullptr) continue;
      g_pair_counter.fetch_add(1, std::memory_order_relaxed);

      const ObjectRef target_ref{target->id, target->primary_tag, target->bbox};
      const ObjectRef anchor_ref{anchor->id, anchor->primary_tag, anchor->bbox};
      group.metric.push_back(metric_edge(target_ref, anchor_ref));

      const std::vector<RelationLabel> labels =
          semantic_relation(target->bbox, anchor->bbox, viewpoint);
      if (!labels.empty()) {
        SemanticEdge edge;
        edge.target_id = target->id;
        edge.anchor_id = anchor->id;
        edge.labels = labels;
        std::string joined;
        for (const RelationLabel label : labels) {
          if (!joined.empty()) joined += " and ";
          joined += relation_label_name(label);
        }
        edge.text = render_template(prompts::kSemanticEdgeTemplate,
                                    {{"tag_a", target->primary_tag},
                                     {"id_a", std::to_string(target->id)},
                                     {"labels", joined},
                                     {"tag_b", anchor->primary_tag},
                                     {"id_b", std::to_string(anchor->id)}});
        group.semantic.push_back(std::move(edge));
      }
    }
  }
  return group;
}

uint64_t edge_pairs_evaluated() { return g_pair_counter.load(); }
void reset_edge_pair_counter() { g_pair_counter.store(0); }

}  // namespace ovigo
