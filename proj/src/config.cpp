#include "ovigo/config.hpp"

#include <set>

namespace ovigo {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& known,
                    const std::string& context) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw Error(Errc::ConfigError, context + ": unknown key \"" + it.key() + "\"");
    }
  }
}

template <typename T>
void read_into(const Json& j, const char* key, T* out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

}  // namespace

Json PipelineConfig::to_json() const {
  Json j;
  j["floors"] = {{"bin_h", floors.bin_h},
                 {"delta_f", floors.delta_f},
                 {"p_h", floors.p_h},
                 {"peak_cluster_eps", floors.peak_cluster_eps},
                 {"peak_cluster_min_pts", floors.peak_cluster_min_pts},
                 {"force_extend", floors.force_extend}};
  j["bev"] = {{"meters_per_pixel", bev.meters_per_pixel}};
  j["rooms"] = {{"delta_wall", rooms.delta_wall},
                {"min_seed_pixels", rooms.min_seed_pixels},
                {"min_area_m2", rooms.min_area_m2}};
  j["locations"] = {{"alpha_min", locations.band.alpha_min},
                    {"alpha_max", locations.band.alpha_max},
                    {"eps", locations.eps},
                    {"min_pts", locations.min_pts},
                    {"min_objects", locations.min_objects},
                    {"compactness_min", locations.compactness_min},
                    {"min_area_m2", locations.min_area_m2},
                    {"alpha", locations.alpha}};
  j["objects"] = {{"score_min", objects.score_min},
                  {"min_fragment_points", objects.min_fragment_points},
                  {"spatial_iou_min", objects.spatial_iou_min},
                  {"overlap_min", objects.overlap_min},
                  {"tag_similarity_enabled", objects.tag_similarity_enabled},
                  {"tag_similarity_min", objects.tag_similarity_min}};
  j["accumulation"] = {{"pixel_stride", accumulation.pixel_stride}};
  j["llm"] = {{"endpoint", llm.endpoint},
              {"model", llm.model},
              {"temperature", llm.temperature},
              {"max_retries", llm.max_retries}};
  return j;
}

PipelineConfig PipelineConfig::from_json(const Json& j, const std::string& context) {
  PipelineConfig cfg;
  reject_unknown(j, {"floors", "bev", "rooms", "locations", "objects", "accumulation", "llm"},
                 context);
  if (j.contains("floors")) {
    const Json& s = j.at("floors");
    reject_unknown(s, {"bin_h", "delta_f", "p_h", "peak_cluster_eps",
                       "peak_cluster_min_pts", "force_extend"},
                   context + ".floors");
    read_into(s, "bin_h", &cfg.floors.bin_h);
    read_into(s, "delta_f", &cfg.floors.delta_f);
    read_into(s, "p_h", &cfg.floors.p_h);
    read_into(s, "peak_cluster_eps", &cfg.floors.peak_cluster_eps);
    read_into(s, "peak_cluster_min_pts", &cfg.floors.peak_cluster_min_pts);
    read_into(s, "force_extend", &cfg.floors.force_extend);
  }
  if (j.contains("bev")) {
    const Json& s = j.at("bev");
    reject_unknown(s, {"meters_per_pixel"}, context + ".bev");
    read_into(s, "meters_per_pixel", &cfg.bev.meters_per_pixel);
  }
  if (j.contains("rooms")) {
    const Json& s = j.at("rooms");
    reject_unknown(s, {"delta_wall", "min_seed_pixels", "min_area_m2"}, context + ".rooms");
    read_into(s, "delta_wall", &cfg.rooms.delta_wall);
    read_into(s, "min_seed_pixels", &cfg.rooms.min_seed_pixels);
    read_into(s, "min_area_m2", &cfg.rooms.min_area_m2);
  }
  if (j.contains("locations")) {
    const Json& s = j.at("locations");
    reject_unknown(s, {"alpha_min", "alpha_max", "eps", "min_pts", "min_objects",
                       "compactness_min", "min_area_m2", "alpha"},
                   context + ".locations");
    read_into(s, "alpha_min", &cfg.locations.band.alpha_min);
    read_into(s, "alpha_max", &cfg.locations.band.alpha_max);
    read_into(s, "eps", &cfg.locations.eps);
    read_into(s, "min_pts", &cfg.locations.min_pts);
    read_into(s, "min_objects", &cfg.locations.min_objects);
    read_into(s, "compactness_min", &cfg.locations.compactness_min);
    read_into(s, "min_area_m2", &cfg.locations.min_area_m2);
    read_into(s, "alpha", &cfg.locations.alpha);
  }
  if (j.contains("objects")) {
    const Json& s = j.at("objects");
    reject_unknown(s, {"score_min", "min_fragment_points", "spatial_iou_min",
                       "overlap_min", "tag_similarity_enabled", "tag_similarity_min"},
                   context + ".objects");
    read_into(s, "score_min", &cfg.objects.score_min);
    read_into(s, "min_fragment_points", &cfg.objects.min_fragment_points);
    read_into(s, "spatial_iou_min", &cfg.objects.spatial_iou_min);
    read_into(s, "overlap_min", &cfg.objects.overlap_min);
    read_into(s, "tag_similarity_enabled", &cfg.objects.tag_similarity_enabled);
    read_into(s, "tag_similarity_min", &cfg.objects.tag_similarity_min);
  }
  if (j.contains("accumulation")) {
    const Json& s = j.at("accumulation");
    reject_unknown(s, {"pixel_stride"}, context + ".accumulation");
    read_into(s, "pixel_stride", &cfg.accumulation.pixel_stride);
  }
  if (j.contains("llm")) {
    const Json& s = j.at("llm");
    reject_unknown(s, {"endpoint", "model", "temperature", "max_retries"}, context + ".llm");
    read_into(s, "endpoint", &cfg.llm.endpoint);
    read_into(s, "model", &cfg.llm.model);
    read_into(s, "temperature", &cfg.llm.temperature);
    read_into(s, "max_retries", &cfg.llm.max_retries);
  }

  if (!(cfg.floors.bin_h > 0.0) || !(cfg.floors.delta_f > 0.0) ||
      !(cfg.floors.p_h > 0.0 && cfg.floors.p_h < 1.0)) {
    throw Error(Errc::ConfigError, context + ": invalid floor segmentation parameters");
  }
  if (!(cfg.bev.meters_per_pixel > 0.0)) {
    throw Error(Errc::ConfigError, context + ": meters_per_pixel must be positive");
  }
  if (!(cfg.rooms.delta_wall > 0.0 && cfg.rooms.delta_wall < 1.0)) {
    throw Error(Errc::ConfigError, context + ": delta_wall must be in (0,1)");
  }
  const HeightBand& band = cfg.locations.band;
  if (!(band.alpha_min >= 0.0 && band.alpha_min < band.alpha_max && band.alpha_max <= 1.0)) {
    throw Error(Errc::ConfigError, context + ": height band must satisfy 0 <= min < max <= 1");
  }
  if (cfg.accumulation.pixel_stride < 1) {
    throw Error(Errc::ConfigError, context + ": pixel_stride must be >= 1");
  }
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  return from_json(parse_json_file(path), path.string());
}

}  // namespace ovigo
