#pragma once

#include <filesystem>
#include <string>

#include "ovigo/json_util.hpp"

namespace ovigo {

struct HeightBand {
  double alpha_min = 0.05;
  double alpha_max = 0.85;
};

// Every pipeline hyperparameter with its documented default. Unknown keys in
// a config file are rejected so typos cannot silently fall back to defaults.
struct PipelineConfig {
  struct Floors {
    double bin_h = 0.01;
    double delta_f = 0.2;
    double p_h = 0.9;
    double peak_cluster_eps = 0.5;  // 1D DBSCAN over peak heights
    int peak_cluster_min_pts = 1;
    bool force_extend = false;  // pair a trailing unpaired peak with max z
  } floors;

  struct Bev {
    double meters_per_pixel = 0.05;
  } bev;

  struct Rooms {
    double delta_wall = 0.5;
    int min_seed_pixels = 4;
    double min_area_m2 = 1.0;
  } rooms;

  struct Locations {
    HeightBand band;
    double eps = 0.5;
    int min_pts = 10;
    int min_objects = 2;       // heuristic 2: clusters with fewer objects drop
    double compactness_min = 0.3;
    double min_area_m2 = 0.25;
    double alpha = 0.5;        // alpha-shape parameter, 1/m
  } locations;

  struct Objects {
    double score_min = 0.3;
    int min_fragment_points = 20;
    double spatial_iou_min = 0.25;
    double overlap_min = 0.5;
    bool tag_similarity_enabled = false;
    double tag_similarity_min = 0.8;
  } objects;

  struct Accumulation {
    int pixel_stride = 1;  // back-project every Nth depth pixel per axis
  } accumulation;

  struct Llm {
    std::string endpoint;  // OVIGO_LLM_ENDPOINT when empty
    std::string model;     // OVIGO_LLM_MODEL when empty
    double temperature = 0.0;
    int max_retries = 3;
  } llm;

  Json to_json() const;
  static PipelineConfig from_json(const Json& j, const std::string& context);
  static PipelineConfig load(const std::filesystem::path& path);
};

}  // namespace ovigo
