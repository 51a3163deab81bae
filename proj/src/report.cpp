#include "strata/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "strata/ply_io.hpp"

namespace strata {

using nlohmann::json;

namespace {

json vec3_json(const Vec3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json orientation_json(const PlanarOrientation& po) {
  json j;
  j["strike_deg"] = po.strike_deg ? json(*po.strike_deg) : json(nullptr);
  j["dip_deg"] = po.dip_deg;
  j["dipdir_deg"] = po.dipdir_deg ? json(*po.dipdir_deg) : json(nullptr);
  j["normal"] = vec3_json(po.source_normal);
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["input"] = c.input;
  j["truth"] = c.truth ? json(*c.truth) : json(nullptr);
  j["out_dir"] = c.out_dir;
  j["zeta"] = c.zeta;
  j["theta_deg"] = c.theta_deg;
  j["psi"] = c.psi;
  j["k"] = c.k;
  j["sigma"] = c.sigma;
  j["min_points"] = c.min_points;
  j["min_region_size"] = c.min_region_size;
  j["psi_relative"] = c.psi_relative;
  j["weighted_normals"] = c.weighted_normals;
  j["rng_seed"] = c.rng_seed;
  j["threads"] = c.threads;
  j["binary_ply"] = c.binary_ply;
  return j;
}

json quality_json(const QualityBreakdown& q) {
  json j;
  j["z_run"] = q.z_run;
  j["matched"] = json::array();
  for (const auto& m : q.matched) {
    j["matched"].push_back({{"region_id", m.region_id},
                            {"truth_id", m.truth_id},
                            {"normal_angle_deg", m.normal_angle_deg},
                            {"z_strike", m.z_strike},
                            {"z_dip", m.z_dip},
                            {"z_dipdir", m.z_dipdir},
                            {"z_region", m.z_region}});
  }
  j["unmatched_truth_ids"] = q.unmatched_truth_ids;
  j["unmatched_region_ids"] = q.unmatched_region_ids;
  return j;
}

}  // namespace

Rgb region_color(int region_id) {
  // Golden-angle hue walk keeps neighboring ids visually distinct.
  const double hue = std::fmod(0.61803398875 * region_id, 1.0) * 6.0;
  const double s = 0.85, v = 0.95;
  const int sector = static_cast<int>(hue) % 6;
  const double f = hue - std::floor(hue);
  const double p = v * (1 - s);
  const double q = v * (1 - s * f);
  const double t = v * (1 - s * (1 - f));
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  return {static_cast<std::uint8_t>(255 * r), static_cast<std::uint8_t>(255 * g),
          static_cast<std::uint8_t>(255 * b)};
}

json report_to_json(const RunReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["config"] = config_json(report.config);
  j["timings_s"] = {{"filter", report.timings.filter_s},
                    {"voxel_fit", report.timings.voxel_fit_s},
                    {"region_growing", report.timings.region_growing_s},
                    {"region_planes", report.timings.region_planes_s},
                    {"total", report.timings.total_s}};
  j["filter"] = {{"kept", report.filter.kept},
                 {"removed", report.filter.removed},
                 {"sigma", report.filter.sigma}};
  j["voxels"] = {{"occupied", report.voxel_stats.occupied},
                 {"fitted", report.voxel_stats.fitted},
                 {"skipped", report.voxel_stats.skipped},
                 {"edge_length", report.voxel_edge_length},
                 {"dims", report.grid_dims}};
  j["plane_count"] = report.plane_count;
  j["unsegmented_planes"] = report.unsegmented_planes;

  j["regions"] = json::array();
  for (const auto& r : report.regions) {
    json rj;
    rj["region_id"] = r.plane.region_id;
    rj["member_planes"] = r.member_planes;
    rj["point_count"] = r.plane.point_count;
    rj["center"] = vec3_json(r.plane.center);
    rj["normal"] = vec3_json(r.plane.normal);
    rj["axis_u"] = vec3_json(r.plane.axis_u);
    rj["axis_v"] = vec3_json(r.plane.axis_v);
    rj["half_extents"] = {r.plane.half_extents.x(), r.plane.half_extents.y()};
    rj["phi_star_rad"] = r.plane.phi_star;
    rj["perimeter"] = r.plane.perimeter;
    rj["orientation"] = orientation_json(r.orientation);
    j["regions"].push_back(std::move(rj));
  }

  j["quality"] = report.quality ? quality_json(*report.quality) : json(nullptr);
  return j;
}

json report_to_json_without_timings(const RunReport& report) {
  json j = report_to_json(report);
  j.erase("timings_s");
  // The worker count is an execution detail like the timings: reports from
  // different thread counts must otherwise be identical.
  j["config"].erase("threads");
  return j;
}

void write_report_json(const RunReport& report,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open report file for writing: " + path.string());
  }
  out << report_to_json(report).dump(2) << "\n";
}

std::vector<MeasuredSurface> read_measured_surfaces(
    const std::filesystem::path& report_path) {
  std::ifstream in(report_path);
  if (!in) {
    throw IoError("cannot open report file: " + report_path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("report is not valid JSON: " + std::string(e.what()),
                     static_cast<std::size_t>(e.byte));
  }
  if (!j.contains("regions") || !j["regions"].is_array()) {
    throw SchemaError("report has no regions array: " + report_path.string());
  }

  std::vector<MeasuredSurface> measured;
  for (const auto& rj : j["regions"]) {
    MeasuredSurface m;
    m.region_id = rj.at("region_id").get<int>();
    const auto& n = rj.at("normal");
    m.normal = Vec3d(n.at(0).get<double>(), n.at(1).get<double>(),
                     n.at(2).get<double>());
    const auto& oj = rj.at("orientation");
    m.orientation.dip_deg = oj.at("dip_deg").get<double>();
    if (!oj.at("strike_deg").is_null()) {
      m.orientation.strike_deg = oj.at("strike_deg").get<double>();
    }
    if (!oj.at("dipdir_deg").is_null()) {
      m.orientation.dipdir_deg = oj.at("dipdir_deg").get<double>();
    }
    m.orientation.source_normal = m.normal;
    measured.push_back(std::move(m));
  }
  return measured;
}

void write_summary_text(const RunReport& report,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open summary file for writing: " + path.string());
  }
  char buf[256];

  out << "input: " << report.config.input << "\n";
  std::snprintf(buf, sizeof(buf),
                "params: zeta=%.4g theta=%.4g psi=%.4g k=%zu sigma=%.4g\n",
                report.config.zeta, report.config.theta_deg, report.config.psi,
                report.config.k, report.config.sigma);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "filter: kept %zu, removed %zu (sigma %.2f)\n",
                report.filter.kept, report.filter.removed,
                report.filter.sigma);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "voxels: %zu occupied, %zu fitted, %zu skipped (edge %.5g)\n",
                report.voxel_stats.occupied, report.voxel_stats.fitted,
                report.voxel_stats.skipped, report.voxel_edge_length);
  out << buf;
  std::snprintf(
      buf, sizeof(buf), "regions: %zu (unsegmented planes: %zu)\n",
      report.regions.size(), report.unsegmented_planes);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "timings: filter %.3fs, voxel fit %.3fs, region growing "
                "%.3fs, region planes %.3fs, total %.3fs\n",
                report.timings.filter_s, report.timings.voxel_fit_s,
                report.timings.region_growing_s, report.timings.region_planes_s,
                report.timings.total_s);
  out << buf;

  out << "\nregion  planes  points   strike    dip  dipdir  perimeter\n";
  for (const auto& r : report.regions) {
    const auto fmt_angle = [](const std::optional<double>& a) {
      char s[16];
      if (a) {
        std::snprintf(s, sizeof(s), "%7.1f", *a);
      } else {
        std::snprintf(s, sizeof(s), "%7s", "-");
      }
      return std::string(s);
    };
    std::snprintf(buf, sizeof(buf), "%6d  %6zu  %6zu  %s %6.1f %s %10.4g\n",
                  r.plane.region_id, r.member_planes, r.plane.point_count,
                  fmt_angle(r.orientation.strike_deg).c_str(),
                  r.orientation.dip_deg,
                  fmt_angle(r.orientation.dipdir_deg).c_str(),
                  r.plane.perimeter);
    out << buf;
  }

  if (report.quality) {
    std::snprintf(buf, sizeof(buf), "\nquality: z_run = %.6f\n",
                  report.quality->z_run);
    out << buf;
    for (const auto& m : report.quality->matched) {
      std::snprintf(buf, sizeof(buf),
                    "  region %d -> truth %d: angle %.2f deg, z one-region %.4f\n",
                    m.region_id, m.truth_id, m.normal_angle_deg, m.z_region);
      out << buf;
    }
    for (const int id : report.quality->unmatched_truth_ids) {
      std::snprintf(buf, sizeof(buf), "  truth %d unmatched (scored 1)\n", id);
      out << buf;
    }
  }
}

void write_segmented_ply(const PointCloud& cloud,
                         const std::vector<VoxelPlane>& planes,
                         const VoxelGrid& grid, const Segmentation& segmentation,
                         const std::filesystem::path& path, bool binary) {
  PointCloud colored;
  colored.points.reserve(cloud.size());
  colored.colors.reserve(cloud.size());

  std::vector<bool> covered(cloud.size(), false);
  for (const Region& region : segmentation.regions) {
    const Rgb color = region_color(region.id);
    for (const std::uint32_t m : region.members) {
      const auto& voxel = planes[m].voxel;
      const auto it =
          grid.cells.find(grid.linear_index(voxel[0], voxel[1], voxel[2]));
      if (it == grid.cells.end()) continue;
      for (const std::uint32_t p : it->second) {
        colored.points.push_back(cloud.points[p]);
        colored.colors.push_back(color);
        covered[p] = true;
      }
    }
  }
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    if (!covered[p]) {
      colored.points.push_back(cloud.points[p]);
      colored.colors.push_back(Rgb{90, 90, 90});
    }
  }
  write_ply(colored, path, binary);
}

void write_region_planes_ply(const std::vector<RegionMeasurement>& regions,
                             const std::filesystem::path& path, bool binary) {
  constexpr int kSamples = 40;  // per rectangle side
  PointCloud overlay;
  for (const auto& r : regions) {
    const Rgb color = region_color(r.plane.region_id);
    for (int i = 0; i < kSamples; ++i) {
      for (int j = 0; j < kSamples; ++j) {
        const double a = (2.0 * i / (kSamples - 1) - 1.0) * r.plane.half_extents.x();
        const double b = (2.0 * j / (kSamples - 1) - 1.0) * r.plane.half_extents.y();
        overlay.points.push_back(r.plane.center + a * r.plane.axis_u +
                                 b * r.plane.axis_v);
        overlay.colors.push_back(color);
      }
    }
  }
  if (overlay.empty()) {
    // Keep the export present even when no regions formed.
    overlay.points.push_back(Vec3d::Zero());
    overlay.colors.push_back(Rgb{0, 0, 0});
  }
  write_ply(overlay, path, binary);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, SweepFactor factor,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open sweep CSV for writing: " + path.string());
  }
  out << "schema_version,factor,value,region_growing_seconds,total_seconds,"
         "z_run,region_count,status\n";
  char buf[256];
  for (const SweepRow& row : rows) {
    char z_buf[40] = "";
    if (row.z_run) std::snprintf(z_buf, sizeof(z_buf), "%.9g", *row.z_run);
    std::snprintf(buf, sizeof(buf), "1,%s,%.9g,%.6f,%.6f,%s,%zu,%s\n",
                  sweep_factor_name(factor), row.value, row.region_growing_s,
                  row.total_s, z_buf, row.region_count,
                  row.ok ? "ok" : "failed");
    out << buf;
  }
}

}  // namespace strata
