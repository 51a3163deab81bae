// strata: planar-orientation measurements (strike, dip, dip direction)
// extracted directly from point clouds.
//
// Subcommands:
//   run    full pipeline on a PLY cloud, writing reports and overlays
//   sweep  repeat the run while varying one parameter, writing a CSV
//   synth  generate a synthetic test scene with ground truth
//   score  re-score an existing report against a ground-truth table

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/errors.hpp"
#include "strata/pipeline.hpp"
#include "strata/ply_io.hpp"
#include "strata/report.hpp"
#include "strata/synthetic.hpp"

namespace {

struct RunCliOptions {
  strata::RunConfig config;
  std::string truth;
  bool unweighted_normals = false;

  void finalize() {
    if (!truth.empty()) config.truth = truth;
    config.weighted_normals = !unweighted_normals;
  }
};

void add_run_options(CLI::App* cmd, RunCliOptions& opts) {
  strata::RunConfig& config = opts.config;
  cmd->add_option("--input", config.input, "Input PLY point cloud")
      ->required();
  cmd->add_option("--truth", opts.truth,
                  "Ground-truth CSV (id,strike,dip,dipdir,nx,ny,nz)");
  cmd->add_option("--zeta", config.zeta,
                  "Voxel size as a fraction of the longest cloud axis");
  cmd->add_option("--theta", config.theta_deg,
                  "Region-growing angle threshold, degrees");
  cmd->add_option("--psi", config.psi,
                  "Co-planarity offset gating seed promotion");
  cmd->add_option("--k", config.k, "Nearest-neighbor count");
  cmd->add_option("--sigma", config.sigma,
                  "Outlier threshold in standard deviations");
  cmd->add_option("--min-points", config.min_points,
                  "Minimum points for a voxel plane fit");
  cmd->add_option("--min-region-size", config.min_region_size,
                  "Minimum voxel planes per region");
  cmd->add_option("--seed", config.rng_seed, "Random seed");
  cmd->add_option("--out-dir", config.out_dir, "Output directory");
  cmd->add_option("--threads", config.threads, "Worker threads");
  cmd->add_flag("--psi-relative", config.psi_relative,
                "Interpret psi in voxel-edge units instead of scene units");
  cmd->add_flag("--binary-ply", config.binary_ply,
                "Write binary instead of ASCII PLY outputs");
  cmd->add_flag("--unweighted-normals", opts.unweighted_normals,
                "Average region normals without voxel point-count weights");
}

std::vector<double> parse_numbers(const std::string& spec) {
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw strata::InvalidArgument("cannot parse number '" + token +
                                    "' in --face value");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata: planar-orientation extraction from point clouds"};
  app.require_subcommand(1);

  RunCliOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the full pipeline");
  add_run_options(run_cmd, run_opts);

  RunCliOptions sweep_opts;
  std::string sweep_factor;
  double sweep_start = 0, sweep_end = 0, sweep_step = 0;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Vary one parameter over a range");
  add_run_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--factor", sweep_factor, "zeta, theta, psi or k")
      ->required();
  sweep_cmd->add_option("--start", sweep_start, "First value")->required();
  sweep_cmd->add_option("--end", sweep_end, "Last value")->required();
  sweep_cmd->add_option("--step", sweep_step, "Increment")->required();

  std::string synth_shape = "walls";
  std::size_t synth_points = 10000;
  double synth_noise = -1;  // negative = keep the preset default
  double synth_outliers = -1;
  double synth_inflation = 8;
  std::uint64_t synth_seed = 0;
  double synth_width = 2, synth_depth = 2, synth_height = 1.2;
  double synth_roof_dip = 40;
  bool synth_open_top = false;
  bool synth_binary = false;
  std::string synth_out_dir = ".";
  std::vector<std::string> synth_faces;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic scene");
  synth_cmd->add_option("--shape", synth_shape, "walls, box or prism")
      ->check(CLI::IsMember({"walls", "box", "prism"}));
  synth_cmd->add_option("--points-per-face", synth_points, "Samples per face");
  synth_cmd->add_option("--noise", synth_noise,
                        "Gaussian noise sigma along face normals");
  synth_cmd->add_option("--outlier-fraction", synth_outliers,
                        "Outliers as a fraction of surface points");
  synth_cmd->add_option("--outlier-inflation", synth_inflation,
                        "Outlier box inflation factor");
  synth_cmd->add_option("--seed", synth_seed, "Random seed");
  synth_cmd->add_option("--width", synth_width, "Box/prism width");
  synth_cmd->add_option("--depth", synth_depth, "Box depth / prism length");
  synth_cmd->add_option("--height", synth_height, "Wall height");
  synth_cmd->add_option("--roof-dip", synth_roof_dip,
                        "Prism roof dip, degrees");
  synth_cmd->add_flag("--open-top", synth_open_top, "Box without a top face");
  synth_cmd->add_option(
      "--face", synth_faces,
      "Custom wall 'dip,dipdir[,width,height[,cx,cy,cz]]' (repeatable)");
  synth_cmd->add_option("--out-dir", synth_out_dir, "Output directory");
  synth_cmd->add_flag("--binary-ply", synth_binary, "Write binary PLY");

  std::string score_report, score_truth, score_out_dir;
  CLI::App* score_cmd =
      app.add_subcommand("score", "Score an existing report against truth");
  score_cmd->add_option("--report", score_report, "report.json path")
      ->required();
  score_cmd->add_option("--truth", score_truth, "Ground-truth CSV")
      ->required();
  score_cmd->add_option("--out-dir", score_out_dir,
                        "Also write score.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(run_cmd)) {
      run_opts.finalize();
      const strata::RunReport report = strata::run_pipeline(run_opts.config);
      std::printf("regions: %zu, planes: %zu, kept points: %zu\n",
                  report.regions.size(), report.plane_count,
                  report.filter.kept);
      if (report.quality) {
        std::printf("z_run: %.6f\n", report.quality->z_run);
      }
      std::printf(
          "report written to %s\n",
          (std::filesystem::path(run_opts.config.out_dir) / "report.json")
              .string()
              .c_str());
    } else if (app.got_subcommand(sweep_cmd)) {
      sweep_opts.finalize();
      const auto factor = strata::parse_sweep_factor(sweep_factor);
      const auto rows = strata::run_sweep(sweep_opts.config, factor,
                                          sweep_start, sweep_end, sweep_step);
      std::size_t failures = 0;
      for (const auto& row : rows) {
        if (!row.ok) ++failures;
      }
      std::printf("sweep complete: %zu rows (%zu failed), CSV in %s\n",
                  rows.size(), failures, sweep_opts.config.out_dir.c_str());
    } else if (app.got_subcommand(synth_cmd)) {
      strata::SyntheticScene scene;
      if (synth_shape == "box") {
        scene = strata::box_scene({synth_width, synth_depth, synth_height},
                                  synth_open_top, synth_points,
                                  std::max(synth_noise, 0.0),
                                  std::max(synth_outliers, 0.0), synth_seed);
      } else if (synth_shape == "prism") {
        scene = strata::prism_scene(synth_width, synth_depth, synth_height,
                                    synth_roof_dip, synth_points,
                                    std::max(synth_noise, 0.0),
                                    std::max(synth_outliers, 0.0), synth_seed);
      } else {
        scene = strata::demo_building_scene(synth_points, synth_seed);
        if (synth_noise >= 0) scene.noise_sigma = synth_noise;
        if (synth_outliers >= 0) scene.outlier_fraction = synth_outliers;
      }
      scene.outlier_inflation = synth_inflation;

      if (!synth_faces.empty()) {
        scene.faces.clear();
        for (const std::string& spec : synth_faces) {
          const std::vector<double> f = parse_numbers(spec);
          if (f.size() != 2 && f.size() != 4 && f.size() != 7) {
            throw strata::InvalidArgument(
                "--face needs 2, 4 or 7 comma-separated numbers");
          }
          const double w = f.size() >= 4 ? f[2] : 2.0;
          const double h = f.size() >= 4 ? f[3] : 1.2;
          const strata::Vec3d center =
              f.size() == 7
                  ? strata::Vec3d(f[4], f[5], f[6])
                  : strata::Vec3d(0, 2.5 * double(scene.faces.size()), 0);
          scene.faces.push_back(
              strata::face_from_orientation(center, f[0], f[1], w, h));
        }
      }

      const strata::SyntheticData data = strata::generate_synthetic(scene);
      const std::filesystem::path out_dir(synth_out_dir);
      std::filesystem::create_directories(out_dir);
      strata::write_ply(data.cloud, out_dir / "cloud.ply", synth_binary);
      strata::write_ground_truth(data.truth, out_dir / "truth.csv");
      std::printf("wrote %zu points (%zu outliers) and %zu truth rows to %s\n",
                  data.cloud.size(), data.outlier_points, data.truth.size(),
                  out_dir.string().c_str());
    } else if (app.got_subcommand(score_cmd)) {
      const auto measured = strata::read_measured_surfaces(score_report);
      const auto truth = strata::read_ground_truth(score_truth);
      const strata::QualityBreakdown quality =
          strata::score_run(measured, truth);
      std::printf("z_run: %.6f (%zu matched, %zu truth unmatched)\n",
                  quality.z_run, quality.matched.size(),
                  quality.unmatched_truth_ids.size());
      for (const auto& m : quality.matched) {
        std::printf("  region %d -> truth %d: angle %.2f deg, z %.4f\n",
                    m.region_id, m.truth_id, m.normal_angle_deg, m.z_region);
      }
      if (!score_out_dir.empty()) {
        std::filesystem::create_directories(score_out_dir);
        nlohmann::json j;
        j["schema_version"] = strata::kReportSchemaVersion;
        j["z_run"] = quality.z_run;
        j["matched"] = nlohmann::json::array();
        for (const auto& m : quality.matched) {
          j["matched"].push_back({{"region_id", m.region_id},
                                  {"truth_id", m.truth_id},
                                  {"normal_angle_deg", m.normal_angle_deg},
                                  {"z_strike", m.z_strike},
                                  {"z_dip", m.z_dip},
                                  {"z_dipdir", m.z_dipdir},
                                  {"z_region", m.z_region}});
        }
        j["unmatched_truth_ids"] = quality.unmatched_truth_ids;
        j["unmatched_region_ids"] = quality.unmatched_region_ids;
        std::ofstream out(std::filesystem::path(score_out_dir) / "score.json");
        out << j.dump(2) << "\n";
      }
    }
  } catch (const strata::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const strata::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const strata::DegenerateGeometry& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
