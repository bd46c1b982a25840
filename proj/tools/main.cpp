#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "hifst/config.hpp"
#include "hifst/eval.hpp"
#include "hifst/focus.hpp"
#include "hifst/imageio.hpp"
#include "hifst/pipeline.hpp"
#include "hifst/rng.hpp"
#include "hifst/synthetic.hpp"

namespace {

using hifst::PipelineConfig;

// One flag per PipelineConfig field, attached to a subcommand. Values set on
// the command line override the config file, which overrides the defaults.
struct ConfigFlags {
  std::string config_file;
  std::string scales_csv;
  std::string guide_name;
  PipelineConfig raw;

  CLI::Option* o_scales = nullptr;
  CLI::Option* o_gsigma = nullptr;
  CLI::Option* o_gradius = nullptr;
  CLI::Option* o_ewindow = nullptr;
  CLI::Option* o_ebins = nullptr;
  CLI::Option* o_ss = nullptr;
  CLI::Option* o_sr = nullptr;
  CLI::Option* o_siter = nullptr;
  CLI::Option* o_guide = nullptr;
  CLI::Option* o_fth = nullptr;
  CLI::Option* o_fsigma = nullptr;
  CLI::Option* o_stride = nullptr;
  CLI::Option* o_threads = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file,
                    "Config file (flat key = value lines); command-line flags override it")
        ->envname("HIFST_CONFIG");
    o_scales = cmd->add_option("--scales", scales_csv,
                               "Comma-separated odd patch sizes (default 7,15,31,63)")
                   ->envname("HIFST_SCALES");
    o_gsigma = cmd->add_option("--gaussian-sigma", raw.gaussian_sigma,
                               "Pre-filter Gaussian sigma (default 0.5)")
                   ->envname("HIFST_GAUSSIAN_SIGMA");
    o_gradius = cmd->add_option("--gaussian-radius", raw.gaussian_radius,
                                "Pre-filter kernel radius (default 1)")
                    ->envname("HIFST_GAUSSIAN_RADIUS");
    o_ewindow = cmd->add_option("--entropy-window", raw.entropy_window,
                                "Local entropy window size, odd (default 7)")
                    ->envname("HIFST_ENTROPY_WINDOW");
    o_ebins = cmd->add_option("--entropy-bins", raw.entropy_bins,
                              "Entropy histogram bins over [0,1] (default 256)")
                  ->envname("HIFST_ENTROPY_BINS");
    o_ss = cmd->add_option("--smooth-sigma-s", raw.smooth_sigma_s,
                           "Edge-preserving smoothing spatial scale (default 15)")
               ->envname("HIFST_SMOOTH_SIGMA_S");
    o_sr = cmd->add_option("--smooth-sigma-r", raw.smooth_sigma_r,
                           "Edge-preserving smoothing range scale (default 0.3)")
               ->envname("HIFST_SMOOTH_SIGMA_R");
    o_siter = cmd->add_option("--smooth-iterations", raw.smooth_iterations,
                              "Edge-preserving smoothing iterations (default 3)")
                  ->envname("HIFST_SMOOTH_ITERATIONS");
    o_guide = cmd->add_option("--smooth-guide", guide_name,
                              "Smoothing guide: input-image or map-itself")
                  ->check(CLI::IsMember({"input-image", "map-itself"}))
                  ->envname("HIFST_SMOOTH_GUIDE");
    o_fth = cmd->add_option("--focus-th", raw.focus_threshold,
                            "Focus points threshold in (0,1] (default 0.98)")
                ->envname("HIFST_FOCUS_TH");
    o_fsigma = cmd->add_option("--focus-presmooth-sigma", raw.focus_presmooth_sigma,
                               "Focus map pre-smoothing sigma (default 5)")
                   ->envname("HIFST_FOCUS_PRESMOOTH_SIGMA");
    o_stride = cmd->add_option("--stride", raw.stride,
                               "Evaluate every stride-th pixel, upsampled (preview mode; default 1)")
                   ->envname("HIFST_STRIDE");
    o_threads = cmd->add_option("--threads", raw.threads,
                                "Worker threads; 0 = auto (default 0)")
                    ->envname("HIFST_THREADS");
  }

  PipelineConfig build() const {
    PipelineConfig cfg;
    if (!config_file.empty()) cfg = PipelineConfig::load_file(config_file);
    if (o_scales->count()) cfg.scales.sizes = hifst::parse_scale_list(scales_csv);
    if (o_gsigma->count()) cfg.gaussian_sigma = raw.gaussian_sigma;
    if (o_gradius->count()) cfg.gaussian_radius = raw.gaussian_radius;
    if (o_ewindow->count()) cfg.entropy_window = raw.entropy_window;
    if (o_ebins->count()) cfg.entropy_bins = raw.entropy_bins;
    if (o_ss->count()) cfg.smooth_sigma_s = raw.smooth_sigma_s;
    if (o_sr->count()) cfg.smooth_sigma_r = raw.smooth_sigma_r;
    if (o_siter->count()) cfg.smooth_iterations = raw.smooth_iterations;
    if (o_guide->count()) cfg.smooth_guide = hifst::smooth_guide_from_string(guide_name);
    if (o_fth->count()) cfg.focus_threshold = raw.focus_threshold;
    if (o_fsigma->count()) cfg.focus_presmooth_sigma = raw.focus_presmooth_sigma;
    if (o_stride->count()) cfg.stride = raw.stride;
    if (o_threads->count()) cfg.threads = raw.threads;
    cfg.validate();
    return cfg;
  }
};

struct DetectArgs {
  std::string input;
  std::string png_out;
  std::string pfm_out;
  bool invert = false;
  ConfigFlags cfg;
};

struct FocusArgs {
  std::string input;
  std::string map_path;
  std::string output;
  ConfigFlags cfg;
};

struct MagnifyArgs {
  std::string input;
  std::string map_path;
  std::string output;
  double strength = 4.0;
  ConfigFlags cfg;
};

struct EvalArgs {
  std::string images_dir;
  std::string masks_dir;
  std::string out_dir;
  ConfigFlags cfg;
};

struct GenArgs {
  std::string out_dir;
  int count = 20;
  int size = 256;
  std::string sigmas_csv = "2,4";
  unsigned seed = 7;
  int square_size = 0;
};

// Returns the normalized blur map: either loaded from a previously saved PFM
// or computed by a full pipeline run.
hifst::BlurMap obtain_map(const std::string& map_path, const std::string& input,
                          const PipelineConfig& cfg) {
  if (!map_path.empty()) {
    hifst::GrayImage map = hifst::load_image(map_path);
    return hifst::normalize_map(map, cfg);
  }
  hifst::GrayImage image = hifst::load_image(input);
  return hifst::detect_blur_map(image, cfg);
}

int run_detect(const DetectArgs& args) {
  if (args.png_out.empty() && args.pfm_out.empty()) {
    std::fprintf(stderr, "detect: need -o and/or --pfm\n");
    return 1;
  }
  const PipelineConfig cfg = args.cfg.build();
  hifst::GrayImage image = hifst::load_image(args.input);
  hifst::BlurMap result = hifst::detect_blur_map(image, cfg);

  if (!args.png_out.empty()) {
    hifst::GrayImage display = result.map;
    if (args.invert) {
      for (double& v : display.data()) v = 1.0 - v;
    }
    hifst::save_map(display, args.png_out, hifst::MapFormat::Png8);
  }
  if (!args.pfm_out.empty()) {
    // Stored PFM data is never inverted; --invert is display-only.
    hifst::save_map(result.map, args.pfm_out, hifst::MapFormat::Pfm32);
  }
  std::printf("dof %.6f\n", hifst::dof_estimate(result));
  return 0;
}

int run_focus(const FocusArgs& args) {
  const PipelineConfig cfg = args.cfg.build();
  hifst::BlurMap map = obtain_map(args.map_path, args.input, cfg);
  hifst::GrayImage f = hifst::focus_points(
      map, hifst::FocusParams{cfg.focus_threshold, cfg.focus_presmooth_sigma});
  hifst::save_map(f, args.output, hifst::MapFormat::Png8);
  return 0;
}

int run_magnify(const MagnifyArgs& args) {
  const PipelineConfig cfg = args.cfg.build();
  hifst::GrayImage image = hifst::load_image(args.input);
  hifst::BlurMap map = obtain_map(args.map_path, args.input, cfg);
  hifst::GrayImage out = hifst::magnify_blur(image, map, args.strength);
  hifst::save_map(out, args.output, hifst::MapFormat::Png8);
  return 0;
}

int run_eval(const EvalArgs& args) {
  const PipelineConfig cfg = args.cfg.build();
  hifst::DatasetResult result =
      hifst::run_dataset(args.images_dir, args.masks_dir, cfg, args.out_dir);
  std::printf("images %zu\n", result.per_image.size());
  std::printf("warnings %d\n", result.warnings);
  std::printf("max_f_measure %.6f\n", hifst::max_f_measure(result.aggregate));
  return 0;
}

int run_gen(const GenArgs& args) {
  hifst::SyntheticParams params;
  params.count = args.count;
  params.size = args.size;
  params.seed = args.seed;
  params.square_size = args.square_size;
  params.blur_sigmas.clear();
  for (int v : hifst::parse_scale_list(args.sigmas_csv)) {
    params.blur_sigmas.push_back(static_cast<double>(v));
  }
  hifst::write_suite(hifst::make_suite(params), args.out_dir);
  std::printf("wrote %d image/mask pairs under %s\n", params.count,
              args.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatially-varying blur detection from a single image"};
  app.require_subcommand(1);

  DetectArgs detect_args;
  CLI::App* detect = app.add_subcommand(
      "detect", "Compute a blur map (higher intensity = sharper)");
  detect->add_option("-i,--input", detect_args.input, "Input image (PNG/JPEG/PGM/PFM/BMP)")
      ->required();
  detect->add_option("-o,--output", detect_args.png_out, "Output 8-bit PNG map");
  detect->add_option("--pfm", detect_args.pfm_out, "Output 32-bit float PFM map");
  detect->add_flag("--invert", detect_args.invert,
                   "Invert PNG display polarity (PFM data is never inverted)");
  detect_args.cfg.attach(detect);

  FocusArgs focus_args;
  CLI::App* focus = app.add_subcommand("focus", "Compute the camera focus points map");
  focus->add_option("-i,--input", focus_args.input, "Input image");
  focus->add_option("--map", focus_args.map_path, "Reuse a saved PFM blur map");
  focus->add_option("-o,--output", focus_args.output, "Output binary PNG")->required();
  focus_args.cfg.attach(focus);

  MagnifyArgs magnify_args;
  CLI::App* magnify = app.add_subcommand("magnify", "Magnify blur in out-of-focus areas");
  magnify->add_option("-i,--input", magnify_args.input, "Input image")->required();
  magnify->add_option("--map", magnify_args.map_path, "Reuse a saved PFM blur map");
  magnify->add_option("-o,--output", magnify_args.output, "Output PNG")->required();
  magnify->add_option("--strength", magnify_args.strength,
                      "Maximum added blur sigma in pixels (default 4)");
  magnify_args.cfg.attach(magnify);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "eval", "Precision-recall evaluation against ground-truth masks");
  eval->add_option("--images", eval_args.images_dir, "Directory of input images")->required();
  eval->add_option("--masks", eval_args.masks_dir,
                   "Directory of masks (same stem, white = sharp)")->required();
  eval->add_option("--out", eval_args.out_dir, "Directory for per-image and aggregate CSVs")
      ->required();
  eval_args.cfg.attach(eval);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen-synthetic", "Generate a seeded synthetic image/mask evaluation suite");
  gen->add_option("--out", gen_args.out_dir, "Output directory (images/ and masks/)")
      ->required();
  gen->add_option("--count", gen_args.count, "Number of pairs (default 20)");
  gen->add_option("--size", gen_args.size, "Image side length (default 256)");
  gen->add_option("--sigmas", gen_args.sigmas_csv,
                  "Comma-separated background blur sigmas (default 2,4)");
  gen->add_option("--seed", gen_args.seed, "Generator seed (default 7)");
  gen->add_option("--square-size", gen_args.square_size,
                  "Side of the centered-square region (default: half the image side)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (*detect) return run_detect(detect_args);
    if (*focus) {
      if (focus_args.input.empty() && focus_args.map_path.empty()) {
        std::fprintf(stderr, "focus: need --input or --map\n");
        return 1;
      }
      return run_focus(focus_args);
    }
    if (*magnify) return run_magnify(magnify_args);
    if (*eval) return run_eval(eval_args);
    if (*gen) return run_gen(gen_args);
    return 1;
  } catch (const hifst::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hifst::format_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    // Parameter validation: bad values reaching this point came from user
    // input (flags or config file).
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
