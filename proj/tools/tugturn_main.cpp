#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tug/batch.hpp"
#include "tug/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tugturn: phase segmentation, gait events and stability metrics "
               "for markerless TUG landmark recordings"};

  std::string input, config, output;
  double tolerance = 0.0;
  unsigned jobs = 0;
  bool force = false, no_timestamp = false, interactive = false;

  app.add_option("-i,--input", input,
                 "landmark CSV file, or a directory of *.csv trials")
      ->required();
  app.add_option("-c,--config", config, "analysis configuration TOML")->required();
  app.add_option("-o,--output", output, "output directory for report bundles")
      ->required();
  app.add_option("-y,--tolerance", tolerance,
                 "override turn_tolerance_y (meters, > 0)");
  app.add_option("--jobs", jobs, "parallel trials (default: available cores)");
  app.add_flag("--force", force, "overwrite existing output artifacts");
  app.add_flag("--no-timestamp", no_timestamp,
               "omit the generation timestamp from HTML reports");
  app.add_flag("--interactive", interactive,
               "reserved: interactive report (not implemented)");
  app.set_version_flag("--version", std::string("tugturn ") + tug::kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (interactive) {
    std::cerr << "[tugturn] error ("
              << tug::error_kind_name(tug::ErrorKind::UnsupportedFeature)
              << "): the interactive report is reserved but not implemented\n";
    return 2;
  }

  try {
    std::optional<double> tol;
    if (app.count("-y") > 0) tol = tolerance;
    const tug::RunPlan plan = tug::make_run_plan(input, config, output, tol, force,
                                                 no_timestamp, jobs);
    const tug::BatchResult result = tug::run_batch(plan);

    std::size_t ok = 0;
    for (const auto& o : result.outcomes) ok += o.ok ? 1 : 0;
    std::cout << "processed " << result.outcomes.size() << " trial(s): " << ok
              << " ok, " << result.outcomes.size() - ok << " failed; summary at "
              << (plan.output_dir / "batch_summary.csv").string() << "\n";
    return result.exit_code;
  } catch (const tug::Error& e) {
    std::cerr << "[tugturn] error (" << tug::error_kind_name(e.kind())
              << "): " << e.what() << "\n";
    return e.kind() == tug::ErrorKind::UsageError ||
                   e.kind() == tug::ErrorKind::UnsupportedFeature
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "[tugturn] internal error: " << e.what() << "\n";
    return 1;
  }
}
