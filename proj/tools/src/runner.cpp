#include "runner.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "aro/adiabatic.hpp"
#include "aro/propagator.hpp"
#include "aro/spectral.hpp"
#include "aro/version.hpp"

namespace aro::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Artifact {
  std::string suffix;
  std::string content;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json basis_labels(const LevelScheme& scheme) {
  json labels = json::array();
  for (std::size_t i = 0; i < scheme.dimension(); ++i) labels.push_back(to_string(scheme.level_at(i)));
  return labels;
}

json base_metadata(const RunConfig& config) {
  return {
      {"tool", "aro-sim"},
      {"version", kVersion},
      {"mode", to_string(config.mode)},
      {"config", to_json(config)},
      {"units",
       "frequencies (delta, delta', Delta, Omega0) in 1/tau0, times in tau0, pulse area S0 in "
       "units of pi; tau0 = 1 internally"},
  };
}

std::vector<std::string> suffixes(const RunConfig& config) {
  switch (config.mode) {
    case Mode::simulate: {
      std::vector<std::string> s{".trajectory.csv"};
      if (is_symmetric_tripod(config.scheme(), config.system.initial, config.system.target)) {
        s.push_back(".adiabatic.csv");
      }
      s.push_back(".meta.json");
      return s;
    }
    case Mode::dressed:
      return {".branches.csv", ".meta.json"};
    default:
      return {".scan.csv", ".meta.json"};
  }
}

std::vector<Artifact> run_simulate(const RunConfig& config, std::string& summary) {
  const LevelScheme scheme = config.scheme();
  const PulseSpec pulse = config.pulse_spec();
  const RwaHamiltonian h(scheme, pulse);
  const TimeGrid grid = default_grid(pulse, config.numerics.steps_per_tau0);
  PropagationOptions opts;
  opts.stride = config.numerics.output_stride;
  const Trajectory tr = propagate(h, StateVector::basis(scheme.dimension(), scheme.index_of(config.system.initial)),
                                  grid, opts);

  std::vector<Artifact> out;
  std::ostringstream csv;
  write_trajectory_csv(csv, tr);
  out.push_back({".trajectory.csv", csv.str()});

  json meta = base_metadata(config);
  const std::size_t target = scheme.index_of(config.system.target);
  meta["basis"] = basis_labels(scheme);
  meta["detuning_tau0"] = scheme.detuning();
  meta["omega0_tau0"] = pulse.omega0();
  meta["s0_over_pi"] = pulse.analytic_area() / std::numbers::pi;
  meta["integrator"] = {{"method", "rk4"}, {"steps", grid.n_steps()}, {"step", grid.step()}};
  meta["norm_drift"] = tr.norm_drift;
  meta["final_target_population"] = final_population(tr, target);

  if (is_symmetric_tripod(scheme, config.system.initial, config.system.target)) {
    const TimeGrid coarse = default_grid(pulse, config.numerics.dressed_points_per_tau0);
    const AdiabaticResult ad = adiabatic_amplitudes(scheme.delta(), pulse, coarse);
    std::ostringstream acsv;
    write_adiabatic_csv(acsv, ad);
    out.push_back({".adiabatic.csv", acsv.str()});
    meta["adiabatic_area"] = ad.area;
    meta["adiabatic_target_population"] = std::norm(ad.a0p.back());
    if (ad.coarse_grid_warning) meta["warnings"].push_back("adiabatic grid coarser than 200 points per tau0");
  }
  out.push_back({".meta.json", meta.dump(2) + "\n"});

  char line[160];
  std::snprintf(line, sizeof line, "final population of %s: %.10f (norm drift %.2e)\n",
                to_string(config.system.target).c_str(), final_population(tr, target), tr.norm_drift);
  summary = line;
  return out;
}

std::vector<Artifact> run_dressed(const RunConfig& config, std::string& summary) {
  const LevelScheme scheme = config.scheme();
  const PulseSpec pulse = config.pulse_spec();
  const RwaHamiltonian h(scheme, pulse);
  const TimeGrid grid = default_grid(pulse, config.numerics.dressed_points_per_tau0);
  const DressedBranches b = track_branches(
      h, grid, StateVector::basis(scheme.dimension(), scheme.index_of(config.system.initial)));

  std::ostringstream csv;
  write_branches_csv(csv, b);

  json meta = base_metadata(config);
  meta["basis"] = basis_labels(scheme);
  meta["detuning_tau0"] = scheme.detuning();
  meta["omega0_tau0"] = pulse.omega0();
  meta["time_points"] = grid.size();
  json populated = json::array();
  for (std::size_t i : b.populated_indices()) populated.push_back(i + 1);
  meta["populated_branches"] = populated;
  if (b.populated_indices().size() == 2) {
    const auto p = b.populated_indices();
    meta["generalized_area"] = generalized_area(b, p[1], p[0], grid);
  }

  summary = "tracked " + std::to_string(b.dimension()) + " branches over " + std::to_string(grid.size()) +
            " time points, populated: " + populated.dump() + "\n";
  return {{".branches.csv", csv.str()}, {".meta.json", meta.dump(2) + "\n"}};
}

std::vector<Artifact> run_scan(const RunConfig& config, unsigned workers, std::string& summary) {
  const ScanSpec spec = config.scan_spec();
  const ScanGrid grid = config.mode == Mode::scan_grid ? scan_area_delta(spec, workers) : scan_area(spec, workers);

  std::ostringstream csv;
  write_scan_csv(csv, grid);

  json meta = base_metadata(config);
  meta["version"] = grid.version;
  const LevelScheme probe = config.scheme();
  meta["basis"] = basis_labels(probe);
  meta["area_points"] = grid.cols();
  meta["delta_points"] = grid.rows();
  meta["area_step_over_pi"] =
      (spec.area_axis.max - spec.area_axis.min) / static_cast<double>(spec.area_axis.n - 1);
  if (spec.delta_axis) {
    meta["delta_step_tau0"] =
        (spec.delta_axis->max - spec.delta_axis->min) / static_cast<double>(spec.delta_axis->n - 1);
  }
  meta["integrator"] = {{"method", "rk4"}, {"step", grid.integrator_step}};
  meta["max_norm_drift"] = grid.max_norm_drift;
  if (grid.has_adiabatic()) {
    meta["adiabatic_method"] = is_symmetric_tripod(probe, spec.initial, spec.target)
                                   ? "closed-form area of the inner dressed pair"
                                   : "generalized area of the two populated dressed branches";
  }

  summary = "scanned " + std::to_string(grid.rows() * grid.cols()) + " points (" +
            std::to_string(grid.rows()) + " x " + std::to_string(grid.cols()) + ")\n";
  return {{".scan.csv", csv.str()}, {".meta.json", meta.dump(2) + "\n"}};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  RunReport report;
  report.directory = options.out_dir ? *options.out_dir : fs::path(config.output.directory);
  const std::string& base = config.output.basename;

  std::vector<std::string> names;
  for (const auto& s : suffixes(config)) names.push_back(base + s);
  names.push_back(base + ".manifest.json");
  if (!options.overwrite) {
    for (const auto& n : names) {
      if (fs::exists(report.directory / n)) {
        throw CollisionError("output " + (report.directory / n).string() +
                             " already exists; pass --overwrite to replace it");
      }
    }
  }

  std::vector<Artifact> artifacts;
  switch (config.mode) {
    case Mode::simulate: artifacts = run_simulate(config, report.summary); break;
    case Mode::dressed: artifacts = run_dressed(config, report.summary); break;
    default: artifacts = run_scan(config, options.workers, report.summary); break;
  }

  fs::create_directories(report.directory);
  json files = json::array();
  for (const auto& a : artifacts) {
    const std::string name = base + a.suffix;
    write_file(report.directory / name, a.content);
    OutputFile f{name, a.content.size(), sha256_hex(a.content)};
    files.push_back({{"path", f.name}, {"bytes", f.bytes}, {"sha256", f.sha256}});
    report.files.push_back(std::move(f));
  }

  const json manifest = {
      {"tool", "aro-sim"},
      {"version", kVersion},
      {"mode", to_string(config.mode)},
      {"created_utc", utc_timestamp()},
      {"files", files},
  };
  report.manifest = report.directory / (base + ".manifest.json");
  write_file(report.manifest, manifest.dump(2) + "\n");
  return report;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anomalous Rabi oscillation simulator", "aro-sim"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string mode_name;
  std::string config_path;
  std::string out_dir;
  unsigned workers = 0;
  bool overwrite = false;
  app.add_option("mode", mode_name, "simulate | dressed | scan-area | scan-grid")
      ->required()
      ->check(CLI::IsMember({"simulate", "dressed", "scan-area", "scan-grid"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output.directory)");
  app.add_option("--workers", workers, "Scan worker threads (0 = all cores)");
  app.add_flag("--overwrite", overwrite, "Replace existing outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig config = load(config_path, *parse_mode(mode_name));
    RunOptions options;
    if (!out_dir.empty()) options.out_dir = out_dir;
    options.workers = workers;
    options.overwrite = overwrite;
    const RunReport report = run(config, options);
    out << report.summary;
    for (const auto& f : report.files) out << "wrote " << (report.directory / f.name).string() << "\n";
    out << "wrote " << report.manifest.string() << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    err << "aro-sim: " << e.what() << "\n";
    return kConfigError;
  } catch (const CollisionError& e) {
    err << "aro-sim: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "aro-sim: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "aro-sim: invalid configuration: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "aro-sim: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace aro::cli
