// Command-line front end: system construction, analysis, verification, and
// report emission. Exit codes: 0 success, 1 failed verification, 2 bad input,
// 3 numeric failure, 4 failed construction.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfconc/compactness.hpp"
#include "tfconc/errors.hpp"
#include "tfconc/frames.hpp"
#include "tfconc/grid.hpp"
#include "tfconc/json_io.hpp"
#include "tfconc/moments.hpp"
#include "tfconc/separation.hpp"
#include "tfconc/systems.hpp"
#include "tfconc/verify.hpp"

namespace {

using tfconc::Json;

struct RunConfig {
  std::string command;
  double grid_extent = 32.0;
  std::size_t grid_points = 4096;
  double p = 2.0;
  double q = 2.0;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
};

Json meta_json(const RunConfig& config) {
  Json meta;
  meta["schema"] = tfconc::kSchemaVersion;
  meta["command"] = config.command;
  meta["grid_extent"] = config.grid_extent;
  meta["grid_points"] = config.grid_points;
  meta["p"] = config.p;
  meta["q"] = config.q;
  meta["out"] = config.out;
  meta["format"] = config.format;
  meta["seed"] = config.seed;
  return meta;
}

void write_text(const RunConfig& config, const std::string& text) {
  if (config.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream stream(config.out, std::ios::binary);
  if (!stream) throw std::invalid_argument("cannot open output path: " + config.out);
  stream << text;
}

void emit(const RunConfig& config, const Json& payload, const std::string& csv_text) {
  if (config.format == "csv")
    write_text(config, csv_text);
  else
    write_text(config, payload.dump(2) + "\n");
}

std::string csv_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void require_exponents(const RunConfig& config) {
  if (!(config.p > 1.0) || !(config.q > 1.0))
    throw tfconc::unsupported_exponent("exponents p and q must exceed 1");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw std::invalid_argument("cannot read input: " + path);
  return stream;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::invalid_argument("cannot open output path: " + path);
  return stream;
}

// A system source is either a SystemSpec JSON file or a directory of sample
// CSVs (one element per file, lexicographic order).
struct LoadedSystem {
  std::vector<tfconc::SampledFunction> elements;
  std::vector<std::optional<tfconc::GaborIndex>> indices;
  std::optional<tfconc::SystemSpec> spec;
};

LoadedSystem load_system(const RunConfig& config, const tfconc::Grid& grid,
                         const std::string& source, std::size_t count_override) {
  LoadedSystem loaded;
  if (source.empty()) throw std::invalid_argument("no system source given (--system)");

  if (std::filesystem::is_directory(source)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(source))
      if (entry.path().extension() == ".csv") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (count_override > 0 && files.size() > count_override) files.resize(count_override);
    for (const auto& file : files) {
      std::ifstream stream = open_input(file.string());
      loaded.elements.push_back(tfconc::read_csv(stream));
      loaded.indices.emplace_back(std::nullopt);
    }
    if (loaded.elements.empty())
      throw std::invalid_argument("directory holds no element CSVs: " + source);
    return loaded;
  }

  std::ifstream stream(source);
  if (!stream) throw std::invalid_argument("cannot read system source: " + source);
  Json parsed;
  try {
    stream >> parsed;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("system source is not valid JSON: ") + e.what());
  }
  tfconc::SystemSpec spec = tfconc::system_spec_from_json(parsed);
  if (count_override > 0) spec.count = count_override;
  if (spec.count == 0) throw std::invalid_argument("system spec is empty (count is 0)");

  switch (spec.kind) {
    case tfconc::SystemKind::gabor_full: {
      const auto indices = tfconc::enumerate_full(spec.count);
      spec.indices = indices;
      for (const auto& index : indices) {
        loaded.elements.push_back(tfconc::gabor_atom(grid, index));
        loaded.indices.emplace_back(index);
      }
      break;
    }
    case tfconc::SystemKind::gabor_exact_G0: {
      const tfconc::SystemSpec enumerated = tfconc::enumerate_exact_G0(spec.count);
      spec.indices = enumerated.indices;
      for (const auto& index : enumerated.indices) {
        loaded.elements.push_back(tfconc::gabor_atom(grid, index));
        loaded.indices.emplace_back(index);
      }
      break;
    }
    case tfconc::SystemKind::perturbed_exact: {
      if (spec.alphas.size() == spec.count && spec.indices.size() > spec.count) {
        const tfconc::SampledFunction base = tfconc::gabor_atom(grid, spec.indices[0]);
        for (std::size_t n = 1; n <= spec.count; ++n) {
          const tfconc::SampledFunction next = tfconc::gabor_atom(grid, spec.indices[n]);
          tfconc::ComplexVector values(grid.n_points);
          for (std::size_t k = 0; k < grid.n_points; ++k)
            values[k] = base.values[k] + spec.alphas[n - 1] * next.values[k];
          loaded.elements.push_back(
              tfconc::normalized(tfconc::make_function(grid, std::move(values))));
          loaded.indices.emplace_back(spec.indices[n]);
        }
      } else {
        if (!(spec.epsilon > 0.0))
          throw std::invalid_argument(
              "perturbed_exact spec needs either stored alphas or a positive epsilon");
        const tfconc::PerturbedSystem built =
            tfconc::build_perturbed_exact(grid, spec.count, spec.epsilon, config.p, config.q);
        spec = built.spec;
        loaded.elements = built.elements;
        for (std::size_t n = 1; n <= spec.count; ++n)
          loaded.indices.emplace_back(spec.indices[n]);
      }
      break;
    }
    case tfconc::SystemKind::explicit_samples:
      throw std::invalid_argument(
          "explicit_samples specs carry no data; pass the sample directory instead");
  }
  loaded.spec = spec;
  return loaded;
}

void dump_samples(const RunConfig& config,
                  const std::vector<tfconc::SampledFunction>& elements) {
  if (config.out.empty())
    throw std::invalid_argument("--dump-samples needs --out to name the sibling files");
  const std::filesystem::path base(config.out);
  const std::filesystem::path stem = base.parent_path() / base.stem();
  for (std::size_t n = 0; n < elements.size(); ++n) {
    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "-element-%zu.csv", n + 1);
    std::ofstream stream = open_output(stem.string() + suffix);
    tfconc::write_csv(stream, elements[n]);
  }
}

int cmd_analyze(const RunConfig& config, const std::string& source,
                std::size_t count_override, bool want_samples) {
  require_exponents(config);
  const tfconc::Grid grid = tfconc::make_grid(config.grid_extent, config.grid_points);
  const LoadedSystem loaded = load_system(config, grid, source, count_override);

  Json elements = Json::array();
  std::vector<double> freq_means;
  std::string csv =
      "ordinal,m,n,time_mean,time_dispersion,freq_mean,freq_dispersion,heisenberg_product\n";
  for (std::size_t n = 0; n < loaded.elements.size(); ++n) {
    const tfconc::ConcentrationReport report =
        tfconc::concentration_report(loaded.elements[n], config.p, config.q);
    freq_means.push_back(report.freq_mean);
    Json entry;
    entry["ordinal"] = n + 1;
    if (loaded.indices[n])
      entry["index"] = Json::array({loaded.indices[n]->m, loaded.indices[n]->n});
    else
      entry["index"] = nullptr;
    entry["report"] = tfconc::to_json(report);
    elements.push_back(entry);
    const std::string m_cell = loaded.indices[n] ? std::to_string(loaded.indices[n]->m) : "";
    const std::string n_cell = loaded.indices[n] ? std::to_string(loaded.indices[n]->n) : "";
    csv += std::to_string(n + 1) + "," + m_cell + "," + n_cell + "," +
           csv_cell(report.time_mean) + "," + csv_cell(report.time_dispersion) + "," +
           csv_cell(report.freq_mean) + "," + csv_cell(report.freq_dispersion) + "," +
           csv_cell(report.heisenberg_product) + "\n";
  }

  Json payload;
  payload["meta"] = meta_json(config);
  if (loaded.spec) payload["spec"] = tfconc::to_json(*loaded.spec);
  payload["count"] = loaded.elements.size();
  payload["elements"] = elements;
  payload["growth_certificate"] = tfconc::growth_certificate(freq_means);
  emit(config, payload, csv);
  if (want_samples) dump_samples(config, loaded.elements);
  return 0;
}

int cmd_construct_exact(const RunConfig& config, std::size_t count, double epsilon,
                        bool want_samples) {
  require_exponents(config);
  const tfconc::Grid grid = tfconc::make_grid(config.grid_extent, config.grid_points);
  const tfconc::PerturbedSystem system =
      tfconc::build_perturbed_exact(grid, count, epsilon, config.p, config.q);
  const tfconc::ConcentrationReport reference =
      tfconc::concentration_report(tfconc::gaussian(grid), config.p, config.q);

  bool all_passed = true;
  std::string first_violated;
  Json elements = Json::array();
  std::string csv =
      "ordinal,m,n,alpha,time_mean,freq_mean,time_dispersion,freq_dispersion,"
      "time_mean_ok,freq_mean_ok,time_dispersion_ok,freq_dispersion_ok\n";
  for (std::size_t n = 0; n < count; ++n) {
    const tfconc::ConcentrationReport report =
        tfconc::concentration_report(system.elements[n], config.p, config.q);
    const bool time_mean_ok = std::abs(report.time_mean) < epsilon;
    const bool freq_mean_ok = std::abs(report.freq_mean) < epsilon;
    const bool time_disp_ok = report.time_dispersion < reference.time_dispersion + epsilon;
    const bool freq_disp_ok = report.freq_dispersion < reference.freq_dispersion + epsilon;
    if (!(time_mean_ok && freq_mean_ok && time_disp_ok && freq_disp_ok)) {
      all_passed = false;
      if (first_violated.empty())
        first_violated = !time_mean_ok   ? "|time_mean| < epsilon"
                         : !freq_mean_ok ? "|freq_mean| < epsilon"
                         : !time_disp_ok ? "time_dispersion < reference + epsilon"
                                         : "freq_dispersion < reference + epsilon";
    }
    const tfconc::GaborIndex index = system.spec.indices[n + 1];
    Json entry;
    entry["ordinal"] = n + 1;
    entry["perturbing_index"] = Json::array({index.m, index.n});
    entry["alpha"] = system.spec.alphas[n];
    entry["report"] = tfconc::to_json(report);
    Json bounds;
    bounds["time_mean_ok"] = time_mean_ok;
    bounds["freq_mean_ok"] = freq_mean_ok;
    bounds["time_dispersion_ok"] = time_disp_ok;
    bounds["freq_dispersion_ok"] = freq_disp_ok;
    entry["bounds"] = bounds;
    elements.push_back(entry);
    csv += std::to_string(n + 1) + "," + std::to_string(index.m) + "," +
           std::to_string(index.n) + "," + csv_cell(system.spec.alphas[n]) + "," +
           csv_cell(report.time_mean) + "," + csv_cell(report.freq_mean) + "," +
           csv_cell(report.time_dispersion) + "," + csv_cell(report.freq_dispersion) + "," +
           (time_mean_ok ? "1" : "0") + "," + (freq_mean_ok ? "1" : "0") + "," +
           (time_disp_ok ? "1" : "0") + "," + (freq_disp_ok ? "1" : "0") + "\n";
  }

  const tfconc::EnvelopePair envelope = tfconc::envelopes(system.elements);
  double reconstruct_error = 0.0;
  for (std::size_t n = 1; n <= count; ++n) {
    const tfconc::SampledFunction rebuilt = tfconc::reconstruct_e(system, n);
    const tfconc::SampledFunction direct = tfconc::gabor_atom(grid, system.spec.indices[n]);
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.n_points; ++k)
      sum += std::norm(rebuilt.values[k] - direct.values[k]);
    reconstruct_error = std::max(reconstruct_error, std::sqrt(grid.spacing * sum));
  }

  Json payload;
  payload["meta"] = meta_json(config);
  payload["spec"] = tfconc::to_json(system.spec);
  payload["reference"] = {{"time_dispersion", reference.time_dispersion},
                          {"freq_dispersion", reference.freq_dispersion}};
  payload["elements"] = elements;
  payload["envelope"] = {{"time_norm", envelope.time_envelope_norm},
                         {"freq_norm", envelope.freq_envelope_norm}};
  payload["reconstruct_max_error"] = reconstruct_error;
  payload["all_bounds_passed"] = all_passed;
  emit(config, payload, csv);
  if (want_samples) dump_samples(config, system.elements);
  if (!all_passed) {
    std::fprintf(stderr, "construction bound violated: %s\n", first_violated.c_str());
    return 4;
  }
  return 0;
}

int cmd_separate(const RunConfig& config, const std::string& gram_path, double D) {
  std::ifstream gram_stream = open_input(gram_path);
  const tfconc::ComplexMatrix gram = tfconc::read_gram_csv(gram_stream);
  const tfconc::SeparationResult result = tfconc::greedy_separated_subset(gram, D);
  Json payload;
  payload["meta"] = meta_json(config);
  payload["result"] = tfconc::to_json(result);
  std::string csv = "selected,threshold,d_count,guarantee,hypothesis_ok\n";
  for (std::size_t i = 0; i < result.selected.size(); ++i)
    csv += std::to_string(result.selected[i]) +
           (i == 0 ? "," + csv_cell(result.threshold) + "," + std::to_string(result.d_count) +
                         "," + std::to_string(result.guarantee) + "," +
                         (result.hypothesis_ok ? "1" : "0")
                   : ",,,,") +
           "\n";
  emit(config, payload, csv);
  return 0;
}

int cmd_compactness(const RunConfig& config, const std::string& source,
                    std::size_t count_override, const std::vector<int>& shift_steps,
                    const std::vector<double>& radii) {
  const tfconc::Grid grid = tfconc::make_grid(config.grid_extent, config.grid_points);
  const LoadedSystem loaded = load_system(config, grid, source, count_override);

  const double edge = 0.45 * grid.extent;
  for (std::size_t n = 0; n < loaded.elements.size(); ++n) {
    const double tail = tfconc::tail_mass(loaded.elements[n], edge);
    if (tail > 1e-9)
      std::fprintf(stderr,
                   "warning: element %zu has tail mass %.3e at |t| >= %.3f; circular "
                   "shifts may wrap\n",
                   n + 1, tail, edge);
  }

  std::vector<double> shifts;
  for (int step : shift_steps) shifts.push_back(step * grid.spacing);
  const tfconc::CompactnessProfile profile =
      tfconc::compactness_profile(loaded.elements, shifts, radii);

  Json payload;
  payload["meta"] = meta_json(config);
  payload["profile"] = tfconc::to_json(profile);
  std::string csv = "kind,x,y\n";
  for (const auto& [a, w] : profile.shift_modulus)
    csv += "shift," + csv_cell(a) + "," + csv_cell(w) + "\n";
  for (const auto& [R, rho] : profile.decay_modulus)
    csv += "decay," + csv_cell(R) + "," + csv_cell(rho) + "\n";
  for (const auto& [R, rho] : profile.dual_decay_modulus)
    csv += "dual_decay," + csv_cell(R) + "," + csv_cell(rho) + "\n";
  emit(config, payload, csv);
  return 0;
}

int cmd_frame_bounds(const RunConfig& config, const std::string& gram_path,
                     const std::string& source, std::size_t count_override) {
  tfconc::ComplexMatrix gram;
  if (!gram_path.empty()) {
    std::ifstream gram_stream = open_input(gram_path);
    gram = tfconc::read_gram_csv(gram_stream);
  } else {
    const tfconc::Grid grid = tfconc::make_grid(config.grid_extent, config.grid_points);
    const LoadedSystem loaded = load_system(config, grid, source, count_override);
    gram = tfconc::gram_matrix(loaded.elements);
  }
  const tfconc::FrameDiagnostics diagnostics = tfconc::frame_diagnostics(gram);
  Json payload;
  payload["meta"] = meta_json(config);
  payload["diagnostics"] = tfconc::to_json(diagnostics);
  std::string csv = "lower_bound_est,upper_bound_est,smallest_singular_value,section_size\n";
  csv += csv_cell(diagnostics.lower_bound_est) + "," + csv_cell(diagnostics.upper_bound_est) +
         "," + csv_cell(diagnostics.smallest_singular_value) + "," +
         std::to_string(diagnostics.section_size) + "\n";
  emit(config, payload, csv);
  return 0;
}

int cmd_tail_sum(const RunConfig& config, double N, double A, double c, double r,
                 std::size_t n_max) {
  const double value = tfconc::tail_sum(N, A, c, config.p, config.q, r, n_max);
  Json payload;
  payload["meta"] = meta_json(config);
  payload["N"] = N;
  payload["A"] = A;
  payload["c"] = c;
  payload["r"] = r;
  payload["n_max"] = n_max;
  payload["value"] = value;
  emit(config, payload, "value\n" + csv_cell(value) + "\n");
  return 0;
}

int cmd_verify(const RunConfig& config, double corrupt_fft) {
  tfconc::VerifyOptions options;
  options.extent = config.grid_extent;
  options.n_points = config.grid_points;
  options.seed = config.seed;
  options.fft_corruption = corrupt_fft;
  const std::vector<tfconc::VerifyCheck> checks = tfconc::run_verify_suite(options);

  std::size_t passed = 0;
  std::string first_failed;
  std::string table;
  for (const tfconc::VerifyCheck& check : checks) {
    char line[640];
    std::snprintf(line, sizeof line, "%-40s %-5s %s\n", check.name.c_str(),
                  check.passed ? "PASS" : "FAIL", check.detail.c_str());
    table += line;
    if (check.passed)
      ++passed;
    else if (first_failed.empty())
      first_failed = check.name;
  }
  char summary[96];
  std::snprintf(summary, sizeof summary, "%zu checks, %zu passed, %zu failed\n",
                checks.size(), passed, checks.size() - passed);
  table += summary;
  std::fputs(table.c_str(), stdout);

  if (!config.out.empty()) {
    Json payload;
    payload["meta"] = meta_json(config);
    payload["checks"] = tfconc::to_json(checks);
    payload["passed"] = first_failed.empty();
    payload["first_failed"] = first_failed.empty() ? Json(nullptr) : Json(first_failed);
    std::ofstream stream(config.out, std::ios::binary);
    if (!stream) throw std::invalid_argument("cannot open output path: " + config.out);
    stream << payload.dump(2) << "\n";
  }

  if (!first_failed.empty()) {
    std::fprintf(stderr, "verify failed: first failing check: %s\n", first_failed.c_str());
    return 1;
  }
  return 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const tfconc::construction_failure& e) {
    std::fprintf(stderr, "construction failure: %s (violated bound: %s)\n", e.what(),
                 e.violated_condition.c_str());
    return 4;
  } catch (const tfconc::hypothesis_violation& e) {
    std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
    return 2;
  } catch (const tfconc::numeric_domain_error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "bad input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

} // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"time-frequency concentration toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--grid-extent", config.grid_extent, "time window length T")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-points", config.grid_points, "samples per window (power of two)");
  app.add_option("--p", config.p, "time-side exponent");
  app.add_option("--q", config.q, "frequency-side exponent");
  app.add_option("--out", config.out, "output path (default: stdout)");
  app.add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", config.seed, "seed for randomized checks");

  std::string system_source;
  std::size_t count = 0;
  bool want_samples = false;
  double epsilon = 0.1;
  std::string gram_path;
  double D = 0.0;
  std::vector<int> shift_steps = {0, 1, 2, 4, 8, 16, 32, 64};
  std::vector<double> radii = {2.0, 4.0, 8.0};
  double tail_N = 100.0, tail_A = 0.0, tail_c = 1.0, tail_r = 2.0;
  std::size_t n_max = 1000000;
  double corrupt_fft = 0.0;

  CLI::App* analyze = app.add_subcommand("analyze", "concentration report per element");
  analyze->add_option("--system", system_source, "SystemSpec JSON or directory of CSVs");
  analyze->add_option("--count", count, "number of elements (overrides the system description)");
  analyze->add_flag("--dump-samples", want_samples, "write per-element CSVs next to --out");

  CLI::App* construct =
      app.add_subcommand("construct-exact", "build the perturbed exact system");
  construct->add_option("--count", count, "number of elements")->required();
  construct->add_option("--epsilon", epsilon, "admissibility bound")
      ->check(CLI::PositiveNumber);
  construct->add_flag("--dump-samples", want_samples, "write per-element CSVs next to --out");

  CLI::App* separate = app.add_subcommand("separate", "greedy separated subset of a Gram");
  separate->add_option("--gram", gram_path, "Gram matrix CSV")->required();
  separate->add_option("--D", D, "coherence-count bound")->required()
      ->check(CLI::PositiveNumber);

  CLI::App* compactness =
      app.add_subcommand("compactness", "equicontinuity and decay moduli of a family");
  compactness->add_option("--system", system_source, "SystemSpec JSON or directory of CSVs");
  compactness->add_option("--count", count, "number of elements (overrides the system description)");
  compactness->add_option("--shift-steps", shift_steps,
                          "shift sizes as integer multiples of the grid spacing");
  compactness->add_option("--radii", radii, "tail radii");

  CLI::App* frame_bounds =
      app.add_subcommand("frame-bounds", "finite-section frame bound estimates");
  frame_bounds->add_option("--gram", gram_path, "Gram matrix CSV");
  frame_bounds->add_option("--system", system_source, "SystemSpec JSON or directory of CSVs");
  frame_bounds->add_option("--count", count, "number of elements (overrides the system description)");

  CLI::App* tail = app.add_subcommand("tail-sum", "certified upper tail-sum estimate");
  tail->add_option("--N", tail_N, "translation parameter");
  tail->add_option("--A", tail_A, "concentration box size");
  tail->add_option("--c", tail_c, "frequency gap constant")->check(CLI::PositiveNumber);
  tail->add_option("--r", tail_r, "summability exponent")->check(CLI::PositiveNumber);
  tail->add_option("--n-max", n_max, "terms summed directly before the integral remainder");

  CLI::App* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
  verify->add_option("--corrupt-fft", corrupt_fft, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  return run_guarded([&]() -> int {
    if (analyze->parsed()) return cmd_analyze(config, system_source, count, want_samples);
    if (construct->parsed())
      return cmd_construct_exact(config, count, epsilon, want_samples);
    if (separate->parsed()) return cmd_separate(config, gram_path, D);
    if (compactness->parsed())
      return cmd_compactness(config, system_source, count, shift_steps, radii);
    if (frame_bounds->parsed())
      return cmd_frame_bounds(config, gram_path, system_source, count);
    if (tail->parsed()) return cmd_tail_sum(config, tail_N, tail_A, tail_c, tail_r, n_max);
    if (verify->parsed()) return cmd_verify(config, corrupt_fft);
    return 2;
  });
}
