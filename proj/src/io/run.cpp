#include "crosslap/io/run.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <vector>

#include "crosslap/error.hpp"

namespace crosslap::io {

namespace {

using Outputs = std::vector<std::pair<std::filesystem::path, std::string>>;

bool wants(const RunConfig& c, const std::string& format) { return c.formats.empty() || c.formats.contains(format); }

bool input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::SelfLoop:
    case ErrorKind::InvalidWeight:
    case ErrorKind::UnknownVertex:
    case ErrorKind::DegenerateSimplex:
    case ErrorKind::EmptySimplex:
    case ErrorKind::InvalidBicomplex:
      return true;
    default:
      return false;
  }
}

std::string stem(const RunConfig& c) { return c.input.stem().string(); }

void require_bicomplex_input(const RunConfig& c, const char* command) {
  if (c.kind != InputKind::Bicomplex) {
    throw Error(ErrorKind::InvalidConfig, std::string(command) + " takes a bicomplex JSON file");
  }
}

Labeler hub_labeler(const Labels& labels, Side part) {
  // Part T hubs are bottom vertices and part B hubs are top vertices.
  const Side side = opposite(part);
  return [&labels, side](VertexId v) { return labels.label(side, v); };
}

void betti(const RunConfig& c, Outputs& out, std::ostream& log) {
  require_bicomplex_input(c, "betti");
  const auto loaded = parse_bicomplex(c.input);
  const auto& x = loaded.complex;
  std::set<Grade> grades;
  for (const auto& g : default_betti_grades()) grades.insert(g);
  for (const auto& g : x.grades()) grades.insert(g);
  BettiOptions options;
  options.tol_zero = resolve_spectral_options(c).tol_zero;
  std::vector<std::pair<Grade, BettiVector>> rows;
  for (const auto& g : grades) {
    const auto r = betti_vector(x, g.k, g.l, options);
    if (r.routes_agree && !*r.routes_agree) {
      log << "warning: Laplacian nullity at " << to_string(g) << " disagrees with rank-nullity\n";
    }
    rows.emplace_back(g, r.value);
  }
  out.emplace_back(c.output_dir / (stem(c) + ".betti.csv"), betti_csv(rows));
}

void laplacian_dump(const RunConfig& c, Outputs& out) {
  require_bicomplex_input(c, "laplacian");
  const auto loaded = parse_bicomplex(c.input);
  const auto lap = laplacian(loaded.complex, c.grade.k, c.grade.l, c.part);
  const std::string name = stem(c) + ".laplacian_" + side_letter(c.part) + "_" + std::to_string(c.grade.k) + "_" +
                           std::to_string(c.grade.l) + ".csv";
  out.emplace_back(c.output_dir / name, laplacian_csv(lap));
}

std::string spectral_name(const RunConfig& c, const std::string& kind, const std::string& ext) {
  return stem(c) + "." + kind + "_" + side_letter(c.part) + "_" + std::to_string(c.grade.k) + "_" +
         std::to_string(c.grade.l) + "." + ext;
}

void spectrum(const RunConfig& c, Outputs& out) {
  require_bicomplex_input(c, "spectrum");
  const auto loaded = parse_bicomplex(c.input);
  const auto report = summarize(analyze(loaded.complex, c.grade, c.part, resolve_spectral_options(c)));
  out.emplace_back(c.output_dir / spectral_name(c, "spectrum", "json"),
                   spectral_report_json(report, hub_labeler(loaded.labels, c.part)));
}

void hubs(const RunConfig& c, Outputs& out) {
  require_bicomplex_input(c, "hubs");
  if (c.grade != Grade{0, 0}) throw Error(ErrorKind::UnsupportedGrade, "hubs are defined on grade (0,0)");
  const auto loaded = parse_bicomplex(c.input);
  const auto analysis = analyze(loaded.complex, c.grade, c.part, resolve_spectral_options(c));
  const auto report = summarize(analysis);
  const auto label = hub_labeler(loaded.labels, c.part);
  std::string csv;
  std::string kind;
  switch (c.stage) {
    case StageSelect::Zero: {
      const Stage* s = analysis.harmonic_stage();
      csv = hubs_csv(s ? s->hubs : std::map<VertexId, double>{}, label);
      kind = "hubs_zero";
      break;
    }
    case StageSelect::Max:
      csv = hubs_csv(analysis.principal_stage().hubs, label);
      kind = "hubs_max";
      break;
    case StageSelect::All:
      csv = stage_hubs_csv(report, label);
      kind = "hubs_all";
      break;
  }
  if (wants(c, "csv")) out.emplace_back(c.output_dir / spectral_name(c, kind, "csv"), csv);
  if (wants(c, "json")) {
    out.emplace_back(c.output_dir / spectral_name(c, "spectrum", "json"), spectral_report_json(report, label));
  }
}

void persist(const RunConfig& c, Outputs& out) {
  require_bicomplex_input(c, "persist");
  if (c.grade != Grade{0, 0}) throw Error(ErrorKind::UnsupportedGrade, "persistence is defined on grade (0,0)");
  const auto loaded = parse_bicomplex(c.input);
  const auto report = summarize(analyze(loaded.complex, c.grade, c.part, resolve_spectral_options(c)));
  if (!report.bars) throw Error(ErrorKind::SpectrumUnavailable, "persistence needs the full spectrum");
  const auto label = hub_labeler(loaded.labels, c.part);
  const std::string svg = render_barcode_svg(*report.bars, label);
  if (wants(c, "json")) out.emplace_back(c.output_dir / spectral_name(c, "persist", "json"), spectral_report_json(report, label));
  if (wants(c, "csv")) {
    out.emplace_back(c.output_dir / spectral_name(c, "persist", "csv"), persistence_csv(ranked_hubs(report, c.top_n), label));
  }
  if (wants(c, "svg")) out.emplace_back(c.output_dir / spectral_name(c, "persist", "svg"), svg);
}

void diffuse(const RunConfig& c, Outputs& out) {
  if (c.kind != InputKind::Multiplex) throw Error(ErrorKind::InvalidConfig, "diffuse takes a multiplex edge list");
  const Multiplex m = parse_multiplex(c.input, c.labels);
  const auto spectral = resolve_spectral_options(c);
  DiffusionOptions options;
  options.use_weights = c.use_weights;
  std::vector<DiffusionReport> reports;
  if (c.layer_pair) {
    reports.push_back(diffusion_hub_analysis(m, c.layer_pair->first, c.layer_pair->second, c.top_n, spectral, options));
  } else {
    reports = diffusion_all_pairs(m, c.top_n, c.jobs, spectral, options);
  }
  const Labeler label = [&m](VertexId v) { return m.label(v); };
  for (const auto& r : reports) {
    const std::string base = stem(c) + ".diffuse_" + std::to_string(r.s) + "_" + std::to_string(r.t);
    if (wants(c, "csv")) out.emplace_back(c.output_dir / (base + ".csv"), persistence_csv(r.ranking, label));
    if (wants(c, "json")) out.emplace_back(c.output_dir / (base + ".json"), diffusion_report_json(r, label));
    if (wants(c, "svg") && r.spectral.bars && !r.spectral.bars->empty()) {
      out.emplace_back(c.output_dir / (base + ".svg"), render_barcode_svg(*r.spectral.bars, label));
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (input.empty()) fail("no input file");
  for (auto tol : {tol_zero, tol_group}) {
    if (tol && !(*tol > 0 && std::isfinite(*tol))) fail("tolerances must be positive");
  }
  if (grade.k < -1 || grade.l < -1 || (grade.k == -1 && grade.l == -1) || grade.k > 8 || grade.l > 8) {
    fail("grade " + to_string(grade) + " out of range");
  }
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "svg") fail("unknown output format '" + f + "'");
  }
  if (jobs == 0) fail("--jobs must be at least 1");
  if (layer_pair && layer_pair->first == layer_pair->second) fail("layer pair needs two distinct layers");
  if (labels && kind != InputKind::Multiplex) fail("a label file only applies to multiplex input");
  const bool multiplex_command = command == Command::Diffuse;
  if (multiplex_command != (kind == InputKind::Multiplex)) {
    fail(multiplex_command ? "diffuse takes a multiplex edge list" : "this command takes a bicomplex JSON file");
  }
}

SpectralOptions resolve_spectral_options(const RunConfig& config) {
  SpectralOptions o;
  o.rule = config.rule;
  if (config.tol_zero) {
    o.tol_zero = *config.tol_zero;
  } else if (const char* env = std::getenv("CROSSLAP_TOL_ZERO"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !(v > 0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidConfig, std::string("CROSSLAP_TOL_ZERO='") + env + "' is not a positive number");
    }
    o.tol_zero = v;
  }
  if (config.tol_group) o.tol_group = *config.tol_group;
  return o;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outputs outputs;
  try {
    config.validate();
    resolve_spectral_options(config);
    switch (config.command) {
      case Command::Betti: betti(config, outputs, err); break;
      case Command::Laplacian: laplacian_dump(config, outputs); break;
      case Command::Spectrum: spectrum(config, outputs); break;
      case Command::Hubs: hubs(config, outputs); break;
      case Command::Persist: persist(config, outputs); break;
      case Command::Diffuse: diffuse(config, outputs); break;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::InvalidConfig) return 2;
    return input_error(e.kind()) ? 3 : 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }

  std::vector<std::filesystem::path> written;
  try {
    std::filesystem::create_directories(config.output_dir);
    for (const auto& [path, content] : outputs) {
      write_atomic(path, content);
      written.push_back(path);
    }
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : written) std::filesystem::remove(p, ec);
    err << "error: " << e.what() << "\n";
    return 5;
  }
  for (const auto& p : written) out << p.string() << "\n";
  return 0;
}

}  // namespace crosslap::io
