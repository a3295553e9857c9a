#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crosslap/io/run.hpp"

using crosslap::io::Command;
using crosslap::io::InputKind;
using crosslap::io::RunConfig;

namespace {

struct Flags {
  std::string input;
  std::string labels;
  std::vector<int> grade{0, 0};
  std::string part = "T";
  std::string stage = "all";
  std::string pairs = "all";
  std::size_t top = 10;
  std::optional<double> tol_zero;
  std::optional<double> tol_group;
  std::string rule = "max";
  bool use_weights = false;
  std::size_t jobs = 1;
  std::string out = ".";
  std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("input", f.input, "input file")->required();
  cmd->add_option("--out,-o", f.out, "output directory");
  cmd->add_option("--format", f.formats, "output formats: csv json svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--tol-zero", f.tol_zero, "kernel / nonzero threshold (overrides CROSSLAP_TOL_ZERO)");
  cmd->add_option("--tol-group", f.tol_group, "relative eigenvalue grouping tolerance");
}

void add_spectral(CLI::App* cmd, Flags& f) {
  cmd->add_option("--grade", f.grade, "grade k l")->expected(2);
  cmd->add_option("--part", f.part, "T or B")->check(CLI::IsMember({"T", "B"}));
  cmd->add_option("--rule", f.rule, "intensity rule: max or l1")->check(CLI::IsMember({"max", "l1"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-homology and cross-Laplacian spectra of crossimplicial bicomplexes"};
  app.require_subcommand(1);
  Flags f;

  const std::map<std::string, Command> commands{
      {"betti", Command::Betti},   {"laplacian", Command::Laplacian}, {"spectrum", Command::Spectrum},
      {"hubs", Command::Hubs},     {"persist", Command::Persist},     {"diffuse", Command::Diffuse},
  };
  auto* betti = app.add_subcommand("betti", "cross-Betti vectors -> CSV");
  add_common(betti, f);
  auto* lap = app.add_subcommand("laplacian", "cross-Laplacian matrix -> CSV");
  add_common(lap, f);
  add_spectral(lap, f);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and stages -> JSON");
  add_common(spectrum, f);
  add_spectral(spectrum, f);
  auto* hubs = app.add_subcommand("hubs", "spectral cross-hubs -> CSV + JSON");
  add_common(hubs, f);
  add_spectral(hubs, f);
  hubs->add_option("--stage", f.stage, "zero, max or all")->check(CLI::IsMember({"zero", "max", "all"}));
  auto* persist = app.add_subcommand("persist", "persistence bars -> JSON + CSV + SVG");
  add_common(persist, f);
  add_spectral(persist, f);
  persist->add_option("--top", f.top, "rows in the ranking CSV (0 = all)");
  auto* diffuse = app.add_subcommand("diffuse", "diffusion hub analysis of a multiplex edge list");
  add_common(diffuse, f);
  diffuse->add_option("--labels", f.labels, "label file 'node_id label'");
  diffuse->add_option("--pairs", f.pairs, "'all' or 's,t'");
  diffuse->add_option("--top", f.top, "hubs per report (0 = all)");
  diffuse->add_option("--jobs,-j", f.jobs, "layer pairs analysed in parallel");
  diffuse->add_flag("--use-weights", f.use_weights, "record edge weights on cross-edges");

  CLI11_PARSE(app, argc, argv);

  RunConfig c;
  const std::string name = app.get_subcommands().front()->get_name();
  c.command = commands.at(name);
  c.input = f.input;
  c.kind = c.command == Command::Diffuse ? InputKind::Multiplex : InputKind::Bicomplex;
  if (!f.labels.empty()) c.labels = f.labels;
  c.grade = {f.grade[0], f.grade[1]};
  c.part = f.part == "B" ? crosslap::Side::Bottom : crosslap::Side::Top;
  c.stage = f.stage == "zero" ? crosslap::io::StageSelect::Zero
            : f.stage == "max" ? crosslap::io::StageSelect::Max
                               : crosslap::io::StageSelect::All;
  if (f.pairs != "all") {
    int s = 0, t = 0;
    char comma = 0;
    std::istringstream ss(f.pairs);
    if (!(ss >> s >> comma >> t) || comma != ',' || !ss.eof()) {
      std::cerr << "error: --pairs expects 'all' or 's,t'\n";
      return 2;
    }
    c.layer_pair = std::pair{s, t};
  }
  c.top_n = f.top;
  c.tol_zero = f.tol_zero;
  c.tol_group = f.tol_group;
  c.rule = f.rule == "l1" ? crosslap::IntensityRule::L1 : crosslap::IntensityRule::MaxAbs;
  c.use_weights = f.use_weights;
  c.jobs = f.jobs;
  c.output_dir = f.out;
  c.formats = {f.formats.begin(), f.formats.end()};
  return crosslap::io::run(c, std::cout, std::cerr);
}
