#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crosslap/diffusion/multiplex.hpp"
#include "crosslap/homology/betti.hpp"
#include "crosslap/spectral/hubs.hpp"

namespace crosslap::io {

/// Display names per layer; unnamed vertices render as "v1_<id>" / "v2_<id>".
struct Labels {
  std::map<VertexId, std::string> top;
  std::map<VertexId, std::string> bottom;

  std::string label(Side side, VertexId v) const;
  bool empty() const { return top.empty() && bottom.empty(); }
};

using Labeler = std::function<std::string(VertexId)>;

struct LoadedBicomplex {
  Bicomplex complex;
  Labels labels;
};

/// Bicomplex JSON: {"layers": {"1": [...], "2": [...]}, "crossimplices":
/// [{"top": [...], "bottom": [...], "weight": w?}], "labels": {...}?}.
/// Closure is applied. Throws ParseError on schema problems, UnknownVertex
/// for vertices missing from "layers", InvalidWeight for bad weights.
LoadedBicomplex read_bicomplex(std::string_view text);
LoadedBicomplex parse_bicomplex(const std::filesystem::path& path);

/// Lists every cell, so reading the output back gives an equal bicomplex.
std::string bicomplex_json(const Bicomplex& x, const Labels& labels = {});

/// Edge list "layer u v [weight]" with '#' comments; ids are 1-based.
Multiplex read_multiplex(std::istream& in);
/// Label lines "node_id label"; grows the node set when needed.
void read_labels(std::istream& in, Multiplex& m);
Multiplex parse_multiplex(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& labels = std::nullopt);

/// Six significant digits.
std::string format_number(double v);

std::string betti_csv(const std::vector<std::pair<Grade, BettiVector>>& rows);
/// Rows are grades, columns are layer pairs "s->t", cells "(b1,b2)".
std::string betti_table_csv(const BettiTable& table);
/// Dense operator matrix with cell names on both axes.
std::string laplacian_csv(const Laplacian& lap);
/// rank,node,label,hubness
std::string hubs_csv(const std::map<VertexId, double>& hubs, const Labeler& label);
/// stage,lambda,rank,node,label,hubness
std::string stage_hubs_csv(const SpectralReport& report, const Labeler& label);
/// rank,node,label,persistence_count,last_stage,hubness_last_stage
std::string persistence_csv(const std::vector<RankedHub>& ranking, const Labeler& label);

std::string spectral_report_json(const SpectralReport& report, const Labeler& label);
std::string diffusion_report_json(const DiffusionReport& report, const Labeler& label);

/// One row per ranked node, one bar per run of consecutive stages. Throws
/// EmptyReport when there are no bars.
std::string render_barcode_svg(const PersistenceBars& bars, const Labeler& label);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace crosslap::io
