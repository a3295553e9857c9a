#include "crosslap/spectral/hubs.hpp"

#include <algorithm>
#include <cmath>

#include "crosslap/error.hpp"

namespace crosslap {

std::vector<Stage> stage_partition(const EigenDecomposition& e, double tol_group) {
  std::vector<Stage> stages;
  const Eigen::Index n = e.values.size();
  const double gap = tol_group * std::max(1.0, e.lambda_max());
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && e.values(i) - e.values(i - 1) <= gap) continue;
    Stage s;
    s.index = stages.size();
    double sum = 0.0;
    for (Eigen::Index j = begin; j < i; ++j) {
      s.members.push_back(static_cast<std::size_t>(j));
      sum += e.values(j);
    }
    s.eigenvalue = sum / static_cast<double>(i - begin);
    stages.push_back(std::move(s));
    begin = i;
  }
  return stages;
}

std::vector<double> edge_intensities(const Stage& stage, const Eigen::MatrixXd& vectors, IntensityRule rule,
                                     double tol_zero) {
  std::vector<double> out(static_cast<std::size_t>(vectors.rows()), 0.0);
  for (std::size_t member : stage.members) {
    const auto col = vectors.col(static_cast<Eigen::Index>(member));
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double v = std::abs(col(r));
      if (v < tol_zero) continue;
      auto& slot = out[static_cast<std::size_t>(r)];
      slot = rule == IntensityRule::MaxAbs ? std::max(slot, v) : slot + v;
    }
  }
  return out;
}

std::vector<double> projector_diagonal(const Stage& stage, const Eigen::MatrixXd& vectors) {
  std::vector<double> out(static_cast<std::size_t>(vectors.rows()), 0.0);
  for (std::size_t member : stage.members) {
    const auto col = vectors.col(static_cast<Eigen::Index>(member));
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) out[static_cast<std::size_t>(r)] += col(r) * col(r);
  }
  return out;
}

namespace {

void require_cross_edges(const ChainBasis& basis) {
  if (basis.grade() != Grade{0, 0}) {
    throw Error(ErrorKind::UnsupportedGrade, "cross-hubs are defined on grade (0,0), got " + to_string(basis.grade()));
  }
}

VertexId far_node(const Crossimplex& edge, Side part) {
  return part == Side::Top ? edge.bottom().front() : edge.top().front();
}

}  // namespace

std::map<VertexId, double> spectral_cross_hubs(const ChainBasis& basis, std::span<const double> intensities,
                                               Side part, double tol_zero) {
  require_cross_edges(basis);
  std::map<VertexId, double> hubs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (intensities[i] > 0.0) hubs[far_node(basis[i], part)] += intensities[i];
  }
  std::erase_if(hubs, [&](const auto& kv) { return kv.second <= tol_zero; });
  return hubs;
}

std::map<VertexId, double> projector_hubness(const ChainBasis& basis, const Stage& stage,
                                             const Eigen::MatrixXd& vectors, Side part, double tol_zero) {
  auto diag = projector_diagonal(stage, vectors);
  for (auto& d : diag) d = d > tol_zero * tol_zero ? std::sqrt(d) : 0.0;
  return spectral_cross_hubs(basis, diag, part, tol_zero);
}

std::vector<std::pair<VertexId, double>> ranked(const std::map<VertexId, double>& hubs) {
  std::vector<std::pair<VertexId, double>> out(hubs.begin(), hubs.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

const Stage* SpectralAnalysis::harmonic_stage() const {
  if (stages.empty()) return nullptr;
  const double scale = std::max(1.0, decomposition.lambda_max());
  const Stage& first = stages.front();
  return first.eigenvalue <= tol_zero * scale ? &first : nullptr;
}

const Stage& SpectralAnalysis::principal_stage() const { return stages.back(); }

SpectralAnalysis analyze(const Bicomplex& x, Grade grade, Side part, const SpectralOptions& options) {
  SpectralAnalysis a;
  a.tol_zero = options.tol_zero;
  a.laplacian = laplacian(x, grade.k, grade.l, part);
  a.decomposition = eig(a.laplacian, options.eig_options());
  a.stages = stage_partition(a.decomposition, options.tol_group);
  const bool hubs = grade == Grade{0, 0};
  for (auto& s : a.stages) {
    s.intensities = edge_intensities(s, a.decomposition.vectors, options.rule, options.tol_zero);
    if (hubs) s.hubs = spectral_cross_hubs(a.laplacian.basis, s.intensities, part, options.tol_zero);
  }
  return a;
}

std::map<VertexId, double> harmonic_cross_hubs(const Bicomplex& x, Side part, const SpectralOptions& options) {
  const auto a = analyze(x, {0, 0}, part, options);
  const Stage* s = a.harmonic_stage();
  return s ? s->hubs : std::map<VertexId, double>{};
}

std::map<VertexId, double> principal_cross_hubs(const Bicomplex& x, Side part, const SpectralOptions& options) {
  return analyze(x, {0, 0}, part, options).principal_stage().hubs;
}

std::vector<std::pair<std::size_t, std::size_t>> consecutive_runs(std::span<const std::size_t> stages) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t s : stages) {
    if (!runs.empty() && runs.back().second + 1 == s) {
      runs.back().second = s;
    } else {
      runs.emplace_back(s, s);
    }
  }
  return runs;
}

std::vector<std::pair<std::size_t, std::size_t>> PersistenceBars::bars(VertexId node) const {
  auto it = presence.find(node);
  if (it == presence.end()) return {};
  return consecutive_runs(it->second);
}

PersistenceBars persistence_bars(const SpectralAnalysis& analysis) {
  if (!analysis.decomposition.full_spectrum) {
    throw Error(ErrorKind::SpectrumUnavailable, "persistence needs the full spectrum; only extremal stages were computed");
  }
  require_cross_edges(analysis.laplacian.basis);
  PersistenceBars bars;
  bars.stage_count = analysis.stages.size();
  for (const auto& s : analysis.stages) {
    for (const auto& [node, h] : s.hubs) bars.presence[node].push_back(s.index);
  }
  for (const auto& [node, stages] : bars.presence) bars.ranking.push_back(node);
  std::stable_sort(bars.ranking.begin(), bars.ranking.end(), [&](VertexId a, VertexId b) {
    const auto& sa = bars.presence.at(a);
    const auto& sb = bars.presence.at(b);
    if (sa.size() != sb.size()) return sa.size() > sb.size();
    return sa.back() > sb.back();
  });
  return bars;
}

PersistenceBars persistence_bars(const Bicomplex& x, Side part, const SpectralOptions& options) {
  return persistence_bars(analyze(x, {0, 0}, part, options));
}

SpectralReport summarize(const SpectralAnalysis& analysis) {
  SpectralReport r;
  r.grade = analysis.laplacian.grade;
  r.part = analysis.laplacian.part;
  r.full_spectrum = analysis.decomposition.full_spectrum;
  const auto& values = analysis.decomposition.values;
  r.eigenvalues.assign(values.data(), values.data() + values.size());
  for (const auto& s : analysis.stages) r.stages.push_back({s.eigenvalue, s.multiplicity(), s.hubs});
  if (r.full_spectrum && r.grade == Grade{0, 0}) r.bars = persistence_bars(analysis);
  return r;
}

std::vector<RankedHub> ranked_hubs(const SpectralReport& report, std::size_t top_n) {
  if (!report.bars) {
    throw Error(ErrorKind::SpectrumUnavailable, "report for grade " + to_string(report.grade) + " carries no persistence bars");
  }
  const auto& bars = *report.bars;
  std::vector<RankedHub> out;
  for (VertexId node : bars.ranking) {
    if (top_n && out.size() == top_n) break;
    const auto& stages = bars.presence.at(node);
    RankedHub h;
    h.rank = out.size() + 1;
    h.node = node;
    h.persistence_count = stages.size();
    h.last_stage = stages.back();
    h.hubness_last_stage = report.stages[h.last_stage].hubs.at(node);
    out.push_back(h);
  }
  return out;
}

}  // namespace crosslap
