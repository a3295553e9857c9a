#include "crosslap/io/formats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "crosslap/error.hpp"

namespace crosslap::io {

using json = nlohmann::ordered_json;

std::string Labels::label(Side side, VertexId v) const {
  const auto& names = side == Side::Top ? top : bottom;
  auto it = names.find(v);
  if (it != names.end()) return it->second;
  return (side == Side::Top ? "v1_" : "v2_") + std::to_string(v);
}

namespace {

[[noreturn]] void schema(const std::string& msg) { throw ParseError(ErrorKind::ParseError, 0, msg); }

std::vector<VertexId> id_list(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of vertex ids");
  std::vector<VertexId> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) schema(where + " must hold non-negative integers");
    out.push_back(v.get<VertexId>());
  }
  return out;
}

VertexId parse_id_key(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(key, &used);
    if (used == key.size()) return static_cast<VertexId>(v);
  } catch (const std::exception&) {
  }
  schema(where + ": key '" + key + "' is not a vertex id");
}

// Rounds to 10 significant digits and flushes round-off to zero, so
// reports do not depend on the last bits of the eigensolver.
double stable(double v) {
  if (std::abs(v) < 1e-12) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::stod(buf);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cell_name(const Crossimplex& a) { return to_string(a); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

json hubs_json(const std::map<VertexId, double>& hubs) {
  json j = json::object();
  for (const auto& [node, h] : hubs) j[std::to_string(node)] = stable(h);
  return j;
}

json report_json(const SpectralReport& r, const Labeler& label) {
  json j;
  j["grade"] = {r.grade.k, r.grade.l};
  j["part"] = std::string(1, side_letter(r.part));
  j["full_spectrum"] = r.full_spectrum;
  json values = json::array();
  for (double v : r.eigenvalues) values.push_back(stable(v));
  j["eigenvalues"] = values;
  json stages = json::array();
  std::map<VertexId, std::string> names;
  for (const auto& s : r.stages) {
    stages.push_back({{"lambda", stable(s.lambda)}, {"multiplicity", s.multiplicity}, {"hubs", hubs_json(s.hubs)}});
    for (const auto& [node, h] : s.hubs) names.emplace(node, label(node));
  }
  j["stages"] = stages;
  if (r.bars) {
    json bars = json::object();
    for (const auto& [node, present] : r.bars->presence) bars[std::to_string(node)] = present;
    j["bars"] = bars;
    j["ranking"] = r.bars->ranking;
  }
  json labels = json::object();
  for (const auto& [node, name] : names) labels[std::to_string(node)] = name;
  j["labels"] = labels;
  return j;
}

}  // namespace

LoadedBicomplex read_bicomplex(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("top-level value must be an object");
  if (!doc.contains("layers") || !doc["layers"].is_object()) schema("missing object \"layers\"");
  const auto& layers = doc["layers"];
  for (const auto& [key, value] : layers.items()) {
    if (key != "1" && key != "2") schema("layers must be named \"1\" and \"2\", got \"" + key + "\"");
  }
  std::vector<VertexId> top = layers.contains("1") ? id_list(layers["1"], "layers.1") : std::vector<VertexId>{};
  std::vector<VertexId> bottom = layers.contains("2") ? id_list(layers["2"], "layers.2") : std::vector<VertexId>{};
  std::sort(top.begin(), top.end());
  std::sort(bottom.begin(), bottom.end());

  std::vector<SeedCell> seed;
  if (doc.contains("crossimplices")) {
    const auto& cells = doc["crossimplices"];
    if (!cells.is_array()) schema("\"crossimplices\" must be an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      const std::string where = "crossimplices[" + std::to_string(i) + "]";
      if (!c.is_object()) schema(where + " must be an object");
      for (const auto& [key, value] : c.items()) {
        if (key != "top" && key != "bottom" && key != "weight") schema(where + ": unknown field \"" + key + "\"");
      }
      const auto t = c.contains("top") ? id_list(c["top"], where + ".top") : std::vector<VertexId>{};
      const auto b = c.contains("bottom") ? id_list(c["bottom"], where + ".bottom") : std::vector<VertexId>{};
      for (VertexId v : t) {
        if (!std::binary_search(top.begin(), top.end(), v)) {
          throw Error(ErrorKind::UnknownVertex, where + ": top vertex " + std::to_string(v) + " not in layer 1");
        }
      }
      for (VertexId v : b) {
        if (!std::binary_search(bottom.begin(), bottom.end(), v)) {
          throw Error(ErrorKind::UnknownVertex, where + ": bottom vertex " + std::to_string(v) + " not in layer 2");
        }
      }
      std::optional<double> weight;
      if (c.contains("weight")) {
        if (!c["weight"].is_number()) schema(where + ".weight must be a number");
        weight = c["weight"].get<double>();
      }
      seed.push_back({make_crossimplex(t, b).simplex, weight});
    }
  }

  LoadedBicomplex out;
  out.complex = close(seed, top, bottom);
  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_object()) schema("\"labels\" must be an object");
    for (const auto& [layer, names] : labels.items()) {
      if (layer != "1" && layer != "2") schema("labels must be keyed by layer \"1\" or \"2\"");
      if (!names.is_object()) schema("labels." + layer + " must be an object");
      auto& target = layer == "1" ? out.labels.top : out.labels.bottom;
      for (const auto& [id, name] : names.items()) {
        if (!name.is_string()) schema("labels." + layer + "." + id + " must be a string");
        target[parse_id_key(id, "labels." + layer)] = name.get<std::string>();
      }
    }
  }
  return out;
}

LoadedBicomplex parse_bicomplex(const std::filesystem::path& path) { return read_bicomplex(read_file(path)); }

std::string bicomplex_json(const Bicomplex& x, const Labels& labels) {
  json doc;
  doc["layers"] = {{"1", x.top_vertices()}, {"2", x.bottom_vertices()}};
  json cells = json::array();
  for (const auto& g : x.grades()) {
    for (const auto& a : x.grade(g)) {
      json c;
      c["top"] = std::vector<VertexId>(a.top().begin(), a.top().end());
      c["bottom"] = std::vector<VertexId>(a.bottom().begin(), a.bottom().end());
      if (x.weights().has(a)) c["weight"] = x.weight(a);
      cells.push_back(std::move(c));
    }
  }
  doc["crossimplices"] = cells;
  if (!labels.empty()) {
    json l = json::object();
    for (const auto& [layer, names] : {std::pair{"1", &labels.top}, std::pair{"2", &labels.bottom}}) {
      if (names->empty()) continue;
      json m = json::object();
      for (const auto& [id, name] : *names) m[std::to_string(id)] = name;
      l[layer] = m;
    }
    doc["labels"] = l;
  }
  return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> fields_of(const std::string& line) {
  std::istringstream ss(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string f; ss >> f;) out.push_back(f);
  return out;
}

long long parse_integer(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(ErrorKind::ParseError, line, std::string("line ") + std::to_string(line) + ": " + what + " '" + s +
                                                    "' is not an integer");
}

}  // namespace

Multiplex read_multiplex(std::istream& in) {
  Multiplex m;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    const auto f = fields_of(text);
    if (f.empty()) continue;
    const std::string at = "line " + std::to_string(line) + ": ";
    if (f.size() != 3 && f.size() != 4) {
      throw ParseError(ErrorKind::ParseError, line, at + "expected 'layer u v [weight]', got " + std::to_string(f.size()) + " fields");
    }
    const long long layer = parse_integer(f[0], line, "layer id");
    const long long u = parse_integer(f[1], line, "node id");
    const long long v = parse_integer(f[2], line, "node id");
    if (u < 1 || v < 1 || u > UINT32_MAX || v > UINT32_MAX) {
      throw ParseError(ErrorKind::ParseError, line, at + "node ids are 1-based");
    }
    if (layer < INT32_MIN || layer > INT32_MAX) throw ParseError(ErrorKind::ParseError, line, at + "layer id out of range");
    if (u == v) throw ParseError(ErrorKind::SelfLoop, line, at + "self-loop at node " + f[1]);
    std::optional<double> weight;
    if (f.size() == 4) {
      try {
        std::size_t used = 0;
        weight = std::stod(f[3], &used);
        if (used != f[3].size()) throw std::invalid_argument(f[3]);
      } catch (const std::exception&) {
        throw ParseError(ErrorKind::ParseError, line, at + "weight '" + f[3] + "' is not a number");
      }
      if (!(std::isfinite(*weight) && *weight > 0)) {
        throw ParseError(ErrorKind::InvalidWeight, line, at + "weight must be positive");
      }
    }
    m.ensure_node(static_cast<VertexId>(std::max(u, v)));
    m.add_edge(static_cast<int>(layer), static_cast<VertexId>(u), static_cast<VertexId>(v), weight);
  }
  return m;
}

void read_labels(std::istream& in, Multiplex& m) {
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    std::string id;
    if (!(ss >> id)) continue;
    const long long node = parse_integer(id, line, "node id");
    std::string name;
    std::getline(ss >> std::ws, name);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (node < 1 || node > UINT32_MAX || name.empty()) {
      throw ParseError(ErrorKind::ParseError, line, "line " + std::to_string(line) + ": expected 'node_id label'");
    }
    m.ensure_node(static_cast<VertexId>(node));
    m.set_label(static_cast<VertexId>(node), name);
  }
}

Multiplex parse_multiplex(const std::filesystem::path& path, const std::optional<std::filesystem::path>& labels) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  Multiplex m = read_multiplex(in);
  if (labels) {
    std::ifstream lin(*labels);
    if (!lin) throw Error(ErrorKind::ParseError, "cannot open " + labels->string());
    read_labels(lin, m);
  }
  return m;
}

std::string format_number(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string betti_csv(const std::vector<std::pair<Grade, BettiVector>>& rows) {
  std::string out = "grade,top,bottom\n";
  for (const auto& [g, b] : rows) {
    out += to_string(g) + "," + std::to_string(b.top) + "," + std::to_string(b.bottom) + "\n";
  }
  return out;
}

std::string betti_table_csv(const BettiTable& table) {
  std::set<Grade> grades;
  std::string out = "grade";
  for (const auto& [pair, column] : table) {
    out += "," + std::to_string(pair.first) + "->" + std::to_string(pair.second);
    for (const auto& [g, b] : column) grades.insert(g);
  }
  out += "\n";
  for (const auto& g : grades) {
    out += csv_field(to_string(g));
    for (const auto& [pair, column] : table) {
      auto it = column.find(g);
      out += ",";
      if (it != column.end()) out += csv_field("(" + std::to_string(it->second.top) + "," + std::to_string(it->second.bottom) + ")");
    }
    out += "\n";
  }
  return out;
}

std::string laplacian_csv(const Laplacian& lap) {
  const Eigen::MatrixXd m = lap.dense();
  std::string out = "cell";
  for (const auto& a : lap.basis.cells()) out += "," + csv_field(cell_name(a));
  out += "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += csv_field(cell_name(lap.basis[static_cast<std::size_t>(r)]));
    for (Eigen::Index c = 0; c < m.cols(); ++c) out += "," + format_number(m(r, c));
    out += "\n";
  }
  return out;
}

std::string hubs_csv(const std::map<VertexId, double>& hubs, const Labeler& label) {
  std::string out = "rank,node,label,hubness\n";
  std::size_t rank = 0;
  for (const auto& [node, h] : ranked(hubs)) {
    out += std::to_string(++rank) + "," + std::to_string(node) + "," + csv_field(label(node)) + "," + format_number(h) + "\n";
  }
  return out;
}

std::string stage_hubs_csv(const SpectralReport& report, const Labeler& label) {
  std::string out = "stage,lambda,rank,node,label,hubness\n";
  for (std::size_t s = 0; s < report.stages.size(); ++s) {
    std::size_t rank = 0;
    for (const auto& [node, h] : ranked(report.stages[s].hubs)) {
      out += std::to_string(s) + "," + format_number(report.stages[s].lambda) + "," + std::to_string(++rank) + "," +
             std::to_string(node) + "," + csv_field(label(node)) + "," + format_number(h) + "\n";
    }
  }
  return out;
}

std::string persistence_csv(const std::vector<RankedHub>& ranking, const Labeler& label) {
  std::string out = "rank,node,label,persistence_count,last_stage,hubness_last_stage\n";
  for (const auto& h : ranking) {
    out += std::to_string(h.rank) + "," + std::to_string(h.node) + "," + csv_field(label(h.node)) + "," +
           std::to_string(h.persistence_count) + "," + std::to_string(h.last_stage) + "," +
           format_number(h.hubness_last_stage) + "\n";
  }
  return out;
}

std::string spectral_report_json(const SpectralReport& report, const Labeler& label) {
  return report_json(report, label).dump(2) + "\n";
}

std::string diffusion_report_json(const DiffusionReport& report, const Labeler& label) {
  json j;
  j["source_layer"] = report.s;
  j["target_layer"] = report.t;
  j["cross_edges"] = report.cross_edges;
  j["spectral"] = report_json(report.spectral, label);
  json rows = json::array();
  for (const auto& h : report.ranking) {
    rows.push_back({{"rank", h.rank},
                    {"node", h.node},
                    {"label", label(h.node)},
                    {"persistence_count", h.persistence_count},
                    {"last_stage", h.last_stage},
                    {"hubness_last_stage", stable(h.hubness_last_stage)}});
  }
  j["top"] = rows;
  return j.dump(2) + "\n";
}

std::string render_barcode_svg(const PersistenceBars& bars, const Labeler& label) {
  if (bars.empty()) throw Error(ErrorKind::EmptyReport, "no persistence bars to draw");
  constexpr int kLeft = 140, kTop = 30, kRow = 18, kBar = 12, kRight = 20, kBottom = 40;
  const std::size_t stages = std::max<std::size_t>(bars.stage_count, 1);
  const int cell = std::max(4, static_cast<int>(600 / stages));
  const int width = kLeft + cell * static_cast<int>(stages) + kRight;
  const int height = kTop + kRow * static_cast<int>(bars.ranking.size()) + kBottom;
  const int axis_y = kTop + kRow * static_cast<int>(bars.ranking.size()) + 4;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"11\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t row = 0; row < bars.ranking.size(); ++row) {
    const VertexId node = bars.ranking[row];
    const int y = kTop + kRow * static_cast<int>(row);
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + kBar - 2 << "\" text-anchor=\"end\">"
        << xml_escape(label(node)) << "</text>\n";
    for (const auto& [first, last] : bars.bars(node)) {
      svg << "<rect x=\"" << kLeft + cell * static_cast<int>(first) << "\" y=\"" << y << "\" width=\""
          << cell * static_cast<int>(last - first + 1) << "\" height=\"" << kBar << "\" fill=\"#3060a0\"/>\n";
    }
  }
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << axis_y << "\" x2=\"" << kLeft + cell * static_cast<int>(stages)
      << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
  const std::size_t step = std::max<std::size_t>(1, stages / 10);
  for (std::size_t s = 0; s < stages; s += step) {
    const int x = kLeft + cell * static_cast<int>(s) + cell / 2;
    svg << "<text x=\"" << x << "\" y=\"" << axis_y + 14 << "\" text-anchor=\"middle\">" << s << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + cell * static_cast<int>(stages) / 2 << "\" y=\"" << axis_y + 30
      << "\" text-anchor=\"middle\">stage</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::InvalidConfig, "cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace crosslap::io
