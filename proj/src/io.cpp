#include "thinstruct/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "thinstruct/address.hpp"

namespace thinstruct {

using njson = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_csv_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(cells[i]);
  }
  out += '\n';
}

njson exponent_json(double q) {
  if (q == kInf) return njson("inf");
  return njson(q);
}

double exponent_from_json(const njson& v) {
  if (v.is_string()) return parse_exponent(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument("exponent must be a number or \"inf\"");
}

}  // namespace

std::string csv_string(const CsvTable& t) {
  std::string out;
  for (const auto& c : t.comments) out += "# " + c + "\n";
  if (!t.header.empty()) append_csv_line(out, t.header);
  for (const auto& r : t.rows) append_csv_line(out, r);
  return out;
}

void write_csv_file(const std::string& path, const CsvTable& t) {
  write_text_file(path, csv_string(t));
}

std::string cloud_json(const GeneratedStructure& g) {
  const PointCloud& c = g.cloud;
  if (c.labels.size() != c.n())
    throw std::invalid_argument("cloud labels out of sync with points");
  njson j;
  j["schema"] = "cloud/1";
  j["kind"] = c.kind;
  j["k"] = c.k;
  j["exponent"] = exponent_json(c.q);
  j["epsilon"] = c.epsilon;
  j["branching"] = c.branching;
  j["dim"] = c.dim;
  j["cell_weight"] = c.cell_weight;
  j["labels"] = c.labels;
  njson pts = njson::array();
  for (std::size_t i = 0; i < c.n(); ++i) {
    njson row = njson::array();
    const double* p = c.point(i);
    for (std::size_t d = 0; d < c.dim; ++d) row.push_back(p[d]);
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  njson levels = njson::array();
  for (const auto& level : g.index.levels) {
    njson lv = njson::array();
    for (const auto& cp : level) {
      njson mem = njson::array();
      for (int m : cp.members) {
        if (m < 0 || static_cast<std::size_t>(m) >= c.labels.size())
          throw std::invalid_argument("copy member outside the cloud");
        mem.push_back(c.labels[m]);
      }
      lv.push_back(std::move(mem));
    }
    levels.push_back(std::move(lv));
  }
  j["index"] = std::move(levels);
  return j.dump() + "\n";
}

GeneratedStructure parse_cloud_json(const std::string& text) {
  njson j = njson::parse(text);
  if (j.value("schema", "") != "cloud/1")
    throw std::invalid_argument("not a cloud file (missing schema cloud/1)");
  GeneratedStructure g;
  PointCloud& c = g.cloud;
  c.kind = j.at("kind").get<std::string>();
  c.k = j.at("k").get<int>();
  c.q = exponent_from_json(j.at("exponent"));
  c.epsilon = j.at("epsilon").get<double>();
  c.branching = j.at("branching").get<int>();
  c.dim = j.at("dim").get<std::size_t>();
  c.cell_weight = j.at("cell_weight").get<double>();
  c.labels = j.at("labels").get<std::vector<std::string>>();
  if (c.dim == 0) throw std::invalid_argument("dim must be positive");

  const njson& pts = j.at("points");
  if (pts.size() != c.labels.size())
    throw std::invalid_argument("labels/points length mismatch");
  c.data.reserve(pts.size() * c.dim);
  for (const auto& row : pts) {
    if (row.size() != c.dim)
      throw std::invalid_argument("point dimension mismatch");
    for (const auto& v : row) c.data.push_back(v.get<double>());
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : c.labels)
      if (!seen.insert(l).second)
        throw std::invalid_argument("duplicate label: " + l);
  }

  SubstructureIndex& idx = g.index;
  idx.kind = c.kind;
  idx.k = c.k;
  idx.branching = c.branching;
  const njson& levels = j.at("index");
  idx.levels.resize(levels.size());
  for (std::size_t li = 0; li < levels.size(); ++li) {
    int want_level = static_cast<int>(li) + 1;
    for (const auto& mem : levels[li]) {
      Copy cp;
      if (mem.size() < 3)
        throw std::invalid_argument("copy needs at least one interior member");
      for (const auto& l : mem) {
        int id = c.index_of(l.get<std::string>());
        if (id < 0)
          throw std::invalid_argument("copy references unknown label: " +
                                      l.get<std::string>());
        cp.members.push_back(id);
      }
      VertexAddress a = VertexAddress::parse(c.labels[cp.members[1]]);
      cp.edge_path = a.edge_path;
      cp.level = c.k - static_cast<int>(a.edge_path.size());
      if (cp.level != want_level)
        throw std::invalid_argument("copy " + c.labels[cp.members[1]] +
                                    " filed under the wrong level");
      idx.levels[li].push_back(std::move(cp));
    }
  }
  return g;
}

void save_cloud(const std::string& path, const GeneratedStructure& g) {
  write_text_file(path, cloud_json(g));
}

GeneratedStructure load_cloud(const std::string& path) {
  return parse_cloud_json(read_text_file(path));
}

std::string graph_json(const StGraph& g) {
  njson j;
  j["schema"] = "graph/1";
  j["base"] = g.base;
  j["branching"] = g.base_b;
  j["k"] = g.k;
  j["source"] = g.vertices.at(g.source);
  j["sink"] = g.vertices.at(g.sink);
  j["vertices"] = g.vertices;
  njson edges = njson::array();
  for (auto [u, v] : g.edges)
    edges.push_back(njson::array({g.vertices.at(u), g.vertices.at(v)}));
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

StGraph parse_graph_json(const std::string& text) {
  njson j = njson::parse(text);
  if (j.value("schema", "") != "graph/1")
    throw std::invalid_argument("not a graph file (missing schema graph/1)");
  StGraph g;
  g.base = j.at("base").get<std::string>();
  g.base_b = j.at("branching").get<int>();
  g.k = j.at("k").get<int>();
  g.vertices = j.at("vertices").get<std::vector<std::string>>();
  auto resolve = [&](const std::string& l) {
    int id = g.index_of(l);
    if (id < 0) throw std::invalid_argument("unknown vertex label: " + l);
    return id;
  };
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw std::invalid_argument("edge needs two endpoints");
    g.edges.emplace_back(resolve(e[0].get<std::string>()),
                         resolve(e[1].get<std::string>()));
  }
  g.source = resolve(j.at("source").get<std::string>());
  g.sink = resolve(j.at("sink").get<std::string>());
  g.validate();
  return g;
}

void save_graph(const std::string& path, const StGraph& g) {
  write_text_file(path, graph_json(g));
}

StGraph load_graph(const std::string& path) {
  return parse_graph_json(read_text_file(path));
}

std::string map_json(const EmbeddingMap& f) {
  if (!f.domain) throw std::invalid_argument("map has no domain");
  const PointCloud& c = *f.domain;
  njson j;
  j["schema"] = "map/1";
  j["name"] = f.name;
  j["target_q"] = exponent_json(f.target_q);
  j["target_weight"] = f.target_weight;
  j["target_dim"] = f.target_dim;
  j["labels"] = c.labels;
  njson img = njson::array();
  for (std::size_t i = 0; i < c.n(); ++i) {
    njson row = njson::array();
    const double* p = f.ipoint(i);
    for (std::size_t d = 0; d < f.target_dim; ++d) row.push_back(p[d]);
    img.push_back(std::move(row));
  }
  j["image"] = std::move(img);
  return j.dump() + "\n";
}

EmbeddingMap parse_map_json(const std::string& text, const PointCloud& domain) {
  njson j = njson::parse(text);
  if (j.value("schema", "") != "map/1")
    throw std::invalid_argument("not a map file (missing schema map/1)");
  EmbeddingMap f;
  f.domain = &domain;
  f.name = j.at("name").get<std::string>();
  f.target_q = exponent_from_json(j.at("target_q"));
  f.target_weight = j.at("target_weight").get<double>();
  f.target_dim = j.at("target_dim").get<std::size_t>();
  auto labels = j.at("labels").get<std::vector<std::string>>();
  const njson& img = j.at("image");
  if (img.size() != labels.size())
    throw std::invalid_argument("map labels/image length mismatch");
  if (labels.size() != domain.n())
    throw std::invalid_argument("map does not cover the cloud");
  f.image.assign(domain.n() * f.target_dim, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int id = domain.index_of(labels[i]);
    if (id < 0)
      throw std::invalid_argument("map label not in cloud: " + labels[i]);
    const auto& row = img[i];
    if (row.size() != f.target_dim)
      throw std::invalid_argument("map image dimension mismatch");
    for (std::size_t d = 0; d < f.target_dim; ++d)
      f.image[static_cast<std::size_t>(id) * f.target_dim + d] =
          row[d].get<double>();
  }
  return f;
}

void save_map(const std::string& path, const EmbeddingMap& f) {
  write_text_file(path, map_json(f));
}

EmbeddingMap load_map(const std::string& path, const PointCloud& domain) {
  return parse_map_json(read_text_file(path), domain);
}

void write_metric_csv(const std::string& path, const FiniteMetric& m) {
  CsvTable t;
  t.header.push_back("label");
  for (const auto& l : m.labels) {
    if (l.find_first_of(",\"\n\r") != std::string::npos)
      throw std::invalid_argument("label not representable in matrix csv: " + l);
    t.header.push_back(l);
  }
  for (std::size_t i = 0; i < m.n; ++i) {
    std::vector<std::string> row;
    row.reserve(m.n + 1);
    row.push_back(m.labels[i]);
    for (std::size_t jj = 0; jj < m.n; ++jj)
      row.push_back(format17(m.at(i, jj)));
    t.rows.push_back(std::move(row));
  }
  write_csv_file(path, t);
}

FiniteMetric load_metric_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    cells.push_back(split(line, ','));
  }
  if (cells.empty()) throw std::invalid_argument("empty matrix csv: " + path);
  const auto& head = cells[0];
  if (head.size() < 2 || head[0] != "label")
    throw std::invalid_argument("matrix csv must start with a label header");
  FiniteMetric m;
  m.n = head.size() - 1;
  m.labels.assign(head.begin() + 1, head.end());
  if (cells.size() != m.n + 1)
    throw std::invalid_argument("matrix csv row count mismatch");
  m.d.resize(m.n * m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    const auto& row = cells[i + 1];
    if (row.size() != m.n + 1 || row[0] != m.labels[i])
      throw std::invalid_argument("matrix csv row " + std::to_string(i) +
                                  " malformed");
    for (std::size_t jj = 0; jj < m.n; ++jj)
      m.d[i * m.n + jj] = std::stod(row[jj + 1]);
  }
  return m;
}

}  // namespace thinstruct
