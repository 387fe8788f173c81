#pragma once

#include <string>
#include <vector>

#include "thinstruct/cloud.hpp"
#include "thinstruct/distortion.hpp"
#include "thinstruct/graph.hpp"
#include "thinstruct/metric.hpp"

namespace thinstruct {

// Tabular output. Comments become leading '#' lines; header and rows form
// the body, which stays byte-identical across runs with equal inputs.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_string(const CsvTable& t);
void write_csv_file(const std::string& path, const CsvTable& t);

// Cloud files carry the points, the generation parameters, and the copy
// index (per level, each copy as its member-label array). Exponents
// serialize as numbers, max-norm as the string "inf".
std::string cloud_json(const GeneratedStructure& g);
GeneratedStructure parse_cloud_json(const std::string& text);
void save_cloud(const std::string& path, const GeneratedStructure& g);
GeneratedStructure load_cloud(const std::string& path);

std::string graph_json(const StGraph& g);
StGraph parse_graph_json(const std::string& text);
void save_graph(const std::string& path, const StGraph& g);
StGraph load_graph(const std::string& path);

// Square matrix layout: header "label,<l0>,<l1>,..."; one row per point.
void write_metric_csv(const std::string& path, const FiniteMetric& m);
FiniteMetric load_metric_csv(const std::string& path);

// Map files store images keyed by domain labels; loading resolves them
// against the supplied cloud, which must cover every stored label.
std::string map_json(const EmbeddingMap& f);
EmbeddingMap parse_map_json(const std::string& text, const PointCloud& domain);
void save_map(const std::string& path, const EmbeddingMap& f);
EmbeddingMap load_map(const std::string& path, const PointCloud& domain);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace thinstruct
