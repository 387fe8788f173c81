#include "thinstruct/cloud.hpp"

#include <algorithm>
#include <stdexcept>

namespace thinstruct {

int PointCloud::index_of(const std::string& label) const {
  if (lmap_.size() != labels.size()) {
    lmap_.clear();
    for (std::size_t i = 0; i < labels.size(); ++i)
      lmap_[labels[i]] = static_cast<int>(i);
  }
  auto it = lmap_.find(label);
  return it == lmap_.end() ? -1 : it->second;
}

std::size_t PointCloud::add(const std::string& label) {
  labels.push_back(label);
  data.resize(data.size() + dim, 0.0);
  return labels.size() - 1;
}

std::string Copy::id() const {
  std::string s = "L" + std::to_string(edge_path.size());
  if (!edge_path.empty()) {
    s += ":";
    for (std::size_t i = 0; i < edge_path.size(); ++i) {
      if (i) s += ".";
      s += std::to_string(edge_path[i]);
    }
  }
  return s;
}

const std::vector<Copy>& SubstructureIndex::at_level(int j) const {
  if (j < 1 || j > static_cast<int>(levels.size()))
    throw std::invalid_argument("level out of range: " + std::to_string(j));
  return levels[j - 1];
}

std::size_t SubstructureIndex::total_copies() const {
  std::size_t n = 0;
  for (const auto& lv : levels) n += lv.size();
  return n;
}

double VerifyReport::worst_overall() const {
  double w = 0.0;
  for (double v : worst) w = std::max(w, v);
  return w;
}

}  // namespace thinstruct
