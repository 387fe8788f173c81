#include "thinstruct/address.hpp"

#include <stdexcept>

#include "thinstruct/common.hpp"

namespace thinstruct {

std::string VertexAddress::str() const {
  if (endpoint()) return "L0:" + role;
  std::string out = "L" + std::to_string(level) + ":";
  for (std::size_t i = 0; i < edge_path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(edge_path[i]);
  }
  out += ':';
  out += role;
  return out;
}

VertexAddress VertexAddress::parse(const std::string& s) {
  auto bad = [&] { return std::invalid_argument("bad vertex address: " + s); };
  auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) throw bad();
  if (parts[0].size() < 2 || parts[0][0] != 'L') throw bad();
  int level = 0;
  try {
    level = std::stoi(parts[0].substr(1));
  } catch (...) {
    throw bad();
  }
  VertexAddress a;
  a.level = level;
  if (parts.size() == 2) {
    if (level != 0 || (parts[1] != "s" && parts[1] != "t")) throw bad();
    a.role = parts[1];
    return a;
  }
  if (parts[2].empty() || parts[2] == "s" || parts[2] == "t") throw bad();
  a.role = parts[2];
  if (!parts[1].empty())
    for (auto& tok : split(parts[1], '.')) {
      try {
        a.edge_path.push_back(std::stoi(tok));
      } catch (...) {
        throw bad();
      }
    }
  if (static_cast<int>(a.edge_path.size()) != level) throw bad();
  return a;
}

}  // namespace thinstruct
