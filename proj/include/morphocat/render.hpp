#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "morphocat/parser.hpp"

namespace morphocat {

// Indented derivation tree, one node per line: category, then the combinator
// or the lexical key and form.
inline std::string render_tree(const Derivation& d) {
  std::string out;
  auto walk = [&](auto&& self, const ChartItem& n, int depth) -> void {
    out += std::string(2 * depth, ' ') + n.cat.display() + "  ";
    if (n.is_leaf()) {
      out += n.leaf->key + " \"" + n.surface + "\"\n";
      return;
    }
    out += std::string(short_name(*n.combinator)) + " \"" + n.surface + "\"\n";
    self(self, *n.left, depth + 1);
    self(self, *n.right, depth + 1);
  };
  walk(walk, *d.root, 0);
  out += "sem: " + display(d.sem()) + "\n";
  return out;
}

inline std::string render_trees(const std::vector<Derivation>& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out += "\n";
    out += "derivation " + std::to_string(i + 1) + " of " + std::to_string(ds.size()) + "\n";
    out += render_tree(ds[i]);
  }
  return out;
}

inline std::string render_sems(const std::vector<Derivation>& ds) {
  std::string out;
  for (const auto& d : ds) out += display(d.sem()) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const ChartItem& n) {
  nlohmann::ordered_json tree;
  if (n.is_leaf()) {
    tree["leaf"] = n.leaf->key;
    tree["form"] = n.surface;
  } else {
    tree["combinator"] = std::string(short_name(*n.combinator));
    tree["left"] = to_json(*n.left);
    tree["right"] = to_json(*n.right);
  }
  return tree;
}

inline nlohmann::ordered_json to_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["category"] = d.category().display();
  j["sem"] = display(d.sem());
  j["surface"] = d.surface();
  j["tree"] = to_json(*d.root);
  return j;
}

inline std::string render_json(const std::vector<Derivation>& ds) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : ds) arr.push_back(to_json(d));
  return arr.dump(2) + "\n";
}

}  // namespace morphocat
