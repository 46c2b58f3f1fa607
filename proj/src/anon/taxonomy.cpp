#include "pc4pm/anon/taxonomy.hpp"

#include <set>

#include "pc4pm/error.hpp"

namespace pc4pm {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidParameter, "taxonomy: " + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Taxonomy Taxonomy::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  if (edges.empty()) invalid("no edges");
  Taxonomy taxonomy;
  std::set<std::string> nodes;
  for (const auto& [child, parent] : edges) {
    if (child.empty() || parent.empty()) invalid("empty value in edge");
    if (child == parent) invalid("self loop on '" + child + "'");
    auto [it, inserted] = taxonomy.parent_.emplace(child, parent);
    if (!inserted && it->second != parent) {
      invalid("'" + child + "' has two parents ('" + it->second + "', '" + parent + "')");
    }
    nodes.insert(child);
    nodes.insert(parent);
  }
  std::vector<std::string> roots;
  for (const auto& node : nodes) {
    if (!taxonomy.parent_.contains(node)) roots.push_back(node);
  }
  if (roots.size() != 1) invalid("expected exactly one root, found " + std::to_string(roots.size()));
  taxonomy.root_ = roots.front();
  // Every node must reach the root; a cycle never does.
  for (const auto& node : nodes) {
    std::string current = node;
    for (std::size_t steps = 0; current != taxonomy.root_; ++steps) {
      if (steps > nodes.size()) invalid("cycle through '" + node + "'");
      current = taxonomy.parent_.at(current);
    }
  }
  return taxonomy;
}

Taxonomy Taxonomy::parse_edge_list(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#' || line == "child,parent") continue;
    std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      invalid("line " + std::to_string(line_no) + " is not 'child,parent'");
    }
    edges.emplace_back(std::string(trim(line.substr(0, comma))),
                       std::string(trim(line.substr(comma + 1))));
  }
  return from_edges(edges);
}

std::optional<std::string> Taxonomy::parent(std::string_view value) const {
  auto it = parent_.find(value);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

}  // namespace pc4pm
