#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pc4pm {

// Rooted tree over attribute values given as child -> parent edges.
class Taxonomy {
 public:
  // Throws InvalidParameter unless the edges form a single rooted tree.
  static Taxonomy from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

  // Two-column "child,parent" lines; blank lines, '#' comments and a
  // literal "child,parent" header are skipped.
  static Taxonomy parse_edge_list(std::string_view text);

  // std::nullopt for the root and for values outside the tree.
  std::optional<std::string> parent(std::string_view value) const;
  const std::string& root() const { return root_; }
  const std::map<std::string, std::string, std::less<>>& edges() const { return parent_; }

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;

 private:
  std::map<std::string, std::string, std::less<>> parent_;
  std::string root_;
};

}  // namespace pc4pm
