#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/ela.hpp"
#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/timestamp.hpp"

namespace pc4pm {

enum class EntryKind { kXes, kEla };

std::string_view entry_kind_name(EntryKind kind);
std::optional<EntryKind> parse_entry_kind(std::string_view name);

struct RepoEntry {
  std::string entry_id;
  EntryKind kind = EntryKind::kXes;
  std::string name;
  Timestamp created_at;
  std::vector<std::string> parent_ids;
  std::optional<std::string> technique;
  bool deleted = false;

  friend bool operator==(const RepoEntry&, const RepoEntry&) = default;
};

Json entry_to_json(const RepoEntry& entry);
RepoEntry entry_from_json(const Json& json);

struct LineageEdge {
  std::string parent_id;
  std::string child_id;
  std::optional<std::string> technique;

  friend bool operator==(const LineageEdge&, const LineageEdge&) = default;
};

// Ancestry of one entry: the entry itself, every ancestor, and one edge per
// parent link. Nodes are ordered root-entry first, then breadth-first.
struct Lineage {
  std::string entry_id;
  std::vector<RepoEntry> nodes;
  std::vector<LineageEdge> edges;

  // Nodes on the longest parent chain starting at the entry.
  std::size_t depth() const;
};

Json lineage_to_json(const Lineage& lineage);

// Parses `content` as `kind` and writes it back in canonical form. Throws
// Error(kParseFailure) when it does not parse.
std::string canonical_content(std::string_view content, EntryKind kind);

// 16 hex chars of SHA-256; for logs this equals log_id().
std::string content_id(std::string_view canonical);

// Content-addressed store under a root directory:
//   <root>/objects/<entry_id>.<xes|ela>   immutable content
//   <root>/index.json                     entries in insertion order
// All writes go through one mutex; files are replaced atomically.
class Repository {
 public:
  explicit Repository(std::filesystem::path root);

  // PC4PM_REPO, or "pc4pm-repo" in the working directory.
  static std::filesystem::path default_root();

  // Storing content that is already present returns the existing entry
  // (first name and parents win) and lifts a tombstone. Parents must exist.
  RepoEntry store(std::string_view content, EntryKind kind, const std::string& name,
                  const std::vector<std::string>& parents = {},
                  const std::optional<std::string>& technique = std::nullopt);

  // Tombstoned entries are still returned; unknown ids throw UnknownEntry.
  RepoEntry entry(const std::string& entry_id) const;
  // Like entry(), but tombstoned entries throw UnknownEntry too.
  RepoEntry live_entry(const std::string& entry_id) const;

  // Live entries in insertion order.
  std::vector<RepoEntry> list() const;

  std::string content(const std::string& entry_id) const;
  EventLog load_log(const std::string& entry_id) const;
  EventLogAbstraction load_abstraction(const std::string& entry_id) const;

  // Hides the entry from list(); content and lineage stay intact.
  void remove(const std::string& entry_id);

  Lineage lineage(const std::string& entry_id) const;

  const std::filesystem::path& root() const { return root_; }

 private:
  const RepoEntry& find_locked(const std::string& entry_id) const;
  std::filesystem::path object_path(const RepoEntry& entry) const;
  void persist_locked() const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
  std::vector<std::string> order_;
  std::map<std::string, RepoEntry> entries_;
};

}  // namespace pc4pm
