#include "pc4pm/repo/repository.hpp"

#include <cstdlib>
#include <deque>
#include <functional>
#include <set>

#include "pc4pm/core/xes.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/crypto.hpp"
#include "pc4pm/util/io.hpp"

namespace pc4pm {

std::string_view entry_kind_name(EntryKind kind) {
  return kind == EntryKind::kXes ? "xes" : "ela";
}

std::optional<EntryKind> parse_entry_kind(std::string_view name) {
  if (name == "xes") return EntryKind::kXes;
  if (name == "ela") return EntryKind::kEla;
  return std::nullopt;
}

Json entry_to_json(const RepoEntry& entry) {
  Json j;
  j["entry_id"] = entry.entry_id;
  j["kind"] = entry_kind_name(entry.kind);
  j["name"] = entry.name;
  j["created_at"] = format_timestamp(entry.created_at);
  j["parent_ids"] = entry.parent_ids;
  j["technique"] = entry.technique ? Json(*entry.technique) : Json(nullptr);
  j["deleted"] = entry.deleted;
  return j;
}

RepoEntry entry_from_json(const Json& json) {
  RepoEntry e;
  e.entry_id = json.at("entry_id").get<std::string>();
  auto kind = parse_entry_kind(json.at("kind").get<std::string>());
  auto created = parse_timestamp(json.at("created_at").get<std::string>());
  if (!kind || !created) throw Error(ErrorCode::kIo, "corrupt index entry " + e.entry_id);
  e.kind = *kind;
  e.created_at = *created;
  e.name = json.at("name").get<std::string>();
  e.parent_ids = json.at("parent_ids").get<std::vector<std::string>>();
  if (json.contains("technique") && !json["technique"].is_null()) {
    e.technique = json["technique"].get<std::string>();
  }
  e.deleted = json.value("deleted", false);
  return e;
}

std::size_t Lineage::depth() const {
  std::map<std::string, std::vector<std::string>> parents;
  for (const auto& e : edges) parents[e.child_id].push_back(e.parent_id);
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> longest = [&](const std::string& id) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::size_t best = 0;
    for (const auto& p : parents[id]) best = std::max(best, longest(p));
    return memo[id] = best + 1;
  };
  return nodes.empty() ? 0 : longest(entry_id);
}

Json lineage_to_json(const Lineage& lineage) {
  Json j;
  j["entry_id"] = lineage.entry_id;
  j["depth"] = lineage.depth();
  j["nodes"] = Json::array();
  for (const auto& n : lineage.nodes) j["nodes"].push_back(entry_to_json(n));
  j["edges"] = Json::array();
  for (const auto& e : lineage.edges) {
    j["edges"].push_back({{"parent", e.parent_id},
                          {"child", e.child_id},
                          {"technique", e.technique ? Json(*e.technique) : Json(nullptr)}});
  }
  return j;
}

std::string canonical_content(std::string_view content, EntryKind kind) {
  try {
    if (kind == EntryKind::kXes) return write_xes(parse_xes(content));
    return write_ela(parse_ela(content));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure,
                std::string(error_code_name(e.code())) + ": " + e.what());
  }
}

std::string content_id(std::string_view canonical) {
  return sha256_hex(canonical).substr(0, 16);
}

Repository::Repository(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "objects", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create repository at " + root_.string());
  const auto index = root_ / "index.json";
  if (!std::filesystem::exists(index)) return;
  Json doc;
  try {
    doc = Json::parse(read_file(index));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kIo, "corrupt index " + index.string() + ": " + e.what());
  }
  for (const auto& item : doc.at("entries")) {
    RepoEntry e = entry_from_json(item);
    order_.push_back(e.entry_id);
    entries_.emplace(e.entry_id, std::move(e));
  }
}

std::filesystem::path Repository::default_root() {
  if (const char* env = std::getenv("PC4PM_REPO"); env != nullptr && *env != '\0') return env;
  return "pc4pm-repo";
}

std::filesystem::path Repository::object_path(const RepoEntry& entry) const {
  return root_ / "objects" / (entry.entry_id + "." + std::string(entry_kind_name(entry.kind)));
}

void Repository::persist_locked() const {
  Json doc;
  doc["entries"] = Json::array();
  for (const auto& id : order_) doc["entries"].push_back(entry_to_json(entries_.at(id)));
  write_file_atomic(root_ / "index.json", doc.dump(2) + "\n");
}

const RepoEntry& Repository::find_locked(const std::string& entry_id) const {
  auto it = entries_.find(entry_id);
  if (it == entries_.end()) throw Error(ErrorCode::kUnknownEntry, "unknown entry " + entry_id);
  return it->second;
}

RepoEntry Repository::store(std::string_view content, EntryKind kind, const std::string& name,
                            const std::vector<std::string>& parents,
                            const std::optional<std::string>& technique) {
  // Parsing happens outside the lock; only the commit is serialized.
  const std::string canonical = canonical_content(content, kind);
  const std::string id = content_id(canonical);
  std::lock_guard lock(mutex_);
  for (const auto& p : parents) find_locked(p);
  if (auto it = entries_.find(id); it != entries_.end()) {
    if (it->second.deleted) {
      it->second.deleted = false;
      persist_locked();
    }
    return it->second;
  }
  RepoEntry e;
  e.entry_id = id;
  e.kind = kind;
  e.name = name;
  e.created_at = Timestamp::now();
  std::set<std::string> seen;
  for (const auto& p : parents) {
    if (seen.insert(p).second) e.parent_ids.push_back(p);
  }
  e.technique = technique;
  write_file_atomic(object_path(e), canonical);
  order_.push_back(id);
  entries_.emplace(id, e);
  try {
    persist_locked();
  } catch (...) {
    order_.pop_back();
    entries_.erase(id);
    throw;
  }
  return e;
}

RepoEntry Repository::entry(const std::string& entry_id) const {
  std::lock_guard lock(mutex_);
  return find_locked(entry_id);
}

RepoEntry Repository::live_entry(const std::string& entry_id) const {
  RepoEntry e = entry(entry_id);
  if (e.deleted) throw Error(ErrorCode::kUnknownEntry, "entry " + entry_id + " was deleted");
  return e;
}

std::vector<RepoEntry> Repository::list() const {
  std::lock_guard lock(mutex_);
  std::vector<RepoEntry> out;
  for (const auto& id : order_) {
    const auto& e = entries_.at(id);
    if (!e.deleted) out.push_back(e);
  }
  return out;
}

std::string Repository::content(const std::string& entry_id) const {
  return read_file(object_path(entry(entry_id)));
}

EventLog Repository::load_log(const std::string& entry_id) const {
  RepoEntry e = entry(entry_id);
  if (e.kind != EntryKind::kXes) {
    throw Error(ErrorCode::kInvalidParameter, "entry " + entry_id + " is not an event log");
  }
  return parse_xes(read_file(object_path(e)));
}

EventLogAbstraction Repository::load_abstraction(const std::string& entry_id) const {
  RepoEntry e = entry(entry_id);
  if (e.kind != EntryKind::kEla) {
    throw Error(ErrorCode::kInvalidParameter, "entry " + entry_id + " is not an abstraction");
  }
  return parse_ela(read_file(object_path(e)));
}

void Repository::remove(const std::string& entry_id) {
  std::lock_guard lock(mutex_);
  find_locked(entry_id);
  auto& e = entries_.at(entry_id);
  if (e.deleted) return;
  e.deleted = true;
  try {
    persist_locked();
  } catch (...) {
    e.deleted = false;
    throw;
  }
}

Lineage Repository::lineage(const std::string& entry_id) const {
  std::lock_guard lock(mutex_);
  Lineage out;
  out.entry_id = entry_id;
  std::set<std::string> visited{entry_id};
  std::deque<std::string> queue{entry_id};
  find_locked(entry_id);
  while (!queue.empty()) {
    const RepoEntry& e = find_locked(queue.front());
    queue.pop_front();
    out.nodes.push_back(e);
    for (const auto& p : e.parent_ids) {
      out.edges.push_back({p, e.entry_id, e.technique});
      if (visited.insert(p).second) queue.push_back(p);
    }
  }
  return out;
}

}  // namespace pc4pm
