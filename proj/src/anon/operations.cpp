#include "pc4pm/anon/operations.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/stats.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/parallel.hpp"
#include "pc4pm/util/random.hpp"

namespace pc4pm {

std::string_view noise_generator_name(NoiseGenerator generator) {
  return generator == NoiseGenerator::kReplayVariant ? "replay-variant" : "random-walk";
}

std::string_view swap_scope_name(SwapScope scope) {
  return scope == SwapScope::kWithinVariant ? "within-variant" : "global";
}

namespace {

std::string_view level_name(AttributeLevel level) {
  return level == AttributeLevel::kEvent ? "event" : "trace";
}

void require_attribute(const EventLog& log, AttributeLevel level, const std::string& key) {
  if (key.empty()) throw Error(ErrorCode::kInvalidParameter, "attribute key must not be empty");
  if (!log_has_attribute(log, level, key)) {
    throw Error(ErrorCode::kUnknownAttribute, "unknown " + std::string(level_name(level)) +
                                                  " attribute '" + key + "'");
  }
}

// Keys whose removal or rewrite would break the log invariants.
void refuse_protected(AttributeLevel level, const std::string& key, std::string_view operation) {
  bool is_protected = key == kTimeTimestamp ||
                      (level == AttributeLevel::kEvent && key == kConceptName);
  if (is_protected) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(operation) + " cannot be applied to '" + key + "'");
  }
}

AttributeMap& globals_of(EventLog& log, AttributeLevel level) {
  return level == AttributeLevel::kEvent ? log.event_globals : log.trace_globals;
}

// Calls fn(map) for every event payload (or trace attribute map) in trace order,
// spreading traces across workers.
template <typename Fn>
void for_each_map(EventLog& log, AttributeLevel level, unsigned workers, Fn&& fn) {
  parallel_for(log.traces.size(), workers, [&](std::size_t t) {
    Trace& trace = log.traces[t];
    if (level == AttributeLevel::kTrace) {
      fn(trace.attributes);
      return;
    }
    for (auto& event : trace.events) fn(event.attributes);
  });
}

struct Slot {
  std::size_t trace;
  std::size_t event;  // unused at trace level
};

// Every occurrence of `key` at `level`, ordered by trace then event.
std::vector<Slot> slots_of(const EventLog& log, AttributeLevel level, std::string_view key) {
  std::vector<Slot> slots;
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    const Trace& trace = log.traces[t];
    if (level == AttributeLevel::kTrace) {
      if (trace.attributes.contains(key)) slots.push_back({t, 0});
      continue;
    }
    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      if (trace.events[e].attributes.contains(key)) slots.push_back({t, e});
    }
  }
  return slots;
}

Attribute& slot_attribute(EventLog& log, AttributeLevel level, const Slot& slot,
                          std::string_view key) {
  AttributeMap& map = level == AttributeLevel::kTrace
                          ? log.traces[slot.trace].attributes
                          : log.traces[slot.trace].events[slot.event].attributes;
  return *map.find(key);
}

const TypedValue& slot_value(const EventLog& log, AttributeLevel level, const Slot& slot,
                             std::string_view key) {
  const AttributeMap& map = level == AttributeLevel::kTrace
                                ? log.traces[slot.trace].attributes
                                : log.traces[slot.trace].events[slot.event].attributes;
  return *map.get(key);
}

std::string variant_key(const Trace& trace) {
  std::string key;
  for (const auto& event : trace.events) {
    key += event.activity();
    key += '\x1f';
  }
  return key;
}

// Rewrites of trace-level concept:name must keep case ids distinct.
void check_case_ids(const EventLog& log) {
  std::set<std::string_view> seen;
  for (const auto& trace : log.traces) {
    const TypedValue* id = trace.attributes.get(kConceptName);
    if (id == nullptr || !id->is_textual() || id->as_string().empty()) {
      throw Error(ErrorCode::kInvalidParameter, "rewrite leaves a trace without a textual case id");
    }
    if (!seen.insert(id->as_string()).second) {
      throw Error(ErrorCode::kInvalidParameter,
                  "rewrite maps two traces to case id '" + id->as_string() + "'");
    }
  }
}

Json value_json(const TypedValue& value) {
  return Json::array({std::string(value_kind_name(value.kind())), value.to_text()});
}

RecordFields record(OperationKind kind, OperationLevel level, std::set<std::string> targets,
                    const Json& parameters, const RunContext& ctx) {
  return RecordFields{kind, level, std::move(targets), parameter_digest(canonical_text(parameters)),
                      ctx.applied_at};
}

}  // namespace

// ---------------------------------------------------------------------------
// suppression

EventLog suppress(const EventLog& log, const Selector& selector,
                  const std::set<std::string>& attributes, const RunContext& ctx) {
  selector.check_against(log);
  for (const auto& key : attributes) {
    require_attribute(log, selector.level, key);
    if (key == kTimeTimestamp || key == kConceptName) {
      throw Error(ErrorCode::kInvalidParameter, "suppression cannot remove '" + key + "'");
    }
  }

  EventLog out = log;
  if (!attributes.empty()) {
    for_each_map(out, selector.level, ctx.workers, [&](AttributeMap& map) {
      if (!selector.matches(map)) return;
      for (const auto& key : attributes) map.erase(key);
    });
    for (const auto& key : attributes) globals_of(out, selector.level).erase(key);
  } else if (selector.level == AttributeLevel::kEvent) {
    parallel_for(out.traces.size(), ctx.workers, [&](std::size_t t) {
      auto& events = out.traces[t].events;
      std::erase_if(events, [&](const Event& e) { return selector.matches(e.attributes); });
    });
  } else {
    std::erase_if(out.traces, [&](const Trace& t) { return selector.matches(t.attributes); });
  }

  Json atoms = Json::array();
  std::set<std::string> targets;
  for (const auto& atom : selector.atoms) {
    Json values = Json::array();
    for (const auto& v : atom.values) values.push_back(value_json(v));
    atoms.push_back(Json::array({atom.key, std::string(comparator_symbol(atom.op)), values}));
    if (attributes.empty()) targets.insert(atom.key);
  }
  Json parameters = {{"level", level_name(selector.level)},
                     {"selector", atoms},
                     {"attributes", attributes}};
  OperationLevel level = !attributes.empty() ? OperationLevel::kAttribute
                         : selector.level == AttributeLevel::kEvent ? OperationLevel::kEvent
                                                                    : OperationLevel::kTrace;
  if (!attributes.empty()) targets = attributes;
  append_operation_record(out, record(OperationKind::kSuppression, level, targets, parameters, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// addition

namespace {

struct WalkModel {
  DirectlyFollowsGraph dfg;
  std::map<std::pair<std::string, std::string>, std::vector<std::int64_t>> delays;
  std::int64_t median_delay = 0;
  std::map<std::string, std::vector<std::string>> resources;  // activity -> one entry per event
  std::vector<Timestamp> starts;
  std::size_t max_length = 0;
};

WalkModel build_walk_model(const EventLog& log) {
  WalkModel model;
  model.dfg = df_graph(log);
  std::vector<std::int64_t> all;
  for (const auto& trace : log.traces) {
    if (trace.events.empty()) continue;
    model.starts.push_back(trace.events.front().timestamp());
    model.max_length = std::max(model.max_length, trace.events.size());
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event& e = trace.events[i];
      if (auto r = e.resource()) model.resources[e.activity()].push_back(*r);
      if (i == 0) continue;
      const Event& p = trace.events[i - 1];
      std::int64_t d = e.timestamp().millis - p.timestamp().millis;
      model.delays[{p.activity(), e.activity()}].push_back(d);
      all.push_back(d);
    }
  }
  if (!all.empty()) {
    std::sort(all.begin(), all.end());
    model.median_delay = all[all.size() / 2];
  }
  return model;
}

template <typename Map>
const typename Map::key_type& weighted_pick(const Map& counts, Rng& rng) {
  std::size_t total = 0;
  for (const auto& [k, n] : counts) total += n;
  std::uint64_t r = rng.below(total);
  for (const auto& [k, n] : counts) {
    if (r < n) return k;
    r -= n;
  }
  return counts.rbegin()->first;
}

std::vector<Event> random_walk(const WalkModel& model, Rng& rng) {
  std::vector<Event> events;
  std::string current = weighted_pick(model.dfg.start_counts, rng);
  Timestamp at = model.starts[rng.below(model.starts.size())];
  // A cap keeps cyclic graphs from producing unbounded traces.
  std::size_t cap = std::max<std::size_t>(1, 2 * model.max_length);
  while (true) {
    std::optional<std::string> resource;
    if (auto it = model.resources.find(current); it != model.resources.end()) {
      resource = it->second[rng.below(it->second.size())];
    }
    events.push_back(Event::make(current, at, resource));
    if (events.size() >= cap) break;

    std::map<std::string, std::size_t> next;
    for (auto it = model.dfg.pair_counts.lower_bound({current, std::string{}});
         it != model.dfg.pair_counts.end() && it->first.first == current; ++it) {
      next[it->first.second] = it->second;
    }
    std::size_t end_weight = 0;
    if (auto it = model.dfg.end_counts.find(current); it != model.dfg.end_counts.end()) {
      end_weight = it->second;
    }
    std::size_t total = end_weight;
    for (const auto& [a, n] : next) total += n;
    if (total == 0) break;
    std::uint64_t r = rng.below(total);
    if (r < end_weight) break;
    std::string following = weighted_pick(next, rng);

    std::int64_t delay = model.median_delay;
    if (auto it = model.delays.find({current, following}); it != model.delays.end()) {
      delay = it->second[rng.below(it->second.size())];
    }
    at = Timestamp{at.millis + std::max<std::int64_t>(0, delay)};
    current = std::move(following);
  }
  return events;
}

}  // namespace

EventLog add_noise(const EventLog& log, std::size_t count, NoiseGenerator generator,
                   std::uint64_t seed, const RunContext& ctx) {
  std::vector<std::size_t> sources;
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    if (!log.traces[t].events.empty()) sources.push_back(t);
  }
  if (count > 0 && sources.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "cannot add noise to a log without events");
  }

  std::vector<std::string> case_ids;
  case_ids.reserve(count);
  for (std::size_t n = 1; case_ids.size() < count; ++n) {
    std::string id = "syn-" + std::to_string(n);
    if (log.find_trace(id) == nullptr) case_ids.push_back(std::move(id));
  }

  WalkModel model;
  if (generator == NoiseGenerator::kRandomWalk && count > 0) model = build_walk_model(log);

  std::vector<Trace> synthetic(count);
  parallel_for(count, ctx.workers, [&](std::size_t i) {
    Rng rng(mix_seed(seed, "syn-" + std::to_string(i + 1)));
    std::vector<Event> events;
    if (generator == NoiseGenerator::kReplayVariant) {
      events = log.traces[sources[rng.below(sources.size())]].events;
    } else {
      events = random_walk(model, rng);
    }
    synthetic[i] = Trace::make(case_ids[i], std::move(events));
  });

  EventLog out = log;
  for (auto& trace : synthetic) out.traces.push_back(std::move(trace));
  fill_global_defaults(out);
  append_operation_record(out, record(OperationKind::kAddition, OperationLevel::kTrace, {},
                                      Json{{"count", count}}, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// substitution

EventLog substitute(const EventLog& log, AttributeLevel level, const std::string& attribute,
                    const ValueMapping& mapping, OnMissing on_missing, const RunContext& ctx) {
  require_attribute(log, level, attribute);
  refuse_protected(AttributeLevel::kTrace, attribute, "substitution");
  bool label = attribute == kConceptName;
  for (const auto& [from, to] : mapping) {
    if (label && (!to.is_textual() || to.as_string().empty())) {
      throw Error(ErrorCode::kInvalidParameter,
                  "'" + attribute + "' can only be substituted by non-empty text");
    }
    if (to.kind() == ValueKind::kList || to.kind() == ValueKind::kContainer) {
      throw Error(ErrorCode::kInvalidParameter, "substitution targets must be scalar values");
    }
  }

  auto rewrite = [&](Attribute& attr) {
    auto it = mapping.find(attr.value);
    if (it != mapping.end()) {
      attr.value = it->second;
    } else if (on_missing == OnMissing::kError) {
      throw Error(ErrorCode::kUnknownValue, "value '" + attr.value.to_text() + "' of '" +
                                                attribute + "' has no substitution");
    }
  };

  EventLog out = log;
  for_each_map(out, level, ctx.workers, [&](AttributeMap& map) {
    if (Attribute* attr = map.find(attribute)) rewrite(*attr);
  });
  if (Attribute* global = globals_of(out, level).find(attribute)) rewrite(*global);
  if (level == AttributeLevel::kTrace && label) check_case_ids(out);

  Json pairs = Json::array();
  for (const auto& [from, to] : mapping) pairs.push_back({value_json(from), value_json(to)});
  Json parameters = {{"level", level_name(level)},
                     {"attribute", attribute},
                     {"mapping", pairs},
                     {"on_missing", on_missing == OnMissing::kKeep ? "keep" : "error"}};
  append_operation_record(out, record(OperationKind::kSubstitution, OperationLevel::kAttribute,
                                      {attribute}, parameters, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// condensation

namespace {

std::int64_t floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

}  // namespace

EventLog condense(const EventLog& log, AttributeLevel level, const std::string& attribute,
                  const RunContext& ctx) {
  require_attribute(log, level, attribute);
  std::vector<Slot> slots = slots_of(log, level, attribute);

  struct Group {
    __int128 int_sum = 0;
    double real_sum = 0;
    std::size_t n = 0;
    bool any_real = false;
    TypedValue mean;
  };
  std::map<std::string, Group> groups;
  std::vector<Group*> slot_group(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const TypedValue& v = slot_value(log, level, slots[i], attribute);
    if (!v.is_numeric()) {
      throw Error(ErrorCode::kInvalidParameter,
                  "condensation needs a numeric attribute; '" + attribute + "' holds " +
                      std::string(value_kind_name(v.kind())));
    }
    Group& g = groups[variant_key(log.traces[slots[i].trace])];
    g.n += 1;
    g.real_sum += v.as_number();
    if (v.kind() == ValueKind::kReal) {
      g.any_real = true;
    } else {
      g.int_sum += v.as_integer();
    }
    slot_group[i] = &g;
  }
  for (auto& [key, g] : groups) {
    if (g.any_real) {
      g.mean = TypedValue::real(g.real_sum / static_cast<double>(g.n));
    } else {
      __int128 n = static_cast<__int128>(g.n);
      g.mean = TypedValue::integer(floor_div(2 * g.int_sum + n, 2 * n));
    }
  }

  EventLog out = log;
  parallel_for(slots.size(), ctx.workers, [&](std::size_t i) {
    slot_attribute(out, level, slots[i], attribute).value = slot_group[i]->mean;
  });

  Json parameters = {{"level", level_name(level)}, {"attribute", attribute},
                     {"grouping", "by-variant"}};
  append_operation_record(out, record(OperationKind::kCondensation, OperationLevel::kAttribute,
                                      {attribute}, parameters, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// swapping

EventLog swap(const EventLog& log, AttributeLevel level, const std::string& attribute,
              SwapScope scope, std::uint64_t seed, const RunContext& ctx) {
  require_attribute(log, level, attribute);
  if (attribute == kTimeTimestamp) {
    throw Error(ErrorCode::kInvalidParameter, "swapping cannot be applied to '" + attribute + "'");
  }
  std::vector<Slot> slots = slots_of(log, level, attribute);

  std::map<std::string, std::vector<std::size_t>> scopes;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::string tag = scope == SwapScope::kGlobal
                          ? std::string("global")
                          : "variant:" + variant_key(log.traces[slots[i].trace]);
    scopes[tag].push_back(i);
  }

  EventLog out = log;
  std::vector<std::pair<std::string, std::vector<std::size_t>*>> work;
  for (auto& [tag, members] : scopes) work.emplace_back(tag, &members);
  parallel_for(work.size(), ctx.workers, [&](std::size_t w) {
    const auto& members = *work[w].second;
    std::vector<TypedValue> values;
    values.reserve(members.size());
    for (std::size_t i : members) {
      values.push_back(slot_value(log, level, slots[i], attribute));
    }
    Rng rng(mix_seed(seed, work[w].first));
    rng.shuffle(values);
    for (std::size_t j = 0; j < members.size(); ++j) {
      slot_attribute(out, level, slots[members[j]], attribute).value = std::move(values[j]);
    }
  });

  Json parameters = {{"level", level_name(level)}, {"attribute", attribute},
                     {"scope", swap_scope_name(scope)}, {"seed", seed}};
  append_operation_record(out, record(OperationKind::kSwapping, OperationLevel::kAttribute,
                                      {attribute}, parameters, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// generalization

EventLog generalize(const EventLog& log, AttributeLevel level, const std::string& attribute,
                    const GeneralizationScheme& scheme, const RunContext& ctx) {
  require_attribute(log, level, attribute);
  const Taxonomy* taxonomy = std::get_if<Taxonomy>(&scheme);
  if (!taxonomy) {
    auto kind = attribute_kind(log, level, attribute);
    if (kind != ValueKind::kDatetime) {
      throw Error(ErrorCode::kInvalidParameter,
                  "timestamp granularity needs a date attribute; '" + attribute + "' is " +
                      std::string(value_kind_name(kind.value_or(ValueKind::kString))));
    }
  } else if (attribute == kTimeTimestamp) {
    throw Error(ErrorCode::kInvalidParameter, "a taxonomy cannot generalize '" + attribute + "'");
  }

  auto rewrite = [&](Attribute& attr) {
    if (taxonomy) {
      if (!attr.value.is_textual()) return;
      if (auto parent = taxonomy->parent(attr.value.as_string())) {
        attr.value = attr.value.kind() == ValueKind::kId ? TypedValue::id(*parent)
                                                         : TypedValue::string(*parent);
      }
    } else if (attr.value.kind() == ValueKind::kDatetime) {
      attr.value = TypedValue::datetime(truncate(attr.value.as_datetime(),
                                                 std::get<Granularity>(scheme)));
    }
  };

  EventLog out = log;
  for_each_map(out, level, ctx.workers, [&](AttributeMap& map) {
    if (Attribute* attr = map.find(attribute)) rewrite(*attr);
  });
  if (Attribute* global = globals_of(out, level).find(attribute)) rewrite(*global);
  if (level == AttributeLevel::kTrace && attribute == kConceptName) check_case_ids(out);

  Json parameters = {{"level", level_name(level)}, {"attribute", attribute}};
  if (taxonomy) {
    Json edges = Json::array();
    for (const auto& [child, parent] : taxonomy->edges()) edges.push_back({child, parent});
    parameters["taxonomy"] = edges;
  } else {
    parameters["granularity"] = granularity_name(std::get<Granularity>(scheme));
  }
  append_operation_record(out, record(OperationKind::kGeneralization, OperationLevel::kAttribute,
                                      {attribute}, parameters, ctx));
  return out;
}

// ---------------------------------------------------------------------------
// cryptography

namespace {

std::string token_prefix(const KeySpec& key) { return "enc:" + key.key_id + ":"; }

std::string recoverable_token(const KeySpec& key, const TypedValue& value) {
  std::string plaintext = std::string(value_kind_name(value.kind())) + ":" + value.to_text();
  return token_prefix(key) + to_hex(seal_deterministic(key.secret, plaintext));
}

}  // namespace

EventLog pseudonymize(const EventLog& log, AttributeLevel level,
                      const std::set<std::string>& attributes, const KeySpec& key,
                      const RunContext& ctx) {
  key.check();
  if (attributes.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "pseudonymization needs at least one attribute");
  }
  for (const auto& attribute : attributes) {
    require_attribute(log, level, attribute);
    if (attribute == kTimeTimestamp) {
      throw Error(ErrorCode::kInvalidParameter, "cryptography cannot be applied to '" + attribute +
                                                    "'");
    }
  }

  bool deterministic = key.mode == KeyMode::kPseudonymizeDeterministic;
  auto transform = [&](const TypedValue& value) -> TypedValue {
    if (value.kind() == ValueKind::kList || value.kind() == ValueKind::kContainer) {
      throw Error(ErrorCode::kInvalidParameter, "cannot pseudonymize list or container values");
    }
    return TypedValue::string(deterministic ? pseudonym_token(key, value.to_text())
                                            : recoverable_token(key, value));
  };

  EventLog out = log;
  for_each_map(out, level, ctx.workers, [&](AttributeMap& map) {
    for (const auto& attribute : attributes) {
      if (Attribute* attr = map.find(attribute)) attr->value = transform(attr->value);
    }
  });
  for (const auto& attribute : attributes) {
    if (Attribute* global = globals_of(out, level).find(attribute)) {
      global->value = transform(global->value);
    }
  }

  // Truncated MACs can collide; two distinct plaintexts sharing a token would
  // silently merge values, so that is an error.
  if (deterministic) {
    std::map<std::string, std::string> origin;
    for (std::size_t t = 0; t < log.traces.size(); ++t) {
      auto check = [&](const AttributeMap& before, const AttributeMap& after) {
        for (const auto& attribute : attributes) {
          const TypedValue* plain = before.get(attribute);
          if (plain == nullptr) continue;
          const std::string& token = after.get(attribute)->as_string();
          auto [it, inserted] = origin.emplace(token, plain->to_text());
          if (!inserted && it->second != plain->to_text()) {
            throw Error(ErrorCode::kPseudonymCollision,
                        "values '" + it->second + "' and '" + plain->to_text() +
                            "' share token " + token);
          }
        }
      };
      if (level == AttributeLevel::kTrace) {
        check(log.traces[t].attributes, out.traces[t].attributes);
      } else {
        for (std::size_t e = 0; e < log.traces[t].events.size(); ++e) {
          check(log.traces[t].events[e].attributes, out.traces[t].events[e].attributes);
        }
      }
    }
  }
  if (level == AttributeLevel::kTrace && attributes.contains(std::string(kConceptName))) {
    check_case_ids(out);
  }

  Json parameters = {{"level", level_name(level)},
                     {"attributes", attributes},
                     {"key_id", key.key_id},
                     {"mode", key_mode_name(key.mode)}};
  append_operation_record(out, record(OperationKind::kCryptography, OperationLevel::kAttribute,
                                      attributes, parameters, ctx));
  return out;
}

EventLog de_pseudonymize(const EventLog& log, const KeySpec& key, unsigned workers) {
  key.check();
  const std::string prefix = token_prefix(key);

  auto restore = [&](Attribute& attr) {
    if (!attr.value.is_textual()) return;
    const std::string& text = attr.value.as_string();
    if (!text.starts_with(prefix)) return;
    auto sealed = from_hex(std::string_view(text).substr(prefix.size()));
    std::optional<std::string> plain;
    if (sealed) plain = open_deterministic(key.secret, *sealed);
    if (!plain) {
      throw Error(ErrorCode::kDecryptionFailure,
                  "value of '" + attr.key + "' does not decrypt under key '" + key.key_id + "'");
    }
    std::size_t colon = plain->find(':');
    std::optional<ValueKind> kind;
    if (colon != std::string::npos) kind = parse_value_kind(std::string_view(*plain).substr(0, colon));
    std::optional<TypedValue> value;
    if (kind) value = TypedValue::parse(*kind, std::string_view(*plain).substr(colon + 1));
    if (!value) {
      throw Error(ErrorCode::kDecryptionFailure, "decrypted value of '" + attr.key +
                                                     "' is not a typed value");
    }
    attr.value = std::move(*value);
  };
  auto restore_map = [&](AttributeMap& map) {
    for (const auto& item : map) restore(*map.find(item.key));
  };

  EventLog out = log;
  parallel_for(out.traces.size(), workers, [&](std::size_t t) {
    restore_map(out.traces[t].attributes);
    for (auto& event : out.traces[t].events) restore_map(event.attributes);
  });
  restore_map(out.trace_globals);
  restore_map(out.event_globals);
  return out;
}

}  // namespace pc4pm
