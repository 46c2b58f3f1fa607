#include "pc4pm/connector/connector.hpp"

#include <algorithm>
#include <map>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/xes.hpp"
#include "pc4pm/error.hpp"

namespace pc4pm {

namespace {

constexpr std::string_view kStartFlag = "source-is-start";
constexpr std::string_view kEndFlag = "target-is-end";

Row make_row(std::string source, std::string target, std::size_t count, std::string_view flags) {
  return Row{TypedValue::string(std::move(source)), TypedValue::string(std::move(target)),
             TypedValue::integer(static_cast<std::int64_t>(count)),
             TypedValue::string(std::string(flags))};
}

void require_deterministic(const KeySpec& key) {
  key.check();
  if (key.mode != KeyMode::kPseudonymizeDeterministic) {
    throw Error(ErrorCode::kInvalidParameter,
                "the connector method needs a key in pseudonymize-deterministic mode");
  }
}

}  // namespace

EventLogAbstraction connector_encode(const EventLog& log, const KeySpec& key,
                                     const RunContext& ctx) {
  require_deterministic(key);
  std::set<std::string> alphabet = log.alphabet();
  for (std::string_view marker : {kStartMarker, kEndMarker}) {
    if (alphabet.contains(std::string(marker))) {
      throw Error(ErrorCode::kReservedSymbolClash,
                  "activity '" + std::string(marker) + "' is a reserved marker");
    }
  }
  std::map<std::string, std::string> token;
  std::map<std::string, std::string> owner;
  for (const auto& activity : alphabet) {
    std::string t = pseudonym_token(key, activity);
    auto [it, inserted] = owner.emplace(t, activity);
    if (!inserted) {
      throw Error(ErrorCode::kPseudonymCollision,
                  "activities '" + it->second + "' and '" + activity + "' share token " + t);
    }
    token[activity] = t;
  }

  DirectlyFollowsGraph dfg = df_graph(log, ctx.workers);
  std::vector<Row> rows;
  for (const auto& [pair, n] : dfg.pair_counts) {
    rows.push_back(make_row(token.at(pair.first), token.at(pair.second), n, ""));
  }
  for (const auto& [a, n] : dfg.start_counts) {
    rows.push_back(make_row(std::string(kStartMarker), token.at(a), n, kStartFlag));
  }
  for (const auto& [a, n] : dfg.end_counts) {
    rows.push_back(make_row(token.at(a), std::string(kEndMarker), n, kEndFlag));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });

  EventLogAbstraction ela;
  ela.header.abstraction_kind = std::string(kConnectorKind);
  ela.header.origin_log_id = log_id(log);
  ela.header.technique = "connector-dfg";
  ela.header.privacy_metadata = log.privacy_metadata;
  Json parameters = {{"key_id", key.key_id}, {"mode", key_mode_name(key.mode)}};
  ela.header.privacy_metadata.append(RecordFields{OperationKind::kCryptography,
                                                  OperationLevel::kLog,
                                                  {std::string(kConceptName)},
                                                  parameter_digest(canonical_text(parameters)),
                                                  ctx.applied_at});
  ela.columns = {{"enc_source", ValueKind::kString},
                 {"enc_target", ValueKind::kString},
                 {"count", ValueKind::kInteger},
                 {"flags", ValueKind::kString}};
  ela.rows = std::move(rows);
  return ela;
}

DirectlyFollowsGraph connector_decode(const EventLogAbstraction& ela, const KeySpec& key,
                                      const std::set<std::string>& dictionary) {
  require_deterministic(key);
  if (ela.header.abstraction_kind != kConnectorKind) {
    throw Error(ErrorCode::kMalformedAbstraction,
                "expected a connector-dfg abstraction, got '" + ela.header.abstraction_kind + "'");
  }
  validate(ela);
  const std::size_t src = ela.column_index("enc_source");
  const std::size_t dst = ela.column_index("enc_target");
  const std::size_t cnt = ela.column_index("count");
  const std::size_t flg = ela.column_index("flags");
  for (std::size_t i : {src, dst, cnt, flg}) {
    if (i == std::string::npos) {
      throw Error(ErrorCode::kMalformedAbstraction, "connector abstraction lacks a column");
    }
  }
  if (ela.columns[cnt].kind != ValueKind::kInteger || ela.columns[src].kind != ValueKind::kString ||
      ela.columns[dst].kind != ValueKind::kString || ela.columns[flg].kind != ValueKind::kString) {
    throw Error(ErrorCode::kMalformedAbstraction, "connector abstraction has mistyped columns");
  }

  std::map<std::string, std::string> label;
  for (const auto& candidate : dictionary) label.emplace(pseudonym_token(key, candidate), candidate);
  auto resolve = [&](const std::string& t) -> const std::string& {
    auto it = label.find(t);
    if (it == label.end()) {
      throw Error(ErrorCode::kUnresolvedToken, "token " + t + " matches no dictionary label");
    }
    return it->second;
  };

  DirectlyFollowsGraph g;
  for (const auto& row : ela.rows) {
    const std::string& s = row[src].as_string();
    const std::string& t = row[dst].as_string();
    const std::string& flags = row[flg].as_string();
    std::int64_t n = row[cnt].as_integer();
    if (n <= 0) throw Error(ErrorCode::kMalformedAbstraction, "connector counts must be positive");
    auto count = static_cast<std::size_t>(n);
    if (flags == kStartFlag && s == kStartMarker) {
      g.start_counts[resolve(t)] += count;
    } else if (flags == kEndFlag && t == kEndMarker) {
      g.end_counts[resolve(s)] += count;
    } else if (flags.empty()) {
      g.pair_counts[{resolve(s), resolve(t)}] += count;
    } else {
      throw Error(ErrorCode::kMalformedAbstraction, "unknown connector flags '" + flags + "'");
    }
  }
  return g;
}

}  // namespace pc4pm
