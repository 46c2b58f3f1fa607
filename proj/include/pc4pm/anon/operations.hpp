#pragma once

// The seven anonymization operations. Each takes a log by const reference,
// returns a transformed copy, and appends exactly one OperationRecord whose
// kind names the operation. Attribute-level operations address either event
// payloads or trace attributes (AttributeLevel).

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pc4pm/anon/keys.hpp"
#include "pc4pm/anon/selector.hpp"
#include "pc4pm/anon/taxonomy.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"

namespace pc4pm {

// Removes matched events (or traces), or, when `attributes` is non-empty, just
// those attributes from every match. Emptied traces stay in the log.
EventLog suppress(const EventLog& log, const Selector& selector,
                  const std::set<std::string>& attributes = {}, const RunContext& ctx = {});

enum class NoiseGenerator { kReplayVariant, kRandomWalk };

// Appends `count` synthetic traces with case ids "syn-<n>". Replay copies the
// events of a uniformly chosen existing trace; random walk samples a path
// through the directly-follows relation with delays drawn from observed ones.
EventLog add_noise(const EventLog& log, std::size_t count, NoiseGenerator generator,
                   std::uint64_t seed, const RunContext& ctx = {});

enum class OnMissing { kKeep, kError };

using ValueMapping = std::map<TypedValue, TypedValue>;

EventLog substitute(const EventLog& log, AttributeLevel level, const std::string& attribute,
                    const ValueMapping& mapping, OnMissing on_missing,
                    const RunContext& ctx = {});

// Replaces every value of a numeric attribute with the mean of its variant
// group (integers: mean rounded half-up).
EventLog condense(const EventLog& log, AttributeLevel level, const std::string& attribute,
                  const RunContext& ctx = {});

enum class SwapScope { kWithinVariant, kGlobal };

EventLog swap(const EventLog& log, AttributeLevel level, const std::string& attribute,
              SwapScope scope, std::uint64_t seed, const RunContext& ctx = {});

using GeneralizationScheme = std::variant<Taxonomy, Granularity>;

// One taxonomy level up per call, or timestamp truncation.
EventLog generalize(const EventLog& log, AttributeLevel level, const std::string& attribute,
                    const GeneralizationScheme& scheme, const RunContext& ctx = {});

EventLog pseudonymize(const EventLog& log, AttributeLevel level,
                      const std::set<std::string>& attributes, const KeySpec& key,
                      const RunContext& ctx = {});

// Reverses recoverable-mode pseudonymization under `key`. The log's data is
// restored exactly; privacy metadata is left as it is.
EventLog de_pseudonymize(const EventLog& log, const KeySpec& key, unsigned workers = 1);

std::string_view noise_generator_name(NoiseGenerator generator);
std::string_view swap_scope_name(SwapScope scope);

}  // namespace pc4pm
