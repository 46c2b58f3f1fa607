#include "pc4pm/dp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/crypto.hpp"
#include "pc4pm/util/parallel.hpp"

namespace pc4pm {

void DpParams::check() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidEpsilon, "epsilon must be a positive finite number");
  }
  if (!(prune_threshold >= 0.0) || !std::isfinite(prune_threshold)) {
    throw Error(ErrorCode::kInvalidParameter, "prune_threshold must be non-negative");
  }
  if (max_variant_length < 1) {
    throw Error(ErrorCode::kInvalidParameter, "max_variant_length must be at least 1");
  }
}

namespace {

double laplace_from_uniform(double u, double scale) {
  double centered = u - 0.5;
  double magnitude = -scale * std::log1p(-2.0 * std::abs(centered));
  return centered < 0 ? -magnitude : magnitude;
}

}  // namespace

double sample_laplace(Rng& rng, double scale) {
  double u = 0;
  while (u == 0) u = rng.uniform01();  // u = 0 maps to -infinity
  return laplace_from_uniform(u, scale);
}

double sample_laplace_secure(double scale) {
  double u = 0;
  while (u == 0) {
    std::uint64_t bits = 0;
    std::uint8_t raw[8];
    secure_random_bytes(raw);
    std::memcpy(&bits, raw, sizeof bits);
    u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  }
  return laplace_from_uniform(u, scale);
}

std::size_t round_noisy_count(double value) {
  double r = std::round(value);  // half away from zero
  if (!(r > 0)) return 0;
  if (r >= 1e18) return static_cast<std::size_t>(1e18);
  return static_cast<std::size_t>(r);
}

namespace {

std::string variant_tag(const Variant& variant) {
  std::string tag = "variant";
  for (const auto& a : variant) {
    tag += '\x1f';
    tag += a;
  }
  return tag;
}

}  // namespace

VariantCounts dp_variant_counts(const VariantCounts& counts, const DpParams& params,
                                unsigned workers) {
  params.check();
  std::vector<std::pair<const Variant*, std::size_t>> items;
  for (const auto& [variant, count] : counts) items.emplace_back(&variant, count);
  std::vector<std::size_t> noisy(items.size());
  const double scale = 1.0 / params.epsilon;
  parallel_for(items.size(), workers, [&](std::size_t i) {
    double noise;
    if (params.secure_random) {
      noise = sample_laplace_secure(scale);
    } else {
      Rng rng(mix_seed(params.seed, variant_tag(*items[i].first)));
      noise = sample_laplace(rng, scale);
    }
    noisy[i] = round_noisy_count(static_cast<double>(items[i].second) + noise);
  });
  const double keep_from = std::max(1.0, params.prune_threshold);
  VariantCounts out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (static_cast<double>(noisy[i]) >= keep_from) out.emplace(*items[i].first, noisy[i]);
  }
  return out;
}

EventLog reconstruct_log(const EventLog& original, const VariantCounts& noisy, std::uint64_t seed,
                         unsigned workers) {
  std::set<std::string> alphabet = original.alphabet();
  for (const auto& [variant, count] : noisy) {
    for (const auto& a : variant) {
      if (!alphabet.contains(a)) {
        throw Error(ErrorCode::kUnknownVariantSymbol,
                    "activity '" + a + "' does not occur in the original log");
      }
    }
  }

  std::vector<Timestamp> starts;
  std::map<std::pair<std::string, std::string>, std::vector<std::int64_t>> delays;
  std::vector<std::int64_t> all;
  for (const auto& trace : original.traces) {
    if (trace.events.empty()) continue;
    starts.push_back(trace.events.front().timestamp());
    for (std::size_t i = 1; i < trace.events.size(); ++i) {
      std::int64_t d = trace.events[i].timestamp().millis - trace.events[i - 1].timestamp().millis;
      delays[{trace.events[i - 1].activity(), trace.events[i].activity()}].push_back(d);
      all.push_back(d);
    }
  }
  std::int64_t median = 0;
  if (!all.empty()) {
    std::sort(all.begin(), all.end());
    median = all[all.size() / 2];
  }

  std::vector<const Variant*> plan;
  for (const auto& [variant, count] : noisy) {
    for (std::size_t i = 0; i < count; ++i) plan.push_back(&variant);
  }

  EventLog out;
  out.attributes = original.attributes;
  out.extensions = original.extensions;
  out.privacy_metadata = original.privacy_metadata;
  out.traces.resize(plan.size());
  parallel_for(plan.size(), workers, [&](std::size_t i) {
    std::string case_id = "dp-" + std::to_string(i + 1);
    Rng rng(mix_seed(seed, case_id));
    const Variant& variant = *plan[i];
    std::vector<Event> events;
    events.reserve(variant.size());
    Timestamp at = variant.empty() ? Timestamp{} : starts[rng.below(starts.size())];
    for (std::size_t j = 0; j < variant.size(); ++j) {
      if (j > 0) {
        std::int64_t d = median;
        auto it = delays.find({variant[j - 1], variant[j]});
        if (it != delays.end()) d = it->second[rng.below(it->second.size())];
        at = Timestamp{at.millis + std::max<std::int64_t>(0, d)};
      }
      events.push_back(Event::make(variant[j], at));
    }
    out.traces[i] = Trace::make(std::move(case_id), std::move(events));
  });
  return out;
}

EventLog dp_publish(const EventLog& log, const DpParams& params, const RunContext& ctx) {
  params.check();
  VariantCounts counts;
  for (auto& [variant, count] : variants(log, ctx.workers)) {
    Variant v = variant;
    if (v.size() > params.max_variant_length) v.resize(params.max_variant_length);
    counts[v] += count;
  }
  VariantCounts noisy = dp_variant_counts(counts, params, ctx.workers);
  EventLog out = reconstruct_log(log, noisy, mix_seed(params.seed, "reconstruct"), ctx.workers);
  Json parameters = {{"epsilon", params.epsilon},
                     {"prune_threshold", params.prune_threshold},
                     {"max_variant_length", params.max_variant_length},
                     {"seed", params.seed},
                     {"secure_random", params.secure_random}};
  append_operation_record(out, RecordFields{OperationKind::kAddition, OperationLevel::kLog,
                                            {std::string(kConceptName), std::string(kTimeTimestamp)},
                                            parameter_digest(canonical_text(parameters)),
                                            ctx.applied_at});
  return out;
}

}  // namespace pc4pm
