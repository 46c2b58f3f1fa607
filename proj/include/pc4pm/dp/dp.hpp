#pragma once

#include <cstddef>
#include <cstdint>

#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"
#include "pc4pm/core/stats.hpp"
#include "pc4pm/util/random.hpp"

namespace pc4pm {

struct DpParams {
  double epsilon = 1.0;
  double prune_threshold = 0.0;
  std::size_t max_variant_length = 64;
  std::uint64_t seed = 0;
  // Draw the Laplace noise from the operating system CSPRNG instead of the
  // seeded generator. Outputs are then not reproducible.
  bool secure_random = false;

  // InvalidEpsilon for epsilon <= 0 (or not finite); InvalidParameter for a
  // negative threshold or zero max length.
  void check() const;
};

// Laplace(0, scale) by inverse CDF from one uniform draw.
double sample_laplace(Rng& rng, double scale);
double sample_laplace_secure(double scale);

// Rounds half away from zero, then clamps at 0.
std::size_t round_noisy_count(double value);

// Each count c becomes round(c + Laplace(1/epsilon)); variants whose noisy
// count is below max(1, prune_threshold) are dropped. Each variant draws from
// its own stream derived from (seed, variant).
VariantCounts dp_variant_counts(const VariantCounts& counts, const DpParams& params,
                                unsigned workers = 1);

// n traces per noisy variant, case ids "dp-<n>". Start times are drawn from
// the original start times and each step's delay from the original delays of
// that activity pair (median of all delays when the pair never occurs). Events
// carry only activity and timestamp. The original metadata is kept as is.
EventLog reconstruct_log(const EventLog& original, const VariantCounts& noisy, std::uint64_t seed,
                         unsigned workers = 1);

// variants (truncated to max_variant_length) -> noisy counts -> reconstruction,
// plus one "addition" record at log level.
EventLog dp_publish(const EventLog& log, const DpParams& params, const RunContext& ctx = {});

}  // namespace pc4pm
