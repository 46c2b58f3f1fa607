#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pc4pm {

// Splits [0, n) into at most `workers` contiguous chunks and runs
// fn(chunk_index, begin, end) for each, on separate threads when workers > 1.
// Returns the number of chunks. The first exception thrown by any chunk is
// rethrown after all threads join.
template <typename Fn>
std::size_t parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

// Per-chunk partial results merged in chunk order, so the outcome does not
// depend on how many workers ran.
template <typename Partial, typename MapFn, typename MergeFn>
Partial parallel_map_reduce(std::size_t n, unsigned workers, MapFn&& map, MergeFn&& merge) {
  std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  std::vector<Partial> partials(chunks);
  parallel_chunks(n, static_cast<unsigned>(chunks),
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    partials[c] = map(begin, end);
                  });
  Partial out = std::move(partials.front());
  for (std::size_t c = 1; c < partials.size(); ++c) merge(out, std::move(partials[c]));
  return out;
}

// Applies fn(i) for every i in [0, n) across workers.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  parallel_chunks(n, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace pc4pm
