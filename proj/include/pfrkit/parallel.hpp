#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pfrkit {

/// Splits [0, count) into at most `threads` contiguous chunks and runs
/// body(chunk, begin, end) for each, one thread per chunk. Returns the chunk
/// count so callers can size per-chunk accumulators and reduce them in chunk
/// order; with exact integer accumulators the result does not depend on the
/// thread count.
template <class Body>
std::size_t parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(std::max(1U, threads), count));
  if (chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return 1;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(chunks);
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    workers.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

/// Number of chunks parallel_chunks will use.
inline std::size_t chunk_count(std::size_t count, unsigned threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(std::max(1U, threads), count));
}

}  // namespace pfrkit
