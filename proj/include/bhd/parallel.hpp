#pragma once

#include <cstddef>
#include <functional>

namespace bhd {

// Runs body(begin, end) over a fixed partition of [0, count) into contiguous
// chunks. The partition depends only on count and chunk, never on the worker
// count, so callers that reduce per-chunk results in chunk order get output
// that does not depend on scheduling.
void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t chunk_index, std::size_t begin,
                                              std::size_t end)>& body);

}  // namespace bhd
