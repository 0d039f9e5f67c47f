#pragma once
#include <cstdint>
#include <random>

namespace irsnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One stream per Monte Carlo trial. The stream depends only on
// (master_seed, stream_index), so results never depend on thread count
// or scheduling.
inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::uint64_t stream_index) {
  std::uint64_t a = splitmix64(master_seed ^ 0x6a09e667f3bcc909ULL);
  std::uint64_t b = splitmix64(a ^ splitmix64(stream_index));
  std::seed_seq seq{static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace irsnet
