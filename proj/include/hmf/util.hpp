#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hmf::util {

// Primes up to and including n.
std::vector<int> primes_up_to(int n);

// Exact divisor count.
int divisor_count(long long n);

// Deterministic counter-based generator: the value depends only on the key,
// never on call order, so streams can be replayed or evaluated in parallel.
std::uint64_t hash_mix(std::uint64_t x);

inline std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                std::uint64_t c = 0) {
    std::uint64_t x = seed;
    x = hash_mix(x ^ (a * 0x9e3779b97f4a7c15ULL));
    x = hash_mix(x ^ (b * 0xbf58476d1ce4e5b9ULL));
    x = hash_mix(x ^ (c * 0x94d049bb133111ebULL));
    return x;
}

inline double uniform01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Chunked parallel map-reduce over [0, n): chunk boundaries are fixed, the
// reduction is an ordered sum over chunk index, so results are independent
// of the thread count.
double parallel_sum(std::size_t n, int threads,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum);

// Global thread default used by the CLI --threads flag (0 = hardware).
void set_default_threads(int threads);
int default_threads();

// FNV-1a over a string, for config hashes in report trailers.
std::uint64_t fnv1a(const std::string& s);

std::string format_g17(double v);

}  // namespace hmf::util
