#include "hmf/util.hpp"

#include <atomic>
#include <cstdio>
#include <thread>

namespace hmf::util {

std::vector<int> primes_up_to(int n) {
    std::vector<int> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (int p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (long long q = static_cast<long long>(p) * p; q <= n; q += p)
            composite[static_cast<std::size_t>(q)] = true;
    }
    return out;
}

int divisor_count(long long n) {
    int count = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        count *= e + 1;
    }
    if (n > 1) count *= 2;
    return count;
}

std::uint64_t hash_mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int threads) { g_threads.store(threads); }

int default_threads() {
    int t = g_threads.load();
    if (t > 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double parallel_sum(std::size_t n, int threads,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
    constexpr std::size_t kChunk = 2048;
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    if (threads <= 0) threads = default_threads();
    std::vector<double> partial(n_chunks, 0.0);
    if (threads == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            partial[c] = chunk_sum(c * kChunk, std::min(n, (c + 1) * kChunk));
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                partial[c] = chunk_sum(c * kChunk, std::min(n, (c + 1) * kChunk));
            }
        };
        std::vector<std::thread> pool;
        const int use = std::min<std::size_t>(threads, n_chunks);
        pool.reserve(use);
        for (int i = 0; i < use; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    double total = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) total += partial[c];
    return total;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace hmf::util
