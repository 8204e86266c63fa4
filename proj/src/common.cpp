#include "geoparam/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace geoparam {

int thread_budget() {
    static const int budget = [] {
        if (const char* env = std::getenv("GEOPARAM_THREADS")) {
            int n = std::atoi(env);
            if (n >= 1) return n;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw >= 1 ? static_cast<int>(hw) : 1;
    }();
    return budget;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

// xoshiro256++
std::uint64_t Rng::next_raw() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::integer(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::integer: bound must be positive");
    // rejection to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_raw();
    } while (v >= limit);
    return v % bound;
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    if (k > n) throw Error("sample_without_replacement: k > n");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(integer(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
        out[i] = pool[i];
    }
    return out;
}

Rng Rng::fork(std::uint64_t stream) const {
    std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    return Rng(splitmix64(s));
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string file_checksum(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open for checksum: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    unsigned char buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) {
        for (std::size_t i = 0; i < got; ++i) {
            h ^= buf[i];
            h *= 0x100000001b3ull;
        }
    }
    std::fclose(f);
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return std::string(out);
}

} // namespace geoparam
