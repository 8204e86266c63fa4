#ifndef GEOPARAM_COMMON_HPP
#define GEOPARAM_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoparam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid array extents or incompatible operand shapes.
struct ShapeError : Error {
    using Error::Error;
};

/// Bad user-facing configuration (flags, files with wrong parameters).
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure: NaN loss, solver non-convergence, invariant breach.
struct NumericError : Error {
    using Error::Error;
};

/// File-level failure: bad magic, short read, unwritable path.
struct IoError : Error {
    using Error::Error;
};

/// Raster passed to an operation expecting a different value domain.
struct DomainError : Error {
    using Error::Error;
};

/// Thread cap for parallel kernels: GEOPARAM_THREADS if set, else the
/// hardware concurrency. Always >= 1.
int thread_budget();

/// Deterministic random stream. Wraps a fixed 64-bit engine and generates
/// normals itself so output bytes do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller.
    double normal();
    /// Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound);
    /// k distinct indices from [0, n), in draw order.
    std::vector<int> sample_without_replacement(int n, int k);
    /// Derived independent stream; deterministic in (seed, stream).
    Rng fork(std::uint64_t stream) const;

    std::uint64_t next_raw();

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a 64-bit hash of a byte buffer, used for artifact checksums.
std::uint64_t fnv1a64(const void* data, std::size_t n);

/// Checksum of a whole file as a fixed-width hex string.
std::string file_checksum(const std::string& path);

} // namespace geoparam

#endif
