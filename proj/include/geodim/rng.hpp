#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace geodim {

/// Deterministic counter-based random stream.
///
/// A stream is fully identified by (master_seed, label). The i-th draw
/// depends only on that pair and on i, so sibling streams can be consumed
/// in any order, or in parallel, without affecting each other's sequences.
/// Labels form a path hierarchy: child("row/3") of a stream labeled
/// "manifold/a" is the stream labeled "manifold/a/row/3".
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::string label);

    /// Derived stream whose label is `label() + "/" + suffix`.
    RandomStream child(std::string_view suffix) const;

    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01();
    double uniform(double lo, double hi);

    /// Standard normal, Box-Muller (second value of each pair is cached).
    double normal();

    /// Independent standard normals in the real and imaginary parts.
    std::complex<double> complex_gaussian();

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    std::uint64_t master_seed() const { return master_; }
    const std::string& label() const { return label_; }

    /// "master=<seed> path=<label>" provenance string.
    std::string lineage() const;

private:
    std::uint64_t master_ = 0;
    std::string label_;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

RandomStream derive_stream(std::uint64_t master_seed, std::string label);

} // namespace geodim
