#include "geodim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace geodim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Stafford mix13)
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::string label)
    : master_(master_seed), label_(std::move(label)) {
    key_ = mix64(mix64(master_ + kGolden) ^ fnv1a64(label_));
}

RandomStream RandomStream::child(std::string_view suffix) const {
    std::string sub = label_;
    sub += '/';
    sub += suffix;
    return RandomStream(master_, std::move(sub));
}

std::uint64_t RandomStream::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> RandomStream::complex_gaussian() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::below: bound must be positive");
    // rejection sampling over the largest multiple of bound
    const std::uint64_t limit = bound * (~0ull / bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
}

std::string RandomStream::lineage() const {
    return "master=" + std::to_string(master_) + " path=" + label_;
}

RandomStream derive_stream(std::uint64_t master_seed, std::string label) {
    return RandomStream(master_seed, std::move(label));
}

} // namespace geodim
