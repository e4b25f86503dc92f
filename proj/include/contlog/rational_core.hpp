#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "contlog/nat.hpp"

namespace contlog {

/// The pair (p, q) standing for p/q. Not required to be in lowest terms;
/// (2, 1) and (4, 2) are different pairs for the same rational.
struct RationalPair {
    Nat p;
    Nat q;

    friend bool operator==(const RationalPair&, const RationalPair&) = default;
};

/// Unique k >= 0 with 2^k * q <= p < 2^(k+1) * q. Requires p >= q >= 1.
///
/// Uses the bit-length difference as a first guess; the guess is either
/// exact or one too large, so a single comparison settles it.
std::uint64_t floor_log2_ratio(const Nat& p, const Nat& q);

/// k if p == 2^k * q exactly, otherwise nullopt. Requires p, q >= 1.
std::optional<std::uint64_t> pow2_multiple_exponent(const Nat& p, const Nat& q);

/// Divides both elements by the largest common power of two.
RationalPair reduce_pow2(const Nat& p, const Nat& q);

/// Lowest terms via full gcd.
RationalPair reduce_full(const Nat& p, const Nat& q);

/// Accepts "p/q" or a bare "p" (q = 1); both parts unbounded decimal.
/// Only checks syntax and q >= 1; callers enforce p >= q.
RationalPair parse_rational(std::string_view text);

std::string format_rational(const RationalPair& r);

}  // namespace contlog
