#include "contlog/rational_core.hpp"

#include <algorithm>

namespace contlog {

std::uint64_t floor_log2_ratio(const Nat& p, const Nat& q) {
    if (q.is_zero()) {
        throw PreconditionError("floor_log2_ratio: q must be >= 1");
    }
    if (p < q) {
        throw PreconditionError("floor_log2_ratio: requires p >= q");
    }
    std::uint64_t k = p.bit_length() - q.bit_length();
    // 2^k q has the same bit length as p, so it is at most one doubling too big.
    if (q.shl(k) > p) {
        --k;
    }
    return k;
}

std::optional<std::uint64_t> pow2_multiple_exponent(const Nat& p, const Nat& q) {
    if (q.is_zero()) {
        throw PreconditionError("pow2_multiple_exponent: q must be >= 1");
    }
    if (p.is_zero()) {
        throw PreconditionError("pow2_multiple_exponent: p must be >= 1");
    }
    if (p < q) {
        return std::nullopt;
    }
    const std::uint64_t k = floor_log2_ratio(p, q);
    if (q.shl(k) == p) {
        return k;
    }
    return std::nullopt;
}

RationalPair reduce_pow2(const Nat& p, const Nat& q) {
    if (p.is_zero() || q.is_zero()) {
        throw PreconditionError("reduce_pow2: p and q must be >= 1");
    }
    const std::uint64_t v = std::min(p.trailing_zeros(), q.trailing_zeros());
    return {p.shr(v), q.shr(v)};
}

RationalPair reduce_full(const Nat& p, const Nat& q) {
    if (q.is_zero()) {
        throw PreconditionError("reduce_full: q must be >= 1");
    }
    const Nat g = gcd(p, q);
    return {p.divexact(g), q.divexact(g)};
}

RationalPair parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    RationalPair r;
    if (slash == std::string_view::npos) {
        r = {Nat::parse(text), Nat(1)};
    } else {
        r = {Nat::parse(text.substr(0, slash)), Nat::parse(text.substr(slash + 1))};
    }
    if (r.q.is_zero()) {
        throw PreconditionError("denominator must be >= 1 in '" + std::string(text) + "'");
    }
    return r;
}

std::string format_rational(const RationalPair& r) { return r.p.to_string() + "/" + r.q.to_string(); }

}  // namespace contlog
