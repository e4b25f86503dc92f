#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace contlog {

/// Thrown when an operation is called outside its documented domain
/// (p < q, q = 0, empty expansion, malformed literal, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arbitrary-precision natural number.
///
/// Thin value type over a GMP integer that keeps the value non-negative:
/// subtraction with a larger right operand throws instead of wrapping.
class Nat {
public:
    Nat() = default;
    Nat(std::uint64_t v);  // NOLINT(google-explicit-constructor)

    /// Parses an unsigned base-10 literal. Leading zeros are accepted,
    /// signs, whitespace and empty strings are not.
    static Nat parse(std::string_view digits);

    /// 2^e.
    static Nat pow2(std::uint64_t e);

    std::string to_string() const;

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_even() const { return mpz_even_p(v_.get_mpz_t()) != 0; }
    bool fits_u64() const;
    std::uint64_t to_u64() const;

    /// floor(log2(n)) + 1, with bit_length(0) = 0.
    std::uint64_t bit_length() const;

    /// 2-adic valuation. Requires a non-zero value.
    std::uint64_t trailing_zeros() const;

    Nat shl(std::uint64_t bits) const;
    Nat shr(std::uint64_t bits) const;
    Nat pow(std::uint64_t e) const;

    friend Nat operator+(const Nat& a, const Nat& b) { return Nat(mpz_class(a.v_ + b.v_)); }
    friend Nat operator-(const Nat& a, const Nat& b);
    friend Nat operator*(const Nat& a, const Nat& b) { return Nat(mpz_class(a.v_ * b.v_)); }

    Nat& operator+=(const Nat& b) {
        v_ += b.v_;
        return *this;
    }

    /// Floor quotient and remainder. b must be non-zero.
    std::pair<Nat, Nat> divmod(const Nat& b) const;

    /// Exact division; b must divide *this.
    Nat divexact(const Nat& b) const;
    friend Nat gcd(const Nat& a, const Nat& b);

    friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    const mpz_class& mpz() const { return v_; }

    friend std::ostream& operator<<(std::ostream& os, const Nat& n);

private:
    explicit Nat(mpz_class v) : v_(std::move(v)) {}

    mpz_class v_;
};

}  // namespace contlog
