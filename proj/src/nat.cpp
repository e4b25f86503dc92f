#include "contlog/nat.hpp"

#include <limits>
#include <ostream>

namespace contlog {

Nat::Nat(std::uint64_t v) {
    // mpz_class has no portable uint64_t constructor on every platform.
    mpz_import(v_.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
}

Nat Nat::parse(std::string_view digits) {
    if (digits.empty()) {
        throw PreconditionError("empty natural-number literal");
    }
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw PreconditionError("malformed natural-number literal '" + std::string(digits) + "'");
        }
    }
    mpz_class v;
    v.set_str(std::string(digits), 10);
    return Nat(std::move(v));
}

Nat Nat::pow2(std::uint64_t e) {
    mpz_class v;
    mpz_setbit(v.get_mpz_t(), e);
    return Nat(std::move(v));
}

std::string Nat::to_string() const { return v_.get_str(10); }

bool Nat::fits_u64() const { return bit_length() <= 64; }

std::uint64_t Nat::to_u64() const {
    if (!fits_u64()) {
        throw std::overflow_error("natural number does not fit in 64 bits");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v_.get_mpz_t());
    return out;
}

std::uint64_t Nat::bit_length() const {
    if (is_zero()) {
        return 0;
    }
    return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

std::uint64_t Nat::trailing_zeros() const {
    if (is_zero()) {
        throw PreconditionError("2-adic valuation of zero is undefined");
    }
    return mpz_scan1(v_.get_mpz_t(), 0);
}

Nat Nat::shl(std::uint64_t bits) const {
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), v_.get_mpz_t(), bits);
    return Nat(std::move(out));
}

Nat Nat::shr(std::uint64_t bits) const {
    mpz_class out;
    mpz_fdiv_q_2exp(out.get_mpz_t(), v_.get_mpz_t(), bits);
    return Nat(std::move(out));
}

Nat Nat::pow(std::uint64_t e) const {
    if (e > std::numeric_limits<unsigned long>::max()) {
        throw std::overflow_error("exponent too large");
    }
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), v_.get_mpz_t(), static_cast<unsigned long>(e));
    return Nat(std::move(out));
}

Nat operator-(const Nat& a, const Nat& b) {
    if (a < b) {
        throw PreconditionError("natural-number subtraction would go negative");
    }
    return Nat(mpz_class(a.v_ - b.v_));
}

std::pair<Nat, Nat> Nat::divmod(const Nat& b) const {
    if (b.is_zero()) {
        throw PreconditionError("division by zero");
    }
    mpz_class quot;
    mpz_class rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), v_.get_mpz_t(), b.v_.get_mpz_t());
    return {Nat(std::move(quot)), Nat(std::move(rem))};
}

Nat Nat::divexact(const Nat& b) const {
    if (b.is_zero()) {
        throw PreconditionError("division by zero");
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), v_.get_mpz_t(), b.v_.get_mpz_t());
    return Nat(std::move(out));
}

Nat gcd(const Nat& a, const Nat& b) {
    mpz_class out;
    mpz_gcd(out.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return Nat(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_string(); }

}  // namespace contlog
