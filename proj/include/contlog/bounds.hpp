#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contlog/clog.hpp"

namespace contlog {

struct Violation {
    Nat p;
    Nat q;
    std::uint64_t observed = 0;
    std::string bound;  // the failed inequality, rendered
};

/// Outcome of a range or family check. An empty violation list means the
/// checked statement held on every input in range.
struct BoundReport {
    std::string check;
    std::uint64_t cutoff = 0;
    std::uint64_t checked = 0;
    std::vector<Violation> violations;
    /// Input closest to the bound (smallest slack), first in (p, q) order on ties.
    std::optional<RationalPair> witness;
    std::uint64_t witness_observed = 0;
    /// Exclusions and discrepancies that are reported rather than counted.
    std::vector<std::string> notes;

    bool ok() const { return violations.empty(); }
};

// Exact forms of the logarithmic inequalities. No floating point anywhere.

/// L <= 2 log2(p) + 2, tested as L <= 2 or 2^(L-2) <= p^2.
bool l_bound_holds(std::uint64_t L, const Nat& p);

/// T < log2(p) (2 log2(p) + 2) for p >= 2. Decided from the floor of log2 p
/// when possible, otherwise by bracketing log2(2 p^2) between rationals a/b
/// (found as bit lengths of (2 p^2)^b) until the bracket clears sqrt(1 + 2T).
bool t_bound_holds(std::uint64_t T, const Nat& p);

/// L >= 2 log2(p) - 2, tested as 2^(L+2) >= p^2.
bool tightness_holds(std::uint64_t L, const Nat& p);

/// Closed form <n-1, 0, n-2, 0, ..., 2, 0, 1, 1> of 2^n - 1. Requires n >= 2.
Expansion mersenne_expansion(std::uint64_t n);

BoundReport verify_mersenne(std::uint64_t n_max, unsigned jobs = 1);
BoundReport verify_L_bound(std::uint64_t N, unsigned jobs = 1);
BoundReport verify_T_bound(std::uint64_t N, unsigned jobs = 1);
BoundReport tightness_check(std::uint64_t n_max, unsigned jobs = 1);

/// "checked=... violations=... witness=(p,q)" followed by one line per
/// violation and note.
std::string format_bound_summary(const BoundReport& r);

/// JSON Lines: one record per violation and note, then a summary record.
std::string format_bound_records(const BoundReport& r);

}  // namespace contlog
