#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contlog/rational_core.hpp"

namespace contlog {

/// Continued logarithm terms <k0, k1, ..., kn>, read as
/// x = 2^k0 (1 + 1 / (2^k1 (1 + 1 / (... 2^kn)))).
struct Expansion {
    std::vector<std::uint64_t> terms;

    /// Single term, or last term >= 1. Every expansion the algorithm
    /// emits has this form.
    bool is_canonical() const { return terms.size() == 1 || (!terms.empty() && terms.back() >= 1); }

    friend bool operator==(const Expansion&, const Expansion&) = default;
};

/// Whether intermediate states have common factors of two divided out.
/// The emitted terms do not depend on it.
enum class Reduce { off, on };

struct StepResult {
    std::uint64_t k = 0;
    std::optional<RationalPair> next;  // nullopt: terminal, p was exactly 2^k q
};

struct StepRecord {
    std::uint64_t k_emitted = 0;
    RationalPair before;
    std::optional<RationalPair> after;  // nullopt for the terminal step
    bool reduced = false;               // reduce_pow2 changed `after`
};

struct StepTrace {
    RationalPair input;
    std::vector<StepRecord> steps;
    Expansion expansion;
};

/// One step of the algorithm on pairs: (p, q) -> (2^k q, p - 2^k q).
StepResult step(const RationalPair& state);

Expansion expand(const Nat& p, const Nat& q, Reduce reduce = Reduce::on);

/// Inverse of expand; the result is in lowest terms.
RationalPair evaluate(const Expansion& e);

/// Number of terms.
std::uint64_t measure_L(const Nat& p, const Nat& q);
/// Sum of terms.
std::uint64_t measure_T(const Nat& p, const Nat& q);

StepTrace trace(const Nat& p, const Nat& q, Reduce reduce = Reduce::on);

struct WordMeasure {
    std::uint32_t L = 0;
    std::uint64_t T = 0;

    friend bool operator==(const WordMeasure&, const WordMeasure&) = default;
};

/// L and T for inputs that fit in a machine word. Every intermediate value
/// is bounded by p, so no wider type is ever needed. Same preconditions
/// as expand.
WordMeasure measure_word(std::uint64_t p, std::uint64_t q);

/// "<3,0,1,2>"
std::string format_expansion(const Expansion& e);
/// Inverse of format_expansion; whitespace around terms is tolerated.
Expansion parse_expansion(std::string_view text);

/// One line per step: "step k p q p' q'". The terminal step reports
/// p' = 2^k q and q' = 0.
std::string format_trace(const StepTrace& t);

}  // namespace contlog
