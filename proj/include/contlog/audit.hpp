#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "contlog/clog.hpp"

namespace contlog {

/// f(p, q) = p^2 + q^2.
Nat potential(const Nat& p, const Nat& q);

enum class GroupKind {
    single_zero,         // a lone 0 term, contracts f by at least 1/2
    pair_k_then_zero,    // k >= 1 followed by 0, contracts f by more than 1/4
    pair_k_then_k,       // k, k' >= 1, contracts f by more than 1/4 after halving the pair
    trailing_ungrouped,  // final k >= 1 with no partner
};

const char* to_string(GroupKind kind);

/// One block of the left-to-right grouping of the expansion.
/// f_after is the potential the contraction bound is checked against:
/// for pair_k_then_k it is f(p''/2, q''/2).
struct GroupedStep {
    GroupKind kind = GroupKind::single_zero;
    std::size_t first_step = 0;
    std::size_t span = 1;
    std::vector<std::uint64_t> terms;
    Nat f_before;
    Nat f_after;
    bool ok = true;
};

struct AuditReport {
    RationalPair input;
    std::uint64_t length = 0;  // L
    std::vector<GroupedStep> groups;
    bool lemma1_ok = true;  // strict decrease of f at every step
    bool lemma2_ok = true;  // lone zero: 2 f' <= f
    bool lemma3_ok = true;  // k then 0: 4 f'' < f
    bool lemma4_ok = true;  // k then k': p'', q'' even and 4 f(p''/2, q''/2) < f
    bool theorem5_ok = true;
    std::uint64_t step_bound = 0;  // floor(log2 f(p, q)) + 1

    bool all_ok() const { return lemma1_ok && lemma2_ok && lemma3_ok && lemma4_ok && theorem5_ok; }
};

/// The trace handed to audit_trace is inconsistent with the step recurrence.
class MalformedTraceError : public std::runtime_error {
public:
    MalformedTraceError(std::size_t index, const std::string& what);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Checks the potential-function contraction lemmas on an unreduced trace
/// (trace(p, q, Reduce::off)). Pairs whose second step is terminal are
/// checked with q'' = 0.
AuditReport audit_trace(const StepTrace& t);

/// 2 * bitlen(p) + 2, an integer upper bound on 2 log2(p) + 2.
std::uint64_t theorem5_bound(const Nat& p);

/// Human-readable report, one line per group plus a summary line.
std::string format_audit_text(const AuditReport& r);

/// JSON Lines: one record per group followed by one summary record.
std::string format_audit_records(const AuditReport& r);

}  // namespace contlog
