#include "contlog/audit.hpp"

#include <sstream>

#include <json.hpp>

namespace contlog {

namespace {

// The successor pair as given by the step formulas, with q' = 0 for the
// terminal emission.
RationalPair raw_successor(const StepRecord& s) {
    Nat scaled = s.before.q.shl(s.k_emitted);
    Nat rest = s.before.p - scaled;
    return {std::move(scaled), std::move(rest)};
}

void validate(const StepTrace& t) {
    const auto n = t.steps.size();
    if (n == 0) {
        throw MalformedTraceError(0, "trace has no steps");
    }
    if (t.expansion.terms.size() != n) {
        throw MalformedTraceError(0, "expansion length differs from step count");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const StepRecord& s = t.steps[i];
        const RationalPair& expected_before = i == 0 ? t.input : *t.steps[i - 1].after;
        if (s.before != expected_before) {
            throw MalformedTraceError(i, "state does not continue from the previous step");
        }
        if (s.reduced) {
            throw MalformedTraceError(i, "trace was recorded with power-of-two reduction; audit needs raw pairs");
        }
        if (s.before.q.is_zero() || s.before.p < s.before.q) {
            throw MalformedTraceError(i, "state is not >= 1");
        }
        if (s.k_emitted != floor_log2_ratio(s.before.p, s.before.q)) {
            throw MalformedTraceError(i, "emitted term is not floor(log2(p/q))");
        }
        if (t.expansion.terms[i] != s.k_emitted) {
            throw MalformedTraceError(i, "expansion term differs from emitted term");
        }
        const bool exact = s.before.q.shl(s.k_emitted) == s.before.p;
        if (s.after) {
            if (exact) {
                throw MalformedTraceError(i, "step should have been terminal");
            }
            if (*s.after != raw_successor(s)) {
                throw MalformedTraceError(i, "successor pair does not match (2^k q, p - 2^k q)");
            }
        } else if (!exact || i + 1 != n) {
            throw MalformedTraceError(i, "terminal marker on a non-terminal step");
        }
    }
}

}  // namespace

MalformedTraceError::MalformedTraceError(std::size_t index, const std::string& what)
    : std::runtime_error("malformed trace at step " + std::to_string(index) + ": " + what), index_(index) {}

Nat potential(const Nat& p, const Nat& q) { return p * p + q * q; }

const char* to_string(GroupKind kind) {
    switch (kind) {
    case GroupKind::single_zero: return "single-zero";
    case GroupKind::pair_k_then_zero: return "pair-k-then-zero";
    case GroupKind::pair_k_then_k: return "pair-k-then-k";
    case GroupKind::trailing_ungrouped: return "trailing-ungrouped";
    }
    return "?";
}

AuditReport audit_trace(const StepTrace& t) {
    validate(t);

    AuditReport r;
    r.input = t.input;
    r.length = t.steps.size();

    const auto n = t.steps.size();
    std::vector<RationalPair> after(n);
    std::vector<Nat> f_before(n);
    std::vector<Nat> f_after(n);
    for (std::size_t i = 0; i < n; ++i) {
        after[i] = raw_successor(t.steps[i]);
        f_before[i] = potential(t.steps[i].before.p, t.steps[i].before.q);
        f_after[i] = potential(after[i].p, after[i].q);
        if (!(f_after[i] < f_before[i])) {
            r.lemma1_ok = false;
        }
    }

    std::size_t i = 0;
    while (i < n) {
        const std::uint64_t k = t.steps[i].k_emitted;
        const bool last = i + 1 == n;
        if (k == 0) {
            if (last) {
                // p == q: the algorithm stops at once and no contraction applies.
                ++i;
                continue;
            }
            GroupedStep g{GroupKind::single_zero, i, 1, {0}, f_before[i], f_after[i]};
            g.ok = f_after[i].shl(1) <= f_before[i];
            r.lemma2_ok = r.lemma2_ok && g.ok;
            r.groups.push_back(std::move(g));
            ++i;
            continue;
        }
        if (last) {
            r.groups.push_back({GroupKind::trailing_ungrouped, i, 1, {k}, f_before[i], f_after[i]});
            ++i;
            continue;
        }
        const std::uint64_t k2 = t.steps[i + 1].k_emitted;
        const RationalPair& pq2 = after[i + 1];
        GroupedStep g;
        g.first_step = i;
        g.span = 2;
        g.terms = {k, k2};
        g.f_before = f_before[i];
        if (k2 == 0) {
            g.kind = GroupKind::pair_k_then_zero;
            g.f_after = f_after[i + 1];
            g.ok = g.f_after.shl(2) < g.f_before;
            r.lemma3_ok = r.lemma3_ok && g.ok;
        } else {
            g.kind = GroupKind::pair_k_then_k;
            const bool even = pq2.p.is_even() && pq2.q.is_even();
            g.f_after = potential(pq2.p.shr(1), pq2.q.shr(1));
            g.ok = even && g.f_after.shl(2) < g.f_before;
            r.lemma4_ok = r.lemma4_ok && g.ok;
        }
        r.groups.push_back(std::move(g));
        i += 2;
    }

    r.step_bound = potential(t.input.p, t.input.q).bit_length();
    r.theorem5_ok = r.length <= r.step_bound;
    return r;
}

std::uint64_t theorem5_bound(const Nat& p) {
    if (p.is_zero()) {
        throw PreconditionError("theorem5_bound: p must be >= 1");
    }
    return 2 * p.bit_length() + 2;
}

std::string format_audit_text(const AuditReport& r) {
    auto flag = [](bool ok) { return ok ? "ok" : "FAIL"; };
    std::ostringstream os;
    os << "input " << format_rational(r.input) << " L=" << r.length << " step_bound=" << r.step_bound << '\n';
    for (const auto& g : r.groups) {
        os << "group " << to_string(g.kind) << " steps=" << g.first_step;
        if (g.span == 2) {
            os << ".." << g.first_step + 1;
        }
        os << " terms=";
        for (std::size_t j = 0; j < g.terms.size(); ++j) {
            os << (j ? "," : "") << g.terms[j];
        }
        os << " f_before=" << g.f_before << " f_after=" << g.f_after;
        if (g.kind != GroupKind::trailing_ungrouped) {
            os << ' ' << flag(g.ok);
        }
        os << '\n';
    }
    os << "lemma1=" << flag(r.lemma1_ok) << " lemma2=" << flag(r.lemma2_ok) << " lemma3=" << flag(r.lemma3_ok)
       << " lemma4=" << flag(r.lemma4_ok) << " theorem5=" << flag(r.theorem5_ok) << '\n';
    return os.str();
}

std::string format_audit_records(const AuditReport& r) {
    using nlohmann::json;
    std::string out;
    for (const auto& g : r.groups) {
        json rec = {
            {"record", "group"},
            {"kind", to_string(g.kind)},
            {"first_step", g.first_step},
            {"span", g.span},
            {"terms", g.terms},
            {"f_before", g.f_before.to_string()},
            {"f_after", g.f_after.to_string()},
            {"ok", g.ok},
        };
        out += rec.dump() + '\n';
    }
    json summary = {
        {"record", "summary"},
        {"p", r.input.p.to_string()},
        {"q", r.input.q.to_string()},
        {"L", r.length},
        {"step_bound", r.step_bound},
        {"lemma1_ok", r.lemma1_ok},
        {"lemma2_ok", r.lemma2_ok},
        {"lemma3_ok", r.lemma3_ok},
        {"lemma4_ok", r.lemma4_ok},
        {"theorem5_ok", r.theorem5_ok},
    };
    out += summary.dump() + '\n';
    return out;
}

}  // namespace contlog
