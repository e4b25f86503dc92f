#include "contlog/bounds.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "contlog/parallel.hpp"

namespace contlog {

namespace {

std::uint64_t sum_terms(const Expansion& e) {
    std::uint64_t t = 0;
    for (auto k : e.terms) {
        t += k;
    }
    return t;
}

// L1 - 2 log2(p1) > L2 - 2 log2(p2)  <=>  2^L1 p2^2 > 2^L2 p1^2
bool length_excess_greater(std::uint64_t L1, const Nat& p1, std::uint64_t L2, const Nat& p2) {
    return (p2 * p2).shl(L1) > (p1 * p1).shl(L2);
}

// Largest L allowed by L <= 2 log2(p) + 2, i.e. floor(log2(p^2)) + 2.
std::uint64_t max_allowed_length(const Nat& p) { return (p * p).bit_length() + 1; }

struct PairHit {
    Nat q;
    std::uint64_t observed = 0;
};

// Per-p partial result of a rectangle sweep; merged in p order.
struct Row {
    std::vector<Violation> violations;
    std::optional<PairHit> best;
    std::uint64_t checked = 0;
};

}  // namespace

bool l_bound_holds(std::uint64_t L, const Nat& p) {
    if (p.is_zero()) {
        throw PreconditionError("l_bound_holds: p must be >= 1");
    }
    if (L <= 2) {
        return true;
    }
    return Nat::pow2(L - 2) <= p * p;
}

bool tightness_holds(std::uint64_t L, const Nat& p) { return Nat::pow2(L + 2) >= p * p; }

bool t_bound_holds(std::uint64_t T, const Nat& p) {
    if (p < Nat(2)) {
        throw PreconditionError("t_bound_holds: requires p >= 2");
    }
    // With b = log2 p and f = floor(b): f(2f+2) <= b(2b+2) < (f+1)(2f+4).
    const Nat f(p.bit_length() - 1);
    const Nat T_nat(T);
    if (T_nat < f * (f.shl(1) + Nat(2))) {
        return true;
    }
    const Nat f1 = f + Nat(1);
    if (T_nat >= f1 * (f1.shl(1) + Nat(2))) {
        return false;
    }

    // T < 2b^2 + 2b  <=>  (2b + 1)^2 > 1 + 2T  <=>  y^2 > D with y = log2(2 p^2).
    const Nat D = T_nat.shl(1) + Nat(1);
    const Nat X = (p * p).shl(1);
    if (X.trailing_zeros() + 1 == X.bit_length()) {
        const Nat y(X.bit_length() - 1);
        return y * y > D;
    }
    // y is irrational here and D's square root is integral or quadratic, so
    // they differ and the bracket a/b < y < (a+1)/b eventually separates them.
    Nat X_pow = X;
    std::uint64_t b = 1;
    for (int round = 0; round < 24; ++round) {
        const Nat a(X_pow.bit_length() - 1);
        const Nat Db2 = D * Nat(b) * Nat(b);
        if (a * a >= Db2) {
            return true;
        }
        const Nat a1 = a + Nat(1);
        if (a1 * a1 <= Db2) {
            return false;
        }
        X_pow = X_pow * X_pow;
        b *= 2;
    }
    throw std::logic_error("t_bound_holds: bracket refinement did not converge");
}

Expansion mersenne_expansion(std::uint64_t n) {
    if (n < 2) {
        throw PreconditionError("mersenne_expansion: requires n >= 2");
    }
    Expansion e;
    e.terms.reserve(2 * n - 2);
    for (std::uint64_t k = n - 1; k >= 2; --k) {
        e.terms.push_back(k);
        e.terms.push_back(0);
    }
    e.terms.push_back(1);
    e.terms.push_back(1);
    return e;
}

BoundReport verify_mersenne(std::uint64_t n_max, unsigned jobs) {
    if (n_max < 2) {
        throw PreconditionError("verify_mersenne: requires n_max >= 2");
    }
    BoundReport r;
    r.check = "mersenne";
    r.cutoff = n_max;

    const std::size_t count = n_max - 1;
    std::vector<std::optional<Violation>> slots(count);
    parallel_for(count, jobs, [&](std::size_t i) {
        const std::uint64_t n = i + 2;
        const Nat p = Nat::pow2(n) - Nat(1);
        const Expansion got = expand(p, Nat(1));
        const std::uint64_t L = got.terms.size();
        const std::uint64_t T = sum_terms(got);
        const std::uint64_t want_L = 2 * n - 2;
        const std::uint64_t want_T = n * (n - 1) / 2 + 1;
        if (got != mersenne_expansion(n) || L != want_L || T != want_T) {
            std::ostringstream bound;
            bound << "n=" << n << " expected " << format_expansion(mersenne_expansion(n)) << " L=" << want_L
                  << " T=" << want_T << ", got " << format_expansion(got) << " T=" << T;
            slots[i] = Violation{p, Nat(1), L, bound.str()};
        }
    });
    for (auto& v : slots) {
        if (v) {
            r.violations.push_back(std::move(*v));
        }
    }
    r.checked = count;

    // n = 1 lies outside the closed form; report what the algorithm does there.
    const Expansion one = expand(Nat(1), Nat(1));
    std::ostringstream note;
    note << "n=1 not covered: expand(1)=" << format_expansion(one) << " gives L=" << one.terms.size()
         << " T=" << sum_terms(one) << " while 2n-2=0 and n(n-1)/2+1=1";
    r.notes.push_back(note.str());
    return r;
}

BoundReport verify_L_bound(std::uint64_t N, unsigned jobs) {
    if (N < 1) {
        throw PreconditionError("verify_L_bound: requires N >= 1");
    }
    BoundReport r;
    r.check = "L-bound";
    r.cutoff = N;

    std::vector<Row> rows(N);
    parallel_for(N, jobs, [&](std::size_t i) {
        const Nat p(i + 1);
        Row& row = rows[i];
        for (std::uint64_t qv = 1; qv <= i + 1; ++qv) {
            const Nat q(qv);
            const std::uint64_t L = expand(p, q).terms.size();
            ++row.checked;
            if (!l_bound_holds(L, p)) {
                row.violations.push_back({p, q, L, "L<=" + std::to_string(max_allowed_length(p))});
            }
            if (!row.best || L > row.best->observed) {
                row.best = PairHit{q, L};
            }
        }
    });

    std::uint64_t best_L = 0;
    for (std::size_t i = 0; i < N; ++i) {
        Row& row = rows[i];
        r.checked += row.checked;
        for (auto& v : row.violations) {
            r.violations.push_back(std::move(v));
        }
        const Nat p(i + 1);
        if (!r.witness || length_excess_greater(row.best->observed, p, best_L, r.witness->p)) {
            r.witness = RationalPair{p, row.best->q};
            best_L = row.best->observed;
        }
    }
    r.witness_observed = best_L;
    return r;
}

BoundReport verify_T_bound(std::uint64_t N, unsigned jobs) {
    if (N < 2) {
        throw PreconditionError("verify_T_bound: requires N >= 2");
    }
    BoundReport r;
    r.check = "T-bound";
    r.cutoff = N;

    // Witness ranking uses the slack against the floor-log bound f(2f+2) - T,
    // an integer; the pass/fail decision itself is exact.
    struct TRow {
        Row row;
        std::int64_t slack = 0;
    };
    std::vector<TRow> rows(N - 1);
    parallel_for(N - 1, jobs, [&](std::size_t i) {
        const std::uint64_t pv = i + 2;
        const Nat p(pv);
        const auto f = static_cast<std::int64_t>(p.bit_length() - 1);
        TRow& tr = rows[i];
        for (std::uint64_t qv = 1; qv <= pv; ++qv) {
            const Nat q(qv);
            const std::uint64_t T = sum_terms(expand(p, q));
            ++tr.row.checked;
            if (!t_bound_holds(T, p)) {
                tr.row.violations.push_back({p, q, T, "T<log2(p)(2log2(p)+2)"});
            }
            if (!tr.row.best || T > tr.row.best->observed) {
                tr.row.best = PairHit{q, T};
                tr.slack = f * (2 * f + 2) - static_cast<std::int64_t>(T);
            }
        }
    });

    std::int64_t best_slack = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        TRow& tr = rows[i];
        r.checked += tr.row.checked;
        for (auto& v : tr.row.violations) {
            r.violations.push_back(std::move(v));
        }
        if (!r.witness || tr.slack < best_slack) {
            r.witness = RationalPair{Nat(i + 2), tr.row.best->q};
            r.witness_observed = tr.row.best->observed;
            best_slack = tr.slack;
        }
    }

    const std::uint64_t T1 = sum_terms(expand(Nat(1), Nat(1)));
    r.notes.push_back("excluded (1,1): T=" + std::to_string(T1) +
                      " and the bound log2(1)(2log2(1)+2)=0, so the strict inequality cannot hold at p=1");
    return r;
}

BoundReport tightness_check(std::uint64_t n_max, unsigned jobs) {
    if (n_max < 2) {
        throw PreconditionError("tightness_check: requires n_max >= 2");
    }
    BoundReport r;
    r.check = "tightness";
    r.cutoff = n_max;

    const std::size_t count = n_max - 1;
    std::vector<std::uint64_t> lengths(count);
    parallel_for(count, jobs, [&](std::size_t i) {
        lengths[i] = expand(Nat::pow2(i + 2) - Nat(1), Nat(1)).terms.size();
    });

    for (std::size_t i = 0; i < count; ++i) {
        const Nat p = Nat::pow2(i + 2) - Nat(1);
        const std::uint64_t L = lengths[i];
        ++r.checked;
        if (!tightness_holds(L, p)) {
            r.violations.push_back({p, Nat(1), L, "2^(L+2)>=p^2"});
        }
        // Smallest slack means the least 2^(L+2) / p^2.
        if (!r.witness || length_excess_greater(r.witness_observed, r.witness->p, L, p)) {
            r.witness = RationalPair{p, Nat(1)};
            r.witness_observed = L;
        }
    }
    return r;
}

std::string format_bound_summary(const BoundReport& r) {
    std::ostringstream os;
    os << "checked=" << r.checked << " violations=" << r.violations.size() << " witness=";
    if (r.witness) {
        os << '(' << r.witness->p << ',' << r.witness->q << ')';
    } else {
        os << "none";
    }
    os << '\n';
    for (const auto& v : r.violations) {
        os << "violation p=" << v.p << " q=" << v.q << " observed=" << v.observed << " bound: " << v.bound << '\n';
    }
    for (const auto& n : r.notes) {
        os << "note " << n << '\n';
    }
    return os.str();
}

std::string format_bound_records(const BoundReport& r) {
    using nlohmann::json;
    std::string out;
    for (const auto& v : r.violations) {
        json rec = {{"record", "violation"}, {"check", r.check},       {"p", v.p.to_string()},
                    {"q", v.q.to_string()},  {"observed", v.observed}, {"bound", v.bound}};
        out += rec.dump() + '\n';
    }
    for (const auto& n : r.notes) {
        out += json{{"record", "note"}, {"check", r.check}, {"text", n}}.dump() + '\n';
    }
    json summary = {{"record", "summary"},
                    {"check", r.check},
                    {"cutoff", r.cutoff},
                    {"checked", r.checked},
                    {"violations", r.violations.size()}};
    if (r.witness) {
        summary["witness"] = {{"p", r.witness->p.to_string()},
                              {"q", r.witness->q.to_string()},
                              {"observed", r.witness_observed}};
    } else {
        summary["witness"] = nullptr;
    }
    out += summary.dump() + '\n';
    return out;
}

}  // namespace contlog
