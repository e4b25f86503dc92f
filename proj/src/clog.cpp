#include "contlog/clog.hpp"

#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace contlog {

namespace {

void require_at_least_one(const Nat& p, const Nat& q, const char* what) {
    if (q.is_zero()) {
        throw PreconditionError(std::string(what) + ": q must be >= 1");
    }
    if (p < q) {
        throw PreconditionError(std::string(what) + ": requires p/q >= 1");
    }
}

Nat potential_of(const RationalPair& r) { return r.p * r.p + r.q * r.q; }

// Drives the step loop for expand and trace. on_step sees every step,
// terminal included.
template <typename OnStep>
void run(const Nat& p, const Nat& q, Reduce reduce, OnStep&& on_step) {
    require_at_least_one(p, q, "expand");
    RationalPair state{p, q};
    Nat f = potential_of(state);
    for (;;) {
        StepResult s = step(state);
        if (!s.next) {
            on_step(s.k, state, std::optional<RationalPair>{}, false);
            return;
        }
        bool reduced = false;
        if (reduce == Reduce::on) {
            RationalPair r = reduce_pow2(s.next->p, s.next->q);
            reduced = r.p != s.next->p;
            *s.next = std::move(r);
        }
        Nat f_next = potential_of(*s.next);
        if (!(f_next < f)) {
            throw std::logic_error("expand: potential p^2 + q^2 failed to decrease");
        }
        on_step(s.k, state, s.next, reduced);
        state = std::move(*s.next);
        f = std::move(f_next);
    }
}

}  // namespace

StepResult step(const RationalPair& state) {
    require_at_least_one(state.p, state.q, "step");
    const std::uint64_t k = floor_log2_ratio(state.p, state.q);
    Nat scaled = state.q.shl(k);
    if (scaled == state.p) {
        return {k, std::nullopt};
    }
    Nat rest = state.p - scaled;
    // p < 2^(k+1) q gives 2^k q > p - 2^k q.
    if (!(scaled > rest) || rest.is_zero()) {
        throw std::logic_error("step: successor state violates p' > q' >= 1");
    }
    return {k, RationalPair{std::move(scaled), std::move(rest)}};
}

Expansion expand(const Nat& p, const Nat& q, Reduce reduce) {
    Expansion e;
    run(p, q, reduce, [&](std::uint64_t k, const RationalPair&, const std::optional<RationalPair>&, bool) {
        e.terms.push_back(k);
    });
    return e;
}

RationalPair evaluate(const Expansion& e) {
    if (e.terms.empty()) {
        throw PreconditionError("evaluate: empty expansion");
    }
    Nat a = Nat::pow2(e.terms.back());
    Nat b(1);
    for (auto it = e.terms.rbegin() + 1; it != e.terms.rend(); ++it) {
        Nat next_a = (a + b).shl(*it);
        b = std::move(a);
        a = std::move(next_a);
    }
    RationalPair r = reduce_pow2(a, b);
    return reduce_full(r.p, r.q);
}

std::uint64_t measure_L(const Nat& p, const Nat& q) { return expand(p, q).terms.size(); }

std::uint64_t measure_T(const Nat& p, const Nat& q) {
    std::uint64_t total = 0;
    for (auto k : expand(p, q).terms) {
        total += k;
    }
    return total;
}

StepTrace trace(const Nat& p, const Nat& q, Reduce reduce) {
    StepTrace t;
    t.input = {p, q};
    run(p, q, reduce,
        [&](std::uint64_t k, const RationalPair& before, const std::optional<RationalPair>& after, bool reduced) {
            t.steps.push_back({k, before, after, reduced});
            t.expansion.terms.push_back(k);
        });
    return t;
}

WordMeasure measure_word(std::uint64_t p, std::uint64_t q) {
    if (q == 0 || p < q) {
        throw PreconditionError("measure_word: requires p >= q >= 1");
    }
    WordMeasure m;
    for (;;) {
        unsigned k = std::bit_width(p) - std::bit_width(q);
        std::uint64_t scaled = q << k;
        if (scaled > p) {
            --k;
            scaled >>= 1;
        }
        ++m.L;
        m.T += k;
        if (scaled == p) {
            return m;
        }
        const std::uint64_t rest = p - scaled;
        p = scaled;
        q = rest;
    }
}

std::string format_expansion(const Expansion& e) {
    std::string out = "<";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(e.terms[i]);
    }
    out += '>';
    return out;
}

Expansion parse_expansion(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
            s.remove_prefix(1);
        }
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
            s.remove_suffix(1);
        }
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '<' || text.back() != '>') {
        throw PreconditionError("expansion must look like <k0,k1,...>: '" + std::string(text) + "'");
    }
    std::string_view body = trim(text.substr(1, text.size() - 2));
    Expansion e;
    if (body.empty()) {
        return e;
    }
    for (;;) {
        const auto comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        std::uint64_t k = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw PreconditionError("bad expansion term '" + std::string(item) + "'");
        }
        e.terms.push_back(k);
        if (comma == std::string_view::npos) {
            break;
        }
        body.remove_prefix(comma + 1);
    }
    return e;
}

std::string format_trace(const StepTrace& t) {
    std::ostringstream os;
    for (const auto& s : t.steps) {
        os << "step " << s.k_emitted << ' ' << s.before.p << ' ' << s.before.q << ' ';
        if (s.after) {
            os << s.after->p << ' ' << s.after->q;
        } else {
            os << s.before.q.shl(s.k_emitted) << " 0";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace contlog
