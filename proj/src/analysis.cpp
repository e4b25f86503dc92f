#include "contlog/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "contlog/clog.hpp"
#include "contlog/parallel.hpp"

namespace contlog {

// ---------------------------------------------------------------------------
// Sweep

mpq_class SweepRow::mean_L() const {
    mpq_class m(mpz_class(static_cast<unsigned long>(sum_L)), mpz_class(static_cast<unsigned long>(count)));
    m.canonicalize();
    return m;
}

mpq_class SweepRow::var_L() const {
    // (n * sum(L^2) - sum(L)^2) / n^2
    const mpz_class n(static_cast<unsigned long>(count));
    const mpz_class s(static_cast<unsigned long>(sum_L));
    const mpz_class s2(static_cast<unsigned long>(sum_L_sq));
    mpq_class v(n * s2 - s * s, n * n);
    v.canonicalize();
    return v;
}

mpq_class SweepRow::mean_T() const {
    mpq_class m(mpz_class(static_cast<unsigned long>(sum_T)), mpz_class(static_cast<unsigned long>(count)));
    m.canonicalize();
    return m;
}

std::vector<SweepRow> sweep_stats(std::uint64_t q_min, std::uint64_t q_max, bool coprime_only, unsigned jobs) {
    if (q_min < 1 || q_min > q_max) {
        throw PreconditionError("sweep: empty q range");
    }
    if (q_max > kSweepMaxQ) {
        throw PreconditionError("sweep: q_max exceeds " + std::to_string(kSweepMaxQ));
    }
    std::vector<SweepRow> rows(q_max - q_min + 1);
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        SweepRow& row = rows[i];
        const std::uint64_t q = q_min + i;
        row.q = q;
        for (std::uint64_t p = q + 1; p < 2 * q; ++p) {
            if (coprime_only && std::gcd(p, q) != 1) {
                continue;
            }
            const WordMeasure m = measure_word(p, q);
            ++row.count;
            row.sum_L += m.L;
            row.sum_L_sq += std::uint64_t{m.L} * m.L;
            row.max_L = std::max<std::uint64_t>(row.max_L, m.L);
            row.sum_T += m.T;
            row.max_T = std::max(row.max_T, m.T);
        }
    });
    return rows;
}

std::string render_decimal(const mpq_class& x, int places) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const bool negative = sgn(x) < 0;
    const mpq_class a = abs(x);
    // floor((2 * num * scale + den) / (2 * den)) rounds half up.
    mpz_class scaled = (2 * a.get_num() * scale + a.get_den()) / (2 * a.get_den());
    mpz_class whole = scaled / scale;
    mpz_class frac = scaled % scale;
    std::string frac_digits = frac.get_str();
    frac_digits.insert(0, static_cast<std::size_t>(places) - frac_digits.size(), '0');
    std::string out = (negative && sgn(scaled) != 0 ? "-" : "") + whole.get_str();
    if (places > 0) {
        out += "." + frac_digits;
    }
    return out;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "q,count,mean_L,var_L,max_L,mean_T,max_T,mean_L_over_log2q\n";
    for (const auto& r : rows) {
        os << r.q << ',' << r.count << ',';
        if (r.count == 0) {
            os << "NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        const mpq_class mean = r.mean_L();
        os << render_decimal(mean) << ',' << render_decimal(r.var_L()) << ',' << r.max_L << ','
           << render_decimal(r.mean_T()) << ',' << r.max_T << ',';
        // log2 q is irrational; this column alone goes through long double.
        const long double ratio = static_cast<long double>(mean.get_d()) / std::log2(static_cast<long double>(r.q));
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6Lf", ratio);
        os << buf << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Sequence and kernel

std::vector<std::uint64_t> sequence_L(std::uint64_t N, unsigned jobs) {
    if (N < 1) {
        throw PreconditionError("sequence_L: requires N >= 1");
    }
    std::vector<std::uint64_t> out(N);
    constexpr std::uint64_t block = 4096;
    const std::uint64_t blocks = (N + block - 1) / block;
    parallel_for(blocks, jobs, [&](std::size_t b) {
        const std::uint64_t lo = b * block;
        const std::uint64_t hi = std::min(N, lo + block);
        for (std::uint64_t i = lo; i < hi; ++i) {
            out[i] = measure_word(i + 1, 1).L;
        }
    });
    return out;
}

bool IntegerEchelon::insert(std::span<const std::int64_t> row) {
    std::vector<mpz_class> v;
    v.reserve(row.size());
    for (auto x : row) {
        v.emplace_back(static_cast<long>(x));
    }
    return insert(std::move(v));
}

bool IntegerEchelon::insert(std::vector<mpz_class> v) {
    if (v.size() != width_) {
        throw PreconditionError("IntegerEchelon: row width mismatch");
    }
    auto it = basis_.begin();
    for (; it != basis_.end(); ++it) {
        const mpz_class& lead = it->values[it->pivot];
        const mpz_class c = v[it->pivot];
        if (sgn(c) == 0) {
            continue;
        }
        // v <- (lead/g) v - (c/g) b
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), c.get_mpz_t());
        const mpz_class a = lead / g;
        const mpz_class m = c / g;
        for (std::size_t j = 0; j < width_; ++j) {
            v[j] = a * v[j] - m * it->values[j];
        }
    }
    const auto first = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    if (first == v.end()) {
        return false;
    }
    mpz_class content = 0;
    for (const auto& x : v) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    }
    if (content != 1) {
        for (auto& x : v) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
        }
    }
    const auto pivot = static_cast<std::size_t>(first - v.begin());
    auto pos = std::lower_bound(basis_.begin(), basis_.end(), pivot,
                                [](const BasisRow& b, std::size_t p) { return b.pivot < p; });
    basis_.insert(pos, BasisRow{pivot, std::move(v)});
    return true;
}

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) {
        return 0;
    }
    IntegerEchelon e(rows.front().size());
    for (const auto& r : rows) {
        e.insert(r);
    }
    return e.rank();
}

std::uint64_t kernel_prefix_length(std::uint64_t k, std::uint64_t max_depth, std::uint64_t M, std::uint64_t ceiling) {
    if (k < 2) {
        throw PreconditionError("kernel: requires k >= 2");
    }
    if (M < 1) {
        throw PreconditionError("kernel: requires M >= 1");
    }
    std::uint64_t ke = 1;
    for (std::uint64_t e = 0; e < max_depth; ++e) {
        if (ke > ceiling / k) {
            throw PreconditionError("kernel: k^depth * (M + 1) exceeds the size ceiling");
        }
        ke *= k;
    }
    if (M + 1 > ceiling / ke) {
        throw PreconditionError("kernel: k^depth * (M + 1) exceeds the size ceiling");
    }
    return ke * (M + 1) - 1;
}

KernelReport kernel_rank_profile(std::span<const std::uint64_t> seq, std::uint64_t k, std::uint64_t max_depth,
                                 std::uint64_t M, std::uint64_t ceiling) {
    if (M < 16) {
        throw PreconditionError("kernel: requires truncation length M >= 16");
    }
    const std::uint64_t needed = kernel_prefix_length(k, max_depth, M, ceiling);
    if (seq.size() < needed) {
        throw PreconditionError("kernel: sequence prefix shorter than k^depth * (M + 1) - 1");
    }
    KernelReport r;
    r.k = k;
    r.truncation_length = M;

    IntegerEchelon echelon(M);
    std::uint64_t stacked = 0;
    std::uint64_t ke = 1;
    std::vector<mpz_class> row(M);
    for (std::uint64_t e = 0; e <= max_depth; ++e) {
        for (std::uint64_t res = 0; res < ke; ++res) {
            for (std::uint64_t m = 1; m <= M; ++m) {
                const std::uint64_t n = ke * m + res;
                mpz_import(row[m - 1].get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &seq[n - 1]);
            }
            echelon.insert(row);
            ++stacked;
        }
        r.depths.push_back(e);
        r.rows.push_back(stacked);
        r.ranks.push_back(echelon.rank());
        ke *= k;
    }
    const auto d = r.ranks.size();
    r.stabilized = d >= 2 && r.ranks[d - 1] == r.ranks[d - 2];
    return r;
}

KernelReport kernel_rank_profile_L(std::uint64_t k, std::uint64_t max_depth, std::uint64_t M, unsigned jobs,
                                   std::uint64_t ceiling) {
    if (M < 16) {
        throw PreconditionError("kernel: requires truncation length M >= 16");
    }
    const auto seq = sequence_L(kernel_prefix_length(k, max_depth, M, ceiling), jobs);
    return kernel_rank_profile(seq, k, max_depth, M, ceiling);
}

std::string format_kernel_table(const KernelReport& r) {
    std::ostringstream os;
    os << "# k=" << r.k << " M=" << r.truncation_length << " rows s(k^e*m+r) for m=1..M, 0<=r<k^e\n";
    os << "# stabilized is a heuristic: equal rank at the last two depths\n";
    os << "depth\trows\trank\tstabilized\n";
    for (std::size_t i = 0; i < r.depths.size(); ++i) {
        const bool last = i + 1 == r.depths.size();
        os << r.depths[i] << '\t' << r.rows[i] << '\t' << r.ranks[i] << '\t'
           << (last ? (r.stabilized ? "yes" : "no") : "-") << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Continued fractions

CFExpansion cf_expand(const Nat& p, const Nat& q) {
    if (q.is_zero()) {
        throw PreconditionError("cf_expand: q must be >= 1");
    }
    if (p < q) {
        throw PreconditionError("cf_expand: requires p >= q");
    }
    CFExpansion cf;
    Nat a = p;
    Nat b = q;
    while (!b.is_zero()) {
        auto [quot, rem] = a.divmod(b);
        cf.terms.push_back(std::move(quot));
        a = std::move(b);
        b = std::move(rem);
    }
    return cf;
}

RationalPair cf_evaluate(const CFExpansion& cf) {
    if (cf.terms.empty()) {
        throw PreconditionError("cf_evaluate: empty continued fraction");
    }
    Nat num = cf.terms.back();
    Nat den(1);
    for (auto it = cf.terms.rbegin() + 1; it != cf.terms.rend(); ++it) {
        Nat next = *it * num + den;
        den = std::move(num);
        num = std::move(next);
    }
    return reduce_full(num, den);
}

std::string format_cf(const CFExpansion& cf) {
    std::string out = "[";
    for (std::size_t i = 0; i < cf.terms.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += cf.terms[i].to_string();
    }
    return out + "]";
}

PairComparison compare_pair(const Nat& p, const Nat& q) {
    const Expansion e = expand(p, q);
    PairComparison c;
    c.cf_length = cf_expand(p, q).terms.size();
    c.L = e.terms.size();
    for (auto k : e.terms) {
        c.T += k;
    }
    return c;
}

namespace {

std::uint64_t cf_length_word(std::uint64_t a, std::uint64_t b) {
    std::uint64_t n = 0;
    while (b != 0) {
        ++n;
        const std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return n;
}

}  // namespace

std::vector<CompareBand> compare_cf(std::uint64_t N, unsigned jobs) {
    if (N < 2) {
        throw PreconditionError("compare: requires N >= 2");
    }
    std::vector<CompareBand> bands;
    for (std::uint64_t lo = 1; lo <= N; lo *= 2) {
        bands.push_back({lo, std::min(N, 2 * lo - 1)});
    }
    parallel_for(bands.size(), jobs, [&](std::size_t i) {
        CompareBand& b = bands[i];
        for (std::uint64_t p = b.p_lo; p <= b.p_hi; ++p) {
            for (std::uint64_t q = 1; q <= p; ++q) {
                const WordMeasure m = measure_word(p, q);
                const std::uint64_t cf = cf_length_word(p, q);
                ++b.pairs;
                b.sum_cf += cf;
                b.max_cf = std::max(b.max_cf, cf);
                b.sum_L += m.L;
                b.max_L = std::max<std::uint64_t>(b.max_L, m.L);
                b.sum_T += m.T;
                b.max_T = std::max(b.max_T, m.T);
            }
        }
    });
    return bands;
}

std::string format_compare_csv(const std::vector<CompareBand>& bands) {
    auto mean = [](std::uint64_t sum, std::uint64_t n) {
        mpq_class m(mpz_class(static_cast<unsigned long>(sum)), mpz_class(static_cast<unsigned long>(n)));
        m.canonicalize();
        return render_decimal(m);
    };
    std::ostringstream os;
    os << "p_lo,p_hi,pairs,mean_cf_len,max_cf_len,mean_L,max_L,mean_T,max_T\n";
    for (const auto& b : bands) {
        os << b.p_lo << ',' << b.p_hi << ',' << b.pairs << ',' << mean(b.sum_cf, b.pairs) << ',' << b.max_cf << ','
           << mean(b.sum_L, b.pairs) << ',' << b.max_L << ',' << mean(b.sum_T, b.pairs) << ',' << b.max_T << '\n';
    }
    return os.str();
}

}  // namespace contlog
