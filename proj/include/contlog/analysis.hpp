#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "contlog/nat.hpp"
#include "contlog/rational_core.hpp"

namespace contlog {

// ---------------------------------------------------------------------------
// Average-case sweep over q < p < 2q.

/// Aggregates for one denominator. Sums are kept so every statistic is an
/// exact rational; rendering to decimals happens only at the CSV boundary.
struct SweepRow {
    std::uint64_t q = 0;
    std::uint64_t count = 0;
    std::uint64_t sum_L = 0;
    std::uint64_t sum_L_sq = 0;
    std::uint64_t max_L = 0;
    std::uint64_t sum_T = 0;
    std::uint64_t max_T = 0;

    mpq_class mean_L() const;
    /// Population variance.
    mpq_class var_L() const;
    mpq_class mean_T() const;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Largest q accepted by sweep_stats; each row costs O(q) expansions.
inline constexpr std::uint64_t kSweepMaxQ = std::uint64_t{1} << 20;

/// One row per q in [q_min, q_max], ordered by q, over all p in (q, 2q)
/// or only those coprime to q.
std::vector<SweepRow> sweep_stats(std::uint64_t q_min, std::uint64_t q_max, bool coprime_only = true,
                                  unsigned jobs = 1);

/// Header plus one line per row:
/// q,count,mean_L,var_L,max_L,mean_T,max_T,mean_L_over_log2q
/// Rows with count 0 render their statistics as NA.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// Rounds half up to `places` decimals, e.g. 7/3 -> "2.333333".
std::string render_decimal(const mpq_class& x, int places = 6);

// ---------------------------------------------------------------------------
// The sequence L(1), L(2), ... and its k-kernel.

/// L(1), ..., L(N) with q = 1; element i holds L(i + 1).
std::vector<std::uint64_t> sequence_L(std::uint64_t N, unsigned jobs = 1);

/// Row space over Q, built incrementally with fraction-free elimination.
/// Rows are kept in echelon form by pivot column with their content divided
/// out, so entries stay integral and small.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t width) : width_(width) {}

    /// Returns true when the row raised the rank.
    bool insert(std::span<const std::int64_t> row);
    bool insert(std::vector<mpz_class> row);

    std::size_t rank() const { return basis_.size(); }

private:
    struct BasisRow {
        std::size_t pivot;
        std::vector<mpz_class> values;
    };

    std::size_t width_;
    std::vector<BasisRow> basis_;  // ascending pivot
};

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows);

/// Default cap on k^depth * (M + 1), the sequence prefix a profile needs.
inline constexpr std::uint64_t kKernelCeiling = std::uint64_t{1} << 26;

struct KernelReport {
    std::uint64_t k = 0;
    std::vector<std::uint64_t> depths;  // 0 .. max_depth
    std::vector<std::uint64_t> rows;    // rows stacked through each depth
    std::vector<std::uint64_t> ranks;   // rank of those rows
    std::uint64_t truncation_length = 0;
    /// Heuristic: the last two depths have equal rank.
    bool stabilized = false;
};

/// Sequence prefix length kernel_rank_profile needs: k^max_depth * (M + 1) - 1.
std::uint64_t kernel_prefix_length(std::uint64_t k, std::uint64_t max_depth, std::uint64_t M,
                                   std::uint64_t ceiling = kKernelCeiling);

/// For each depth e and residue r < k^e the row (s(k^e m + r)) for
/// m = 1..M, where seq[n - 1] = s(n). ranks[e] is the rank of all rows of
/// depth <= e.
KernelReport kernel_rank_profile(std::span<const std::uint64_t> seq, std::uint64_t k, std::uint64_t max_depth,
                                 std::uint64_t M, std::uint64_t ceiling = kKernelCeiling);

/// kernel_rank_profile over sequence_L.
KernelReport kernel_rank_profile_L(std::uint64_t k, std::uint64_t max_depth, std::uint64_t M, unsigned jobs = 1,
                                   std::uint64_t ceiling = kKernelCeiling);

std::string format_kernel_table(const KernelReport& r);

// ---------------------------------------------------------------------------
// Ordinary continued fractions, as a length baseline.

struct CFExpansion {
    std::vector<Nat> terms;

    friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

/// Euclidean partial quotients of p/q. The last quotient is >= 2 unless
/// there is only one.
CFExpansion cf_expand(const Nat& p, const Nat& q);

/// Folds a continued fraction back into a lowest-terms pair.
RationalPair cf_evaluate(const CFExpansion& cf);

std::string format_cf(const CFExpansion& cf);

struct PairComparison {
    std::uint64_t cf_length = 0;
    std::uint64_t L = 0;
    std::uint64_t T = 0;
};

PairComparison compare_pair(const Nat& p, const Nat& q);

/// Aggregates over pairs 1 <= q <= p <= N whose p falls in [lo, hi].
struct CompareBand {
    std::uint64_t p_lo = 0;
    std::uint64_t p_hi = 0;
    std::uint64_t pairs = 0;
    std::uint64_t sum_cf = 0;
    std::uint64_t max_cf = 0;
    std::uint64_t sum_L = 0;
    std::uint64_t max_L = 0;
    std::uint64_t sum_T = 0;
    std::uint64_t max_T = 0;
};

/// Bands are [2^j, 2^(j+1)) clipped to N.
std::vector<CompareBand> compare_cf(std::uint64_t N, unsigned jobs = 1);

std::string format_compare_csv(const std::vector<CompareBand>& bands);

}  // namespace contlog
