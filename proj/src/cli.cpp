#include "contlog/cli.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contlog/analysis.hpp"
#include "contlog/audit.hpp"
#include "contlog/bounds.hpp"
#include "contlog/clog.hpp"
#include "contlog/parallel.hpp"

namespace contlog {

namespace {

RationalPair read_input(const std::string& text, bool lowest) {
    RationalPair r = parse_rational(text);
    if (r.p < r.q) {
        throw PreconditionError("input " + text + " is below 1; the algorithm needs p/q >= 1");
    }
    if (lowest) {
        r = reduce_full(r.p, r.q);
    }
    return r;
}

int report(const BoundReport& r, bool json, std::ostream& out) {
    out << (json ? format_bound_records(r) : format_bound_summary(r));
    return r.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continued logarithm expansions of rationals, with exact bound checks and experiments", "contlog"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned jobs = default_jobs();
    app.add_option("--jobs", jobs, "Worker threads (default: $CLOG_JOBS or hardware threads)")
        ->check(CLI::PositiveNumber);

    std::string input;
    bool no_reduce = false;
    bool reduce = false;
    bool lowest = false;
    bool json = false;
    std::uint64_t max = 0;
    std::uint64_t q_min = 0;
    std::uint64_t q_max = 0;
    bool all_p = false;
    std::uint64_t k = 2;
    std::uint64_t depth = 0;
    std::uint64_t len = 0;

    std::function<int()> action;

    auto* expand_cmd = app.add_subcommand("expand", "Continued logarithm expansion of R = p/q >= 1");
    expand_cmd->add_option("R", input, "p/q or p")->required();
    expand_cmd->add_flag("--no-reduce", no_reduce, "Keep common factors of two in intermediate states");
    expand_cmd->add_flag("--lowest", lowest, "Reduce the input to lowest terms first");
    expand_cmd->callback([&] {
        action = [&] {
            const RationalPair r = read_input(input, lowest);
            out << format_expansion(expand(r.p, r.q, no_reduce ? Reduce::off : Reduce::on)) << '\n';
            return kExitOk;
        };
    });

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate <k0,k1,...> to a lowest-terms p/q");
    eval_cmd->add_option("E", input, "<k0,k1,...>")->required();
    eval_cmd->callback([&] {
        action = [&] {
            std::string text = input;
            if (text.empty() || text.front() != '<') {
                text = "<" + text + ">";
            }
            out << format_rational(evaluate(parse_expansion(text))) << '\n';
            return kExitOk;
        };
    });

    auto* trace_cmd = app.add_subcommand("trace", "Per-step records: step k p q p' q'");
    trace_cmd->add_option("R", input, "p/q or p")->required();
    trace_cmd->add_flag("--reduce", reduce, "Divide common factors of two out of intermediate states");
    trace_cmd->add_flag("--lowest", lowest, "Reduce the input to lowest terms first");
    trace_cmd->callback([&] {
        action = [&] {
            const RationalPair r = read_input(input, lowest);
            out << format_trace(trace(r.p, r.q, reduce ? Reduce::on : Reduce::off));
            return kExitOk;
        };
    });

    auto* audit_cmd = app.add_subcommand("audit", "Check the potential-function contraction on one trace");
    audit_cmd->add_option("R", input, "p/q or p")->required();
    audit_cmd->add_flag("--lowest", lowest, "Reduce the input to lowest terms first");
    audit_cmd->add_flag("--json", json, "JSON Lines, one record per group");
    audit_cmd->callback([&] {
        action = [&] {
            const RationalPair r = read_input(input, lowest);
            const AuditReport a = audit_trace(trace(r.p, r.q, Reduce::off));
            out << (json ? format_audit_records(a) : format_audit_text(a));
            return a.all_ok() ? kExitOk : kExitViolation;
        };
    });

    auto add_range_check = [&](const char* name, const char* help,
                               std::function<BoundReport(std::uint64_t, unsigned)> run) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--max", max, "Cutoff")->required();
        cmd->add_flag("--json", json, "JSON Lines records instead of the summary");
        cmd->callback([&, run] {
            action = [&, run] { return report(run(max, jobs), json, out); };
        });
    };
    add_range_check("verify-l", "L <= 2 log2 p + 2 for all 1 <= q <= p <= max", verify_L_bound);
    add_range_check("verify-t", "T < log2 p (2 log2 p + 2) for all 1 <= q <= p <= max, p >= 2", verify_T_bound);
    add_range_check("mersenne", "Expansion, L and T of 2^n - 1 for 2 <= n <= max", verify_mersenne);
    add_range_check("tightness", "L >= 2 log2 p - 2 for p = 2^n - 1, 2 <= n <= max", tightness_check);

    auto* sweep_cmd = app.add_subcommand("sweep", "Statistics of L and T over q < p < 2q, CSV");
    sweep_cmd->add_option("--q-min", q_min, "First q")->required();
    sweep_cmd->add_option("--q-max", q_max, "Last q")->required();
    sweep_cmd->add_flag("--all-p", all_p, "Include p not coprime to q");
    sweep_cmd->callback([&] {
        action = [&] {
            out << format_sweep_csv(sweep_stats(q_min, q_max, !all_p, jobs));
            return kExitOk;
        };
    });

    auto* seq_cmd = app.add_subcommand("seq-l", "L(1..max) as 'n L(n)' lines");
    seq_cmd->add_option("--max", max, "Last n")->required();
    seq_cmd->callback([&] {
        action = [&] {
            const auto seq = sequence_L(max, jobs);
            for (std::size_t i = 0; i < seq.size(); ++i) {
                out << i + 1 << ' ' << seq[i] << '\n';
            }
            return kExitOk;
        };
    });

    auto* kernel_cmd = app.add_subcommand("kernel", "Rank profile of the k-kernel of L");
    kernel_cmd->add_option("--k", k, "Base k >= 2")->required();
    kernel_cmd->add_option("--depth", depth, "Maximum depth")->required();
    kernel_cmd->add_option("--len", len, "Row length M >= 16")->required();
    kernel_cmd->callback([&] {
        action = [&] {
            out << format_kernel_table(kernel_rank_profile_L(k, depth, len, jobs));
            return kExitOk;
        };
    });

    auto* cf_cmd = app.add_subcommand("cf", "Ordinary continued fraction [a0,a1,...] of R");
    cf_cmd->add_option("R", input, "p/q or p")->required();
    cf_cmd->callback([&] {
        action = [&] {
            const RationalPair r = read_input(input, false);
            out << format_cf(cf_expand(r.p, r.q)) << '\n';
            return kExitOk;
        };
    });

    auto* compare_cmd = app.add_subcommand("compare", "CF length vs L vs T per band of p, CSV");
    compare_cmd->add_option("--max", max, "Cutoff")->required();
    compare_cmd->callback([&] {
        action = [&] {
            out << format_compare_csv(compare_cf(max, jobs));
            return kExitOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "contlog: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action();
    } catch (const PreconditionError& e) {
        err << "contlog: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "contlog: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace contlog
