#include "ecprime/cli.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ecprime/record.hpp"

namespace ecprime::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t default_oracle_bound()
{
    if (const char* env = std::getenv("ECPRIME_ORACLE_BOUND")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return kOracleFallbackBound;
}

struct CommonOptions {
    unsigned retries = 20;
    std::optional<std::uint64_t> seed;
    std::uint64_t oracle_bound = default_oracle_bound();
    bool json = false;
    bool trace = false;
    bool timing = false;

    ParamSearchConfig config() const
    {
        ParamSearchConfig cfg;
        cfg.retry_cap = retries;
        cfg.oracle_bound = oracle_bound;
        if (seed) {
            cfg.order = ParamSearchConfig::Order::Random;
            cfg.seed = *seed;
        }
        return cfg;
    }
};

void add_common(CLI::App* app, CommonOptions& o)
{
    app->add_option("--retries", o.retries, "Retry cap for the large-n tests")->check(CLI::PositiveNumber);
    app->add_option("--seed", o.seed, "Use seeded random curve/point scans instead of ascending");
    app->add_option("--oracle-bound", o.oracle_bound, "Trial-division fallback bound (env ECPRIME_ORACLE_BOUND)")
        ->check(CLI::Range(std::uint64_t{7}, kTrialDivisionBound));
    app->add_flag("--json", o.json, "Emit JSON lines");
    app->add_flag("--trace", o.trace, "Include full sequence traces in certificates");
    app->add_flag("--timing", o.timing, "Include elapsed milliseconds in records");
}

int exit_code(Status s)
{
    switch (s) {
    case Status::Prime: return kPrime;
    case Status::Composite: return kComposite;
    case Status::Inconclusive: return kInconclusive;
    case Status::NotApplicable: return kNotApplicable;
    }
    return kNotApplicable;
}

std::string certificate_summary(const Verdict& v)
{
    std::ostringstream s;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, SequenceCertificate>) {
                s << "m=" << c.m;
                if (c.base_point)
                    s << " Q'=(" << c.base_point->x << "," << c.base_point->y << ")";
                if (c.multiple_is_infinity)
                    s << " nQ'=infinity";
                else if (c.outcome)
                    s << " sequence " << outcome_name(*c.outcome);
            } else if constexpr (std::is_same_v<T, OrderCertificate>) {
                s << "m=" << c.m << " Q=(" << c.point.x << "," << c.point.y << ") attempts=" << c.attempts
                  << (c.full_is_infinity ? " n(2^k Q)=infinity" : " n(2^k Q) finite");
            } else if constexpr (std::is_same_v<T, FactorWitness>) {
                s << "factor " << c.divisor << " (" << c.stage << ")";
            } else if constexpr (std::is_same_v<T, OracleDecision>) {
                if (c.least_factor)
                    s << "trial division, least factor " << *c.least_factor;
                else
                    s << "trial division";
            } else if constexpr (std::is_same_v<T, GateFailure>) {
                s << c.reason;
            } else {
                s << "retries exhausted after " << c.count;
            }
        },
        v.certificate);
    return s.str();
}

std::string render(const RunRecord& r, const CommonOptions& o)
{
    if (o.json)
        return record_to_json(r, JsonOptions{o.trace}).dump();
    const FormCandidate& c = r.candidate;
    std::ostringstream s;
    s << "2^" << c.k() << "*" << c.n() << "-1";
    if (c.p() < Int("1000000000000000000000"))
        s << " = " << c.p();
    s << ": " << status_name(r.verdict.status) << " [" << algorithm_name(r.verdict.algorithm) << "] "
      << certificate_summary(r.verdict);
    for (const auto& [key, value] : r.extra.items())
        s << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    if (r.elapsed_ms)
        s << " (" << *r.elapsed_ms << " ms)";
    return s.str();
}

template <typename F>
RunRecord timed(const FormCandidate& c, bool timing, F&& run)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v = run();
    RunRecord r{c, std::move(v), std::nullopt, ojson::object()};
    if (timing)
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

int replay_lines(std::istream& src, std::ostream& out, std::ostream& err)
{
    std::string line;
    std::size_t total = 0, accepted = 0;
    while (std::getline(src, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        ReplayResult r;
        try {
            const auto j = nlohmann::json::parse(line);
            if (j.contains("summary"))
                continue;
            ++total;
            r = replay_record(j);
        } catch (const std::exception& e) {
            err << "malformed record: " << e.what() << "\n";
            return kNotApplicable;
        }
        if (r.ok) {
            ++accepted;
            out << "accepted\n";
        } else {
            out << "rejected: " << r.reason << "\n";
        }
    }
    if (total == 0) {
        err << "no records to replay\n";
        return kNotApplicable;
    }
    return accepted == total ? 0 : 1;
}

int cmd_replay(const std::string& source, std::istream& in, std::ostream& out, std::ostream& err)
{
    if (source == "-")
        return replay_lines(in, out, err);
    if (!source.empty() && source.front() == '{') {
        std::istringstream s(source);
        return replay_lines(s, out, err);
    }
    std::ifstream file(source);
    if (!file) {
        err << "cannot open " << source << "\n";
        return kNotApplicable;
    }
    return replay_lines(file, out, err);
}

struct TestArgs {
    unsigned k = 0;
    std::string n;
    std::optional<std::string> q1, q2;
    std::optional<std::string> replay;
    CommonOptions common;
};

int cmd_test(const TestArgs& a, std::istream& in, std::ostream& out, std::ostream& err)
{
    if (a.replay)
        return cmd_replay(*a.replay, in, out, err);
    if (a.k == 0 || a.n.empty()) {
        err << "test: K and N are required\n";
        return kNotApplicable;
    }
    if (a.q1.has_value() != a.q2.has_value()) {
        err << "test: --q1 and --q2 must be given together\n";
        return kNotApplicable;
    }
    std::optional<FormCandidate> c;
    try {
        if (a.q1)
            c.emplace(a.k, parse_natural(a.n), parse_natural(*a.q1), parse_natural(*a.q2));
        else
            c.emplace(a.k, parse_natural(a.n));
    } catch (const std::exception& e) {
        err << "test: " << e.what() << "\n";
        return kNotApplicable;
    }
    const auto cfg = a.common.config();
    const RunRecord r = timed(*c, a.common.timing, [&] { return auto_test(*c, cfg); });
    out << render(r, a.common) << "\n";
    return exit_code(r.verdict.status);
}

// Runs jobs 0..count-1 on a worker pool and emits results in index order.
template <typename Job>
void ordered_pool(std::size_t count, unsigned workers, Job&& job, const std::function<void(std::string&&)>& emit)
{
    std::vector<std::optional<std::string>> slots(count);
    std::mutex mu;
    std::condition_variable ready;
    std::size_t next_job = 0;

    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next_job == count)
                    return;
                i = next_job++;
            }
            std::string line = job(i);
            {
                std::lock_guard lock(mu);
                slots[i] = std::move(line);
            }
            ready.notify_all();
        }
    };

    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < std::max(1u, workers); ++w)
        threads.emplace_back(worker);
    for (std::size_t i = 0; i < count; ++i) {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return slots[i].has_value(); });
        std::string line = std::move(*slots[i]);
        slots[i].reset();
        lock.unlock();
        emit(std::move(line));
    }
}

struct SearchArgs {
    unsigned k = 0;
    std::string n_min, n_max;
    unsigned workers = 1;
    CommonOptions common;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err)
{
    Int lo, hi;
    try {
        lo = parse_natural(a.n_min);
        hi = parse_natural(a.n_max);
    } catch (const std::exception& e) {
        err << "search: " << e.what() << "\n";
        return kNotApplicable;
    }
    if (a.k < 2 || lo < 1 || hi < lo) {
        err << "search: need k >= 2 and 1 <= n-min <= n-max\n";
        return kNotApplicable;
    }
    if (mpz_even_p(lo.get_mpz_t()))
        lo += 1;
    std::vector<Int> ns;
    for (Int n = lo; n <= hi; n += 2)
        ns.push_back(n);

    const auto cfg = a.common.config();
    std::map<std::string, std::size_t> counts;
    std::vector<Status> statuses(ns.size());
    ordered_pool(
        ns.size(), a.workers,
        [&](std::size_t i) {
            const FormCandidate c(a.k, ns[i]);
            RunRecord r = timed(c, a.common.timing, [&] { return auto_test(c, cfg); });
            statuses[i] = r.verdict.status;
            return render(r, a.common);
        },
        [&](std::string&& line) { out << line << "\n"; });

    for (Status s : {Status::Prime, Status::Composite, Status::Inconclusive, Status::NotApplicable})
        counts[status_name(s)] = 0;
    for (Status s : statuses)
        ++counts[status_name(s)];
    if (a.common.json) {
        ojson summary;
        summary["summary"] = ojson{{"k", std::to_string(a.k)},
                                   {"candidates", ns.size()},
                                   {"prime", counts["prime"]},
                                   {"composite", counts["composite"]},
                                   {"inconclusive", counts["inconclusive"]},
                                   {"not-applicable", counts["not-applicable"]}};
        out << summary.dump() << "\n";
    } else {
        out << "summary: " << ns.size() << " candidates, " << counts["prime"] << " prime, " << counts["composite"]
            << " composite, " << counts["inconclusive"] << " inconclusive, " << counts["not-applicable"]
            << " not-applicable\n";
    }
    return 0;
}

struct MersenneArgs {
    unsigned k_min = 0, k_max = 0;
    bool compare = false;
    CommonOptions common;
};

int cmd_mersenne(const MersenneArgs& a, std::ostream& out, std::ostream& err)
{
    if (a.k_min < 3 || a.k_max < a.k_min) {
        err << "mersenne: need 3 <= k-min <= k-max\n";
        return kNotApplicable;
    }
    bool all_match = true;
    for (unsigned k = a.k_min; k <= a.k_max; ++k) {
        const FormCandidate c(k, 1);
        RunRecord r = timed(c, a.common.timing, [&] { return test_mersenne(k); });
        if (a.compare) {
            const bool ll = lucas_lehmer(k);
            const bool match = ll == (r.verdict.status == Status::Prime);
            all_match = all_match && match;
            r.extra["lucas_lehmer"] = ll ? "prime" : "composite";
            r.extra["match"] = match;
        }
        out << render(r, a.common) << "\n";
    }
    return all_match ? 0 : 1;
}

int cmd_verify(std::uint64_t p_max, bool json, std::ostream& out, std::ostream& err)
{
    if (p_max < 3 || p_max > oracle::kEnumerationBound) {
        err << "verify: --p-max must lie in [3, " << oracle::kEnumerationBound << "]\n";
        return kNotApplicable;
    }
    const auto report = oracle::verify_theorems(p_max);
    if (json) {
        out << report_to_json(report).dump() << "\n";
    } else {
        out << "primes " << report.primes_checked << ", curves " << report.curves_checked << " (" << report.cyclic_curves
            << " cyclic, " << report.product_curves << " Z2+Z), points " << report.points_checked << ", violations "
            << report.violations.size() << "\n";
        for (const auto& v : report.violations)
            out << "  p=" << v.p << " m=" << v.m << " theorem " << v.theorem << ": " << v.detail << "\n";
    }
    return report.violations.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Elliptic-curve primality tests for 2^k n - 1", "ecprime"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    TestArgs test;
    auto* t = app.add_subcommand("test", "Test p = 2^k n - 1 with the applicable algorithm");
    t->add_option("k", test.k, "Exponent k >= 2")->check(CLI::Range(2u, 1u << 24));
    t->add_option("n", test.n, "Odd cofactor n >= 1");
    t->add_option("--q1", test.q1, "First prime factor of n");
    t->add_option("--q2", test.q2, "Second prime factor of n");
    t->add_option("--replay", test.replay, "Replay JSON record(s): inline JSON, a file of JSON lines, or - for stdin");
    add_common(t, test.common);

    MersenneArgs mers;
    auto* ms = app.add_subcommand("mersenne", "Test 2^k - 1 for k in [k-min, k-max]");
    ms->add_option("k_min", mers.k_min)->required();
    ms->add_option("k_max", mers.k_max)->required();
    ms->add_flag("--compare-lucas-lehmer", mers.compare, "Cross-check each exponent against Lucas-Lehmer");
    add_common(ms, mers.common);

    SearchArgs search;
    auto* se = app.add_subcommand("search", "Test 2^k n - 1 for odd n in a range");
    se->add_option("--k", search.k)->required()->check(CLI::Range(2u, 1u << 24));
    se->add_option("--n-min", search.n_min)->required();
    se->add_option("--n-max", search.n_max)->required();
    se->add_option("--workers", search.workers)->check(CLI::Range(1u, 1024u));
    add_common(se, search.common);

    std::uint64_t p_max = 0;
    bool verify_json = false;
    auto* ve = app.add_subcommand("verify", "Brute-force check of the group-structure theorems");
    ve->add_option("--p-max", p_max)->required();
    ve->add_flag("--json", verify_json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kNotApplicable;
    }

    try {
        if (t->parsed())
            return cmd_test(test, in, out, err);
        if (ms->parsed())
            return cmd_mersenne(mers, out, err);
        if (se->parsed())
            return cmd_search(search, out, err);
        return cmd_verify(p_max, verify_json, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNotApplicable;
    }
}

}  // namespace ecprime::cli
