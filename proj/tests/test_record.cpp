#include <doctest.h>

#include <set>

#include "ecprime/record.hpp"
#include "support.hpp"

using namespace ecprime;
using nlohmann::json;
namespace to = testing_oracle;

namespace {

Int I(std::uint64_t v)
{
    return Int(static_cast<unsigned long>(v));
}

// A spread of candidates covering every certificate kind.
std::vector<RunRecord> sample_records()
{
    std::vector<RunRecord> out;
    auto push = [&](const FormCandidate& c, Verdict v) { out.push_back(RunRecord{c, std::move(v), {}, {}}); };
    for (unsigned k = 3; k < 40; ++k)
        push(FormCandidate(k, 1), test_mersenne(k));
    for (const auto& c : {FormCandidate(7, 3), FormCandidate(8, 7), FormCandidate(3, 5), FormCandidate(2, 2633),
                          FormCandidate(2, 2503), FormCandidate(2, 1), FormCandidate(20, 1001)})
        push(c, auto_test(c));
    push(FormCandidate(2, 2505), test_large_prime_n(FormCandidate(2, 2505)));
    ParamSearchConfig no_oracle;
    no_oracle.oracle_bound = 7;
    push(FormCandidate(3, 5), test_small_n(FormCandidate(3, 5), no_oracle));
    ParamSearchConfig one_scan;
    one_scan.scan_limit = 1;
    push(FormCandidate(3, 1019), test_large_prime_n(FormCandidate(3, 1019), one_scan));
    for (std::uint64_t n = 250001; out.size() < 60; n += 2) {
        const auto f = to::factor(n);
        if (f.size() != 2)
            continue;
        const FormCandidate c(2, I(n), I(f[0]), I(f[1]));
        if (gate_large_n(c))
            push(c, test_two_prime_n(c));
    }
    return out;
}

}  // namespace

TEST_CASE("sample covers every certificate kind")
{
    std::set<std::size_t> kinds;
    for (const auto& r : sample_records())
        kinds.insert(r.verdict.certificate.index());
    CHECK(kinds.size() == std::variant_size_v<Certificate>);
}

TEST_CASE("records round-trip and replay")
{
    for (bool trace : {false, true}) {
        const JsonOptions opts{trace};
        for (const auto& r : sample_records()) {
            const auto j = record_to_json(r, opts);
            const json parsed = json::parse(j.dump());
            CHECK(record_to_json(record_from_json(parsed), opts) == j);
            const auto result = replay_record(parsed);
            INFO(j.dump());
            CHECK(result.ok);
        }
    }
}

TEST_CASE("record layout")
{
    const RunRecord r{FormCandidate(7, 3), test_small_n(FormCandidate(7, 3)), 1.5, {}};
    const auto j = record_to_json(r);
    CHECK(j["schema"] == "ecprime.run/1");
    CHECK(j["tool_version"] == "0.1.0");
    CHECK(j["candidate"]["p"] == "383");
    CHECK(j["candidate"]["k"] == "7");
    CHECK(j["algorithm"] == "small-n");
    CHECK(j["verdict"] == "prime");
    CHECK(j["certificate"]["type"] == "sequence");
    CHECK(j["elapsed_ms"] == 1.5);
    CHECK_FALSE(j["certificate"].contains("trace"));
    CHECK(record_to_json(r, JsonOptions{true})["certificate"].contains("trace"));

    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items())
        keys.push_back(key);
    CHECK(keys.front() == "schema");
    CHECK(keys.back() == "elapsed_ms");
}

TEST_CASE("serialization is deterministic")
{
    const auto a = sample_records();
    const auto b = sample_records();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(record_to_json(a[i]).dump() == record_to_json(b[i]).dump());
}

TEST_CASE("tampered records fail replay")
{
    const auto j = json::parse(record_to_json(RunRecord{FormCandidate(7, 3), test_small_n(FormCandidate(7, 3)), {}, {}})
                                   .dump());
    auto bad_verdict = j;
    bad_verdict["verdict"] = "composite";
    CHECK_FALSE(replay_record(bad_verdict).ok);

    auto bad_m = j;
    bad_m["certificate"]["m"] = "5";
    CHECK_FALSE(replay_record(bad_m).ok);

    const auto w =
        json::parse(record_to_json(RunRecord{FormCandidate(8, 7), test_small_n(FormCandidate(8, 7)), {}, {}}).dump());
    if (w["certificate"]["type"] == "factor-witness") {
        auto bad_divisor = w;
        bad_divisor["certificate"]["divisor"] = "13";
        CHECK_FALSE(replay_record(bad_divisor).ok);
    }
}

TEST_CASE("malformed records are rejected")
{
    const auto good =
        json::parse(record_to_json(RunRecord{FormCandidate(2, 2633), auto_test(FormCandidate(2, 2633)), {}, {}})
                        .dump());
    auto expect_throw = [](json j) { CHECK_THROWS(record_from_json(j)); };

    auto a = good;
    a["schema"] = "ecprime.run/2";
    expect_throw(a);
    auto b = good;
    b["candidate"]["p"] = "10533";
    expect_throw(b);
    auto c = good;
    c["candidate"]["n"] = 2633;
    expect_throw(c);
    auto d = good;
    d["verdict"] = "maybe";
    expect_throw(d);
    auto e = good;
    e["certificate"]["type"] = "guess";
    expect_throw(e);
    auto f = good;
    f["candidate"]["n"] = "-5";
    expect_throw(f);
    auto g = good;
    g.erase("certificate");
    expect_throw(g);
    auto h = good;
    h["candidate"]["k"] = "1";
    expect_throw(h);
}

TEST_CASE("theorem report json")
{
    const auto j = report_to_json(oracle::verify_theorems(100));
    CHECK(j["schema"] == "ecprime.verify/1");
    CHECK(j["violation_count"] == 0);
    CHECK(j["violations"].empty());
    CHECK(j["primes_checked"].get<int>() > 10);
}
