#include <doctest.h>

#include <random>

#include "ecprime/ecring.hpp"
#include "ecprime/oracle.hpp"
#include "ecprime/sequence.hpp"
#include "support.hpp"

using namespace ecprime;
namespace to = testing_oracle;

namespace {

std::vector<Int> ints(std::initializer_list<long> v)
{
    std::vector<Int> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

Int I(std::uint64_t v)
{
    return Int(static_cast<unsigned long>(v));
}

// Outcome kinds and the parts that do not depend on the four-factor.
bool same_classification(const SequenceOutcome& a, const SequenceOutcome& b)
{
    if (a.index() != b.index())
        return false;
    if (const auto* h = std::get_if<GcdHit>(&a))
        return h->step == std::get<GcdHit>(b).step && h->divisor == std::get<GcdHit>(b).divisor;
    if (const auto* e = std::get_if<EarlyInfinity>(&a))
        return e->step == std::get<EarlyInfinity>(b).step;
    return true;
}

}  // namespace

TEST_CASE("hand trace mod 31")
{
    const auto [outcome, trace] = run_sequence(Modulus(Int(31)), 3, 30, 5, false);
    CHECK(std::holds_alternative<AllCoprimeAndFinalZero>(outcome));
    CHECK(trace.s_values == ints({2, 2, 9, 4, 0}));
    CHECK(trace.x_values == ints({30, 2, 10, 20, 0}));
    CHECK(trace.steps_completed == 5);
}

TEST_CASE("hand trace mod 15")
{
    const auto [outcome, trace] = run_sequence(Modulus(Int(15)), 3, 14, 4, false);
    REQUIRE(std::holds_alternative<FinalNonzero>(outcome));
    CHECK(std::get<FinalNonzero>(outcome).residue == 2);
    CHECK(trace.s_values == ints({2, 2, 8, 2}));
    CHECK(trace.x_values == ints({14, 2, 8, 2}));
}

TEST_CASE("two-torsion start is early infinity")
{
    const auto [outcome, trace] = run_sequence(Modulus(Int(31)), 3, 0, 5, true);
    REQUIRE(std::holds_alternative<EarlyInfinity>(outcome));
    CHECK(std::get<EarlyInfinity>(outcome).step == 1);
    CHECK(trace.steps_completed == 1);
}

TEST_CASE("gcd hit reports a proper divisor")
{
    // S_1 = 4 (3^3 - 3*3) = 72, gcd(72, 15) = 3.
    const auto [outcome, trace] = run_sequence(Modulus(Int(15)), 3, 3, 4, true);
    REQUIRE(std::holds_alternative<GcdHit>(outcome));
    CHECK(std::get<GcdHit>(outcome).step == 1);
    CHECK(std::get<GcdHit>(outcome).divisor == 3);
}

TEST_CASE("preconditions")
{
    CHECK_THROWS_AS(run_sequence(Modulus(Int(31)), 3, 30, 1, true), std::invalid_argument);
    CHECK_THROWS_AS(run_sequence(Modulus(Int(31)), 31, 30, 5, true), std::invalid_argument);
    CHECK_THROWS_AS(mersenne_sequence(2), std::invalid_argument);
}

TEST_CASE("mersenne sequence")
{
    CHECK(std::holds_alternative<AllCoprimeAndFinalZero>(mersenne_sequence(5).outcome));
    const auto four = mersenne_sequence(4);
    REQUIRE(std::holds_alternative<FinalNonzero>(four.outcome));
    CHECK(std::get<FinalNonzero>(four.outcome).residue == 2);
    CHECK_FALSE(std::holds_alternative<AllCoprimeAndFinalZero>(mersenne_sequence(11).outcome));
    CHECK(mersenne_sequence(7).trace.modulus == 127);
}

TEST_CASE("four-factor does not change the classification")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t N = 3 + 2 * (rng() % 5000);
        const std::uint64_t m = 1 + rng() % (N - 1);
        const std::uint64_t x0 = rng() % N;
        const unsigned k = 2 + rng() % 12;
        const Modulus mod_n(I(N));
        const auto with = run_sequence(mod_n, I(m), I(x0), k, true);
        const auto without = run_sequence(mod_n, I(m), I(x0), k, false);
        REQUIRE(same_classification(with.outcome, without.outcome));
        CHECK(with.trace.x_values == without.trace.x_values);
        for (std::size_t j = 0; j < with.trace.s_values.size(); ++j)
            CHECK(with.trace.s_values[j] == mod(4 * without.trace.s_values[j], I(N)));
    }
}

TEST_CASE("special-form modulus gives identical traces")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 300; ++i) {
        const unsigned k = 2 + rng() % 40;
        const FormCandidate c(k, I(1 + 2 * (rng() % 1000)));
        const Int m = I(1 + rng() % 1000);
        if (mod(m, c.p()) == 0)
            continue;
        const Int x0 = I(rng());
        const auto fast = run_sequence(Modulus(c), m, x0, k, true);
        const auto plain = run_sequence(Modulus(c.p()), m, x0, k, true);
        CHECK(same_classification(fast.outcome, plain.outcome));
        CHECK(fast.trace.s_values == plain.trace.s_values);
        CHECK(fast.trace.x_values == plain.trace.x_values);
    }
}

TEST_CASE("x-chain agrees with ecring doubling")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t N = 3 + 2 * (rng() % 20000);
        const std::uint64_t m = 1 + rng() % (N - 1);
        const Curve C(I(N), I(m));
        const auto [outcome, trace] = run_sequence(Modulus(I(N)), I(m), I(rng() % N), 10, true);
        for (std::size_t j = 0; j + 1 < trace.x_values.size(); ++j) {
            const auto next = double_x_only(C, trace.x_values[j]);
            REQUIRE(std::holds_alternative<XOnly>(next));
            CHECK(std::get<XOnly>(next).x == trace.x_values[j + 1]);
        }
    }
}

TEST_CASE("S_i is four times y^2 of 2^(i-1) Q over small primes")
{
    for (std::uint64_t p = 7; p < 500; p += 4) {
        if (!to::is_prime(p))
            continue;
        for (std::uint64_t m : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{3}, p - 1}) {
            const Curve C(I(p), I(m));
            for (const Point& Q : oracle::enumerate_points(p, m)) {
                if (is_infinity(Q))
                    continue;
                const unsigned k = 6;
                const auto [outcome, trace] = run_sequence(Modulus(I(p)), I(m), std::get<Affine>(Q).x, k, true);
                for (unsigned i = 1; i <= trace.steps_completed; ++i) {
                    const auto multiple = scalar_mul(C, Int(1) << (i - 1), Q);
                    const Point& R = std::get<Point>(multiple);
                    REQUIRE_FALSE(is_infinity(R));
                    const Int& y = std::get<Affine>(R).y;
                    REQUIRE(trace.s_values[i - 1] == mod(4 * y * y, I(p)));
                }
            }
        }
    }
}

TEST_CASE("all-coprime-final-zero iff the point has order exactly 2^k")
{
    for (std::uint64_t p = 7; p < 500; p += 4) {
        if (!to::is_prime(p))
            continue;
        unsigned v2 = 0;
        while (((p + 1) >> v2) % 2 == 0)
            ++v2;
        int nonresidues = 0;
        for (std::uint64_t m = 2; m < p && nonresidues < 2; ++m) {
            if (to::jacobi_by_factoring(static_cast<long long>(m), p) != -1)
                continue;
            ++nonresidues;
            for (const Point& Q : oracle::enumerate_points(p, m)) {
                if (is_infinity(Q))
                    continue;
                const std::uint64_t order = oracle::point_order(p, m, Q);
                for (unsigned k = 2; k <= v2 + 1; ++k) {
                    const auto r = run_sequence(Modulus(I(p)), I(m), std::get<Affine>(Q).x, k, true);
                    const bool exact = order == (std::uint64_t{1} << k);
                    REQUIRE(std::holds_alternative<AllCoprimeAndFinalZero>(r.outcome) == exact);
                }
            }
        }
    }
}
