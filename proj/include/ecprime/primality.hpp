#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecprime/ecring.hpp"
#include "ecprime/numtheory.hpp"
#include "ecprime/sequence.hpp"

namespace ecprime {

enum class Status { Prime, Composite, Inconclusive, NotApplicable };

enum class Algorithm { Mersenne, SmallN, LargePrimeN, TwoPrimeN, Oracle, None };

const char* status_name(Status s);
const char* algorithm_name(Algorithm a);

/// Transcript of a sequence-based decision. For the small-n test the
/// sequence starts from multiplier * base_point; for the Mersenne test there
/// is no base point and x0 = -1.
struct SequenceCertificate {
    Int m;
    std::optional<Affine> base_point;
    Int multiplier{1};
    bool multiple_is_infinity = false;
    Int x0;
    unsigned k = 0;
    bool four_factor = true;
    std::optional<SequenceOutcome> outcome;
    std::optional<STrace> trace;
};

/// Transcript of a scalar-order decision: R = 2^k Q must be finite, each
/// q_i R must be finite, and the verdict is whether (prod q_i) R is infinite.
struct OrderCertificate {
    Int m;
    Affine point;
    unsigned k = 0;
    std::vector<Int> scalars;
    bool full_is_infinity = false;
    unsigned attempts = 0;
};

struct FactorWitness {
    Int divisor;
    std::string stage;
};

struct OracleDecision {
    /// Absent when the oracle found the candidate prime.
    std::optional<std::uint64_t> least_factor;
    std::uint64_t bound = 0;
};

struct GateFailure {
    std::string reason;
};

struct RetriesExhausted {
    unsigned count = 0;
};

using Certificate = std::variant<SequenceCertificate, OrderCertificate, FactorWitness, OracleDecision,
                                 GateFailure, RetriesExhausted>;

struct Verdict {
    Status status = Status::NotApplicable;
    Algorithm algorithm = Algorithm::None;
    Certificate certificate = GateFailure{};
    unsigned iterations = 0;
    /// Miller-Rabin advisory attached to inconclusive verdicts.
    std::optional<bool> probable_prime;
};

struct ParamSearchConfig {
    enum class Order { Ascending, Random };
    Order order = Order::Ascending;
    std::uint64_t seed = 0;
    unsigned retry_cap = 20;
    std::uint64_t oracle_bound = kOracleFallbackBound;
    /// Maximum number of x candidates, and of y candidates per x.
    std::uint64_t scan_limit = 1u << 16;
};

struct CurvePoint {
    Int m;
    Affine point;
};

struct ScanExhausted {
    std::uint64_t candidates = 0;
};

using ConstructOutcome = std::variant<CurvePoint, Factor, ScanExhausted>;

/// Produces successive (m, Q) with jacobi(x, p) = -1, jacobi(x^3 - y^2, p) = 1
/// and m = (x^3 - y^2) / x, so that Q = (x, y) lies on y^2 = x^3 - m x and
/// jacobi(m, p) = -1. Each call to next() takes another y for the current x,
/// moving to the next x once the y range is used up.
class CurvePointSearch {
public:
    CurvePointSearch(Int p, const ParamSearchConfig& cfg);
    ~CurvePointSearch();
    CurvePointSearch(CurvePointSearch&&) noexcept;
    CurvePointSearch& operator=(CurvePointSearch&&) noexcept;

    ConstructOutcome next();

private:
    struct State;
    std::unique_ptr<State> state_;
};

ConstructOutcome construct_curve_point(const Int& p, const ParamSearchConfig& cfg = {});

Verdict test_small_n(const FormCandidate& c, const ParamSearchConfig& cfg = {});
Verdict test_mersenne(unsigned k);
Verdict test_large_prime_n(const FormCandidate& c, const ParamSearchConfig& cfg = {});
Verdict test_two_prime_n(const FormCandidate& c, const ParamSearchConfig& cfg = {});

/// Trial-division decision for p below the configured oracle bound.
Verdict oracle_verdict(const FormCandidate& c, const ParamSearchConfig& cfg = {});

/// Dispatches to exactly one test: Mersenne for n = 1, small-n when its gate
/// passes, then large-prime-n or two-prime-n when n is prime or a factor
/// hint is supplied, then the trial-division oracle below the bound.
Verdict auto_test(const FormCandidate& c, const ParamSearchConfig& cfg = {});

struct ReplayResult {
    bool ok = false;
    std::string reason;
};

/// Re-validates a verdict using only number-theoretic and curve primitives.
ReplayResult replay(const FormCandidate& c, const Verdict& v);

}  // namespace ecprime
