#include "ecprime/primality.hpp"

#include <stdexcept>

namespace ecprime {

const char* status_name(Status s)
{
    switch (s) {
    case Status::Prime: return "prime";
    case Status::Composite: return "composite";
    case Status::Inconclusive: return "inconclusive";
    case Status::NotApplicable: return "not-applicable";
    }
    return "?";
}

const char* algorithm_name(Algorithm a)
{
    switch (a) {
    case Algorithm::Mersenne: return "mersenne";
    case Algorithm::SmallN: return "small-n";
    case Algorithm::LargePrimeN: return "large-prime-n";
    case Algorithm::TwoPrimeN: return "two-prime-n";
    case Algorithm::Oracle: return "oracle";
    case Algorithm::None: return "none";
    }
    return "?";
}

struct CurvePointSearch::State {
    Int p;
    ParamSearchConfig cfg;
    gmp_randclass rng{gmp_randinit_default};
    Int x{1};
    Int y{0};
    bool have_x = false;
    std::uint64_t x_count = 0;
    std::uint64_t y_count = 0;
    std::uint64_t candidates = 0;

    bool advance_x()
    {
        if (x_count >= cfg.scan_limit)
            return false;
        if (cfg.order == ParamSearchConfig::Order::Ascending) {
            if (x + 1 > p - 1)
                return false;
            x += 1;
        } else {
            x = 2 + rng.get_z_range(p - 2);
        }
        ++x_count;
        return true;
    }

    bool advance_y()
    {
        if (y_count >= cfg.scan_limit)
            return false;
        if (cfg.order == ParamSearchConfig::Order::Ascending) {
            if (y + 1 > p - 1)
                return false;
            y += 1;
        } else {
            y = 1 + rng.get_z_range(p - 1);
        }
        ++y_count;
        return true;
    }
};

CurvePointSearch::CurvePointSearch(Int p, const ParamSearchConfig& cfg) : state_(std::make_unique<State>())
{
    if (p < 7 || mpz_even_p(p.get_mpz_t()))
        throw std::invalid_argument("curve search needs an odd p >= 7");
    state_->p = std::move(p);
    state_->cfg = cfg;
    state_->rng.seed(cfg.seed);
}

CurvePointSearch::~CurvePointSearch() = default;
CurvePointSearch::CurvePointSearch(CurvePointSearch&&) noexcept = default;
CurvePointSearch& CurvePointSearch::operator=(CurvePointSearch&&) noexcept = default;

namespace {

std::optional<Factor> proper_gcd(const Int& a, const Int& N)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), N.get_mpz_t());
    if (g != 1 && g != N)
        return Factor{g};
    return std::nullopt;
}

}  // namespace

ConstructOutcome CurvePointSearch::next()
{
    State& s = *state_;
    const Int& p = s.p;
    for (;;) {
        if (!s.have_x) {
            if (!s.advance_x())
                return ScanExhausted{s.candidates};
            const int jx = jacobi(s.x, p);
            if (jx == 0) {
                if (auto f = proper_gcd(s.x, p))
                    return *f;
                continue;
            }
            if (jx == 1)
                continue;
            s.have_x = true;
            s.y = 0;
            s.y_count = 0;
        }
        if (!s.advance_y()) {
            s.have_x = false;
            continue;
        }
        ++s.candidates;
        const Int t = mod(s.x * s.x * s.x - s.y * s.y, p);
        const int jt = jacobi(t, p);
        if (jt == 0) {
            if (auto f = proper_gcd(t, p))
                return *f;
            continue;
        }
        if (jt == -1)
            continue;
        auto inv = mod_inverse(s.x, p);
        if (auto* d = std::get_if<Divisor>(&inv))
            return Factor{d->value};
        return CurvePoint{mod(t * std::get<Inverse>(inv).value, p), Affine{s.x, s.y}};
    }
}

ConstructOutcome construct_curve_point(const Int& p, const ParamSearchConfig& cfg)
{
    return CurvePointSearch(p, cfg).next();
}

namespace {

Verdict composite_by_factor(Algorithm a, Int d, std::string stage, unsigned iterations)
{
    return Verdict{Status::Composite, a, FactorWitness{std::move(d), std::move(stage)}, iterations, {}};
}

Verdict gate_failure(Algorithm a, std::string reason)
{
    return Verdict{Status::NotApplicable, a, GateFailure{std::move(reason)}, 0, {}};
}

Verdict inconclusive(const FormCandidate& c, Algorithm a, unsigned count)
{
    Verdict v{Status::Inconclusive, a, RetriesExhausted{count}, count, {}};
    v.probable_prime = is_probable_prime(c.p());
    return v;
}

// Below the oracle bound a failing gate falls back to trial division.
Verdict gate_fallback(const FormCandidate& c, const ParamSearchConfig& cfg, Algorithm a, std::string reason)
{
    if (c.p() < Int(std::to_string(cfg.oracle_bound)))
        return oracle_verdict(c, cfg);
    return gate_failure(a, std::move(reason));
}

}  // namespace

Verdict oracle_verdict(const FormCandidate& c, const ParamSearchConfig& cfg)
{
    if (c.p() >= Int(std::to_string(cfg.oracle_bound)))
        return gate_failure(Algorithm::Oracle, "p above the oracle bound");
    const TrialResult r = trial_division(c.p(), cfg.oracle_bound);
    OracleDecision cert;
    cert.bound = cfg.oracle_bound;
    if (!r.prime)
        cert.least_factor = r.least_factor;
    return Verdict{r.prime ? Status::Prime : Status::Composite, Algorithm::Oracle, cert, 0, {}};
}

Verdict test_small_n(const FormCandidate& c, const ParamSearchConfig& cfg)
{
    constexpr Algorithm algo = Algorithm::SmallN;
    if (!gate_small_n(c))
        return gate_fallback(c, cfg, algo, "small-n gate: n (iroot4(p) + 2)^2 > p");

    const Int& p = c.p();
    auto constructed = construct_curve_point(p, cfg);
    if (auto* f = std::get_if<Factor>(&constructed))
        return composite_by_factor(algo, f->value, "scan", 0);
    if (auto* e = std::get_if<ScanExhausted>(&constructed))
        return inconclusive(c, algo, static_cast<unsigned>(e->candidates));
    const auto& [m, base] = std::get<CurvePoint>(constructed);

    const Curve curve(p, m);
    SequenceCertificate cert;
    cert.m = m;
    cert.base_point = base;
    cert.multiplier = c.n();
    cert.k = c.k();
    cert.four_factor = true;

    auto multiple = scalar_mul(curve, c.n(), base);
    if (auto* f = std::get_if<Factor>(&multiple))
        return composite_by_factor(algo, f->value, "multiple", 0);
    const Point& start = std::get<Point>(multiple);
    if (is_infinity(start)) {
        cert.multiple_is_infinity = true;
        return Verdict{Status::Composite, algo, cert, 0, {}};
    }

    cert.x0 = std::get<Affine>(start).x;
    auto [outcome, trace] = run_sequence(Modulus(c), m, cert.x0, c.k(), true);
    const unsigned steps = trace.steps_completed;
    if (auto* hit = std::get_if<GcdHit>(&outcome))
        return composite_by_factor(algo, hit->divisor, "sequence", steps);

    const bool prime = std::holds_alternative<AllCoprimeAndFinalZero>(outcome);
    cert.outcome = std::move(outcome);
    cert.trace = std::move(trace);
    return Verdict{prime ? Status::Prime : Status::Composite, algo, std::move(cert), steps, {}};
}

Verdict test_mersenne(unsigned k)
{
    if (k < 3)
        throw std::invalid_argument("test_mersenne: k must be at least 3");
    constexpr Algorithm algo = Algorithm::Mersenne;
    auto [outcome, trace] = mersenne_sequence(k);
    const unsigned steps = trace.steps_completed;
    if (auto* hit = std::get_if<GcdHit>(&outcome))
        return composite_by_factor(algo, hit->divisor, "sequence", steps);

    SequenceCertificate cert;
    cert.m = 3;
    cert.x0 = trace.modulus - 1;
    cert.k = k;
    cert.four_factor = false;
    const bool prime = std::holds_alternative<AllCoprimeAndFinalZero>(outcome);
    cert.outcome = std::move(outcome);
    cert.trace = std::move(trace);
    return Verdict{prime ? Status::Prime : Status::Composite, algo, std::move(cert), steps, {}};
}

namespace {

// Shared loop of the large-n tests. scalars holds the prime factors of n;
// with two of them, a point whose order misses either factor is discarded.
Verdict order_test(const FormCandidate& c, const ParamSearchConfig& cfg, Algorithm algo,
                   const std::vector<Int>& scalars)
{
    const Int& p = c.p();
    const Int two_k = Int(1) << c.k();
    CurvePointSearch search(p, cfg);

    for (unsigned attempt = 1; attempt <= cfg.retry_cap; ++attempt) {
        auto constructed = search.next();
        if (auto* f = std::get_if<Factor>(&constructed))
            return composite_by_factor(algo, f->value, "scan", attempt);
        if (std::holds_alternative<ScanExhausted>(constructed))
            return inconclusive(c, algo, attempt - 1);
        const auto& [m, Q] = std::get<CurvePoint>(constructed);
        const Curve curve(p, m);

        auto r = scalar_mul(curve, two_k, Q);
        if (auto* f = std::get_if<Factor>(&r))
            return composite_by_factor(algo, f->value, "order", attempt);
        const Point R = std::get<Point>(r);
        if (is_infinity(R))
            continue;

        bool retry = false;
        if (scalars.size() > 1) {
            for (const Int& q : scalars) {
                auto partial = scalar_mul(curve, q, R);
                if (auto* f = std::get_if<Factor>(&partial))
                    return composite_by_factor(algo, f->value, "order", attempt);
                if (is_infinity(std::get<Point>(partial)))
                    retry = true;
            }
        }
        if (retry)
            continue;

        auto full = scalar_mul(curve, c.n(), R);
        if (auto* f = std::get_if<Factor>(&full))
            return composite_by_factor(algo, f->value, "order", attempt);
        OrderCertificate cert{m, Q, c.k(), scalars, is_infinity(std::get<Point>(full)), attempt};
        const Status status = cert.full_is_infinity ? Status::Prime : Status::Composite;
        return Verdict{status, algo, std::move(cert), attempt, {}};
    }
    return inconclusive(c, algo, cfg.retry_cap);
}

}  // namespace

Verdict test_large_prime_n(const FormCandidate& c, const ParamSearchConfig& cfg)
{
    constexpr Algorithm algo = Algorithm::LargePrimeN;
    if (!gate_large_n(c))
        return gate_fallback(c, cfg, algo, "large-n gate: 2^k (iroot4(p) + 2)^2 > p");
    if (!is_probable_prime(c.n()))
        return gate_failure(algo, "n is not prime");
    return order_test(c, cfg, algo, {c.n()});
}

Verdict test_two_prime_n(const FormCandidate& c, const ParamSearchConfig& cfg)
{
    constexpr Algorithm algo = Algorithm::TwoPrimeN;
    if (!gate_large_n(c))
        return gate_fallback(c, cfg, algo, "large-n gate: 2^k (iroot4(p) + 2)^2 > p");
    if (!c.factors())
        return gate_failure(algo, "no factorization of n supplied");
    const auto& [q1, q2] = *c.factors();
    if (!is_probable_prime(q1) || !is_probable_prime(q2))
        return gate_failure(algo, "supplied factors of n are not prime");
    return order_test(c, cfg, algo, {q1, q2});
}

Verdict auto_test(const FormCandidate& c, const ParamSearchConfig& cfg)
{
    if (c.n() == 1 && c.k() >= 3)
        return test_mersenne(c.k());
    if (gate_small_n(c))
        return test_small_n(c, cfg);
    if (gate_large_n(c)) {
        if (const auto& f = c.factors()) {
            if (is_probable_prime(f->first) && is_probable_prime(f->second))
                return test_two_prime_n(c, cfg);
        } else if (is_probable_prime(c.n())) {
            return test_large_prime_n(c, cfg);
        }
    }
    return gate_fallback(c, cfg, Algorithm::None, "no applicable test: gates fail or n's factorization unknown");
}

}  // namespace ecprime
