#include "ecprime/primality.hpp"

// Certificate replay. Only numtheory and ecring primitives are used here;
// the sequence module and the test drivers are deliberately not called.

namespace ecprime {

namespace {

ReplayResult ok()
{
    return {true, {}};
}

ReplayResult fail(std::string reason)
{
    return {false, std::move(reason)};
}

// Re-derives the sequence outcome by iterating x-only doubling.
ReplayResult replay_chain(const FormCandidate& c, const SequenceCertificate& cert, Status status)
{
    const Int& p = c.p();
    const Curve curve(p, cert.m);
    if (!cert.outcome)
        return fail("sequence certificate without an outcome");
    if (cert.k != c.k())
        return fail("sequence length differs from k");

    Int x = mod(cert.x0, p);
    std::vector<Int> xs, ss;
    SequenceOutcome derived = AllCoprimeAndFinalZero{};
    for (unsigned i = 1; i <= cert.k; ++i) {
        xs.push_back(x);
        Int s = mod(x * x * x - cert.m * x, p);
        if (cert.four_factor)
            s = mod(4 * s, p);
        ss.push_back(s);
        if (i == cert.k) {
            if (s != 0)
                derived = FinalNonzero{s};
            break;
        }
        auto next = double_x_only(curve, x);
        if (std::holds_alternative<XOnlyInfinity>(next)) {
            derived = EarlyInfinity{i};
            break;
        }
        if (auto* f = std::get_if<Factor>(&next)) {
            derived = GcdHit{i, f->value};
            break;
        }
        x = std::get<XOnly>(next).x;
    }

    if (derived.index() != cert.outcome->index())
        return fail(std::string("sequence replays to ") + outcome_name(derived) + ", certificate claims " +
                    outcome_name(*cert.outcome));
    if (auto* fin = std::get_if<FinalNonzero>(&derived); fin && fin->residue != std::get<FinalNonzero>(*cert.outcome).residue)
        return fail("final residue mismatch");
    if (auto* early = std::get_if<EarlyInfinity>(&derived); early && early->step != std::get<EarlyInfinity>(*cert.outcome).step)
        return fail("early infinity step mismatch");
    if (auto* hit = std::get_if<GcdHit>(&derived)) {
        const auto& claimed = std::get<GcdHit>(*cert.outcome);
        if (hit->step != claimed.step || hit->divisor != claimed.divisor)
            return fail("gcd hit mismatch");
    }
    if (cert.trace) {
        if (cert.trace->x_values != xs || cert.trace->s_values != ss)
            return fail("recorded trace differs from the replayed chain");
    }

    const bool prime = std::holds_alternative<AllCoprimeAndFinalZero>(derived);
    if (prime != (status == Status::Prime))
        return fail("verdict does not follow from the sequence outcome");
    return ok();
}

ReplayResult replay_sequence(const FormCandidate& c, const Verdict& v, const SequenceCertificate& cert)
{
    const Int& p = c.p();
    if (v.algorithm == Algorithm::Mersenne) {
        if (c.n() != 1 || c.k() < 3)
            return fail("mersenne certificate on a non-Mersenne candidate");
        if (mod(cert.m, p) != 3 || mod(cert.x0, p) != p - 1 || cert.four_factor || cert.base_point)
            return fail("mersenne certificate must use m = 3, x0 = -1 without the four-factor");
        return replay_chain(c, cert, v.status);
    }
    if (v.algorithm != Algorithm::SmallN)
        return fail("sequence certificate under an unexpected algorithm");
    if (v.status == Status::Prime && !gate_small_n(c))
        return fail("small-n gate does not hold");
    if (!cert.base_point || cert.multiplier != c.n() || !cert.four_factor)
        return fail("small-n certificate must carry Q' and multiplier n");
    if (mod(cert.m, p) == 0)
        return fail("m is zero mod p");

    const Curve curve(p, cert.m);
    const Point base = *cert.base_point;
    if (!on_curve(curve, base))
        return fail("Q' is not on the curve");
    // These make a composite conclusion sound: for prime p they force the
    // sequence to succeed.
    if (jacobi(cert.base_point->x, p) != -1 || jacobi(cert.m, p) != -1)
        return fail("x(Q') and m must both be non-residues");

    auto multiple = scalar_mul(curve, cert.multiplier, base);
    if (is_factor(multiple))
        return fail("n Q' hits a factor; certificate should be a factor witness");
    const Point& start = std::get<Point>(multiple);
    if (is_infinity(start)) {
        if (!cert.multiple_is_infinity || v.status != Status::Composite)
            return fail("n Q' is infinity but the certificate disagrees");
        return ok();
    }
    if (cert.multiple_is_infinity)
        return fail("certificate claims n Q' is infinity");
    if (mod(std::get<Affine>(start).x, p) != mod(cert.x0, p))
        return fail("x0 is not the abscissa of n Q'");
    return replay_chain(c, cert, v.status);
}

ReplayResult replay_order(const FormCandidate& c, const Verdict& v, const OrderCertificate& cert)
{
    const Int& p = c.p();
    if (v.algorithm != Algorithm::LargePrimeN && v.algorithm != Algorithm::TwoPrimeN)
        return fail("order certificate under an unexpected algorithm");
    if (!gate_large_n(c))
        return fail("large-n gate does not hold");
    if (cert.k != c.k())
        return fail("certificate k differs from the candidate");
    const std::size_t expected = v.algorithm == Algorithm::LargePrimeN ? 1 : 2;
    if (cert.scalars.size() != expected)
        return fail("wrong number of scalars");
    Int product = 1;
    for (const Int& q : cert.scalars) {
        if (!is_probable_prime(q))
            return fail("scalar " + to_decimal(q) + " is not prime");
        product *= q;
    }
    if (product != c.n())
        return fail("scalars do not multiply to n");
    if (mod(cert.m, p) == 0)
        return fail("m is zero mod p");

    const Curve curve(p, cert.m);
    if (!on_curve(curve, cert.point))
        return fail("Q is not on the curve");
    if (jacobi(cert.point.x, p) != -1 || jacobi(cert.m, p) != -1)
        return fail("x(Q) and m must both be non-residues");

    auto r = scalar_mul(curve, Int(1) << c.k(), cert.point);
    if (is_factor(r) || is_infinity(std::get<Point>(r)))
        return fail("2^k Q must be a finite point");
    const Point R = std::get<Point>(r);
    if (expected == 2) {
        for (const Int& q : cert.scalars) {
            auto partial = scalar_mul(curve, q, R);
            if (is_factor(partial) || is_infinity(std::get<Point>(partial)))
                return fail("q_i (2^k Q) must be a finite point");
        }
    }
    auto full = scalar_mul(curve, product, R);
    if (is_factor(full))
        return fail("n (2^k Q) hits a factor; certificate should be a factor witness");
    const bool infinite = is_infinity(std::get<Point>(full));
    if (infinite != cert.full_is_infinity)
        return fail("n (2^k Q) pattern differs from the certificate");
    if (infinite != (v.status == Status::Prime))
        return fail("verdict does not follow from the order pattern");
    return ok();
}

}  // namespace

ReplayResult replay(const FormCandidate& c, const Verdict& v)
{
    const Int& p = c.p();
    if (const auto* w = std::get_if<FactorWitness>(&v.certificate)) {
        if (v.status != Status::Composite)
            return fail("factor witness on a non-composite verdict");
        if (w->divisor <= 1 || w->divisor >= p || mod(p, w->divisor) != 0)
            return fail("witness " + to_decimal(w->divisor) + " is not a proper divisor of p");
        return ok();
    }
    if (const auto* o = std::get_if<OracleDecision>(&v.certificate)) {
        if (p >= Int(std::to_string(o->bound)))
            return fail("oracle decision above its bound");
        const TrialResult r = trial_division(p, o->bound);
        if (r.prime != (v.status == Status::Prime))
            return fail("trial division disagrees with the verdict");
        if (!r.prime && (!o->least_factor || *o->least_factor != r.least_factor))
            return fail("least factor mismatch");
        return ok();
    }
    if (const auto* s = std::get_if<SequenceCertificate>(&v.certificate)) {
        if (v.status != Status::Prime && v.status != Status::Composite)
            return fail("sequence certificate on an undecided verdict");
        return replay_sequence(c, v, *s);
    }
    if (const auto* o = std::get_if<OrderCertificate>(&v.certificate)) {
        if (v.status != Status::Prime && v.status != Status::Composite)
            return fail("order certificate on an undecided verdict");
        return replay_order(c, v, *o);
    }
    if (std::holds_alternative<GateFailure>(v.certificate)) {
        if (v.status != Status::NotApplicable)
            return fail("gate failure must be not-applicable");
        return ok();
    }
    if (v.status != Status::Inconclusive)
        return fail("exhausted retries must be inconclusive");
    return ok();
}

}  // namespace ecprime
