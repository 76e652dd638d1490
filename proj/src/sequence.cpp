#include "ecprime/sequence.hpp"

#include <stdexcept>

namespace ecprime {

SequenceResult run_sequence(const Modulus& N, const Int& m_in, const Int& x0, unsigned k, bool four_factor)
{
    if (k < 2)
        throw std::invalid_argument("run_sequence: k must be at least 2");
    const Int& n = N.value();
    const Int m = mod(m_in, n);
    if (m == 0)
        throw std::invalid_argument("run_sequence: m must be nonzero mod N");

    SequenceResult result{AllCoprimeAndFinalZero{}, STrace{n, m, four_factor, {}, {}, 0}};
    STrace& trace = result.trace;
    trace.x_values.reserve(k);
    trace.s_values.reserve(k);

    Int x = mod(x0, n);
    Int x2, s, t, inv;
    for (unsigned i = 1; i <= k; ++i) {
        trace.x_values.push_back(x);
        x2 = x * x;
        N.reduce(x2);
        s = (x2 - m) * x;
        if (four_factor)
            s *= 4;
        N.reduce(s);
        trace.s_values.push_back(s);
        trace.steps_completed = i;

        if (i == k) {
            if (s != 0)
                result.outcome = FinalNonzero{s};
            break;
        }

        auto outcome = mod_inverse(four_factor ? s : Int(4 * s), n);
        if (std::holds_alternative<FullModulus>(outcome)) {
            result.outcome = EarlyInfinity{i};
            break;
        }
        if (auto* d = std::get_if<Divisor>(&outcome)) {
            result.outcome = GcdHit{i, d->value};
            break;
        }
        t = x2 + m;
        t *= t;
        N.reduce(t);
        x = t * std::get<Inverse>(outcome).value;
        N.reduce(x);
    }
    return result;
}

SequenceResult mersenne_sequence(unsigned k)
{
    if (k < 3)
        throw std::invalid_argument("mersenne_sequence: k must be at least 3");
    const FormCandidate mersenne(k, 1);
    return run_sequence(Modulus(mersenne), 3, mersenne.p() - 1, k, false);
}

const char* outcome_name(const SequenceOutcome& outcome)
{
    struct Namer {
        const char* operator()(const AllCoprimeAndFinalZero&) const { return "all-coprime-final-zero"; }
        const char* operator()(const GcdHit&) const { return "gcd-hit"; }
        const char* operator()(const FinalNonzero&) const { return "final-nonzero"; }
        const char* operator()(const EarlyInfinity&) const { return "early-infinity"; }
    };
    return std::visit(Namer{}, outcome);
}

}  // namespace ecprime
