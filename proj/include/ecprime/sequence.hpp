#pragma once

#include <variant>
#include <vector>

#include "ecprime/numtheory.hpp"

namespace ecprime {

/// The chain x_0, x_1, ... of abscissae of 2^i Q and the denominators
/// S_i = c (x_{i-1}^3 - m x_{i-1}), c = 4 with the four-factor, else 1.
struct STrace {
    Int modulus;
    Int m;
    bool four_factor = true;
    std::vector<Int> x_values;  // x_0 .. x_{steps-1}
    std::vector<Int> s_values;  // S_1 .. S_steps
    unsigned steps_completed = 0;
};

struct AllCoprimeAndFinalZero {};
struct GcdHit {
    unsigned step;
    Int divisor;
};
struct FinalNonzero {
    Int residue;
};
struct EarlyInfinity {
    unsigned step;
};

using SequenceOutcome = std::variant<AllCoprimeAndFinalZero, GcdHit, FinalNonzero, EarlyInfinity>;

struct SequenceResult {
    SequenceOutcome outcome;
    STrace trace;
};

/// Computes S_1 .. S_k from S_0 = x0. Steps 1..k-1 must have S_i coprime to
/// N; at step k only S_k = 0 (mod N) matters.
SequenceResult run_sequence(const Modulus& N, const Int& m, const Int& x0, unsigned k, bool four_factor);

/// m = 3, x_0 = -1 on N = 2^k - 1, without the four-factor.
SequenceResult mersenne_sequence(unsigned k);

const char* outcome_name(const SequenceOutcome& outcome);

}  // namespace ecprime
