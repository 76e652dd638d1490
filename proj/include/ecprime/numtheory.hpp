#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace ecprime {

using Int = mpz_class;

/// Parses a non-negative decimal integer; throws std::invalid_argument otherwise.
Int parse_natural(const std::string& text);
std::string to_decimal(const Int& value);

/// An integer p = 2^k * n - 1 with k >= 2 and n odd, carried with its
/// decomposition. The optional factor pair is a caller-supplied hint that
/// n = q1 * q2; it is validated for the product only, not for primality.
class FormCandidate {
public:
    FormCandidate(unsigned k, Int n);
    FormCandidate(unsigned k, Int n, Int q1, Int q2);

    unsigned k() const noexcept { return k_; }
    const Int& n() const noexcept { return n_; }
    const Int& p() const noexcept { return p_; }
    /// 2^k * n, i.e. p + 1.
    Int order() const { return p_ + 1; }

    const std::optional<std::pair<Int, Int>>& factors() const noexcept { return factors_; }

private:
    unsigned k_;
    Int n_;
    Int p_;
    std::optional<std::pair<Int, Int>> factors_;
};

/// Jacobi symbol (a/N) for odd N >= 3. Throws std::invalid_argument on a bad N.
int jacobi(const Int& a, const Int& N);

struct Inverse {
    Int value;
};
struct Divisor {
    Int value;
};
struct FullModulus {};

/// Either the inverse of a modulo N, a proper divisor gcd(a, N) of N, or the
/// signal that a is a multiple of N.
using InverseOutcome = std::variant<Inverse, Divisor, FullModulus>;

InverseOutcome mod_inverse(const Int& a, const Int& N);

/// Least non-negative residue of a modulo N.
Int mod(const Int& a, const Int& N);

Int isqrt(const Int& t);
Int iroot4(const Int& t);

/// Integer forms of the applicability conditions for the elliptic tests.
/// Both are conservative: true implies a real lambda > 1 exists.
bool gate_small_n(const FormCandidate& c);
bool gate_large_n(const FormCandidate& c);

/// t mod p computed by folding t = a * 2^k * n + b into a + b.
Int reduce_special(Int t, const FormCandidate& c);

/// Modulus with an optional 2^k * n - 1 fast reduction path.
class Modulus {
public:
    explicit Modulus(Int N);
    explicit Modulus(const FormCandidate& c);

    const Int& value() const noexcept { return N_; }
    bool special() const noexcept { return special_.has_value(); }
    /// Reduces t in place to [0, N).
    void reduce(Int& t) const;

private:
    Int N_;
    std::optional<FormCandidate> special_;
};

inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000'000'000ULL;
inline constexpr std::uint64_t kOracleFallbackBound = 10'000ULL;

struct TrialResult {
    bool prime;
    /// Least prime factor when composite, otherwise N itself.
    std::uint64_t least_factor;
};

/// Exact primality by trial division. N must lie in [2, bound].
TrialResult trial_division(const Int& N, std::uint64_t bound = kTrialDivisionBound);

enum class MillerRabin { ProbablePrime, Composite };

/// Strong probable-prime test against each base; every base must lie in
/// [2, N - 2].
MillerRabin miller_rabin(const Int& N, std::span<const std::uint64_t> bases);

/// The first twelve primes.
std::span<const std::uint64_t> default_mr_bases();

/// Trial division below the oracle bound, Miller-Rabin with the default
/// bases above it.
bool is_probable_prime(const Int& N);

/// Classical Lucas-Lehmer test of 2^k - 1 for k >= 3.
bool lucas_lehmer(unsigned k);

}  // namespace ecprime
