#include "ecprime/numtheory.hpp"

#include <array>
#include <stdexcept>

namespace ecprime {

Int parse_natural(const std::string& text)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a natural number: '" + text + "'");
    return Int(text, 10);
}

std::string to_decimal(const Int& value)
{
    return value.get_str(10);
}

FormCandidate::FormCandidate(unsigned k, Int n) : k_(k), n_(std::move(n))
{
    if (k_ < 2)
        throw std::invalid_argument("k must be at least 2");
    if (n_ < 1 || mpz_even_p(n_.get_mpz_t()))
        throw std::invalid_argument("n must be odd and positive");
    p_ = (n_ << k_) - 1;
}

FormCandidate::FormCandidate(unsigned k, Int n, Int q1, Int q2) : FormCandidate(k, std::move(n))
{
    if (q1 < 2 || q2 < 2 || q1 * q2 != n_)
        throw std::invalid_argument("factor hint does not multiply to n");
    factors_.emplace(std::move(q1), std::move(q2));
}

int jacobi(const Int& a_in, const Int& N_in)
{
    if (N_in < 3 || mpz_even_p(N_in.get_mpz_t()))
        throw std::invalid_argument("jacobi: modulus must be odd and >= 3");

    Int a = mod(a_in, N_in);
    Int N = N_in;
    int result = 1;
    while (a != 0) {
        auto twos = mpz_scan1(a.get_mpz_t(), 0);
        if (twos > 0) {
            a >>= twos;
            unsigned long r = mpz_fdiv_ui(N.get_mpz_t(), 8);
            if ((twos & 1) && (r == 3 || r == 5))
                result = -result;
        }
        swap(a, N);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(N.get_mpz_t(), 4) == 3)
            result = -result;
        a %= N;
    }
    return N == 1 ? result : 0;
}

Int mod(const Int& a, const Int& N)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), N.get_mpz_t());
    return r;
}

InverseOutcome mod_inverse(const Int& a, const Int& N)
{
    if (N < 2)
        throw std::invalid_argument("mod_inverse: modulus must be at least 2");
    Int r = mod(a, N);
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), N.get_mpz_t());
    if (g == N)
        return FullModulus{};
    if (g != 1)
        return Divisor{g};
    Int inv;
    mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), N.get_mpz_t());
    return Inverse{inv};
}

Int isqrt(const Int& t)
{
    if (t < 0)
        throw std::invalid_argument("isqrt of a negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    return r;
}

Int iroot4(const Int& t)
{
    if (t < 0)
        throw std::invalid_argument("iroot4 of a negative number");
    Int r;
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), 4);
    return r;
}

// p = 3 (mod 4) is never a fourth power, so p^(1/4) + 1 < iroot4(p) + 2.
bool gate_small_n(const FormCandidate& c)
{
    Int bound = iroot4(c.p()) + 2;
    return c.n() * bound * bound <= c.p();
}

bool gate_large_n(const FormCandidate& c)
{
    Int bound = iroot4(c.p()) + 2;
    return (Int(bound * bound) << c.k()) <= c.p();
}

Int reduce_special(Int t, const FormCandidate& c)
{
    if (t < 0)
        throw std::invalid_argument("reduce_special: negative input");
    const Int& n = c.n();
    const Int full = c.order();
    Int high;
    while (t >= full) {
        high = t >> c.k();
        if (n != 1)
            mpz_fdiv_q(high.get_mpz_t(), high.get_mpz_t(), n.get_mpz_t());
        t -= Int(high * n) << c.k();
        t += high;
    }
    if (t == c.p())
        t = 0;
    return t;
}

Modulus::Modulus(Int N) : N_(std::move(N))
{
    if (N_ < 2)
        throw std::invalid_argument("modulus must be at least 2");
}

Modulus::Modulus(const FormCandidate& c) : N_(c.p()), special_(c) {}

void Modulus::reduce(Int& t) const
{
    if (special_ && t >= 0)
        t = reduce_special(std::move(t), *special_);
    else
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), N_.get_mpz_t());
}

TrialResult trial_division(const Int& N, std::uint64_t bound)
{
    if (N < 2)
        throw std::invalid_argument("trial_division: N must be at least 2");
    if (N > Int(std::to_string(bound)))
        throw std::out_of_range("trial_division: N above the oracle bound");
    const std::uint64_t v = std::stoull(N.get_str());
    if (v % 2 == 0)
        return {v == 2, 2};
    for (std::uint64_t d = 3; d <= v / d; d += 2) {
        if (v % d == 0)
            return {false, d};
    }
    return {true, v};
}

MillerRabin miller_rabin(const Int& N, std::span<const std::uint64_t> bases)
{
    if (N < 3 || mpz_even_p(N.get_mpz_t()))
        throw std::invalid_argument("miller_rabin: N must be odd and >= 3");
    const Int N1 = N - 1;
    const auto s = mpz_scan1(N1.get_mpz_t(), 0);
    const Int d = N1 >> s;

    Int x;
    for (std::uint64_t b : bases) {
        Int base(std::to_string(b));
        if (base < 2 || base > N - 2)
            throw std::invalid_argument("miller_rabin: base outside [2, N-2]");
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
        if (x == 1 || x == N1)
            continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % N;
            if (x == N1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return MillerRabin::Composite;
    }
    return MillerRabin::ProbablePrime;
}

std::span<const std::uint64_t> default_mr_bases()
{
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return bases;
}

bool is_probable_prime(const Int& N)
{
    if (N < 2)
        return false;
    if (N <= Int(std::to_string(kOracleFallbackBound)) * kOracleFallbackBound)
        return trial_division(N).prime;
    if (mpz_even_p(N.get_mpz_t()))
        return false;
    return miller_rabin(N, default_mr_bases()) == MillerRabin::ProbablePrime;
}

bool lucas_lehmer(unsigned k)
{
    if (k < 3)
        throw std::invalid_argument("lucas_lehmer: k must be at least 3");
    const FormCandidate mersenne(k, 1);
    const Modulus M(mersenne);
    Int s = 4;
    for (unsigned i = 0; i < k - 2; ++i) {
        s = s * s - 2;
        M.reduce(s);
    }
    return s == 0;
}

}  // namespace ecprime
