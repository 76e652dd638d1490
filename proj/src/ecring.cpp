#include "ecprime/ecring.hpp"

#include <stdexcept>

namespace ecprime {

Curve::Curve(Int N, Int m) : N_(std::move(N))
{
    if (N_ < 3 || mpz_even_p(N_.get_mpz_t()))
        throw std::invalid_argument("curve modulus must be odd and >= 3");
    m_ = mod(m, N_);
    if (m_ == 0)
        throw std::invalid_argument("curve coefficient m must be nonzero mod N");
}

bool on_curve(const Curve& C, const Point& P)
{
    const auto* a = std::get_if<Affine>(&P);
    if (a == nullptr)
        return true;
    const Int& N = C.modulus();
    Int lhs = a->y * a->y;
    Int rhs = a->x * a->x * a->x - C.m() * a->x;
    return mod(lhs - rhs, N) == 0;
}

Point normalize(const Curve& C, const Point& P)
{
    if (const auto* a = std::get_if<Affine>(&P))
        return Affine{mod(a->x, C.modulus()), mod(a->y, C.modulus())};
    return P;
}

CurveOpOutcome negate(const Curve& C, const Point& P)
{
    if (const auto* a = std::get_if<Affine>(&P))
        return Point{Affine{mod(a->x, C.modulus()), mod(-a->y, C.modulus())}};
    return P;
}

namespace {

// Tangent/chord completion: x' = slope^2 - x1 - x2, y' = slope (x1 - x') - y1.
Point finish(const Int& N, const Int& slope, const Int& x1, const Int& x2, const Int& y1)
{
    Int x3 = mod(slope * slope - x1 - x2, N);
    Int y3 = mod(slope * (x1 - x3) - y1, N);
    return Affine{std::move(x3), std::move(y3)};
}

}  // namespace

CurveOpOutcome dbl(const Curve& C, const Point& P)
{
    const auto* a = std::get_if<Affine>(&P);
    if (a == nullptr)
        return Point{Infinity{}};
    const Int& N = C.modulus();
    const Int x = mod(a->x, N);
    const Int y = mod(a->y, N);
    if (y == 0)
        return Point{Infinity{}};

    auto inv = mod_inverse(2 * y, N);
    if (auto* d = std::get_if<Divisor>(&inv))
        return Factor{d->value};
    if (std::holds_alternative<FullModulus>(inv))
        return Point{Infinity{}};

    Int slope = mod((3 * x * x - C.m()) * std::get<Inverse>(inv).value, N);
    return finish(N, slope, x, x, y);
}

CurveOpOutcome add(const Curve& C, const Point& P, const Point& Q)
{
    const auto* a = std::get_if<Affine>(&P);
    const auto* b = std::get_if<Affine>(&Q);
    if (a == nullptr)
        return normalize(C, Q);
    if (b == nullptr)
        return normalize(C, P);

    const Int& N = C.modulus();
    const Int x1 = mod(a->x, N), y1 = mod(a->y, N);
    const Int x2 = mod(b->x, N), y2 = mod(b->y, N);

    if (x1 == x2) {
        const Int ysum = mod(y1 + y2, N);
        if (ysum == 0)
            return Point{Infinity{}};
        if (y1 == y2)
            return dbl(C, P);
        // Over composite N the two points agree modulo some factors only.
        Int g;
        mpz_gcd(g.get_mpz_t(), ysum.get_mpz_t(), N.get_mpz_t());
        if (g != 1 && g != N)
            return Factor{g};
        throw std::domain_error("add: equal abscissae on points that are not on the curve");
    }

    auto inv = mod_inverse(x2 - x1, N);
    if (auto* d = std::get_if<Divisor>(&inv))
        return Factor{d->value};
    Int slope = mod((y2 - y1) * std::get<Inverse>(inv).value, N);
    return finish(N, slope, x1, x2, y1);
}

CurveOpOutcome scalar_mul(const Curve& C, const Int& s, const Point& P)
{
    if (s < 0)
        throw std::invalid_argument("scalar_mul: negative scalar");
    Point acc = Infinity{};
    const Point base = normalize(C, P);
    for (auto bit = static_cast<long>(mpz_sizeinbase(s.get_mpz_t(), 2)) - 1; bit >= 0 && s != 0; --bit) {
        auto doubled = dbl(C, acc);
        if (is_factor(doubled))
            return doubled;
        acc = std::get<Point>(std::move(doubled));
        if (mpz_tstbit(s.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            auto sum = add(C, acc, base);
            if (is_factor(sum))
                return sum;
            acc = std::get<Point>(std::move(sum));
        }
    }
    return acc;
}

XDoubleOutcome double_x_only(const Curve& C, const Int& x_in)
{
    const Int& N = C.modulus();
    const Int x = mod(x_in, N);
    const Int x2 = x * x;
    auto inv = mod_inverse(4 * (x2 * x - C.m() * x), N);
    if (std::holds_alternative<FullModulus>(inv))
        return XOnlyInfinity{};
    if (auto* d = std::get_if<Divisor>(&inv))
        return Factor{d->value};
    const Int num = x2 + C.m();
    return XOnly{mod(num * num * std::get<Inverse>(inv).value, N)};
}

}  // namespace ecprime
