#include "ecprime/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace ecprime::oracle {

namespace {

using u64 = std::uint64_t;

struct SmallPoint {
    bool inf = true;
    u64 x = 0;
    u64 y = 0;
    bool operator==(const SmallPoint&) const = default;
};

u64 powmod(u64 b, u64 e, u64 p)
{
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

bool is_small_prime(u64 v)
{
    if (v < 2)
        return false;
    for (u64 d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

// Euler's criterion.
int legendre(u64 a, u64 p)
{
    a %= p;
    if (a == 0)
        return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

struct SmallCurve {
    u64 p;
    u64 m;

    u64 inv(u64 a) const { return powmod(a, p - 2, p); }
    u64 sub(u64 a, u64 b) const { return (a + p - b % p) % p; }

    u64 rhs(u64 x) const { return sub(x * x % p * x % p, m * x % p); }

    SmallPoint add(const SmallPoint& P, const SmallPoint& Q) const
    {
        if (P.inf)
            return Q;
        if (Q.inf)
            return P;
        u64 slope;
        if (P.x == Q.x) {
            if ((P.y + Q.y) % p == 0)
                return {};
            slope = sub(3 * P.x % p * P.x % p, m) * inv(2 * P.y % p) % p;
        } else {
            slope = sub(Q.y, P.y) * inv(sub(Q.x, P.x)) % p;
        }
        const u64 x3 = sub(sub(slope * slope % p, P.x), Q.x);
        const u64 y3 = sub(slope * sub(P.x, x3) % p, P.y);
        return {false, x3, y3};
    }

    SmallPoint mul(u64 s, SmallPoint P) const
    {
        SmallPoint acc;
        while (s) {
            if (s & 1)
                acc = add(acc, P);
            P = add(P, P);
            s >>= 1;
        }
        return acc;
    }
};

void check_field(u64 p, u64 m)
{
    if (p > kEnumerationBound)
        throw std::invalid_argument("oracle: p above the enumeration bound");
    if (p % 4 != 3 || !is_small_prime(p))
        throw std::invalid_argument("oracle: p must be a prime = 3 (mod 4)");
    if (m % p == 0)
        throw std::invalid_argument("oracle: m must be nonzero mod p");
}

std::vector<SmallPoint> enumerate_small(const SmallCurve& C)
{
    const u64 p = C.p;
    std::vector<std::vector<u64>> roots(p);
    for (u64 y = 0; y < p; ++y)
        roots[y * y % p].push_back(y);
    std::vector<SmallPoint> pts{SmallPoint{}};
    pts.reserve(p + 2);
    for (u64 x = 0; x < p; ++x)
        for (u64 y : roots[C.rhs(x)])
            pts.push_back({false, x, y});
    return pts;
}

SmallPoint to_small(const Point& P, u64 p)
{
    if (const auto* a = std::get_if<Affine>(&P))
        return {false, mod(a->x, Int(std::to_string(p))).get_ui(), mod(a->y, Int(std::to_string(p))).get_ui()};
    return {};
}

Point to_point(const SmallPoint& P)
{
    if (P.inf)
        return Infinity{};
    return Affine{Int(std::to_string(P.x)), Int(std::to_string(P.y))};
}

std::vector<u64> prime_factors(u64 v)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0)
                v /= d;
        }
    }
    if (v > 1)
        out.push_back(v);
    return out;
}

// Order of P in a group of the given size, by stripping prime factors.
u64 order_in(const SmallCurve& C, const SmallPoint& P, u64 group_size, const std::vector<u64>& primes)
{
    u64 order = group_size;
    for (u64 l : primes) {
        while (order % l == 0 && C.mul(order / l, P).inf)
            order /= l;
    }
    return order;
}

GroupStructure structure_from(const std::vector<SmallPoint>& pts, const std::vector<u64>& orders)
{
    GroupStructure g;
    const u64 total = pts.size();
    u64 exponent = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        exponent = std::max(exponent, orders[i]);
        if (!pts[i].inf && pts[i].y == 0)
            ++g.two_torsion;
    }
    // E(F_p) has at most two invariant factors; the larger is the exponent.
    g.orders = {total / exponent, exponent};
    g.kind = exponent == total ? GroupStructure::Kind::Cyclic : GroupStructure::Kind::ProductOfTwo;
    return g;
}

}  // namespace

bool operator<(const Violation& a, const Violation& b)
{
    return std::tie(a.p, a.m, a.theorem, a.point, a.detail) < std::tie(b.p, b.m, b.theorem, b.point, b.detail);
}

std::vector<Point> enumerate_points(u64 p, u64 m)
{
    check_field(p, m);
    std::vector<Point> out;
    for (const auto& P : enumerate_small(SmallCurve{p, m % p}))
        out.push_back(to_point(P));
    return out;
}

u64 point_order(u64 p, u64 m, const Point& P)
{
    check_field(p, m);
    const SmallCurve C{p, m % p};
    const SmallPoint base = to_small(P, p);
    if (!base.inf && C.rhs(base.x) != base.y * base.y % p)
        throw std::invalid_argument("oracle: point is not on the curve");
    SmallPoint acc = base;
    u64 s = 1;
    while (!acc.inf) {
        acc = C.add(acc, base);
        ++s;
        if (s > 2 * p + 2)
            throw std::logic_error("oracle: order exceeds the Hasse range");
    }
    return s;
}

GroupStructure group_structure(u64 p, u64 m)
{
    check_field(p, m);
    const SmallCurve C{p, m % p};
    const auto pts = enumerate_small(C);
    const auto primes = prime_factors(pts.size());
    std::vector<u64> orders;
    orders.reserve(pts.size());
    for (const auto& P : pts)
        orders.push_back(order_in(C, P, pts.size(), primes));
    return structure_from(pts, orders);
}

std::vector<u64> sampled_m(u64 p, const VerifyOptions& options)
{
    std::vector<u64> ms;
    if (p < options.full_sweep_below || p - 1 <= options.samples_per_prime) {
        for (u64 m = 1; m < p; ++m)
            ms.push_back(m);
        return ms;
    }
    std::mt19937_64 rng(options.seed ^ (p * 0x9e3779b97f4a7c15ULL));
    auto draw = [&] { return 1 + rng() % (p - 1); };
    auto take = [&](u64 m) {
        if (std::find(ms.begin(), ms.end(), m) == ms.end())
            ms.push_back(m);
    };
    // One residue and one non-residue first, so both branches are exercised.
    for (int want : {1, -1}) {
        u64 m;
        do
            m = draw();
        while (legendre(m, p) != want);
        take(m);
    }
    while (ms.size() < options.samples_per_prime)
        take(draw());
    std::sort(ms.begin(), ms.end());
    return ms;
}

TheoremReport verify_theorems(u64 p_max, const VerifyOptions& options)
{
    if (p_max > kEnumerationBound)
        throw std::invalid_argument("oracle: p_max above the enumeration bound");
    TheoremReport report;
    report.p_max = p_max;

    for (u64 p = 3; p <= p_max; p += 4) {
        if (!is_small_prime(p))
            continue;
        ++report.primes_checked;
        u64 k = 0;
        while (((p + 1) >> k) % 2 == 0)
            ++k;
        const u64 two_k = u64{1} << k;

        for (u64 m : sampled_m(p, options)) {
            ++report.curves_checked;
            const SmallCurve C{p, m};
            const auto pts = enumerate_small(C);
            report.points_checked += pts.size();
            auto violate = [&](int theorem, std::optional<SmallPoint> P, std::string detail) {
                Violation v{p, m, theorem, std::nullopt, std::move(detail)};
                if (P && !P->inf)
                    v.point = std::make_pair(P->x, P->y);
                report.violations.push_back(std::move(v));
            };

            if (pts.size() != p + 1) {
                violate(1, std::nullopt, "|E| = " + std::to_string(pts.size()));
                continue;
            }

            const auto primes = prime_factors(p + 1);
            std::vector<u64> orders;
            orders.reserve(pts.size());
            for (const auto& P : pts)
                orders.push_back(order_in(C, P, p + 1, primes));
            const GroupStructure g = structure_from(pts, orders);

            const int chi = legendre(m, p);
            if (chi == -1) {
                ++report.cyclic_curves;
                if (g.kind != GroupStructure::Kind::Cyclic || g.two_torsion != 1)
                    violate(2, std::nullopt, "non-residue m but group is not cyclic");
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (pts[i].inf || legendre(pts[i].x, p) != -1)
                        continue;
                    if (orders[i] % two_k != 0)
                        violate(3, pts[i], "order " + std::to_string(orders[i]) + " not divisible by 2^k");
                }
            } else {
                ++report.product_curves;
                if (g.kind != GroupStructure::Kind::ProductOfTwo || g.orders.first != 2 || g.two_torsion != 3)
                    violate(2, std::nullopt, "residue m but group is not Z_2 + Z_{(p+1)/2}");
            }
        }
    }
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

}  // namespace ecprime::oracle
