#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecprime/ecring.hpp"

// Brute-force ground truth for y^2 = x^3 - m x over small prime fields.
// The group law here runs on machine integers and shares no code with
// ecring, so the two can be checked against each other.

namespace ecprime::oracle {

inline constexpr std::uint64_t kEnumerationBound = 5000;

/// All points of y^2 = x^3 - m x over F_p, infinity first, then affine
/// points in (x, y) order. p must be a prime = 3 (mod 4) within the bound.
std::vector<Point> enumerate_points(std::uint64_t p, std::uint64_t m);

/// Least s >= 1 with s P = infinity, by repeated addition.
std::uint64_t point_order(std::uint64_t p, std::uint64_t m, const Point& P);

struct GroupStructure {
    enum class Kind { Cyclic, ProductOfTwo };
    Kind kind = Kind::Cyclic;
    /// (1, p + 1) when cyclic, (a, b) with a | b and a b = p + 1 otherwise.
    std::pair<std::uint64_t, std::uint64_t> orders;
    unsigned two_torsion = 0;

    std::uint64_t total() const { return orders.first * orders.second; }
};

GroupStructure group_structure(std::uint64_t p, std::uint64_t m);

struct Violation {
    std::uint64_t p = 0;
    std::uint64_t m = 0;
    int theorem = 0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> point;
    std::string detail;

    friend bool operator<(const Violation& a, const Violation& b);
};

struct TheoremReport {
    std::uint64_t p_max = 0;
    std::uint64_t primes_checked = 0;
    std::uint64_t curves_checked = 0;
    std::uint64_t points_checked = 0;
    std::uint64_t cyclic_curves = 0;
    std::uint64_t product_curves = 0;
    std::vector<Violation> violations;
};

struct VerifyOptions {
    /// Every m in 1..p-1 is checked for primes below this; above it a sample.
    std::uint64_t full_sweep_below = 200;
    unsigned samples_per_prime = 5;
    std::uint64_t seed = 0x5eed;
};

/// For every prime p = 3 (mod 4) up to p_max: |E| = p + 1; the group is
/// cyclic exactly when m is a non-residue and Z_2 + Z_{(p+1)/2} otherwise;
/// for non-residue m every point with non-residue x has order divisible by
/// 2^k, where p + 1 = 2^k n with n odd.
TheoremReport verify_theorems(std::uint64_t p_max, const VerifyOptions& options = {});

/// The m values checked at p under the given options, ascending.
std::vector<std::uint64_t> sampled_m(std::uint64_t p, const VerifyOptions& options = {});

}  // namespace ecprime::oracle
