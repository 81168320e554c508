#ifndef ZH_STRATA_HPP
#define ZH_STRATA_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zh/localzeta.hpp"

namespace zh::strata {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Budget for projective enumeration: (p^d)^(N+1) elementary evaluations.
inline constexpr u64 kEnumerationBudget = 100'000'000;

/// Homogeneous integer polynomial in x0..xN, stored as monomials.
struct Monomial {
    i64 coeff = 0;
    std::vector<unsigned> exponents; // one per variable
};

struct Polynomial {
    unsigned nvars = 0; // N + 1
    unsigned degree = 0;
    std::vector<Monomial> terms;
};

/// U = P^N minus the common zero locus of the forbidden polynomials: a
/// point lies in U iff some F_i is nonzero at it. An empty list therefore
/// denotes the empty scheme; P^N itself is encoded as forbidden = [1].
struct OpenSubschemeSpec {
    unsigned N = 0;
    std::vector<Polynomial> forbidden;
};

/// Parse the spec file format: first line N, then one homogeneous
/// polynomial per line in x0..xN with +, -, *, ^ and parentheses nested at
/// most 4 deep. Throws domain_error on grammar or homogeneity violations.
OpenSubschemeSpec parse_subscheme(std::istream& in);
OpenSubschemeSpec parse_subscheme_file(const std::string& path);
Polynomial parse_polynomial(const std::string& text, unsigned nvars);

/// Tuple of divisors of n with lcm exactly n.
struct OrderTuple {
    std::vector<u64> j;
    u64 n = 1;
};

/// All M-tuples of divisors of n with lcm exactly n, lexicographic.
std::vector<OrderTuple> enumerate_Jn(u64 n, unsigned M);

/// Orbits of the diagonal (Z/n)^x-action on prod_i (Z/j_i)^x. Orbit
/// members are exponent tuples; the stabilizers are trivial, so every
/// orbit has size phi(n).
struct DiagonalOrbitDecomposition {
    OrderTuple tuple;
    u64 n = 1;
    std::vector<std::vector<std::vector<u64>>> orbits; // orbit -> member -> tuple
    std::vector<u64> orbit_sizes() const;
};

DiagonalOrbitDecomposition diagonal_orbits(const OrderTuple& j);

/// f = ord_n(p) for p not dividing n = lcm(j); asserts by enumeration that
/// every <p>-orbit on the unit tuples has size exactly f.
u64 frobenius_orbit_degree(const OrderTuple& j, u64 p);

/// |U(F_{p^d})| by enumerating projective representatives (first nonzero
/// coordinate normalized to 1).
u64 count_points(const OpenSubschemeSpec& U, u64 p, unsigned d);

/// Exact agreement of three counts of U(F_{p^d}): direct projective
/// enumeration, the sum over affine cells and their torus pieces, and the
/// sum over torsion-order tuples within the torus pieces.
struct StratificationCertificate {
    u64 p = 0;
    unsigned d = 0;
    u64 direct_count = 0;
    u64 cell_sum = 0;
    u64 order_tuple_sum = 0;
    bool pass = false;
    struct CellRow {
        unsigned M;              // affine cell dimension
        std::vector<char> mask;  // torus piece: 1 where the coordinate is a unit
        u64 points;
    };
    std::vector<CellRow> cells;
    struct TupleRow {
        unsigned M;
        std::vector<u64> j;
        u64 n;
        u64 points;
    };
    std::vector<TupleRow> tuples;
};

StratificationCertificate verify_stratification(const OpenSubschemeSpec& U, u64 p, unsigned d);

/// Realizes each diagonal orbit alpha as points of the standard torus
/// stratum (1 : x_1 : ... : x_M : 0 : ... : 0) with ord(x_i) = j_i, over
/// F_{p^f}, and checks Frobenius-orbit uniformity, U-membership constancy
/// along Frobenius orbits, and the reconciliation of the member counts
/// with an independent stratum count. Emits one local factor per orbit.
struct Eq30Certificate {
    OrderTuple tuple;
    u64 p = 0;
    u64 f = 0; // common Frobenius degree
    bool pass = false;
    struct OrbitRow {
        u64 members_in_U;               // points of the orbit lying in U
        localzeta::LocalFactor factor;  // (1 - T^f)^{-members/f}
    };
    std::vector<OrbitRow> orbits;
    u64 stratum_count = 0; // independent count of U-points of the stratum
};

Eq30Certificate verify_eq30_local(const OpenSubschemeSpec& U, const OrderTuple& j, u64 p);

} // namespace zh::strata

#endif
