#ifndef ZH_ELLIPTIC_HPP
#define ZH_ELLIPTIC_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "zh/gm.hpp"
#include "zh/localzeta.hpp"

namespace zh::elliptic {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using localzeta::Int;
using localzeta::PowerSeries;

/// Enumeration budget: group-level computations stay below p^nu <= 10^6.
inline constexpr u64 kEnumerationBudget = 1'000'000;

/// y^2 = x^3 + a x + b over Z. Bad primes are {2, 3} plus the primes of
/// the discriminant; short Weierstrass reduction is only trusted away from
/// those.
struct Curve {
    i64 a = 0, b = 0;
    i64 discriminant = 0;          // -16 (4a^3 + 27b^2)
    std::vector<u64> bad_primes;   // sorted
};

Curve make_curve(i64 a, i64 b); // throws domain_error when singular
bool good_reduction(const Curve& curve, u64 p);

/// Compatible-system shape for the curve: rank 2, weight 1, bad primes S.
gm::SystemProfile system_profile(const Curve& curve);

/// Frobenius data at a good prime: the trace a_p determines every
/// extension count through s_nu = a_p s_{nu-1} - p s_{nu-2}.
struct FrobeniusData {
    u64 p = 0;
    i64 a_p = 0;

    i64 trace_power(unsigned nu) const;  // s_nu = lambda_1^nu + lambda_2^nu
    Int point_count(unsigned nu) const;  // p^nu + 1 - s_nu, always positive
};

/// |E(F_{p^nu})| by direct enumeration over the table-backed field model,
/// point at infinity included. Independent of the trace recurrence.
u64 count_points_enum(const Curve& curve, u64 p, unsigned nu);

/// a_p from one enumeration at nu = 1; asserts the Hasse bound.
FrobeniusData frobenius_data(const Curve& curve, u64 p);

/// E(F_q) = Z/d1 x Z/d2 with d1 | d2; d2 is the exact group exponent,
/// computed as the lcm of the orders of all rational points.
struct GroupStructure {
    u64 p = 0;
    unsigned nu = 0;
    u64 q = 0;
    u64 d1 = 1, d2 = 1;

    u64 order() const { return d1 * d2; }
};

GroupStructure group_structure(const Curve& curve, u64 p, unsigned nu);

/// Number of points of exact order n rational over F_{p^nu}. Valid for all
/// n, including p | n, where the rational points are the etale fixed
/// points.
u64 psi_E(const Curve& curve, u64 n, u64 p, unsigned nu);

/// a_p mod p distinguishes ordinary from supersingular reduction.
bool is_ordinary(const Curve& curve, u64 p);

/// Exact checks at one (p, nu): the recurrence count, the enumeration
/// count, and the order partition sum_n psi_n all agree, and for every
/// prime l | N the l-power orders alone sum to the l-part of N.
struct Eq4Certificate {
    u64 p = 0;
    unsigned nu = 0;
    Int count_recurrence;
    Int count_enumeration;
    Int psi_sum;
    bool counts_match = false;
    struct LPartRow {
        u64 l;
        Int l_part;     // l-part of N_nu
        Int psi_l_sum;  // sum_k psi_{l^k}
        bool pass;
    };
    std::vector<LPartRow> l_parts;
    bool pass = false;
};

Eq4Certificate verify_eq4_local(const Curve& curve, u64 p, unsigned nu);

/// Frobenius orbits on the exact-order-n points over the algebraic
/// closure: orbit_counts[d] = number of orbits of size d. Complete when
/// sum d * c_d reaches the closure total (full prime-to-p torsion times
/// the etale p-part); incomplete when the enumeration budget or the
/// degree cap stops the scan first.
struct TorsionOrbitSet {
    u64 n = 0, p = 0;
    std::map<unsigned, u64> orbit_counts;
    Int closure_total;
    bool complete = false;
};

TorsionOrbitSet torsion_orbits(const Curve& curve, u64 n, u64 p, unsigned degree_cap = 24);

/// Per-prime factorization of the local zeta factor: the expansion of
/// (1 - a_p T + p T^2) / ((1 - T)(1 - p T)) equals the product over orders
/// n of prod_d (1 - T^d)^{-c_d(n)} through the given degree; equivalently
/// b_d = sum_n c_d(n) for every d <= degree.
struct Eq13Certificate {
    u64 p = 0;
    unsigned degree = 0;
    bool pass = false;
    PowerSeries lhs, rhs;
    std::vector<u64> orders_used;
    struct DegreeRow {
        unsigned d;
        Int closed_points;  // b_d of the curve over F_p
        Int orbit_sum;      // sum_n c_d(n)
        bool pass;
    };
    std::vector<DegreeRow> degrees;
};

Eq13Certificate verify_eq13_local(const Curve& curve, u64 p, unsigned degree);

} // namespace zh::elliptic

#endif
