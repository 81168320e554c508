#ifndef ZH_GM_HPP
#define ZH_GM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zh/localzeta.hpp"

namespace zh::gm {

using u64 = std::uint64_t;
using localzeta::Int;
using localzeta::PowerSeries;

/// Shape data of a compatible system: rank, weight and bad primes.
struct SystemProfile {
    std::string name;
    unsigned rank = 1;
    unsigned weight = 0;
    std::vector<u64> bad_primes;
};

/// The multiplicative group: rank 1, weight 2, no bad primes; its
/// L-function converges for Re s > 2.
SystemProfile gm_profile();

/// One horizontal component of order n over Q: a single closed point of
/// degree phi(n), with the primes dividing n removed from its zeta factor.
struct HorizontalComponent {
    u64 order = 1;
    u64 field_degree = 1;
    std::vector<u64> removed_primes;
};

HorizontalComponent horizontal_component(u64 n);

/// Number of points of exact multiplicative order n rational over
/// F_{p^nu}: phi(n) when n | p^nu - 1, otherwise 0.
u64 psi_gm(u64 n, u64 p, unsigned nu);

/// Degree-d closed points of G_m over F_p, partitioned by the exact order
/// of their coordinates: checks b_d = sum_{ord_n(p)=d} phi(n)/d for every
/// d <= D, plus the plain partition sum_{n | p^nu - 1} phi(n) = p^nu - 1.
struct GmPartitionCertificate {
    u64 p = 0;
    unsigned max_degree = 0;
    bool pass = false;
    struct DegreeRow {
        unsigned d;
        Int closed_points;   // b_d from Moebius inversion of p^nu - 1
        Int partition_sum;   // sum of phi(n)/d over orders with ord_n(p) = d
        bool pass;
    };
    struct PartitionRow {
        unsigned nu;
        Int group_order;     // p^nu - 1
        Int phi_sum;         // sum of phi(n) over n | p^nu - 1
        bool pass;
    };
    std::vector<DegreeRow> degrees;
    std::vector<PartitionRow> partitions;
};

GmPartitionCertificate verify_gm_local_partition(u64 p, unsigned max_degree);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_poly(u64 n);

/// Degrees of the irreducible factors of Phi_n mod p (p not dividing n),
/// ascending; all equal ord_n(p) with phi(n)/ord_n(p) of them.
std::vector<unsigned> phi_n_degrees_mod_p(u64 n, u64 p);

/// Numeric check of zeta(s-1)/zeta(s) = prod_n prod_chi L(chi, s) over Q.
/// The target comes from direct Dirichlet series summation; the right side
/// is truncated both in n and in the primes. Also evaluates the per-prime
/// complete regrouping prod_d (1 - p^{-ds})^{-b_d}.
struct Eq8Report {
    double s = 0;
    u64 n_max = 0;
    u64 prime_bound = 0;
    double target = 0;          // zeta(s-1)/zeta(s) by series summation
    double rhs = 0;             // double truncation at n_max
    double gap = 0;             // |rhs - target|
    double rhs_half = 0;        // truncation at n_max / 2
    double gap_half = 0;
    double regrouped = 0;       // prod over p of the complete local value
    double regrouped_gap = 0;
    bool converging = false;    // gap < gap_half (meaningless for n_max < 2)
    bool pass = false;
};

Eq8Report verify_eq8_global(double s, u64 n_max, u64 prime_bound);

/// Direct Dirichlet series sum_{m<=terms} m^{-s} with an integral tail
/// correction; independent of all Euler-product code.
double zeta_series(double s, u64 terms = 1'000'000);

/// Exact power-series identity at one prime: the G_m local zeta factor
/// (1-T)/(1-pT) equals the product over n <= n_max, p not dividing n, of
/// the cyclotomic local factors, through the given degree.
struct Eq25Certificate {
    u64 p = 0;
    unsigned degree = 0;
    u64 n_max = 0;
    bool pass = false;
    PowerSeries lhs, rhs;
    std::vector<u64> orders_used; // the n that contribute through this degree
};

Eq25Certificate verify_eq25_local(u64 p, unsigned degree, u64 n_max);

} // namespace zh::gm

#endif
