#ifndef ZH_LOCALZETA_HPP
#define ZH_LOCALZETA_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace zh::localzeta {

using Int = mpz_class;
using u64 = std::uint64_t;

/// Euler factor at a prime, stored as an exact rational function in
/// T = p^{-s} with integer coefficients (constant term first). Both
/// numerator and denominator have constant term 1.
struct LocalFactor {
    u64 prime = 0;
    std::vector<Int> numerator{Int(1)};
    std::vector<Int> denominator{Int(1)};
};

/// Validates the constant-term-1 invariants; throws inconsistency_error.
LocalFactor make_local_factor(u64 prime, std::vector<Int> numerator,
                              std::vector<Int> denominator);

/// Truncated formal power series over Z, coefficient of T^k at index k.
struct PowerSeries {
    std::vector<Int> coeffs{Int(1)};

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Int& operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
};

bool operator==(const PowerSeries& a, const PowerSeries& b);

/// numerator/denominator as a power series in T through degree D.
PowerSeries expand(const LocalFactor& f, int degree);

/// The degree-D series of exp(sum_nu N_nu T^nu / nu) for the point counts
/// N_1..N_D. Every coefficient must come out integral; a fractional one
/// means the counts are not the point counts of anything and raises
/// inconsistency_error.
PowerSeries from_point_counts(u64 p, const std::vector<Int>& counts);

/// Closed-point counts b_d = (1/d) sum_{e|d} mu(d/e) N_e. Each b_d must be
/// a nonnegative integer; otherwise inconsistency_error.
std::vector<Int> closed_point_counts(u64 p, const std::vector<Int>& counts);

/// Euler factor of the Dedekind zeta function of Q(zeta_n) at p with p
/// not dividing n: 1 / (1 - T^f)^g for f = ord_n(p), g = phi(n)/f.
/// p | n is a domain error; ramified factors are the caller's business.
LocalFactor cyclotomic_local_factor(u64 n, u64 p);

/// The factor (1 - T^f)^{-e} with the denominator expanded exactly.
LocalFactor inverse_one_minus_tf_pow_factor(u64 p, unsigned f, u64 e);

struct Rational {
    long num = 0;
    long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// A finite approximation to an Euler product: one exact local factor per
/// prime, plus the claimed abscissa of convergence.
struct EulerProduct {
    std::string label;
    std::map<u64, LocalFactor> factors;
    Rational abscissa{1, 1};
};

/// Product over primes <= prime_bound of the factor values at T = p^{-s},
/// in double precision. Missing primes count as factor 1.
double evaluate(const EulerProduct& ep, double s, u64 prime_bound);

// --- small exact-series kernels shared by the verification modules ---

/// s *= (1 - T^f)^(+-1), truncated to the series' own degree.
void mul_one_minus_tf(PowerSeries& s, unsigned f);
void div_one_minus_tf(PowerSeries& s, unsigned f);

/// s *= (1 - T^f)^(-e) (e >= 0), truncated.
void mul_inv_one_minus_tf_pow(PowerSeries& s, unsigned f, u64 e);

/// Evaluate a polynomial (constant term first) at a double.
double poly_eval(const std::vector<Int>& poly, double t);

} // namespace zh::localzeta

#endif
