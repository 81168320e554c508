#include "zh/localzeta.hpp"

#include <cmath>
#include <cstdlib>

#include "zh/arith.hpp"
#include "zh/errors.hpp"

namespace zh::localzeta {

LocalFactor make_local_factor(u64 prime, std::vector<Int> numerator,
                              std::vector<Int> denominator) {
    if (numerator.empty() || numerator[0] != 1)
        throw inconsistency_error("local factor numerator must have constant term 1");
    if (denominator.empty() || denominator[0] != 1)
        throw inconsistency_error("local factor denominator must have constant term 1");
    return LocalFactor{prime, std::move(numerator), std::move(denominator)};
}

bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.coeffs == b.coeffs;
}

PowerSeries expand(const LocalFactor& f, int degree) {
    if (degree < 0) throw domain_error("expand: degree must be nonnegative");
    std::size_t d = static_cast<std::size_t>(degree);
    PowerSeries s;
    s.coeffs.assign(d + 1, Int(0));
    // c_k = num_k - sum_{j=1..k} den_j c_{k-j}; den_0 = 1
    for (std::size_t k = 0; k <= d; ++k) {
        Int c = k < f.numerator.size() ? f.numerator[k] : Int(0);
        for (std::size_t j = 1; j <= k && j < f.denominator.size(); ++j)
            c -= f.denominator[j] * s.coeffs[k - j];
        s.coeffs[k] = c;
    }
    return s;
}

PowerSeries from_point_counts(u64 /*p*/, const std::vector<Int>& counts) {
    for (const Int& c : counts)
        if (c < 0) throw domain_error("from_point_counts: counts must be nonnegative");
    std::size_t d = counts.size();
    PowerSeries s;
    s.coeffs.assign(d + 1, Int(0));
    s.coeffs[0] = 1;
    // k c_k = sum_{nu=1..k} N_nu c_{k-nu}  (log-derivative of the zeta series)
    for (std::size_t k = 1; k <= d; ++k) {
        Int acc(0);
        for (std::size_t nu = 1; nu <= k; ++nu) acc += counts[nu - 1] * s.coeffs[k - nu];
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), Int(k).get_mpz_t());
        if (r != 0)
            throw inconsistency_error("from_point_counts: fractional series coefficient at degree " +
                                      std::to_string(k));
        s.coeffs[k] = q;
    }
    return s;
}

std::vector<Int> closed_point_counts(u64 /*p*/, const std::vector<Int>& counts) {
    for (const Int& c : counts)
        if (c < 0) throw domain_error("closed_point_counts: counts must be nonnegative");
    std::size_t dmax = counts.size();
    std::vector<Int> b(dmax);
    for (std::size_t d = 1; d <= dmax; ++d) {
        Int acc(0);
        for (u64 e : arith::divisors(arith::factorize(d))) {
            int mu = arith::moebius(d / e);
            if (mu) acc += mu * counts[e - 1];
        }
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), Int(d).get_mpz_t());
        if (r != 0 || q < 0)
            throw inconsistency_error("closed_point_counts: invalid b_" + std::to_string(d));
        b[d - 1] = q;
    }
    return b;
}

LocalFactor inverse_one_minus_tf_pow_factor(u64 p, unsigned f, u64 e) {
    if (f == 0) throw domain_error("inverse_one_minus_tf_pow_factor: f must be positive");
    std::vector<Int> den(f * e + 1, Int(0));
    Int binom(1);
    for (u64 k = 0; k <= e; ++k) {
        den[k * f] = (k % 2) ? -binom : binom;
        binom = binom * (e - k) / (k + 1);
    }
    return make_local_factor(p, {Int(1)}, std::move(den));
}

LocalFactor cyclotomic_local_factor(u64 n, u64 p) {
    if (n == 0 || !arith::is_prime(p))
        throw domain_error("cyclotomic_local_factor: need n >= 1 and p prime");
    if (n % p == 0)
        throw domain_error("cyclotomic_local_factor: p divides n (ramified factor removed)");
    u64 f = arith::multiplicative_order(p, n);
    u64 g = arith::euler_phi(n) / f;
    return inverse_one_minus_tf_pow_factor(p, static_cast<unsigned>(f), g);
}

double evaluate(const EulerProduct& ep, double s, u64 prime_bound) {
    if (s <= ep.abscissa.value())
        throw domain_error("evaluate: s must exceed the abscissa of convergence");
    double result = 1.0;
    for (const auto& [p, f] : ep.factors) {
        if (p > prime_bound) continue;
        if (f.prime != p)
            throw inconsistency_error("evaluate: factor prime does not match its map key");
        double t = std::pow(static_cast<double>(p), -s);
        double num = poly_eval(f.numerator, t);
        double den = poly_eval(f.denominator, t);
        if (den == 0.0) throw pole_error("evaluate: local factor denominator vanishes");
        result *= num / den;
    }
    return result;
}

void mul_one_minus_tf(PowerSeries& s, unsigned f) {
    if (f == 0) return;
    for (std::size_t k = s.coeffs.size(); k-- > f;) s.coeffs[k] -= s.coeffs[k - f];
}

void div_one_minus_tf(PowerSeries& s, unsigned f) {
    if (f == 0) return;
    for (std::size_t k = f; k < s.coeffs.size(); ++k) s.coeffs[k] += s.coeffs[k - f];
}

void mul_inv_one_minus_tf_pow(PowerSeries& s, unsigned f, u64 e) {
    if (f == 0) return;
    if (f >= s.coeffs.size()) return; // no effect below the truncation degree
    for (u64 i = 0; i < e; ++i) div_one_minus_tf(s, f);
}

double poly_eval(const std::vector<Int>& poly, double t) {
    double v = 0.0;
    for (std::size_t k = poly.size(); k-- > 0;) v = v * t + poly[k].get_d();
    return v;
}

} // namespace zh::localzeta
