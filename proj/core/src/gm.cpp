#include "zh/gm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "zh/arith.hpp"
#include "zh/characters.hpp"
#include "zh/errors.hpp"

namespace zh::gm {

SystemProfile gm_profile() { return {"Gm", 1, 2, {}}; }

HorizontalComponent horizontal_component(u64 n) {
    if (n == 0) throw domain_error("horizontal_component: n must be positive");
    HorizontalComponent hc;
    hc.order = n;
    hc.field_degree = arith::euler_phi(n); // one Galois orbit of primitive roots over Q
    for (auto [p, e] : arith::factorize(n).parts) hc.removed_primes.push_back(p);
    return hc;
}

u64 psi_gm(u64 n, u64 p, unsigned nu) {
    if (n == 0 || nu == 0 || !arith::is_prime(p))
        throw domain_error("psi_gm: need n, nu >= 1 and p prime");
    if (n == 1) return 1;
    // n | p^nu - 1, tested mod n so p^nu never overflows
    if (arith::powmod(p % n, nu, n) != 1 % n) return 0;
    return arith::euler_phi(n);
}

namespace {

u64 checked_pow_u64(u64 p, unsigned e, const char* who) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= p;
        if (v > static_cast<unsigned __int128>(UINT64_MAX))
            throw domain_error(std::string(who) + ": p^degree out of 64-bit range");
    }
    return static_cast<u64>(v);
}

} // namespace

GmPartitionCertificate verify_gm_local_partition(u64 p, unsigned max_degree) {
    if (!arith::is_prime(p) || max_degree == 0)
        throw domain_error("verify_gm_local_partition: need p prime, max_degree >= 1");
    checked_pow_u64(p, max_degree, "verify_gm_local_partition");
    GmPartitionCertificate cert;
    cert.p = p;
    cert.max_degree = max_degree;
    cert.pass = true;

    std::vector<Int> counts(max_degree); // N_nu = p^nu - 1
    Int pw(1);
    for (unsigned nu = 1; nu <= max_degree; ++nu) {
        pw *= static_cast<unsigned long>(p);
        counts[nu - 1] = pw - 1;
    }
    std::vector<Int> b = localzeta::closed_point_counts(p, counts);

    for (unsigned d = 1; d <= max_degree; ++d) {
        // orders contributing in degree d: n | p^d - 1 with ord_n(p) = d
        u64 group = 1;
        for (unsigned i = 0; i < d; ++i) group *= p;
        --group;
        Int sum(0);
        for (auto [n, phi] : arith::divisors_with_phi(arith::factorize(group))) {
            // ord_n(p) divides d; find it by testing the divisors of d
            unsigned f = d;
            for (unsigned e = 1; e < d; ++e)
                if (d % e == 0 && (n == 1 || arith::powmod(p % n, e, n) == 1 % n)) {
                    f = e;
                    break;
                }
            if (f == d) sum += Int(static_cast<unsigned long>(phi / d));
        }
        bool ok = sum == b[d - 1];
        cert.degrees.push_back({d, b[d - 1], sum, ok});
        cert.pass = cert.pass && ok;
    }

    for (unsigned nu = 1; nu <= max_degree; ++nu) {
        u64 group = 1;
        for (unsigned i = 0; i < nu; ++i) group *= p;
        --group;
        Int phi_sum(0);
        for (auto [n, phi] : arith::divisors_with_phi(arith::factorize(group)))
            phi_sum += Int(static_cast<unsigned long>(phi));
        bool ok = phi_sum == Int(static_cast<unsigned long>(group));
        cert.partitions.push_back({nu, Int(static_cast<unsigned long>(group)), phi_sum, ok});
        cert.pass = cert.pass && ok;
    }
    return cert;
}

namespace {

// exact division of polynomials with integer coefficients, remainder must vanish
std::vector<Int> poly_divide_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Int q = rem[k + den.size() - 1] / den.back();
        if (q * den.back() != rem[k + den.size() - 1])
            throw inconsistency_error("cyclotomic_poly: non-exact division");
        quot[k] = q;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
    }
    for (const Int& r : rem)
        if (r != 0) throw inconsistency_error("cyclotomic_poly: nonzero remainder");
    return quot;
}

} // namespace

std::vector<Int> cyclotomic_poly(u64 n) {
    if (n == 0) throw domain_error("cyclotomic_poly: n must be positive");
    std::map<u64, std::vector<Int>> phis;
    for (u64 d : arith::divisors(arith::factorize(n))) {
        // T^d - 1 divided by the Phi_e for proper divisors e | d
        std::vector<Int> poly(d + 1, Int(0));
        poly[0] = -1;
        poly[d] = 1;
        for (auto& [e, phi_e] : phis)
            if (d % e == 0) poly = poly_divide_exact(poly, phi_e);
        phis[d] = std::move(poly);
    }
    return phis[n];
}

namespace {

// dense polynomials over F_p for the distinct-degree splitting of Phi_n
using FpPoly = std::vector<u64>;

int deg(const FpPoly& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i]) return static_cast<int>(i);
    return -1;
}

FpPoly trim(FpPoly a) {
    a.resize(static_cast<std::size_t>(std::max(deg(a), 0)) + 1);
    return a;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, u64 p) {
    std::size_t n = static_cast<std::size_t>(deg(mod));
    FpPoly r(a.size() + b.size() + n, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j]) r[i + j] = (r[i + j] + arith::mulmod(a[i], b[j], p)) % p;
    u64 lead_inv = arith::powmod(mod[n], p - 2, p);
    for (std::size_t i = r.size(); i-- > n;)
        if (r[i]) {
            u64 t = arith::mulmod(r[i], lead_inv, p);
            r[i] = 0;
            for (std::size_t k = 0; k < n; ++k) {
                u64 sub = arith::mulmod(t, mod[k], p);
                r[i - n + k] = (r[i - n + k] + p - sub) % p;
            }
        }
    r.resize(n);
    return r;
}

FpPoly gcd(FpPoly a, FpPoly b, u64 p) {
    while (true) {
        int db = deg(b);
        if (db < 0) return trim(a);
        int da = deg(a);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        u64 inv = arith::powmod(b[db], p - 2, p);
        u64 t = arith::mulmod(a[da] % p, inv, p);
        for (int i = 0; i <= db; ++i) {
            u64 sub = arith::mulmod(t, b[i], p);
            a[da - db + i] = (a[da - db + i] + p - sub) % p;
        }
    }
}

FpPoly divide_exact(const FpPoly& num, const FpPoly& den, u64 p) {
    FpPoly rem = num;
    int dn = deg(num), dd = deg(den);
    FpPoly quot(static_cast<std::size_t>(dn - dd) + 1, 0);
    u64 inv = arith::powmod(den[dd], p - 2, p);
    for (std::size_t k = quot.size(); k-- > 0;) {
        u64 q = arith::mulmod(rem[k + dd], inv, p);
        quot[k] = q;
        for (int j = 0; j <= dd; ++j) {
            u64 sub = arith::mulmod(q, den[j], p);
            rem[k + j] = (rem[k + j] + p - sub) % p;
        }
    }
    return quot;
}

} // namespace

std::vector<unsigned> phi_n_degrees_mod_p(u64 n, u64 p) {
    if (!arith::is_prime(p)) throw domain_error("phi_n_degrees_mod_p: p must be prime");
    if (n == 0 || (n > 1 && n % p == 0))
        throw domain_error("phi_n_degrees_mod_p: requires p not dividing n");
    std::vector<Int> phi_z = cyclotomic_poly(n);
    FpPoly f(phi_z.size());
    for (std::size_t i = 0; i < phi_z.size(); ++i) {
        Int c = phi_z[i] % static_cast<long>(p);
        if (c < 0) c += static_cast<long>(p);
        f[i] = c.get_ui();
    }
    f = trim(f);

    // distinct-degree splitting: peel gcd(f, x^{p^d} - x) for d = 1, 2, ...
    std::vector<unsigned> degrees;
    FpPoly x{0, 1};
    FpPoly h = x; // x^{p^d} mod f, maintained across d
    for (unsigned d = 1; deg(f) > 0; ++d) {
        if (static_cast<int>(d) > deg(f)) throw inconsistency_error("phi_n_degrees_mod_p: splitting stalled");
        // h <- h^p mod f
        FpPoly r{1};
        FpPoly base = h;
        u64 k = p;
        while (k) {
            if (k & 1) r = mulmod(r, base, f, p);
            base = mulmod(base, base, f, p);
            k >>= 1;
        }
        h = r;
        FpPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        FpPoly g = gcd(f, diff, p);
        int dg = deg(g);
        if (dg > 0) {
            if (dg % d != 0) throw inconsistency_error("phi_n_degrees_mod_p: ragged split");
            for (int i = 0; i < dg / static_cast<int>(d); ++i) degrees.push_back(d);
            f = trim(divide_exact(f, g, p));
            if (deg(f) > 0) {
                // reduce h mod the smaller f: recompute via one more gcd-free step
                FpPoly hf = h;
                hf = mulmod(hf, FpPoly{1}, f, p);
                h = hf;
            }
        }
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

double zeta_series(double s, u64 terms) {
    if (s <= 1.0) throw domain_error("zeta_series: requires s > 1");
    double sum = 0.0;
    for (u64 m = terms; m >= 1; --m) sum += std::pow(static_cast<double>(m), -s);
    // Euler-Maclaurin tail: integral term plus half the next summand
    double M = static_cast<double>(terms);
    sum += std::pow(M, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(M, -s);
    return sum;
}

namespace {

// One prime's complete regrouped local value: prod_d (1 - p^{-ds})^{-b_d}
// with b_d the degree-d closed points of G_m over F_p. The product over d
// is truncated once terms drop below 1e-19, which is far under every
// tolerance used with it.
double regrouped_local_value(u64 p, double s) {
    long double logv = 0.0L;
    long double ps = std::pow(static_cast<long double>(p), static_cast<long double>(-s));
    long double td = 1.0L;
    std::vector<long double> counts; // N_nu as long double; exact for the range used
    long double pnu = 1.0L;
    for (unsigned d = 1;; ++d) {
        td *= ps;
        pnu *= static_cast<long double>(p);
        counts.push_back(pnu - 1.0L);
        // b_d via Moebius over divisors of d
        long double bd = 0.0L;
        for (unsigned e = 1; e <= d; ++e)
            if (d % e == 0) {
                int mu = arith::moebius(d / e);
                if (mu) bd += mu * counts[e - 1];
            }
        bd /= d;
        long double term = -bd * std::log1p(-static_cast<double>(td));
        logv += term;
        if (bd * td < 1e-19L || d > 64) break;
    }
    return static_cast<double>(std::exp(logv));
}

} // namespace

Eq8Report verify_eq8_global(double s, u64 n_max, u64 prime_bound) {
    if (s <= 2.0) throw domain_error("verify_eq8_global: requires s > 2");
    if (n_max == 0) throw domain_error("verify_eq8_global: n_max must be positive");
    Eq8Report rep;
    rep.s = s;
    rep.n_max = n_max;
    rep.prime_bound = prime_bound;
    rep.target = zeta_series(s - 1.0) / zeta_series(s);

    std::vector<u64> primes = arith::primes_up_to(prime_bound);
    long double rhs = 1.0L;
    u64 half = n_max / 2;
    for (u64 n = 1; n <= n_max; ++n) {
        auto chis = characters::characters(n);
        for (u64 p : primes) {
            if (n > 1 && n % p == 0) continue;
            // prod_chi (1 - chi(p) p^{-s}); real and positive once complete
            std::complex<long double> prod(1.0L, 0.0L);
            long double ps = std::pow(static_cast<long double>(p), static_cast<long double>(-s));
            for (const auto& chi : chis) {
                std::complex<double> v = characters::chi_value(chi, static_cast<long long>(p));
                prod *= std::complex<long double>(1.0L - v.real() * ps, -v.imag() * ps);
            }
            rhs /= prod.real();
        }
        if (n == half) rep.rhs_half = static_cast<double>(rhs);
    }
    rep.rhs = static_cast<double>(rhs);
    rep.gap = std::abs(rep.rhs - rep.target);
    rep.gap_half = std::abs(rep.rhs_half - rep.target);

    long double reg = 1.0L;
    for (u64 p : primes) reg *= regrouped_local_value(p, s);
    rep.regrouped = static_cast<double>(reg);
    rep.regrouped_gap = std::abs(rep.regrouped - rep.target);

    rep.converging = n_max >= 2 && rep.gap < rep.gap_half;
    rep.pass = n_max < 2 || rep.converging;
    return rep;
}

Eq25Certificate verify_eq25_local(u64 p, unsigned degree, u64 n_max) {
    if (!arith::is_prime(p)) throw domain_error("verify_eq25_local: p must be prime");
    Eq25Certificate cert;
    cert.p = p;
    cert.degree = degree;
    cert.n_max = n_max;

    // every order contributing through this degree must be covered
    unsigned __int128 needed = 1;
    for (unsigned i = 0; i < degree; ++i) {
        needed *= p;
        if (needed > static_cast<unsigned __int128>(UINT64_MAX))
            throw domain_error("verify_eq25_local: p^degree out of range");
    }
    if (static_cast<unsigned __int128>(n_max) + 1 < needed)
        throw domain_error("verify_eq25_local: n_max must be at least p^degree - 1");

    cert.lhs = localzeta::expand(
        localzeta::make_local_factor(
            p, {Int(1), Int(-1)}, {Int(1), Int(-static_cast<long>(p))}),
        static_cast<int>(degree));

    PowerSeries rhs;
    rhs.coeffs.assign(degree + 1, Int(0));
    rhs.coeffs[0] = 1;
    // contributing orders are exactly the divisors of p^f - 1 with exact
    // Frobenius degree f, for f = 1..degree
    u64 group = 1;
    for (unsigned f = 1; f <= degree; ++f) {
        group *= p;
        u64 gm1 = group - 1;
        for (auto [n, phi] : arith::divisors_with_phi(arith::factorize(gm1))) {
            if (n > n_max) continue;
            bool exact = true;
            for (unsigned e = 1; e < f && exact; ++e)
                if (f % e == 0 && (n == 1 || arith::powmod(p % n, e, n) == 1 % n)) exact = false;
            if (!exact) continue;
            cert.orders_used.push_back(n);
            localzeta::mul_inv_one_minus_tf_pow(rhs, f, phi / f);
        }
    }
    std::sort(cert.orders_used.begin(), cert.orders_used.end());
    cert.rhs = rhs;
    cert.pass = cert.lhs == cert.rhs;
    return cert;
}

} // namespace zh::gm
