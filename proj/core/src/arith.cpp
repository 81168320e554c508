#include "zh/arith.hpp"

#include <algorithm>
#include <numeric>

#include "zh/errors.hpp"

namespace zh::arith {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set decides primality exactly for all n < 3.3e24.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

std::vector<u64> primes_up_to(u64 bound) {
    std::vector<u64> ps;
    if (bound < 2) return ps;
    std::vector<char> composite(bound + 1, 0);
    for (u64 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        ps.push_back(i);
        for (u64 j = i * i; j <= bound; j += i) composite[j] = 1;
    }
    return ps;
}

Factorization factorize(u64 n) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    Factorization f;
    f.value = n;
    auto strip = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.parts.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    bool cofactor_prime = n > 1 && is_prime(n);
    for (u64 p = 5; !cofactor_prime && p * p <= n; p += 6) {
        bool divided = n % p == 0 || n % (p + 2) == 0;
        strip(p);
        strip(p + 2);
        if (divided && n > 1) cofactor_prime = is_prime(n);
    }
    if (n > 1) f.parts.emplace_back(n, 1);
    return f;
}

u64 euler_phi(const Factorization& f) {
    u64 phi = 1;
    for (auto [p, e] : f.parts) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

int moebius(const Factorization& f) {
    for (auto [p, e] : f.parts)
        if (e > 1) return 0;
    return f.parts.size() % 2 ? -1 : 1;
}

int moebius(u64 n) { return moebius(factorize(n)); }

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> ds{1};
    for (auto [p, e] : f.parts) {
        std::size_t old = ds.size();
        u64 pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t k = 0; k < old; ++k) ds.push_back(ds[k] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::pair<u64, u64>> divisors_with_phi(const Factorization& f) {
    std::vector<std::pair<u64, u64>> ds{{1, 1}};
    for (auto [p, e] : f.parts) {
        std::size_t old = ds.size();
        u64 pk = 1, phik = 1;
        for (unsigned i = 1; i <= e; ++i) {
            phik = (i == 1) ? p - 1 : phik * p;
            pk *= p;
            for (std::size_t k = 0; k < old; ++k)
                ds.emplace_back(ds[k].first * pk, ds[k].second * phik);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 multiplicative_order(u64 a, u64 n) {
    if (n == 0) throw domain_error("multiplicative_order: modulus must be positive");
    if (n == 1) return 1;
    a %= n;
    if (std::gcd(a, n) != 1) throw domain_error("multiplicative_order: gcd(a, n) > 1");
    u64 order = euler_phi(n);
    for (auto [q, e] : factorize(order).parts) {
        for (unsigned i = 0; i < e && order % q == 0; ++i) {
            if (powmod(a, order / q, n) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

u64 UnitGroupStructure::order() const {
    u64 o = 1;
    for (const auto& g : generators) o *= g.order;
    return o;
}

namespace {

// Smallest primitive root mod p^e for odd prime p. A primitive root g mod p
// is promoted to g + p when g^(p-1) = 1 mod p^2, which makes it primitive
// mod every power of p.
u64 primitive_root_odd_prime_power(u64 p, unsigned e) {
    Factorization pm1 = factorize(p - 1);
    u64 g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [q, _] : pm1.parts)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (e == 1) return g;
    u64 p2 = p * p;
    if (powmod(g, p - 1, p2) == 1) g += p;
    return g;
}

// CRT lift: residue r mod m, 1 mod (n/m).
u64 crt_lift(u64 r, u64 m, u64 n) {
    u64 cof = n / m;
    if (cof == 1) return r % n;
    // x = r mod m, x = 1 mod cof
    u64 inv = powmod(cof % m, euler_phi(m) - 1, m); // cof^{-1} mod m
    u64 t = mulmod((r % m + m - 1 % m) % m, inv, m);
    return (1 + static_cast<u64>((static_cast<unsigned __int128>(t) * cof) % n)) % n;
}

} // namespace

UnitGroupStructure unit_group(u64 n) {
    if (n == 0) throw domain_error("unit_group: modulus must be positive");
    UnitGroupStructure ug;
    ug.modulus = n;
    if (n <= 2) return ug; // trivial group
    for (auto [p, e] : factorize(n).parts) {
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                ug.generators.push_back({crt_lift(3, 4, n), 2});
            } else {
                // (Z/2^e)^x = <-1> x <5>
                ug.generators.push_back({crt_lift(pe - 1, pe, n), 2});
                ug.generators.push_back({crt_lift(5, pe, n), pe / 4});
            }
        } else {
            u64 g = primitive_root_odd_prime_power(p, e);
            u64 ord = pe / p * (p - 1);
            ug.generators.push_back({crt_lift(g % pe, pe, n), ord});
        }
    }
    return ug;
}

u64 count_exact_order(u64 d1, u64 d2, u64 n) {
    if (d1 == 0 || d2 == 0 || n == 0)
        throw domain_error("count_exact_order: arguments must be positive");
    if (d2 % d1 != 0) throw domain_error("count_exact_order: d1 must divide d2");
    long long total = 0;
    Factorization fn = factorize(n);
    for (u64 m : divisors(fn)) {
        int mu = moebius(n / m);
        if (mu == 0) continue;
        total += static_cast<long long>(mu) *
                 static_cast<long long>(std::gcd(m, d1) * std::gcd(m, d2));
    }
    return static_cast<u64>(total);
}

} // namespace zh::arith
