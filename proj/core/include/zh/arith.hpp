#ifndef ZH_ARITH_HPP
#define ZH_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace zh::arith {

using u64 = std::uint64_t;

/// Prime factorization of a positive 64-bit integer.
/// parts are (prime, exponent) with primes strictly increasing;
/// value == product of prime^exponent, and value == 1 iff parts is empty.
struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, unsigned>> parts;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

/// Deterministic Miller-Rabin, exact for the full 64-bit range.
bool is_prime(u64 n);

/// All primes <= bound, ascending (sieve of Eratosthenes).
std::vector<u64> primes_up_to(u64 bound);

/// Trial division up to sqrt(n) with a prime-cofactor early exit.
Factorization factorize(u64 n);

u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);
int moebius(u64 n);
int moebius(const Factorization& f);

/// All divisors of the factored value, sorted ascending.
std::vector<u64> divisors(const Factorization& f);

/// (divisor, phi(divisor)) for every divisor, sorted by divisor.
std::vector<std::pair<u64, u64>> divisors_with_phi(const Factorization& f);

/// Smallest nu >= 1 with a^nu = 1 mod n. Requires gcd(a, n) == 1.
u64 multiplicative_order(u64 a, u64 n);

/// Generator decomposition of (Z/n)^x built through the CRT: one cyclic
/// block per odd prime power, the usual {-1, 5} pair for 2^k with k >= 3.
/// The map from exponent vectors (e_i < order_i) to products of
/// residue_i^e_i is a bijection onto the units mod n.
struct UnitGroupStructure {
    struct Generator {
        u64 residue;
        u64 order;
    };
    u64 modulus = 1;
    std::vector<Generator> generators;

    u64 order() const; // phi(modulus) = product of generator orders
};

UnitGroupStructure unit_group(u64 n);

/// Number of elements of exact order n in Z/d1 x Z/d2, via
/// sum_{m|n} mu(n/m) gcd(m,d1) gcd(m,d2). Requires d1 | d2.
u64 count_exact_order(u64 d1, u64 d2, u64 n);

} // namespace zh::arith

#endif
