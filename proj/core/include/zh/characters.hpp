#ifndef ZH_CHARACTERS_HPP
#define ZH_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "zh/arith.hpp"

namespace zh::characters {

using u64 = std::uint64_t;

/// Shared evaluation context for Dirichlet characters mod n: the unit group
/// generators plus a discrete-log table filled by exhaustive enumeration.
/// Immutable after construction.
class CharacterGroup {
public:
    explicit CharacterGroup(u64 n);

    u64 modulus() const { return n_; }
    const arith::UnitGroupStructure& units() const { return units_; }
    u64 order() const { return phi_; } // number of characters = phi(n)

    /// Exponent vector of a with respect to the generators, or nullptr for
    /// non-units.
    const std::vector<u64>* dlog(long long a) const;

private:
    u64 n_, phi_;
    arith::UnitGroupStructure units_;
    std::vector<std::vector<u64>> dlogs_; // by residue; empty marks non-units
    std::vector<char> is_unit_;
};

/// chi determined by exponents e_i against the group generators:
/// chi(g_i) = exp(2 pi i e_i / order_i).
struct DirichletCharacter {
    std::shared_ptr<const CharacterGroup> group;
    std::vector<u64> exponents;

    u64 modulus() const { return group->modulus(); }
    bool is_trivial() const;
    u64 order() const; // order of chi in the dual group

    /// Exact rotation of chi(a), as a reduced fraction of a full turn;
    /// returns false for non-units (chi(a) = 0).
    bool rotation(long long a, u64& num, u64& den) const;
};

/// All phi(n) characters mod n, lexicographic in exponent vector.
std::vector<DirichletCharacter> characters(u64 n);

/// chi(a) as a complex double: a root of unity for units, 0 otherwise.
std::complex<double> chi_value(const DirichletCharacter& chi, long long a);

/// The data of the Euler factor (1 - chi(p) p^{-s})^{-1}.
struct DirichletLocalFactor {
    u64 prime;
    std::complex<double> chi_p;
};

DirichletLocalFactor dirichlet_local_factor(const DirichletCharacter& chi, u64 p);

/// Truncated Euler product over p <= prime_bound, p not dividing the
/// modulus. Requires s > 1.
std::complex<double> dirichlet_L(const DirichletCharacter& chi, double s, u64 prime_bound);

/// Certificate that prod_chi (1 - chi(p) T) agrees coefficientwise with
/// (1 - T^f)^{phi(n)/f}, f = ord_n(p), within 1e-9. The left side is
/// expanded in complex arithmetic, the right side exactly.
struct Eq7Certificate {
    u64 n = 0, p = 0;
    u64 f = 0, g = 0;
    double max_coeff_error = 0.0;
    bool pass = false;
};

Eq7Certificate verify_eq7_local(u64 n, u64 p);

inline constexpr double kEq7Tolerance = 1e-9;

} // namespace zh::characters

#endif
