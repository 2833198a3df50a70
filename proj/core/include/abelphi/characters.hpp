#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "abelphi/arith.hpp"

namespace abelphi {

// (Z/mZ)^x as a product of cyclic groups, one generator per prime-power factor
// (two for 2^k, k >= 3: the residues lifting -1 and 5).
struct UnitGroupStructure {
    u64 modulus = 1;
    std::vector<u64> generators;
    std::vector<u64> orders;

    // per generator: the prime-power component it lives in
    std::vector<u64> comp_prime;
    std::vector<u64> comp_modulus;
    std::vector<int> comp_kind;  // 0 cyclic odd, 1 the -1 of 2^k, 2 the 5 of 2^k, 3 the cyclic (Z/4)^x
    std::vector<u64> comp_generator;  // generator reduced mod comp_modulus

    // discrete log coordinates of a unit a
    std::vector<u64> dlog(u64 a) const;
    u64 totient() const;
};

UnitGroupStructure unit_group_structure(u64 m);
using UnitGroupPtr = std::shared_ptr<const UnitGroupStructure>;
UnitGroupPtr shared_unit_group(u64 m);

enum class Parity { even, odd };

struct ResidueCharacter {
    UnitGroupPtr group;
    std::vector<u64> exponents;
    u64 order = 1;
    u64 conductor = 1;
    Parity parity = Parity::even;

    u64 modulus() const { return group->modulus; }
    // k with psi(a) = zeta_order^k; a coprime to the modulus
    u64 value_exponent(u64 a) const;
    // psi^t
    ResidueCharacter power(u64 t) const;
    bool is_trivial() const { return order == 1; }
    bool odd() const { return parity == Parity::odd; }
};

ResidueCharacter make_character(UnitGroupPtr group, std::vector<u64> exponents);
std::vector<ResidueCharacter> enumerate_characters(u64 m);
// value exponents for every residue mod m (-1 at non-units), O(m)
std::vector<std::int32_t> character_value_table(const ResidueCharacter& psi);
std::vector<ResidueCharacter> characters_of_order_dividing(u64 m, u64 d);
// Primitive character mod its conductor inducing psi.
ResidueCharacter primitive_character(const ResidueCharacter& psi);

struct RationalCharacter {
    ResidueCharacter representative;
    std::vector<u64> orbit;  // exponents a in (Z/g)^x, psi = rep^a
    u64 order = 1;
    u64 conductor = 1;
    Parity parity = Parity::even;

    bool odd() const { return parity == Parity::odd; }
};

std::vector<RationalCharacter> rational_orbits(u64 m);
RationalCharacter rational_character_of(const ResidueCharacter& psi);

struct PadicCharacter {
    RationalCharacter parent;
    u64 prime = 2;
    std::vector<u64> orbit;  // ascending
    u64 degree() const { return orbit.size(); }
};

// Orbits of (Z/g)^x under the decomposition group of p: u with u = p^i mod g',
// g' the prime-to-p part of g. Reduces to the orbits of a -> p a when p does not divide g.
std::vector<PadicCharacter> padic_orbits(const RationalCharacter& chi, u64 p);
std::vector<std::vector<u64>> padic_exponent_orbits(u64 g, u64 p);

// values indexed by divisors d of g; returns per-divisor component A_e
std::map<u64, mpq_class> chi_deconvolution(u64 g, const std::map<u64, mpq_class>& products);
std::map<u64, mpz_class> chi_deconvolution_additive(u64 g, const std::map<u64, mpz_class>& sums);

// Discrete-log table cache bound (moduli of prime-power components).
void set_dlog_table_bound(u64 bound);
u64 dlog_table_bound();

}  // namespace abelphi
