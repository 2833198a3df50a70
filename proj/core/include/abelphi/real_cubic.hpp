#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abelphi/characters.hpp"
#include "abelphi/cyclo.hpp"
#include "abelphi/poly.hpp"
#include "abelphi/real.hpp"
#include "abelphi/stickelberger.hpp"

namespace abelphi {

// c0 + c1 x + c2 x^2 over Q
using QuadraticMap = std::array<mpq_class, 3>;

struct CubicFieldRecord {
    u64 f = 0;
    i64 a = 0, b = 0;
    IntPolynomial P;
    unsigned digits = 60;
    std::vector<Real> roots;   // ascending
    QuadraticMap galois_map;   // x -> sigma(x)
    u64 frobenius = 0;         // sigma acts on mu_f as zeta -> zeta^frobenius
};

// 3-part 1 or 9, squarefree prime-to-3 part with all primes = 1 mod 3
bool is_cubic_conductor(u64 f);
// the defining polynomial for one solution of 4f = a^2 + 27 b^2 (a already sign-normalized)
IntPolynomial cubic_polynomial(u64 f, i64 a);
// all (a, b), b > 0, with the sign normalization applied to a
std::vector<std::pair<i64, i64>> cubic_parameters(u64 f);

CubicFieldRecord make_cubic_record(u64 f, i64 a, i64 b, unsigned digits = 60);
// records for every cyclic cubic field with conductor in [lo, hi], ascending f
std::vector<CubicFieldRecord> enumerate_cubic_conductors(u64 lo, u64 hi, unsigned digits = 60);

std::vector<Real> real_roots(const IntPolynomial& P, unsigned digits);
QuadraticMap recover_galois_map(const IntPolynomial& P, unsigned digits = 60);
// P(g(x)) = 0 mod P and g(g(g(x))) = x mod P, exactly
bool verify_galois_map(const IntPolynomial& P, const QuadraticMap& g);
QuadraticMap compose_mod(const IntPolynomial& P, const QuadraticMap& outer, const QuadraticMap& inner);

u64 frobenius_exponent(const CubicFieldRecord& rec, u64 bound = 200000);
// make the record's sigma act as zeta -> zeta^sigma (replacing g by g o g if needed)
void align_sigma(CubicFieldRecord& rec, u64 sigma);

// order-3 character of conductor f cutting out the record's field, with psi(frobenius) = zeta_3
ResidueCharacter cubic_character(const CubicFieldRecord& rec, u64 prime_bound = 100000);

struct CyclotomicLogs {
    Real L1, L2;
    bool prime_conductor = false;
    Real regulator() const { return L1 * L1 + L1 * L2 + L2 * L2; }
};
CyclotomicLogs cyclotomic_unit_logs(const CubicFieldRecord& rec, const ResidueCharacter& psi, unsigned digits);

struct UnitFixture {
    std::array<mpq_class, 3> epsilon;     // on 1, x, x^2
    std::optional<std::string> regulator;
    unsigned precision = 60;
    std::string source;
};

struct UnitLogs {
    Real l1, l2;      // log |eps(rho)|, log |eps^sigma(rho)|, rho the smallest root
    Real reg;         // supplied regulator if any, else l1^2 + l1 l2 + l2^2
    std::optional<Real> quotient;   // (l1^2 + l1 l2 + l2^2) / supplied regulator
    mpq_class norm;
};
// exact norm check (FixtureIntegrityError unless +-1); no tolerance gate on the quotient here
UnitLogs unit_logs(const CubicFieldRecord& rec, const UnitFixture& unit, unsigned digits);
// throws PrecisionError unless |quotient - 1| < 1e-20
void check_regulator_quotient(const UnitLogs& u);

struct AlphaBeta {
    EisensteinInt ab;
    Real alpha, beta;     // before rounding
    Real residual;        // max distance to the rounded integers
    Real index;           // RegC / Reg, with the 1/3 for prime conductors
};
// (alpha, beta) with eta = eps^(alpha + beta sigma); PrecisionError when the residual reaches 1e-6
AlphaBeta solve_alpha_beta(const UnitLogs& unit, const CyclotomicLogs& logs);

// per prime above p (p = 1 mod 3): exponents n_i with the component = prod Z_p[j]/P^{n_i}
struct PhiDecomposition {
    std::array<std::vector<long>, 2> exponents;
    std::string provenance;
    long total(int i) const;
    std::pair<long, long> totals() const { return {total(0), total(1)}; }
};

struct UnitIndexReport {
    mpz_class index;
    PhiDecomposition pattern;
};
UnitIndexReport unit_index_and_valuations(const EisensteinInt& ab, u64 p);

struct ClassRecord {
    std::vector<mpz_class> h, sh;
    u64 q = 0;
};
struct ClassGroupFixture {
    std::vector<mpz_class> cyc;
    u64 p = 0;
    int exponent_e = 0;
    std::vector<ClassRecord> records;
};
// throws FixtureIntegrityError on records that do not generate H_p or do not carry a sigma of order 3
PhiDecomposition class_phi_structure(const ClassGroupFixture& fix, u64 p);

enum class MatchStatus { match, mismatch, convention_swap, no_class_data };
std::string to_string(MatchStatus s);

struct CubicVerifyOptions {
    unsigned digits = 60;
    int torsion_level = 0;   // 0 skips the torsion part, -1 derives it from torsion_exponent
    int torsion_exponent = 1;
    u64 aux_c = 0;
};

struct CubicVerifyReport {
    CubicFieldRecord rec;
    unsigned digits_used = 0;
    std::vector<unsigned> digits_rejected;
    UnitLogs unit;
    CyclotomicLogs logs;
    AlphaBeta ab;
    EisensteinInt ab_canonical;
    UnitIndexReport unit_side;
    std::optional<PhiDecomposition> class_side;
    MatchStatus status = MatchStatus::no_class_data;
    std::optional<TorsionReport> torsion;
};

// precision ladder: the requested digits, then 100 and 150 above it
std::vector<unsigned> precision_ladder(unsigned start);

CubicVerifyReport verify_main_conjecture_fixture(const CubicFieldRecord& rec, std::optional<u64> sigma, const UnitFixture& unit,
                                                 const std::optional<ClassGroupFixture>& cls, u64 p,
                                                 const CubicVerifyOptions& opt = {});

}  // namespace abelphi
