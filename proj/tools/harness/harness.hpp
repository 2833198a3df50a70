#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abelphi/real_cubic.hpp"

namespace abelphi::harness {

enum class Format { human, json };

enum ExitCode : int { ok = 0, usage = 1, integrity = 2, internal = 3 };

struct RunConfig {
    std::string command;
    std::optional<u64> p;
    std::optional<int> prec_padic;
    std::optional<unsigned> prec_real;
    std::optional<std::pair<u64, u64>> range;
    std::vector<std::filesystem::path> fixtures;
    Format format = Format::human;
    std::optional<u64> aux_c;
    std::optional<u64> f;
    std::optional<u64> order;
    bool no_torsion = false;
    unsigned jobs = 0;   // 0: hardware concurrency
};

// "a..b"; DomainError on anything else or an empty range
std::pair<u64, u64> parse_range(const std::string& s);

// ---- cubic fixtures ----

struct ExpectedBlock {
    std::optional<mpz_class> index;
    std::optional<EisensteinInt> alpha_beta;
    std::optional<std::pair<long, long>> unit_valuations, class_valuations;
    std::vector<mpz_class> torsion;   // cyclic factors of the p-torsion group
};

struct CubicFixture {
    std::filesystem::path path;
    u64 f = 0;
    i64 a = 0, b = 0;
    IntPolynomial P;
    UnitFixture unit;
    std::optional<u64> sigma;
    std::optional<ClassGroupFixture> classgroup;
    std::optional<u64> p;
    std::optional<ExpectedBlock> expected;
};

// FixtureIntegrityError on malformed or self-contradicting content
CubicFixture load_cubic_fixture(const std::filesystem::path& path);
// a directory expands to its *.json files in name order
std::vector<std::filesystem::path> expand_fixture_paths(const std::vector<std::filesystem::path>& paths);

struct ExpectedCheck {
    std::vector<std::pair<std::string, bool>> items;
    bool all() const;
};

struct CubicRun {
    CubicFixture fixture;
    u64 p = 7;
    CubicVerifyReport report;
    std::optional<ExpectedCheck> check;
};

CubicRun run_cubic_fixture(const CubicFixture& fx, const RunConfig& cfg);
ExpectedCheck compare_expected(const ExpectedBlock& e, const CubicVerifyReport& r, u64 p);

// ---- product formula families ----

struct ProductFamily {
    std::string name;
    u64 g = 1;
    std::map<u64, mpz_class> orders;                 // #M_{k_d} per divisor d of g
    std::optional<std::map<u64, mpz_class>> per_chi;  // expected #M^ar_chi, chi of order d
    std::optional<std::map<u64, mpz_class>> per_chi_algebraic;
    std::optional<u64> minus_conductor;               // per-chi orders from the minus class formula
};

struct ProductResult {
    std::map<u64, mpq_class> recovered;
    std::map<u64, mpz_class> minus_components;
    std::vector<std::pair<std::string, bool>> checks;
    std::optional<mpz_class> algebraic_product;
    bool pass() const;
};

ProductFamily load_product_family(const std::filesystem::path& path);
// IncompleteLatticeError when a divisor of g has no entry
ProductResult check_product_family(const ProductFamily& fam);

// ---- commands; each returns an exit code ----

int cmd_minus(const RunConfig& cfg, std::ostream& out);
int cmd_stickelberger(const RunConfig& cfg, std::ostream& out);
int cmd_torsion(const RunConfig& cfg, std::ostream& out);
int cmd_cubic_enumerate(const RunConfig& cfg, std::ostream& out);
int cmd_cubic_verify(const RunConfig& cfg, std::ostream& out);
int cmd_product_check(const RunConfig& cfg, std::ostream& out);
int cmd_selftest(const RunConfig& cfg, std::ostream& out);

// full command line; errors are reported on err and mapped to exit codes
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int exit_code_for(const std::exception& e);

}  // namespace abelphi::harness
