#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "abelphi/errors.hpp"
#include "harness.hpp"

using namespace abelphi;
using namespace abelphi::harness;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = ABELPHI_FIXTURE_DIR;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "abelphi");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Range, Parsing) {
    EXPECT_EQ(parse_range("1..400"), (std::pair<u64, u64>{1, 400}));
    EXPECT_EQ(parse_range("7..7"), (std::pair<u64, u64>{7, 7}));
    EXPECT_THROW(parse_range("9..3"), DomainError);
    EXPECT_THROW(parse_range("abc"), DomainError);
    EXPECT_THROW(parse_range("1..x"), DomainError);
    EXPECT_THROW(parse_range(""), DomainError);
}

TEST(FixtureLoading, RejectsInconsistentData) {
    EXPECT_THROW(load_cubic_fixture(kFixtures / "negative" / "f313_bad_polynomial.json"), FixtureIntegrityError);
    EXPECT_THROW(load_cubic_fixture(kFixtures / "missing.json"), DomainError);
    auto fx = load_cubic_fixture(kFixtures / "cubic" / "f313.json");
    EXPECT_EQ(fx.f, 313u);
    ASSERT_TRUE(fx.expected);
    EXPECT_EQ(fx.expected->index, 7);
}

TEST(FixtureLoading, DirectoryExpansionIsSorted) {
    auto paths = expand_fixture_paths({kFixtures / "cubic"});
    ASSERT_EQ(paths.size(), 17u);
    EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
}

TEST(ExitCodes, Commands) {
    EXPECT_EQ(invoke({"minus", "--f", "47"}).code, 0);
    EXPECT_EQ(invoke({"selftest"}).code, 0);
    EXPECT_EQ(invoke({"no-such-command"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"minus", "--f", "47", "--p", "8"}).code, 1);
    EXPECT_EQ(invoke({"stickelberger", "--f", "5", "--c", "5"}).code, 1);
    EXPECT_EQ(invoke({"cubic-enumerate", "--range", "5..1"}).code, 1);
    EXPECT_EQ(invoke({"cubic-verify", (kFixtures / "negative" / "f313_sigma_inconsistent.json").string()}).code, 2);
    EXPECT_EQ(invoke({"cubic-verify", (kFixtures / "negative" / "f313_bad_polynomial.json").string()}).code, 2);
    EXPECT_EQ(invoke({"product-check", (kFixtures / "negative" / "family_incomplete.json").string()}).code, 1);
    auto ok = invoke({"cubic-verify", "--no-torsion", (kFixtures / "cubic" / "f313.json").string()});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("MATCH"), std::string::npos);
}

TEST(Output, JsonIsDeterministic) {
    auto a = invoke({"minus", "--f", "47", "--format", "json"});
    auto b = invoke({"minus", "--f", "47", "--format", "json"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = invoke({"cubic-enumerate", "--range", "1..400", "--format", "json", "--jobs", "1"});
    auto d = invoke({"cubic-enumerate", "--range", "1..400", "--format", "json", "--jobs", "8"});
    EXPECT_EQ(c.out, d.out);
}

TEST(ProductFamilies, ShippedFamiliesPass) {
    for (auto name : {"trivial.json", "mu23_minus.json", "inert_4409_19.json"}) {
        auto fam = load_product_family(kFixtures / "families" / name);
        auto r = check_product_family(fam);
        EXPECT_TRUE(r.pass()) << name;
    }
    auto inert = check_product_family(load_product_family(kFixtures / "families" / "inert_4409_19.json"));
    ASSERT_TRUE(inert.algebraic_product);
    EXPECT_EQ(*inert.algebraic_product, 81);
    auto mu23 = check_product_family(load_product_family(kFixtures / "families" / "mu23_minus.json"));
    EXPECT_EQ(mu23.recovered.at(2), 3);
    EXPECT_EQ(mu23.recovered.at(22), 1);
}

TEST(ProductFamilies, IncompleteLatticeIsRejected) {
    auto fam = load_product_family(kFixtures / "negative" / "family_incomplete.json");
    EXPECT_THROW(check_product_family(fam), IncompleteLatticeError);
}

TEST(ProductFamilies, WrongTopOrderFails) {
    ProductFamily fam;
    fam.name = "tampered";
    fam.g = 6;
    fam.orders = {{1, 1}, {2, 3}, {3, 1}, {6, 4}};
    auto r = check_product_family(fam);
    // 4 / 3 is not an integer component
    EXPECT_FALSE(r.pass());
}
