#include <algorithm>
#include <fstream>
#include <numeric>

#include "abelphi/errors.hpp"
#include "abelphi/minus.hpp"
#include "harness.hpp"
#include "json.hpp"

namespace abelphi::harness {

using nlohmann::json;
namespace fs = std::filesystem;

std::pair<u64, u64> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw DomainError("range must look like a..b: " + s);
    try {
        std::size_t n1 = 0, n2 = 0;
        std::string l = s.substr(0, dots), r = s.substr(dots + 2);
        u64 a = std::stoull(l, &n1), b = std::stoull(r, &n2);
        if (n1 != l.size() || n2 != r.size() || l.empty() || r.empty()) throw std::invalid_argument(s);
        if (a < 1 || a > b) throw DomainError("empty range " + s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw DomainError("range must look like a..b: " + s);
    }
}

namespace {

[[noreturn]] void bad(const fs::path& p, const std::string& what) {
    throw FixtureIntegrityError(p.filename().string() + ": " + what);
}

mpz_class to_mpz(const json& j, const fs::path& p, const char* what) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    bad(p, std::string("not an integer in ") + what);
}

mpq_class to_mpq(const json& j, const fs::path& p, const char* what) {
    if (j.is_number_integer() || j.is_number_unsigned()) return mpq_class(to_mpz(j, p, what));
    if (!j.is_string()) bad(p, std::string("not a rational in ") + what);
    try {
        mpq_class q(j.get<std::string>());
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        bad(p, std::string("not a rational in ") + what);
    }
}

template <class T>
T get_num(const json& j, const char* key, const fs::path& p) {
    if (!j.contains(key) || !j[key].is_number_integer()) bad(p, std::string("missing integer field ") + key);
    return j[key].get<T>();
}

std::vector<mpz_class> int_list(const json& j, const fs::path& p, const char* what) {
    if (!j.is_array()) bad(p, std::string(what) + " must be a list");
    std::vector<mpz_class> out;
    for (const auto& x : j) out.push_back(to_mpz(x, p, what));
    return out;
}

std::pair<long, long> valuation_pair(const json& j, const fs::path& p, const char* what) {
    if (!j.is_array() || j.size() != 2) bad(p, std::string(what) + " must be a pair");
    return {j[0].get<long>(), j[1].get<long>()};
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad(path, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

CubicFixture load_cubic_fixture(const fs::path& path) {
    json j = read_json(path);
    CubicFixture fx;
    fx.path = path;
    try {
        if (!j.contains("field") || !j.contains("units")) bad(path, "needs 'field' and 'units'");
        const json& fld = j["field"];
        fx.f = get_num<u64>(fld, "f", path);
        fx.a = get_num<i64>(fld, "a", path);
        fx.b = get_num<i64>(fld, "b", path);
        if (!is_cubic_conductor(fx.f)) bad(path, "f = " + std::to_string(fx.f) + " is not a cyclic cubic conductor");
        mpz_class a = static_cast<long>(fx.a), b = static_cast<long>(fx.b);
        if (fx.b <= 0 || a * a + 27 * b * b != 4 * mpz_class(static_cast<unsigned long>(fx.f)))
            bad(path, "(a, b) does not solve 4f = a^2 + 27 b^2");
        fx.P = IntPolynomial(int_list(fld.at("P"), path, "field.P"));
        IntPolynomial expect;
        try {
            expect = cubic_polynomial(fx.f, fx.a);
        } catch (const DomainError& e) {
            bad(path, e.what());
        }
        if (!(fx.P == expect)) bad(path, "P is not the polynomial of (f, a): expected " + expect.to_string());

        const json& u = j["units"];
        if (!u.contains("epsilon") || !u["epsilon"].is_array() || u["epsilon"].size() != 3) bad(path, "units.epsilon needs 3 entries");
        for (int k = 0; k < 3; ++k) fx.unit.epsilon[k] = to_mpq(u["epsilon"][k], path, "units.epsilon");
        if (u.contains("regulator")) {
            if (!u["regulator"].is_string()) bad(path, "units.regulator must be a decimal string");
            fx.unit.regulator = u["regulator"].get<std::string>();
        }
        fx.unit.precision = u.value("precision", 60u);
        if (fx.unit.precision == 0) bad(path, "units.precision must be positive");
        fx.unit.source = u.value("source", std::string());

        if (j.contains("sigma")) {
            fx.sigma = j["sigma"].get<u64>();
            if (*fx.sigma == 0 || gcd(*fx.sigma, fx.f) != 1) bad(path, "sigma must be a unit mod f");
        }
        if (j.contains("p")) fx.p = j["p"].get<u64>();
        if (j.contains("classgroup")) {
            const json& c = j["classgroup"];
            ClassGroupFixture cg;
            cg.cyc = int_list(c.at("cyc"), path, "classgroup.cyc");
            cg.p = get_num<u64>(c, "p", path);
            cg.exponent_e = get_num<int>(c, "exponent_e", path);
            if (!is_prime(cg.p)) bad(path, "classgroup.p is not prime");
            if (fx.p && *fx.p != cg.p) bad(path, "p and classgroup.p disagree");
            fx.p = cg.p;
            for (const auto& r : c.at("records")) {
                ClassRecord rec;
                rec.h = int_list(r.at("h"), path, "classgroup.records.h");
                rec.sh = int_list(r.at("sh"), path, "classgroup.records.sh");
                rec.q = r.value("q", 0ull);
                if (rec.h.size() != cg.cyc.size() || rec.sh.size() != cg.cyc.size()) bad(path, "class record length differs from cyc");
                for (std::size_t i = 0; i < cg.cyc.size(); ++i)
                    if (rec.h[i] < 0 || rec.h[i] >= cg.cyc[i] || rec.sh[i] < 0 || rec.sh[i] >= cg.cyc[i])
                        bad(path, "class record entries must be reduced mod cyc");
                cg.records.push_back(std::move(rec));
            }
            fx.classgroup = std::move(cg);
        }
        if (j.contains("expected") && !j["expected"].is_null()) {
            const json& e = j["expected"];
            ExpectedBlock eb;
            if (e.contains("index")) eb.index = to_mpz(e["index"], path, "expected.index");
            if (e.contains("alpha_beta")) {
                auto v = int_list(e["alpha_beta"], path, "expected.alpha_beta");
                if (v.size() != 2) bad(path, "expected.alpha_beta must be a pair");
                eb.alpha_beta = EisensteinInt{v[0], v[1]};
            }
            if (e.contains("unit_valuations")) eb.unit_valuations = valuation_pair(e["unit_valuations"], path, "expected.unit_valuations");
            if (e.contains("class_valuations"))
                eb.class_valuations = valuation_pair(e["class_valuations"], path, "expected.class_valuations");
            if (e.contains("torsion")) eb.torsion = int_list(e["torsion"], path, "expected.torsion");
            fx.expected = std::move(eb);
        }
    } catch (const json::exception& e) {
        bad(path, e.what());
    }
    return fx;
}

std::vector<fs::path> expand_fixture_paths(const std::vector<fs::path>& paths) {
    std::vector<fs::path> out;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> here;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".json") here.push_back(e.path());
            std::sort(here.begin(), here.end());
            out.insert(out.end(), here.begin(), here.end());
        } else if (fs::exists(p)) {
            out.push_back(p);
        } else {
            throw DomainError("no such fixture: " + p.string());
        }
    }
    if (out.empty()) throw DomainError("no fixtures given");
    return out;
}

bool ExpectedCheck::all() const {
    return std::all_of(items.begin(), items.end(), [](const auto& x) { return x.second; });
}

namespace {
bool same_multiset(std::pair<long, long> a, std::pair<long, long> b) {
    return (a.first == b.first && a.second == b.second) || (a.first == b.second && a.second == b.first);
}
}  // namespace

ExpectedCheck compare_expected(const ExpectedBlock& e, const CubicVerifyReport& r, u64 p) {
    ExpectedCheck c;
    if (e.index) c.items.emplace_back("index", *e.index == r.unit_side.index);
    if (e.alpha_beta)
        c.items.emplace_back("alpha_beta",
                             e.alpha_beta->norm() == r.ab.ab.norm() && canonical_class(*e.alpha_beta) == canonical_class(r.ab.ab));
    if (e.unit_valuations) c.items.emplace_back("unit_valuations", same_multiset(*e.unit_valuations, r.unit_side.pattern.totals()));
    if (e.class_valuations)
        c.items.emplace_back("class_valuations", r.class_side && same_multiset(*e.class_valuations, r.class_side->totals()));
    if (!e.torsion.empty() && r.torsion) {
        long total = 0;
        bool powers = true;
        for (const auto& t : e.torsion) {
            int v = valuation(t, p);
            mpz_class pv;
            mpz_ui_pow_ui(pv.get_mpz_t(), p, static_cast<unsigned long>(v));
            powers = powers && pv == t;
            total += v;
        }
        c.items.emplace_back("torsion", powers && total == r.torsion->total());
    }
    return c;
}

CubicRun run_cubic_fixture(const CubicFixture& fx, const RunConfig& cfg) {
    CubicRun run;
    run.fixture = fx;
    if (cfg.p && fx.p && *cfg.p != *fx.p && fx.classgroup)
        throw DomainError("--p " + std::to_string(*cfg.p) + " differs from the fixture's class group prime");
    run.p = cfg.p ? *cfg.p : fx.p ? *fx.p : 7;
    CubicVerifyOptions opt;
    opt.digits = cfg.prec_real ? *cfg.prec_real : 60;
    opt.torsion_level = cfg.no_torsion ? 0 : cfg.prec_padic ? *cfg.prec_padic : -1;
    if (fx.expected)
        for (const auto& t : fx.expected->torsion) opt.torsion_exponent = std::max(opt.torsion_exponent, valuation(t, run.p));
    opt.aux_c = cfg.aux_c ? *cfg.aux_c : 0;
    CubicFieldRecord rec = make_cubic_record(fx.f, fx.a, fx.b, opt.digits);
    run.report = verify_main_conjecture_fixture(rec, fx.sigma, fx.unit, fx.classgroup, run.p, opt);
    if (fx.expected) run.check = compare_expected(*fx.expected, run.report, run.p);
    return run;
}

// ---- product formula ----

bool ProductResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& x) { return x.second; });
}

ProductFamily load_product_family(const fs::path& path) {
    json j = read_json(path);
    ProductFamily fam;
    auto lattice = [&](const json& m, const char* what) {
        if (!m.is_object()) bad(path, std::string(what) + " must map divisors to orders");
        std::map<u64, mpz_class> out;
        for (auto it = m.begin(); it != m.end(); ++it) {
            u64 d = 0;
            try {
                d = std::stoull(it.key());
            } catch (const std::logic_error&) {
                bad(path, std::string("bad divisor key in ") + what);
            }
            mpz_class v = to_mpz(it.value(), path, what);
            if (v <= 0) bad(path, std::string("orders must be positive in ") + what);
            out[d] = v;
        }
        return out;
    };
    try {
        fam.name = j.value("name", path.stem().string());
        fam.g = get_num<u64>(j, "g", path);
        if (fam.g == 0) bad(path, "g must be positive");
        fam.orders = lattice(j.at("orders"), "orders");
        if (j.contains("per_chi")) fam.per_chi = lattice(j["per_chi"], "per_chi");
        if (j.contains("per_chi_algebraic")) fam.per_chi_algebraic = lattice(j["per_chi_algebraic"], "per_chi_algebraic");
        if (j.contains("minus_conductor")) fam.minus_conductor = j["minus_conductor"].get<u64>();
    } catch (const json::exception& e) {
        bad(path, e.what());
    }
    for (const auto& [d, v] : fam.orders)
        if (fam.g % d != 0) bad(path, std::to_string(d) + " does not divide g");
    return fam;
}

ProductResult check_product_family(const ProductFamily& fam) {
    ProductResult r;
    std::map<u64, mpq_class> in;
    for (const auto& [d, v] : fam.orders) in[d] = mpq_class(v);
    r.recovered = chi_deconvolution(fam.g, in);

    bool integral = std::all_of(r.recovered.begin(), r.recovered.end(), [](const auto& x) { return x.second.get_den() == 1; });
    r.checks.emplace_back("recovered orders are integers", integral);
    mpq_class prod = 1;
    for (const auto& [d, v] : r.recovered) prod *= v;
    r.checks.emplace_back("#M_K = product over chi", prod == mpq_class(fam.orders.at(fam.g)));

    if (fam.per_chi) {
        bool eq = true;
        for (const auto& [d, v] : r.recovered) {
            auto it = fam.per_chi->find(d);
            mpz_class want = it == fam.per_chi->end() ? mpz_class(1) : it->second;
            eq = eq && v == mpq_class(want);
        }
        r.checks.emplace_back("recovered = listed per-chi orders", eq);
    }
    if (fam.per_chi_algebraic) {
        mpz_class a = 1;
        for (const auto& [d, v] : *fam.per_chi_algebraic) a *= v;
        r.algebraic_product = a;
    }
    if (fam.minus_conductor) {
        const u64 f = *fam.minus_conductor;
        if (!is_prime(f) || (f - 1) % fam.g != 0 || fam.g != f - 1)
            throw DomainError("minus_conductor must be a prime f with g = f - 1");
        bool eq = true;
        for (const auto& chi : rational_orbits(f)) {
            mpz_class comp = 1;
            if (chi.order > 1 && chi.odd()) comp = minus_class_number(chi).class_number;
            r.minus_components[chi.order] = comp;
            eq = eq && r.recovered.at(chi.order) == mpq_class(comp);
        }
        r.checks.emplace_back("recovered = minus class formula components", eq);
    }
    return r;
}

}  // namespace abelphi::harness
