#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "abelphi/errors.hpp"
#include "abelphi/minus.hpp"
#include "abelphi/padic.hpp"
#include "abelphi/stickelberger.hpp"
#include "harness.hpp"
#include "json.hpp"

namespace abelphi::harness {

using ojson = nlohmann::ordered_json;

namespace {

ojson zj(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

ojson qj(const mpq_class& q) {
    if (q.get_den() == 1) return zj(q.get_num());
    return q.get_str();
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = " ") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::string list_str(const std::vector<long>& v) { return "[" + join(v, ",") + "]"; }

void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

u64 require_f(const RunConfig& cfg) {
    if (!cfg.f) throw DomainError(cfg.command + " needs --f");
    return *cfg.f;
}

std::vector<RationalCharacter> characters_of_conductor(u64 f, std::optional<u64> order) {
    std::vector<RationalCharacter> out;
    for (auto& chi : rational_orbits(f))
        if (chi.conductor == f && chi.order > 1 && (!order || chi.order == *order)) out.push_back(chi);
    return out;
}

std::string ab_str(const EisensteinInt& x) { return "(" + x.alpha.get_str() + "," + x.beta.get_str() + ")"; }

}  // namespace

// ---- minus ----

int cmd_minus(const RunConfig& cfg, std::ostream& out) {
    const u64 f = require_f(cfg);
    if (f <= 2) throw DomainError("minus: no odd characters for f <= 2");
    std::vector<RationalCharacter> odd;
    for (auto& chi : characters_of_conductor(f, cfg.order))
        if (chi.odd()) odd.push_back(chi);
    if (odd.empty()) throw DomainError("minus: no odd characters of conductor " + std::to_string(f));
    std::vector<u64> primes;
    if (cfg.p) primes.push_back(*cfg.p);

    ojson arr = ojson::array();
    for (const auto& chi : odd) {
        MinusClassReport r = minus_class_number(chi, primes);
        if (cfg.format == Format::human) {
            out << "f=" << f << "  chi of order " << chi.order << "  orbit size " << chi.orbit.size() << "  alpha=" << r.alpha
                << "  w=" << r.w << "\n";
            out << "  prod(-1/2 B1(psi^-1)) = " << r.product.get_str() << "\n";
            out << "  component of the minus class number: " << r.class_number.get_str() << "\n";
            for (const auto& [p, entries] : r.per_phi) {
                for (const auto& e : entries) {
                    out << "  p=" << p << "  phi of degree " << e.orbit.size() << ": valuation " << e.exponent << (e.capped ? "+" : "")
                        << "  m_an " << e.m_an;
                    if (!e.note.empty()) out << "  (" << e.note << ")";
                    out << "\n";
                }
                auto it = r.alpha_corrected_total.find(p);
                if (it != r.alpha_corrected_total.end()) out << "  p=" << p << "  total with 2^alpha: " << it->second << "\n";
            }
        } else {
            ojson j;
            j["f"] = f;
            j["order"] = chi.order;
            j["orbit"] = chi.orbit;
            j["alpha"] = r.alpha;
            j["w"] = r.w;
            j["product"] = qj(r.product);
            j["class_number"] = zj(r.class_number);
            ojson phis = ojson::array();
            for (const auto& [p, entries] : r.per_phi)
                for (const auto& e : entries)
                    phis.push_back({{"p", p}, {"orbit", e.orbit}, {"valuation", e.exponent}, {"m_an", e.m_an}, {"capped", e.capped},
                                    {"note", e.note}});
            j["per_phi"] = phis;
            arr.push_back(j);
        }
    }
    if (cfg.format == Format::json) emit(out, arr);
    return ok;
}

// ---- stickelberger ----

int cmd_stickelberger(const RunConfig& cfg, std::ostream& out) {
    const u64 f = require_f(cfg);
    if (f < 3) throw DomainError("stickelberger: f must be at least 3");
    u64 c = 0;
    if (cfg.aux_c) {
        c = *cfg.aux_c;
        if (c == 0 || c % 2 == 0 || gcd(c, f) != 1) throw DomainError("stickelberger: --c must be odd, positive and prime to f");
    } else {
        for (c = 3; gcd(c, f) != 1; c = next_prime(c)) {
        }
    }
    auto chars = characters_of_conductor(f, cfg.order);
    if (chars.empty()) throw DomainError("stickelberger: no character of conductor " + std::to_string(f));

    ojson arr = ojson::array();
    for (const auto& chi : chars) {
        CyclicFieldSelector sel = make_selector(chi);
        StickelbergerElement B = stickelberger_element(sel);
        TwistResult t = twist_c(B, static_cast<i64>(c));
        if (!t.Bc.is_integral()) throw VerificationError("twist is not integral for f=" + std::to_string(f));
        if (!t.matches_product) throw VerificationError("twist differs from (1 - c s_c^-1) B for f=" + std::to_string(f));
        u64 lam = lambda_K(sel);
        auto gens = ideal_A_generators(sel);
        std::vector<AnnihilatorReport> ann;
        if (cfg.p && chi.odd())
            for (const auto& phi : padic_orbits(chi, *cfg.p)) ann.push_back(annihilator_minus(phi));

        if (cfg.format == Format::human) {
            out << "f=" << f << "  chi of order " << chi.order << (chi.odd() ? " (imaginary)" : " (real)") << "  s = (K/" << sel.generator
                << ")\n";
            out << "  B = " << B.B.to_string() << "\n";
            if (c == 1)
                out << "  c = 1: the twist is the zero element\n";
            else
                out << "  twist c=" << c << ": " << t.Bc.to_string() << "  integral, "
                    << (chi.odd() ? (t.antisymmetric ? "antisymmetric" : "NOT antisymmetric") : "real field") << "\n";
            if (t.half) out << "  Bc = B'(1 - s^" << sel.conjugation_exponent() << "), B' = " << t.half->to_string() << "\n";
            out << "  Lambda = " << lam << "\n";
            std::vector<std::string> gs;
            for (const auto& g : gens) gs.push_back(g.to_string());
            out << "  ideal generators: " << join(gs, ", ") << "\n";
            for (const auto& a : ann)
                out << "  p=" << *cfg.p << "  phi " << list_str(std::vector<long>(a.orbit.begin(), a.orbit.end())) << ": smoothing "
                    << to_string(a.smoothing) << ", B1 valuation " << a.bernoulli_valuation << "\n";
        } else {
            ojson j;
            j["f"] = f;
            j["order"] = chi.order;
            j["odd"] = chi.odd();
            j["generator"] = sel.generator;
            j["B"] = B.B.to_string();
            j["c"] = c;
            j["twist"] = t.Bc.to_string();
            j["twist_zero"] = t.Bc.is_zero();
            j["antisymmetric"] = t.antisymmetric;
            if (t.half) j["half"] = t.half->to_string();
            j["lambda"] = lam;
            ojson gj = ojson::array();
            for (const auto& g : gens) gj.push_back(g.to_string());
            j["ideal_generators"] = gj;
            ojson aj = ojson::array();
            for (const auto& a : ann)
                aj.push_back({{"orbit", a.orbit}, {"smoothing", to_string(a.smoothing)}, {"lambda", a.lambda},
                              {"bernoulli_valuation", a.bernoulli_valuation}});
            j["annihilators"] = aj;
            arr.push_back(j);
        }
    }
    if (cfg.format == Format::json) emit(out, arr);
    return ok;
}

// ---- torsion ----

namespace {

ojson torsion_json(const TorsionReport& t) {
    ojson per = ojson::array();
    for (const auto& x : t.per_phi)
        per.push_back({{"orbit", x.orbit}, {"valuation", x.exponent}, {"m_an", x.m_an}, {"v_psiA", x.v_psiA}, {"v_unit", x.v_unit}});
    ojson j{{"p", t.p}, {"n", t.n}, {"c", t.c}, {"wc", t.wc}, {"per_phi", per}, {"total", t.total()}};
    if (t.p2_flag) j["single_half_total"] = t.single_half_total;
    return j;
}

std::string torsion_line(const TorsionReport& t) {
    std::vector<long> v;
    for (const auto& x : t.per_phi) v.push_back(x.exponent);
    std::ostringstream os;
    os << t.p << "-torsion valuations (n=" << t.n << ", c=" << t.c << "): " << join(v, "  ") << "   total " << t.total();
    if (t.p2_flag) os << "  (one factor 1/2 overall: " << t.single_half_total << ")";
    return os.str();
}

}  // namespace

int cmd_torsion(const RunConfig& cfg, std::ostream& out) {
    const u64 f = require_f(cfg);
    if (!cfg.p) throw DomainError("torsion needs --p");
    std::vector<RationalCharacter> even;
    for (auto& chi : characters_of_conductor(f, cfg.order))
        if (!chi.odd()) even.push_back(chi);
    if (even.empty()) throw DomainError("torsion: no nontrivial even character of conductor " + std::to_string(f));
    ojson arr = ojson::array();
    for (const auto& chi : even) {
        // without --prec-padic: exponent bound 1, the stable search escalates from there
        const int n = cfg.prec_padic ? *cfg.prec_padic : torsion_level(chi.representative, *cfg.p, 1);
        TorsionReport t = torsion_valuations_stable(chi, *cfg.p, n, cfg.aux_c.value_or(0));
        if (cfg.format == Format::human) {
            out << "f=" << f << "  chi of order " << chi.order << "\n  " << torsion_line(t) << "\n";
        } else {
            ojson j = torsion_json(t);
            j["f"] = f;
            j["order"] = chi.order;
            arr.push_back(j);
        }
    }
    if (cfg.format == Format::json) emit(out, arr);
    return ok;
}

// ---- cubic-enumerate ----

namespace {
std::string map_str(const QuadraticMap& g) {
    static const char* mono[3] = {"", "x", "x^2"};
    std::string s;
    for (int i = 2; i >= 0; --i) {
        if (g[i] == 0) continue;
        mpq_class a = abs(g[i]);
        std::string coef = (a == 1 && i > 0) ? "" : a.get_str() + (i > 0 ? "*" : "");
        if (s.empty()) s = (g[i] < 0 ? "-" : "") + coef + mono[i];
        else s += (g[i] < 0 ? " - " : " + ") + coef + mono[i];
    }
    return s.empty() ? "0" : s;
}
ojson map_json(const QuadraticMap& g) { return ojson::array({qj(g[0]), qj(g[1]), qj(g[2])}); }
}  // namespace

int cmd_cubic_enumerate(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.range) throw DomainError("cubic-enumerate needs --range a..b");
    auto [lo, hi] = *cfg.range;
    const unsigned digits = cfg.prec_real.value_or(60);
    unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    const u64 span = hi - lo + 1;
    const u64 chunks = std::min<u64>(span, jobs * 4ull);
    std::vector<std::future<std::vector<CubicFieldRecord>>> parts;
    for (u64 i = 0; i < chunks; ++i) {
        u64 a = lo + span * i / chunks, b = lo + span * (i + 1) / chunks - 1;
        parts.push_back(std::async(std::launch::async, [a, b, digits] { return enumerate_cubic_conductors(a, b, digits); }));
    }
    ojson arr = ojson::array();
    std::size_t count = 0;
    for (auto& part : parts)
        for (const auto& rec : part.get()) {
            ++count;
            if (cfg.format == Format::human) {
                out << "f=" << rec.f << "  (a,b)=(" << rec.a << "," << rec.b << ")  P=" << rec.P.to_string() << "  sigma(x)=" << map_str(rec.galois_map)
                    << "  frobenius=" << rec.frobenius << "\n";
            } else {
                ojson P = ojson::array();
                for (const auto& c : rec.P.coeffs()) P.push_back(zj(c));
                arr.push_back({{"f", rec.f}, {"a", rec.a}, {"b", rec.b}, {"P", P}, {"galois_map", map_json(rec.galois_map)},
                               {"frobenius", rec.frobenius}});
            }
        }
    if (cfg.format == Format::human) out << count << " cyclic cubic fields with conductor in [" << lo << ", " << hi << "]\n";
    else emit(out, arr);
    return ok;
}

// ---- cubic-verify ----

namespace {

std::string pattern_str(const std::vector<long>& v) { return list_str(v); }

void render_cubic_human(const CubicRun& run, std::ostream& out) {
    const auto& fx = run.fixture;
    const auto& r = run.report;
    out << "P=" << fx.P.to_string() << "  f=" << fx.f << "  (a,b)=(" << fx.a << "," << fx.b << ")\n";
    if (fx.classgroup) {
        std::vector<std::string> cyc;
        for (const auto& c : fx.classgroup->cyc) cyc.push_back(c.get_str());
        out << "Class group=[" << join(cyc, ",") << "]";
    } else {
        out << "Class group=(no data)";
    }
    out << "  sigma=" << r.rec.frobenius << "\n";
    out << "(alpha,beta)=" << ab_str(r.ab.ab) << ", Index [E_K:C_K]=" << r.unit_side.index.get_str() << "\n";
    out << "canonical (alpha,beta)=" << ab_str(r.ab_canonical) << "  real digits " << r.digits_used;
    if (!r.digits_rejected.empty()) out << " (rejected " << join(r.digits_rejected) << ")";
    out << "\n";
    auto [u1, u2] = r.unit_side.pattern.totals();
    out << u1 << "  " << u2 << "   P1 and P2-valuations for alpha+j*beta\n";
    if (r.class_side) {
        auto [c1, c2] = r.class_side->totals();
        out << c1 << "  " << c2 << "   P1 and P2-valuations for  H\n";
        out << "H components: P1 " << pattern_str(r.class_side->exponents[0]) << "  P2 " << pattern_str(r.class_side->exponents[1]) << "\n";
    }
    if (r.torsion) out << torsion_line(*r.torsion) << "\n";
    out << "status: " << to_string(r.status) << "\n";
    if (run.check) {
        std::vector<std::string> items;
        for (const auto& [k, v] : run.check->items) items.push_back(k + (v ? " ok" : " FAILED"));
        out << "expected: " << (items.empty() ? std::string("nothing listed") : join(items, ", ")) << "\n";
    }
}

ojson render_cubic_json(const CubicRun& run) {
    const auto& fx = run.fixture;
    const auto& r = run.report;
    ojson j;
    j["fixture"] = fx.path.filename().string();
    j["f"] = fx.f;
    j["a"] = fx.a;
    j["b"] = fx.b;
    ojson P = ojson::array();
    for (const auto& c : fx.P.coeffs()) P.push_back(zj(c));
    j["P"] = P;
    j["p"] = run.p;
    j["sigma"] = r.rec.frobenius;
    j["galois_map"] = map_json(r.rec.galois_map);
    j["real_digits"] = r.digits_used;
    j["rejected_digits"] = r.digits_rejected;
    j["alpha_beta"] = {zj(r.ab.ab.alpha), zj(r.ab.ab.beta)};
    j["alpha_beta_canonical"] = {zj(r.ab_canonical.alpha), zj(r.ab_canonical.beta)};
    j["index"] = zj(r.unit_side.index);
    auto [u1, u2] = r.unit_side.pattern.totals();
    j["unit_valuations"] = {u1, u2};
    if (r.class_side) {
        auto [c1, c2] = r.class_side->totals();
        j["class_valuations"] = {c1, c2};
        j["class_structure"] = {r.class_side->exponents[0], r.class_side->exponents[1]};
    }
    j["status"] = to_string(r.status);
    if (r.torsion) j["torsion"] = torsion_json(*r.torsion);
    if (run.check) {
        ojson c = ojson::object();
        for (const auto& [k, v] : run.check->items) c[k] = v;
        j["expected_check"] = c;
    }
    return j;
}

}  // namespace

int cmd_cubic_verify(const RunConfig& cfg, std::ostream& out) {
    auto paths = expand_fixture_paths(cfg.fixtures);
    int code = ok;
    ojson arr = ojson::array();
    for (const auto& path : paths) {
        int here = ok;
        try {
            if (cfg.format == Format::human) out << "== " << path.filename().string() << "\n";
            CubicRun run = run_cubic_fixture(load_cubic_fixture(path), cfg);
            if (run.report.status == MatchStatus::mismatch || (run.check && !run.check->all())) here = internal;
            if (cfg.format == Format::human) {
                render_cubic_human(run, out);
                out << "\n";
            } else {
                arr.push_back(render_cubic_json(run));
            }
        } catch (const std::exception& e) {
            here = exit_code_for(e);
            if (cfg.format == Format::human)
                out << "error: " << e.what() << "\n\n";
            else
                arr.push_back({{"fixture", path.filename().string()}, {"error", e.what()}, {"exit", here}});
        }
        code = std::max(code, here);
    }
    if (cfg.format == Format::json) emit(out, arr);
    return code;
}

// ---- product-check ----

int cmd_product_check(const RunConfig& cfg, std::ostream& out) {
    auto paths = expand_fixture_paths(cfg.fixtures);
    int code = ok;
    ojson arr = ojson::array();
    for (const auto& path : paths) {
        ProductFamily fam = load_product_family(path);
        ProductResult r = check_product_family(fam);
        if (!r.pass()) code = internal;
        if (cfg.format == Format::human) {
            out << fam.name << " (g=" << fam.g << ")\n";
            std::vector<std::string> parts;
            for (const auto& [d, v] : r.recovered) parts.push_back("chi_" + std::to_string(d) + "=" + v.get_str());
            out << "  #M_K = " << fam.orders.at(fam.g).get_str() << " = " << join(parts, " * ") << "\n";
            if (r.algebraic_product) out << "  algebraic product " << r.algebraic_product->get_str() << " (informational)\n";
            for (const auto& [k, v] : r.checks) out << "  " << (v ? "pass" : "FAIL") << "  " << k << "\n";
        } else {
            ojson rec = ojson::object();
            for (const auto& [d, v] : r.recovered) rec[std::to_string(d)] = qj(v);
            ojson checks = ojson::object();
            for (const auto& [k, v] : r.checks) checks[k] = v;
            ojson j{{"name", fam.name}, {"g", fam.g}, {"total", zj(fam.orders.at(fam.g))}, {"per_chi", rec}, {"checks", checks}, {"pass", r.pass()}};
            if (r.algebraic_product) j["algebraic_product"] = zj(*r.algebraic_product);
            arr.push_back(j);
        }
    }
    if (cfg.format == Format::json) emit(out, arr);
    return code;
}

// ---- selftest ----

int cmd_selftest(const RunConfig&, std::ostream& out) {
    std::vector<std::pair<std::string, bool>> checks;
    auto attempt = [&](const std::string& name, auto fn) {
        bool okay = false;
        try {
            okay = fn();
        } catch (const std::exception&) {
        }
        checks.emplace_back(name, okay);
    };
    attempt("minus class component 139 for f=47", [] {
        for (auto& chi : rational_orbits(47))
            if (chi.order == 46) return minus_class_number(chi).class_number == 139;
        return false;
    });
    attempt("Lambda = 47 for Q(mu_47)", [] {
        for (auto& chi : rational_orbits(47))
            if (chi.order == 46) return lambda_K(make_selector(chi)) == 47;
        return false;
    });
    attempt("c=3 twist for Q(mu_5) is antisymmetric", [] {
        for (auto& chi : rational_orbits(5))
            if (chi.order == 4) {
                auto t = twist_c(stickelberger_element(make_selector(chi)), 3);
                return t.Bc.is_integral() && t.antisymmetric && t.matches_product;
            }
        return false;
    });
    attempt("7 splits in Z[j] as (x-2)(x-4)", [] {
        auto ctx = build_padic_context(3, 7, 1);
        return ctx.size() == 2 && ctx.factors[0].coeff(0) == 5 && ctx.factors[1].coeff(0) == 3;
    });
    attempt("cubic field of conductor 313", [] {
        auto rec = make_cubic_record(313, 35, 1, 40);
        return verify_galois_map(rec.P, rec.galois_map) && rec.frobenius == 4;
    });
    attempt("deconvolution of divisor products", [] {
        auto r = chi_deconvolution(6, {{1, 1}, {2, 3}, {3, 1}, {6, 6}});
        return r.at(2) == 3 && r.at(6) == 2 && r.at(3) == 1;
    });
    bool all = true;
    for (const auto& [k, v] : checks) {
        out << (v ? "PASS  " : "FAIL  ") << k << "\n";
        all = all && v;
    }
    return all ? ok : internal;
}

// ---- command line ----

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const FixtureIntegrityError*>(&e)) return integrity;
    if (dynamic_cast<const DomainError*>(&e)) return usage;
    if (dynamic_cast<const CLI::ParseError*>(&e)) return usage;
    return internal;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification workbench for abelian fields: minus parts, Stickelberger elements, cyclic cubic fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string range, format = "human";
    std::vector<std::string> fixtures;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime p");
        sub->add_option("--prec-padic", cfg.prec_padic, "p-adic level n")->check(CLI::Range(1, 40));
        sub->add_option("--prec-real", cfg.prec_real, "real precision in decimal digits")->check(CLI::Range(20u, 2000u));
        sub->add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
        sub->add_option("--c", cfg.aux_c, "auxiliary integer c");
        sub->add_option("--f", cfg.f, "conductor");
        sub->add_option("--order", cfg.order, "only characters of this order");
    };
    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&, std::ostream&);
    };
    const Cmd cmds[] = {
        {"minus", "minus class number components per odd character of conductor f", cmd_minus},
        {"stickelberger", "Stickelberger element, c-twist, Lambda and annihilators", cmd_stickelberger},
        {"torsion", "p-adic torsion valuations from Stickelberger limits", cmd_torsion},
        {"cubic-enumerate", "cyclic cubic fields with conductor in a range", cmd_cubic_enumerate},
        {"cubic-verify", "unit and class phi-structures of cubic fixtures", cmd_cubic_verify},
        {"product-check", "product formula over a subfield lattice family", cmd_product_check},
        {"selftest", "quick internal checks", cmd_selftest},
    };
    std::vector<std::pair<CLI::App*, const Cmd*>> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        common(sub);
        if (std::string(c.name) == "cubic-enumerate") {
            sub->add_option("--range", range, "conductor range a..b")->required();
            sub->add_option("--jobs", cfg.jobs, "worker threads");
        }
        if (std::string(c.name) == "cubic-verify" || std::string(c.name) == "product-check") {
            sub->add_option("--fixtures,fixtures", fixtures, "fixture files or directories")->required();
        }
        if (std::string(c.name) == "cubic-verify") sub->add_flag("--no-torsion", cfg.no_torsion, "skip the torsion part");
        subs.emplace_back(sub, &c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }
    try {
        cfg.format = format == "json" ? Format::json : Format::human;
        for (const auto& f : fixtures) cfg.fixtures.emplace_back(f);
        if (!range.empty()) cfg.range = parse_range(range);
        if (cfg.p && !is_prime(*cfg.p)) throw DomainError("--p must be prime");
        for (const auto& [sub, c] : subs)
            if (sub->parsed()) {
                cfg.command = c->name;
                return c->fn(cfg, out);
            }
    } catch (const std::exception& e) {
        int code = exit_code_for(e);
        err << "error: " << e.what() << "\n";
        return code;
    }
    return usage;
}

}  // namespace abelphi::harness
