// Command-line front end: local classification, cubic invariants, exact
// densities, Fourier case-value checks, quartic embeddings, Euler constants
// the conductor census.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecred/census.hpp"
#include "ecred/charsum.hpp"
#include "ecred/cubic_ring.hpp"
#include "ecred/density.hpp"
#include "ecred/euler.hpp"
#include "ecred/quartic.hpp"
#include "ecred/shape.hpp"

using namespace ecred;
using nlohmann::json;

namespace {

std::vector<Int> parse_ints(const std::string& s) {
    std::vector<Int> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty())
                out.emplace_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

// config file: `key = value` lines, '#' comments
void apply_config(const std::string& path, uint64_t& node_budget, long& precision) {
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = strip(line.substr(0, eq)), val = strip(line.substr(eq + 1));
        if (key == "node_budget")
            node_budget = std::stoull(val);
        else if (key == "precision_bits")
            precision = std::stol(val);
    }
}

int run_classify(const std::string& curve, const std::string& prime, bool as_json) {
    std::vector<Int> ab = parse_ints(curve);
    if (ab.size() != 2)
        throw CLI::ValidationError("--curve", "expected A,B");
    WeierstrassCurve E{ab[0], ab[1]};
    if (!prime.empty()) {
        Int p(prime);
        KodairaSymbol sym = classify_by_valuations(E, p);
        LocalData ld = local_data(sym, p);
        TranslationResult tr = classify_by_translation({Int(0), E.A, E.B}, p);
        if (!(tr.symbol == sym))
            throw std::logic_error("classifier disagreement");
        if (as_json) {
            json j{{"p", p.get_str()},      {"symbol", sym.str()},
                   {"c_exp", ld.c_exp},     {"delta_exp", ld.delta_exp},
                   {"q_exp", ld.q_exp},     {"d_exp", ld.d_exp},
                   {"index_exp", ld.index_exp}, {"reduction", reduction_name(ld.reduction)},
                   {"translate", tr.t.get_str()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "p = " << p << ": " << sym.str() << "  (C_p = p^" << ld.c_exp
                      << ", Delta_p = p^" << ld.delta_exp << ", Q_p = p^" << ld.q_exp
                      << ", D_p = p^" << ld.d_exp << ", " << reduction_name(ld.reduction)
                      << ", t = " << tr.t << ")\n";
        }
        return 0;
    }
    GlobalInvariants g = global_invariants(E);
    if (as_json) {
        json locs = json::array();
        for (const auto& ld : g.locals)
            locs.push_back({{"p", ld.p.get_str()},
                            {"symbol", ld.symbol.str()},
                            {"c_exp", ld.c_exp},
                            {"delta_exp", ld.delta_exp},
                            {"q_exp", ld.q_exp},
                            {"d_exp", ld.d_exp}});
        json j{{"A", E.A.get_str()},          {"B", E.B.get_str()},
               {"delta_E", g.delta_E.get_str()}, {"conductor", g.conductor.get_str()},
               {"index", g.index.get_str()},  {"Q", g.q_inv.get_str()},
               {"D", g.d_inv.get_str()},      {"locals", locs}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Delta(E) = " << g.delta_E << ", C = " << g.conductor
                  << ", ind = " << g.index << ", Q = " << g.q_inv << ", D = " << g.d_inv << "\n";
        for (const auto& ld : g.locals)
            std::cout << "  p = " << ld.p << ": " << ld.symbol.str() << "\n";
    }
    return 0;
}

int run_cubic(const std::string& poly, bool with_shape, bool as_json) {
    std::vector<Int> abc = parse_ints(poly);
    if (abc.size() != 3)
        throw CLI::ValidationError("--poly", "expected a,b,c");
    MonicCubic f{abc[0], abc[1], abc[2]};
    CubicRingInvariants inv = q_and_d(f);
    json j{{"disc_order", inv.disc_order.get_str()},
           {"q_index", inv.q_index.get_str()},
           {"disc_field", inv.disc_field.get_str()},
           {"maximal_form", inv.maximal_form.str()}};
    if (with_shape) {
        Shape s = shape(f);
        j["l1"] = s.l1.str(20);
        j["l2"] = s.l2.str(20);
        j["skewness"] = s.skewness.str(20);
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "disc(R_f) = " << inv.disc_order << " = " << inv.q_index << "^2 * "
                  << inv.disc_field << ", maximal form " << inv.maximal_form.str() << "\n";
        if (with_shape)
            std::cout << "l1 = " << j["l1"].get<std::string>()
                      << ", l2 = " << j["l2"].get<std::string>()
                      << ", sk = " << j["skewness"].get<std::string>() << "\n";
    }
    return 0;
}

int run_density(uint64_t p, const std::string& symbol, int index_k, int m, bool as_json,
                uint64_t node_budget) {
    DensityReport rep;
    if (index_k >= 0) {
        unsigned mm = m > 0 ? static_cast<unsigned>(m) : suggested_modulus_exp_index(index_k);
        rep = count_index_density(p, index_k, mm, std::nullopt, node_budget);
    } else {
        KodairaSymbol T = KodairaSymbol::parse(symbol);
        unsigned mm = m > 0 ? static_cast<unsigned>(m) : suggested_modulus_exp(T);
        rep = count_symbol_density(p, T, mm, node_budget);
    }
    if (as_json) {
        json j{{"p", rep.p.get_str()},
               {"target", rep.target},
               {"modulus_exp", rep.modulus_exp},
               {"favorable", rep.favorable.get_str()},
               {"total", rep.total.get_str()},
               {"density", rep.density.get_str()},
               {"expected", rep.expected.get_str()},
               {"match", rep.match},
               {"nodes", rep.stats.nodes_visited}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.target << " at p = " << p << ", m = " << rep.modulus_exp << ": "
                  << rep.density.get_str() << (rep.match ? " (matches " : " (EXPECTED ")
                  << rep.expected.get_str() << ")\n";
    }
    return rep.match ? 0 : 1;
}

int run_fourier(uint64_t p, const std::string& symbol, const std::string& chi_str,
                bool verify) {
    KodairaSymbol T = KodairaSymbol::parse(symbol);
    uint64_t N = charsum_modulus(T, p);
    if (!chi_str.empty()) {
        std::vector<Int> c = parse_ints(chi_str);
        if (c.size() != 3)
            throw CLI::ValidationError("--chi", "expected a,b,c");
        CharacterTriple chi{mpz_get_ui(c[0].get_mpz_t()) % N, mpz_get_ui(c[1].get_mpz_t()) % N,
                            mpz_get_ui(c[2].get_mpz_t()) % N, N};
        Int v = phi0_hat_value(T, p, chi);
        uint64_t r = r_T_count(T, p, chi);
        std::cout << "|phi0_hat| = " << v << ", r_T = " << r << ", delta2 = " << delta2(chi)
                  << " (mod " << N << ")\n";
        return 0;
    }
    if (!verify)
        return 0;
    uint64_t expect = 1;
    for (unsigned i = 0; i < exponent_kT(T); ++i)
        expect *= p;
    uint64_t bad = 0;
    for (uint64_t ca = 0; ca < N; ++ca)
        for (uint64_t cb = 0; cb < N; ++cb)
            for (uint64_t cc = 0; cc < N; ++cc) {
                CharacterTriple chi{ca, cb, cc, N};
                Int v = phi0_hat_value(T, p, chi);
                if (v != 0 && v != expect)
                    ++bad;
                uint64_t r = r_T_count(T, p, chi);
                if (T.tag == KodairaTag::III) {
                    bool pd2 = delta2(chi) % p == 0;
                    bool pchi = ca % p == 0 && cb % p == 0 && cc % p == 0;
                    uint64_t want = !pd2 ? 0 : (pchi ? p : (cc % p != 0 ? 1 : 0));
                    if (r != want)
                        ++bad;
                }
                if (T.tag == KodairaTag::IV) {
                    bool pchi = ca % p == 0 && cb % p == 0 && cc % p == 0;
                    if (pchi ? r != p : r > 2)
                        ++bad;
                }
            }
    std::cout << "checked " << N * N * N << " characters, mismatches: " << bad << "\n";
    return bad == 0 ? 0 : 1;
}

int run_quartic(const std::string& form, const std::string& root, bool as_json) {
    std::vector<Int> c = parse_ints(form);
    if (c.size() != 5)
        throw CLI::ValidationError("--form", "expected a,b,c,d,e");
    BinaryQuarticForm g{c[0], c[1], c[2], c[3], c[4]};
    json j{{"I", g.invariant_I().get_str()},
           {"J", g.invariant_J().get_str()},
           {"disc", g.disc().get_str()}};
    if (!root.empty()) {
        std::vector<Int> r = parse_ints(root);
        if (r.size() != 2)
            throw CLI::ValidationError("--root", "expected alpha,beta");
        RootedQuartic rq{g, r[0], r[1]};
        RootedInvariants inv = q_d_rooted(rq);
        j["Q"] = inv.Q.get_str();
        j["D"] = inv.D.get_str();
    }
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else {
        std::cout << "I = " << j["I"].get<std::string>() << ", J = " << j["J"].get<std::string>()
                  << ", disc = " << j["disc"].get<std::string>();
        if (j.contains("Q"))
            std::cout << ", Q = " << j["Q"].get<std::string>()
                      << ", D = " << j["D"].get<std::string>();
        std::cout << "\n";
    }
    return 0;
}

int run_embed(const std::string& poly) {
    std::vector<Int> ab = parse_ints(poly);
    if (ab.size() != 2)
        throw CLI::ValidationError("--poly", "expected A,B");
    MonicCubic f{Int(0), ab[0], ab[1]};
    CubicRingInvariants ring = q_and_d(f);
    RootedQuartic g = embed_sigma(f, ring.q_index);
    RootedInvariants inv = q_d_rooted(g);
    std::cout << "g = " << g.g.str() << " rooted at [" << g.alpha << ":" << g.beta << "]\n"
              << "I = " << g.g.invariant_I() << ", J = " << g.g.invariant_J()
              << ", Q = " << inv.Q << ", D = " << inv.D << "\n";
    return 0;
}

int run_constants(const std::string& name, int digits) {
    EulerConstant c = euler_constant(name);
    double width = c.value.width();
    std::cout << name << " = " << c.value.str(digits + 4) << "\n"
              << "  prefactor       " << c.prefactor.str(digits + 4) << "\n"
              << "  euler product   " << c.product_partial.str(digits + 4) << "\n"
              << "  certified width " << width << "\n";
    double target = std::pow(10.0, -digits);
    return width < target ? 0 : 3;
}

int run_census_cmd(const std::string& xmax, const std::string& kappa, bool full_tables,
                   const std::string& out, const std::string& index_cap, unsigned threads) {
    CensusOptions opt;
    opt.x_max = Int(xmax);
    if (kappa.find('/') != std::string::npos) {
        opt.kappa = mpq_class(kappa);
    } else {
        auto dot = kappa.find('.');
        if (dot == std::string::npos)
            opt.kappa = mpq_class(Int(kappa));
        else {
            std::string digits = kappa.substr(0, dot) + kappa.substr(dot + 1);
            Int den = pow_int(Int(10), kappa.size() - dot - 1);
            opt.kappa = mpq_class(Int(digits), den);
        }
    }
    opt.kappa.canonicalize();
    opt.full_tables = full_tables;
    if (!index_cap.empty())
        opt.index_cap = Int(index_cap);
    opt.threads = threads;
    CensusReport rep = run_census(opt);
    std::string js = census_report_json(rep, opt);
    if (!out.empty()) {
        std::ofstream o(out);
        o << js;
        auto dot2 = out.find_last_of('.');
        std::string stem = dot2 == std::string::npos ? out : out.substr(0, dot2);
        std::ofstream csv(stem + ".csv");
        csv << census_report_csv(rep);
    } else {
        std::cout << js;
    }
    return rep.invariant_violations > 0 ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local invariants, exact densities and the conductor census of "
                 "small elliptic curves"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file");

    auto* cls = app.add_subcommand("classify", "Kodaira symbols and global invariants");
    std::string curve, prime;
    bool js1 = false;
    cls->add_option("--curve", curve, "A,B")->required();
    cls->add_option("--prime", prime, "classify at one prime p >= 5");
    cls->add_flag("--json", js1);

    auto* cb = app.add_subcommand("cubic", "cubic ring invariants Q and D");
    std::string poly;
    bool with_shape = false, js2 = false;
    cb->add_option("--poly", poly, "a,b,c of x^3+ax^2+bx+c")->required();
    cb->add_flag("--shape", with_shape);
    cb->add_flag("--json", js2);

    auto* dn = app.add_subcommand("density", "exact p-adic densities");
    uint64_t dp = 5;
    std::string dsym;
    int dm = 0, dk = -1;
    bool js3 = false;
    dn->add_option("--prime", dp)->required();
    dn->add_option("--symbol", dsym, "Kodaira symbol, e.g. I2 or IV*");
    dn->add_option("--index", dk, "index exponent target instead of a symbol");
    dn->add_option("--m", dm, "modulus exponent");
    dn->add_flag("--json", js3);

    auto* fr = app.add_subcommand("fourier", "Fourier coefficients of symbol indicators");
    uint64_t fp = 5;
    std::string fsym = "III", fchi;
    bool verify = false;
    fr->add_option("--prime", fp)->required();
    fr->add_option("--symbol", fsym)->required();
    fr->add_option("--chi", fchi, "a,b,c of one character");
    fr->add_flag("--verify-lemmas", verify);

    auto* qt = app.add_subcommand("quartic", "binary quartic invariants");
    std::string form, root;
    bool js4 = false;
    qt->add_option("--form", form, "a,b,c,d,e")->required();
    qt->add_option("--root", root, "alpha,beta");
    qt->add_flag("--json", js4);

    auto* em = app.add_subcommand("embed", "embed a traceless cubic as a rooted quartic");
    std::string epoly;
    em->add_option("--poly", epoly, "A,B of x^3+Ax+B")->required();

    auto* cs = app.add_subcommand("census", "conductor-ordered census");
    std::string xmax = "1000000", kappa = "1.5", out, icap;
    bool full_tables = false;
    unsigned threads = 1;
    std::string grid = "dyadic";
    cs->add_option("--xmax", xmax)->required();
    cs->add_option("--grid", grid, "grid shape (dyadic)");
    cs->add_option("--kappa", kappa, "kappa as decimal or fraction");
    cs->add_flag("--full-tables", full_tables);
    cs->add_option("--out", out, "JSON report path (CSV mirror written next to it)");
    cs->add_option("--index-cap", icap, "enumerate |Delta| < cap * xmax");
    cs->add_option("--threads", threads);

    auto* ct = app.add_subcommand("constants", "certified Euler-product constants");
    std::string cname = "sf+";
    int cdigits = 8;
    ct->add_option("--name", cname, "sf+, sf-, kappa+, kappa-, generic")->required();
    ct->add_option("--digits", cdigits);

    CLI11_PARSE(app, argc, argv);

    uint64_t node_budget = 1000000000ull;
    long precision = 192;
    if (!config_path.empty())
        apply_config(config_path, node_budget, precision);
    Interval::set_default_precision(precision);

    try {
        if (*cls)
            return run_classify(curve, prime, js1);
        if (*cb)
            return run_cubic(poly, with_shape, js2);
        if (*dn)
            return run_density(dp, dsym, dk, dm, js3, node_budget);
        if (*fr)
            return run_fourier(fp, fsym, fchi, verify);
        if (*qt)
            return run_quartic(form, root, js4);
        if (*em)
            return run_embed(epoly);
        if (*cs)
            return run_census_cmd(xmax, kappa, full_tables, out, icap, threads);
        if (*ct)
            return run_constants(cname, cdigits);
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
