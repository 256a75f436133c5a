/**
 * @file   cli.cpp
 * @brief  Subcommands of the `hchow` tool.
 *
 * Each subcommand fills a Report. Text mode prints its lines; --json prints
 * one object with the keys command, ok, exit_code, lines and data.
 */
#include "hchow/cli.hpp"

#include "hchow/cube_functions.hpp"
#include "hchow/manifest.hpp"
#include "hchow/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace hchow {

namespace {

using json = nlohmann::json;

// Malformed input that is not a parse error (unknown names, bad options).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    std::vector<std::string> lines;
    json data = json::object();
    bool ok = true;

    void say(const std::string& s) { lines.push_back(s); }
    void check(const std::string& label, const Verdict& v) {
        say((v.ok ? "PASS " : "FAIL ") + label + " (" + std::to_string(v.checks) + (v.checks == 1 ? " check)" : " checks)") +
            (v.ok ? "" : ": " + v.failure));
        data["checks"].push_back({{"name", label}, {"pass", v.ok}, {"checks", v.checks}, {"failure", v.failure}});
        ok = ok && v.ok;
    }
};

std::string group_name(const GradedComplex& c, int k) {
    return (c.orientation() == Orientation::Chain ? "H_" : "H^") + std::to_string(k);
}

const GradedComplex& pick_complex(const Manifest& m, const std::string& name) {
    if (!name.empty()) return m.complex(name);
    if (m.complexes.size() != 1)
        throw InputError("the file holds " + std::to_string(m.complexes.size()) + " complexes; choose one with --complex");
    return m.complexes.begin()->second;
}

std::string pick_name(const std::map<std::string, ChowSpec>& specs, const std::string& name) {
    if (!name.empty()) return name;
    if (specs.size() != 1) throw InputError("the file holds " + std::to_string(specs.size()) + " chow diagrams; choose one with --diagram");
    return specs.begin()->first;
}

void homology_lines(Report& r, const GradedComplex& c, std::optional<int> degree) {
    std::vector<std::string> parts;
    int lo = degree ? *degree : c.lo(), hi = degree ? *degree : c.hi();
    for (int k = lo; k <= hi; ++k) {
        std::string g = homology(c, k).to_string();
        parts.push_back(group_name(c, k) + " = " + g);
        r.data["homology"][std::to_string(k)] = g;
    }
    std::string line;
    for (std::size_t i = 0; i < parts.size(); ++i) line += (i ? ", " : "") + parts[i];
    r.say(line.empty() ? "the complex is zero" : line);
}

void les_lines(Report& r, const ExactSequenceReport& les) {
    std::istringstream in(les.to_string());
    std::string line;
    while (std::getline(in, line)) r.say(line);
    r.data["exact"] = les.exact;
    r.data["nodes"] = json::array();
    for (std::size_t i = 0; i < les.labels.size(); ++i)
        r.data["nodes"].push_back({{"label", les.labels[i]}, {"dim", les.dims[i]}});
    if (!les.exact) {
        r.say("FAIL not exact: " + les.failure);
        r.ok = false;
    }
}

std::vector<int> parse_ids(const std::string& spec) {
    std::vector<int> ids;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t dash = part.find('-');
        try {
            int a = std::stoi(part.substr(0, dash)), b = dash == std::string::npos ? a : std::stoi(part.substr(dash + 1));
            for (int i = a; i <= b; ++i) {
                if (i < 1 || i > kCriterionCount) throw InputError("no criterion " + std::to_string(i));
                ids.push_back(i);
            }
        } catch (const std::logic_error&) {
            throw InputError("bad criterion list '" + spec + "'");
        }
    }
    return ids;
}

}  // namespace

std::uint64_t default_seed() {
    if (const char* s = std::getenv("HCHOW_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
        }
    }
    return 42;
}

std::string default_data_dir() {
#ifdef HCHOW_DATA_DIR
    return HCHOW_DATA_DIR;
#else
    return "data";
#endif
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact homological algebra for higher arithmetic Chow groups", "hchow"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print a machine-readable report");

    std::string file, name, field, instance = "exterior", data_dir = default_data_dir(), only;
    std::vector<std::string> names;
    std::optional<int> degree;
    std::uint64_t seed = default_seed();
    long beta = 0;
    int max_n = 3, max_total = 4, trials = 50;

    auto* homology_cmd = app.add_subcommand("homology", "Homology of a complex in a manifest");
    homology_cmd->add_option("file", file)->required();
    homology_cmd->add_option("--degree", degree);
    homology_cmd->add_option("--field", field, "q, z or fp:P");
    homology_cmd->add_option("--complex", name);

    auto* simple_cmd = app.add_subcommand("simple", "The simple complex s(f) of a map");
    simple_cmd->add_option("file", file)->required();
    simple_cmd->add_option("--map", name)->required();

    auto* les_cmd = app.add_subcommand("les", "Long exact sequence of s(f)");
    les_cmd->add_option("file", file)->required();
    les_cmd->add_option("--map", name)->required();

    auto* dsimple_cmd = app.add_subcommand("diagram-simple", "The simple complex of a diagram");
    dsimple_cmd->add_option("file", file)->required();
    dsimple_cmd->add_option("--diagram", name)->required();

    auto* dles_cmd = app.add_subcommand("diagram-les", "Long exact sequence of a short diagram");
    dles_cmd->add_option("file", file)->required();
    dles_cmd->add_option("--diagram", name)->required();
    dles_cmd->add_option("--seed", seed);

    auto* star_cmd = app.add_subcommand("star", "The product star_beta of two diagrams");
    star_cmd->add_option("--beta", beta)->required();
    star_cmd->add_option("file", file)->required();
    star_cmd->add_option("diagrams", names, "One or two diagram names");

    auto* cube_cmd = app.add_subcommand("cube-verify", "Identities among the cube maps");
    cube_cmd->add_option("--max-n", max_n)->check(CLI::Range(1, 4));

    auto* lemma_cmd = app.add_subcommand("lemma-h", "delta h lemma and the H_{n,m} homotopy on random elements");
    lemma_cmd->add_option("--max-total", max_total)->check(CLI::Range(0, 4));
    lemma_cmd->add_option("--seed", seed);
    lemma_cmd->add_option("--trials", trials)->check(CLI::Range(1, 100000));

    auto* product_cmd = app.add_subcommand("product-verify", "Product identities on a shipped algebra");
    product_cmd->add_option("--instance", instance)->check(CLI::IsMember({"exterior", "homotopy"}));
    product_cmd->add_option("--seed", seed);

    auto* chow_cmd = app.add_subcommand("chow-les", "Exact sequence of a Chow diagram");
    chow_cmd->add_option("file", file)->required();
    chow_cmd->add_option("--diagram", name);

    auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance suites");
    self_cmd->add_option("--seed", seed);
    self_cmd->add_option("--data", data_dir);
    self_cmd->add_option("--only", only, "Criteria to run, e.g. 1-10 or 2,5");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Report r;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*homology_cmd) {
            Manifest m = Manifest::load(file);
            GradedComplex c = pick_complex(m, name);
            if (!field.empty()) c = c.in_domain(Domain::parse(field));
            homology_lines(r, c, degree);
        } else if (*simple_cmd) {
            Manifest m = Manifest::load(file);
            GradedComplex s = simple(m.chain_map(name));
            r.say("s(" + name + "): " + describe(s));
            homology_lines(r, s, std::nullopt);
        } else if (*les_cmd) {
            Manifest m = Manifest::load(file);
            les_lines(r, les_of_simple(m.chain_map(name)));
        } else if (*dsimple_cmd) {
            Manifest m = Manifest::load(file);
            DiagramSimple s = simple_of_diagram(m.diagram(name));
            r.say("s(" + name + "): " + describe(s.complex));
            homology_lines(r, s.complex, std::nullopt);
        } else if (*dles_cmd) {
            Manifest m = Manifest::load(file);
            Rng rng(seed);
            les_lines(r, diagram_les(m.diagram(name), &rng));
        } else if (*star_cmd) {
            Manifest m = Manifest::load(file);
            if (names.empty())
                for (const auto& [n, s] : m.diagrams)
                    if (names.size() < 2) names.push_back(n);
            if (names.empty() || names.size() > 2) throw InputError("star needs one or two diagrams");
            if (names.size() == 1) names.push_back(names[0]);
            Diagram D = m.diagram(names[0]), E = m.diagram(names[1]);
            if (D.size() != E.size()) throw InputError("diagrams of sizes " + std::to_string(D.size()) + " and " + std::to_string(E.size()));
            StarProduct sp = star_product(beta, D, E);
            r.say("source s(" + names[0] + ") (x) s(" + names[1] + "): " + describe(sp.source.complex));
            r.say("target s(" + names[0] + " (x) " + names[1] + "): " + describe(sp.target.complex));
            r.check("star_" + std::to_string(beta) + " is a chain map", verify_star_chain_map(sp));
            r.check("swap square for beta " + std::to_string(beta), verify_star_swap(D, E, beta));
            for (long b : {-1L, 0L, 1L, 2L})
                if (b != beta)
                    r.check("homology agrees with star_" + std::to_string(b), verify_star_homology_agreement(D, E, beta, b));
        } else if (*cube_cmd) {
            r.check("cocubical relations, n <= " + std::to_string(max_n), verify_cocubical_relations(max_n));
            r.check("involution, n <= " + std::to_string(max_n), verify_involution(max_n));
            for (int n = 1; n <= max_n; ++n)
                for (int i = 1; i <= n + 1; ++i)
                    for (int j = 0; j <= 1; ++j)
                        r.check("pi_" + std::to_string(n) + " phi_" + std::to_string(n) + " delta^" + std::to_string(i) +
                                    "_" + std::to_string(j),
                                verify_homotdelta_case(n, i, j));
            r.check("W_n equation, n <= " + std::to_string(max_n), verify_wn_equation(max_n));
            r.check("sigma_{n,m} = tau^m, n <= " + std::to_string(max_n) + ", m <= 3", verify_sigma_tau(max_n, 3));
            r.check("faces of tau powers, n <= " + std::to_string(max_n), verify_tau_face_relations(max_n));
        } else if (*lemma_cmd) {
            CubeCalculus calc;
            for (int n = 0; n <= max_total; ++n)
                for (int k = 0; n + k <= max_total; ++k) {
                    Rng rng = Rng::split(seed, "lemma-h/" + std::to_string(n) + "," + std::to_string(k));
                    Verdict v;
                    for (int t = 0; t < trials; ++t) {
                        CubeFunction a = random_00_element(rng, n, k);
                        v.merge(verify_hnm_homotopy(calc, n, k, a), "case " + std::to_string(t));
                        if (n + k >= 1) v.merge(verify_delta_h_lemma(calc, a), "case " + std::to_string(t));
                    }
                    r.check("(n, m) = (" + std::to_string(n) + ", " + std::to_string(k) + "), " + std::to_string(trials) +
                                " elements",
                            v);
                }
        } else if (*product_cmd) {
            bool ext = instance == "exterior";
            GradedAlgebra A = ext ? exterior_instance() : homotopy_instance();
            ProductModel m = ext ? make_model(A, {"u", "v", "t"}) : make_model(A, {"s", "t", "st"});
            Rng rng(seed);
            r.check("algebra axioms", A.verify());
            r.check("Leibniz rule for the cube product", verify_bullet_leibniz(m, ext ? 2 : 1));
            r.check("pairing with supports is a chain map", verify_support_pairing(m, rng, 40, 2));
            r.check("triple pairings agree up to homotopy", verify_triple_associativity(m, rng, 25, 1));
            r.check("homotopy avoids the top degree", verify_homotopy_structure(A));
            r.check("swap is compatible with products", verify_sigma_products(m, rng, 30, 2));
            if (ext) {
                r.check("i and kappa are quasi-isomorphisms, p = 1", verify_window_quasi_isos(m, 1, -1, 2));
                r.check("i and kappa are quasi-isomorphisms, p = 2", verify_window_quasi_isos(m, 2, 0, 4));
            } else {
                r.check("i and kappa are quasi-isomorphisms, p = 2", verify_window_quasi_isos(m, 2, 1, 4));
            }
        } else if (*chow_cmd) {
            Manifest m = Manifest::load(file);
            std::string dname = pick_name(m.chow_diagrams, name);
            ChowDiagram D = m.chow_diagram(dname);
            ChowLesReport rep = chow_les_report(D);
            std::istringstream in(rep.to_string());
            std::string line;
            while (std::getline(in, line)) r.say(line);
            for (const auto& [k, d] : rep.chow) r.data["chow"][std::to_string(k)] = d;
            r.check("hat complex", verify_hat_complex(D));
            r.check("zeta, a and omega", verify_structural_maps(D));
            r.check("exact sequence", rep.verdict);
        } else if (*self_cmd) {
            SuiteOptions opts{seed, data_dir};
            std::vector<int> ids = only.empty() ? parse_ids("1-10") : parse_ids(only);
            r.say("seed " + std::to_string(seed));
            std::vector<CriterionResult> results;
            for (int id : ids) {
                if (id == 11) throw InputError("criterion 11 runs selftest itself; use the acceptance binary");
                results.push_back(run_criterion(id, opts));
                const CriterionResult& c = results.back();
                r.say(c.line());
                r.data["results"].push_back({{"id", c.id},
                                             {"name", c.name},
                                             {"pass", c.pass},
                                             {"known_discrepancy", c.known_discrepancy},
                                             {"checks", c.checks},
                                             {"seconds", c.seconds},
                                             {"detail", c.detail}});
            }
            if (only.empty()) r.check("corpus round trips in " + data_dir, verify_corpus_round_trips(data_dir));
            std::size_t pass = 0, known = 0;
            for (const auto& c : results) {
                if (c.pass) ++pass;
                else if (c.known_discrepancy) ++known;
            }
            std::size_t failed = results.size() - pass - known;
            r.say("selftest: " + std::to_string(pass) + " passed, " + std::to_string(known) + " known discrepancies, " +
                  std::to_string(failed) + " failed");
            r.ok = r.ok && acceptable(results);
        }
    } catch (const std::exception& e) {
        // Parse errors, unknown names, bad fields and unreadable files.
        err << "error: " << e.what() << "\n";
        if (as_json) out << json{{"command", command}, {"ok", false}, {"exit_code", 2}, {"error", e.what()}}.dump(2) << "\n";
        return 2;
    }

    int code = r.ok ? 0 : 1;
    if (as_json) {
        out << json{{"command", command}, {"ok", r.ok}, {"exit_code", code}, {"lines", r.lines}, {"data", r.data}}.dump(2)
            << "\n";
    } else {
        for (const auto& l : r.lines) out << l << "\n";
    }
    return code;
}

}  // namespace hchow
