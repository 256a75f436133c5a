#include "doctest.h"

#include "hchow/cli.hpp"
#include "hchow/manifest.hpp"
#include "json.hpp"

#include <cstdlib>
#include <sstream>

using namespace hchow;

namespace {

const std::string kData = HCHOW_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

// Line and column of the error raised by parsing `text`.
std::pair<int, int> error_at(const std::string& text) {
    try {
        Manifest::parse(text);
    } catch (const ParseError& e) {
        return {e.line, e.column};
    }
    return {0, 0};
}

const char* kSmall = R"(complex C
  field Q
  orientation cochain
  degree 0 rank 2
  degree 1 rank 1
  d 0 : "1/2 -3"
end

map f : C -> C
  role chain
  at 0 : "1 0; 0 1"
  at 1 : "1"
end
)";

}  // namespace

TEST_SUITE("cli_toolkit") {
    TEST_CASE("parse and print are inverse") {
        Manifest m = Manifest::parse(kSmall);
        CHECK(m.to_text() == kSmall);
        CHECK(m.complex("C").d(0) == Matrix::parse(Domain::rationals(), 1, 2, "1/2 -3"));
        Verdict v = verify_round_trip(m);
        CHECK_MESSAGE(v.ok, v.failure);
        Verdict corpus = verify_corpus_round_trips(kData);
        CHECK_MESSAGE(corpus.ok, corpus.failure);
        CHECK(corpus.checks >= 12);
    }

    TEST_CASE("every object kind survives a round trip") {
        Manifest d = Manifest::load(kData + "/diagrams.hc");
        CHECK(d.diagrams.size() == 2);
        CHECK(d.diagram("short").size() == 2);
        Manifest c = Manifest::load(kData + "/cubical.hc");
        CHECK(c.cubicals.at("square").rank(2) > 0);
        CHECK(c.maps.at("boundary_inclusion").role == MapRole::Cubical);
        Manifest a = Manifest::load(kData + "/algebras.hc");
        CHECK(a.algebras.at("exterior").size() == 8);
        Manifest g = Manifest::load(kData + "/green_forms.hc");
        CHECK(validate_chow_diagram(g.chow_diagram("green")).ok);
        Manifest k = Manifest::load(kData + "/cube_maps.hc");
        CHECK(maps_equal(k.cube_maps.at("tau_3"), cube::tau(3)));
        for (const Manifest* m : {&d, &c, &a, &g, &k}) {
            Manifest back = Manifest::parse(m->to_text());
            CHECK(back == *m);
        }
    }

    TEST_CASE("parse errors name line and column") {
        CHECK(error_at("complex C\n  field Q\n  degre 0 rank 1\nend\n") == std::pair{3, 3});
        CHECK(error_at("complex C\n  field Q\n  degree 0 rank x\nend\n") == std::pair{3, 17});
        CHECK(error_at("complex C\n  field Q\n  degree 0 rank 1\n  d 0 : \"1 2\"\nend\n") == std::pair{4, 9});
        CHECK(error_at("complex C\n  field Q\n  d 0 : \"1\n") == std::pair{3, 9});
        CHECK(error_at("complex C\n  field Q\n") == std::pair{1, 1});
        CHECK(error_at("widget W\n") == std::pair{1, 1});
        CHECK(error_at("complex C\n  field R\nend\n") == std::pair{2, 9});
        // unknown and duplicate names
        CHECK(error_at(std::string(kSmall) + "map g : C -> X\nend\n") == std::pair{14, 14});
        CHECK(error_at(std::string(kSmall) + "complex C\n  field Q\nend\n") == std::pair{14, 9});
        // d d != 0 is reported at the complex
        CHECK(error_at("complex C\n  field Q\n  degree 0 rank 1\n  degree 1 rank 1\n  degree 2 rank 1\n"
                       "  d 1 : \"1\"\n  d 2 : \"1\"\nend\n") == std::pair{1, 9});
        try {
            Manifest::parse("complex C\n  field Q\n  degre 0 rank 1\nend\n");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 3, column 3") != std::string::npos);
        }
    }

    TEST_CASE("map roles must match their endpoints") {
        std::string text = std::string(kSmall) + "map g : C -> C\n  role cubical\nend\n";
        CHECK(error_at(text) == std::pair{15, 8});
        // not a chain map
        std::string bad = std::string(kSmall) + "map g : C -> C\n  at 0 : \"1 0; 0 0\"\nend\n";
        CHECK(error_at(bad) == std::pair{14, 5});
        // a diagram slot with the wrong endpoints
        std::string diag = std::string(kSmall) + "diagram D\n  A1 C\n  A2 C\n  B1 C\n  f1 f\n  g1 C\nend\n";
        CHECK(error_at(diag) == std::pair{19, 6});
    }

    TEST_CASE("homology of 0 -> Z --2--> Z -> 0") {
        Run r = run({"homology", kData + "/z_mod_2.hc"});
        CHECK(r.code == 0);
        CHECK(r.out == "H_0 = Z/2, H_1 = 0\n");
        Run f2 = run({"homology", kData + "/z_mod_2.hc", "--field", "fp:2", "--degree", "1"});
        CHECK(f2.out == "H_1 = F2\n");
    }

    TEST_CASE("exit codes") {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"homology", kData + "/missing.hc"}).code == 2);
        CHECK(run({"simple", kData + "/maps.hc", "--map", "nope"}).code == 2);
        CHECK(run({"cube-verify", "--max-n", "9"}).code == 2);
        Run les = run({"les", kData + "/maps.hc", "--map", "sum"});
        CHECK(les.code == 0);
        CHECK(les.out.find(": exact") != std::string::npos);
        CHECK(run({"chow-les", kData + "/green_forms.hc"}).code == 0);
        CHECK(run({"star", "--beta", "0", kData + "/diagrams.hc", "path"}).code == 0);
        CHECK(run({"diagram-les", kData + "/diagrams.hc", "--diagram", "short"}).code == 0);
        CHECK(run({"product-verify", "--instance", "exterior"}).code == 0);
    }

    TEST_CASE("cube-verify prints every case") {
        Run r = run({"cube-verify", "--max-n", "3"});
        CHECK(r.code == 0);
        for (int n = 1; n <= 3; ++n)
            for (int i = 1; i <= n + 1; ++i)
                for (int j = 0; j <= 1; ++j) {
                    std::string want = "PASS pi_" + std::to_string(n) + " phi_" + std::to_string(n) + " delta^" +
                                       std::to_string(i) + "_" + std::to_string(j) + " ";
                    CHECK(r.out.find(want) != std::string::npos);
                }
        CHECK(r.out.find("FAIL") == std::string::npos);
    }

    TEST_CASE("reports are deterministic and carry stable json keys") {
        std::vector<std::string> args = {"--json", "lemma-h", "--max-total", "2", "--seed", "9", "--trials", "3"};
        Run a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        auto j = nlohmann::json::parse(a.out);
        for (const char* key : {"command", "ok", "exit_code", "lines", "data"}) CHECK(j.contains(key));
        CHECK(j["command"] == "lemma-h");
        CHECK(j["data"]["checks"].size() == 6);
        auto e = nlohmann::json::parse(run({"--json", "homology", "/nonexistent.hc"}).out);
        CHECK(e["exit_code"] == 2);
        CHECK(e.contains("error"));
    }

    TEST_CASE("seed from the environment") {
        setenv("HCHOW_SEED", "1234", 1);
        CHECK(default_seed() == 1234);
        unsetenv("HCHOW_SEED");
        CHECK(default_seed() == 42);
    }

    TEST_CASE("selftest runs a chosen criterion") {
        Run r = run({"selftest", "--seed", "42", "--only", "5"});
        CHECK(r.code == 0);
        CHECK(r.out.find("PASS [5]") != std::string::npos);
        CHECK(run({"selftest", "--only", "11"}).code == 2);
        CHECK(run({"selftest", "--only", "x"}).code == 2);
    }
}
