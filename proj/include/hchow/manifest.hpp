/**
 * @file   manifest.hpp
 * @brief  Line-oriented text format for named complexes, cubical modules,
 *         maps, diagrams, Chow diagrams, algebras and cube maps.
 *
 * A manifest is a sequence of blocks. Each block opens with a header line
 * and, except for cube maps, closes with `end`:
 *
 *     complex C
 *       field Z
 *       orientation chain
 *       degree 0 rank 1
 *       degree 1 rank 1
 *       d 1 : "2"
 *     end
 *     map f : C -> C
 *       role chain
 *       at 0 : "1"
 *     end
 *     cube-map h : map 2->1 : (x1 + x2 - x1*x2)/(1)
 *
 * Matrices are quoted, row-major, rows separated by `;`, entries integers or
 * fractions a/b. Names must be declared before they are used. Parse errors
 * carry the line and column of the offending token.
 */
#pragma once

#include "hchow/chow.hpp"
#include "hchow/cube_maps.hpp"
#include "hchow/cubical.hpp"
#include "hchow/product_engine.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hchow {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message, const std::string& source = {});
    int line = 0, column = 0;
    std::string message, source;
};

// Which kind of object a map connects.
enum class MapRole { Chain, Cubical };

struct NamedMap {
    std::string source, target;
    MapRole role = MapRole::Chain;
    ChainMap chain;                // role chain
    std::vector<Matrix> levels;    // role cubical: levels[n] : source_n -> target_n
};

// Pieces of a diagram by name: A^1..A^{n+1}, B^1..B^n, f^1..f^n, g^1..g^n.
struct DiagramSpec {
    std::vector<std::string> A, B, f, g;
    bool operator==(const DiagramSpec&) const = default;
};

struct ChowSpec {
    std::string cycles, cohomology, supports, deligne, top, f1, g1, rho, i;
    bool operator==(const ChowSpec&) const = default;
};

struct Manifest {
    std::map<std::string, GradedComplex> complexes;
    std::map<std::string, CubicalModule> cubicals;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, DiagramSpec> diagrams;
    std::map<std::string, ChowSpec> chow_diagrams;
    std::map<std::string, GradedAlgebra> algebras;
    std::map<std::string, CubeMap> cube_maps;
    // (kind, name) in declaration order; printing follows it.
    std::vector<std::pair<std::string, std::string>> order;

    Diagram diagram(const std::string& name) const;
    ChowDiagram chow_diagram(const std::string& name) const;
    const GradedComplex& complex(const std::string& name) const;
    const ChainMap& chain_map(const std::string& name) const;

    std::string to_text() const;
    static Manifest parse(const std::string& text);
    // Reads a file; ParseError messages are prefixed with the path.
    static Manifest load(const std::string& path);
};

// Structural equality of every object (matrices compared entrywise).
bool operator==(const Manifest& a, const Manifest& b);

// parse(print(x)) == x and print(parse(print(x))) == print(x).
Verdict verify_round_trip(const Manifest& m);
// The same for every *.hc file in a directory (sorted by name); fails when
// the directory holds no manifests.
Verdict verify_corpus_round_trips(const std::string& dir);

}  // namespace hchow
