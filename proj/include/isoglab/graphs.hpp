#pragma once

#include <map>
#include <string>

#include "isoglab/counting.hpp"
#include "isoglab/isogeny.hpp"
#include "isoglab/spectral.hpp"

namespace isoglab {

// Multigraph on canonical labels. adjacency[u][v] counts the kernel
// subgroups carrying u's model to v; on the diagonal, self-kernels (so an
// undirected loop, a dual pair of self-kernels, contributes 2 and row sums
// equal the regularity degree).
struct LabeledGraph {
    std::vector<std::string> vertices;  // sorted canonical labels
    std::vector<std::vector<int>> adjacency;

    size_t index_of(const std::string& label) const;
    u64 edge_count() const;  // parallel edges counted, loops once each
};

struct IsogenyGraph : LabeledGraph {
    unsigned ell = 0;
    bool supersingular = false;
    u64 p = 0;             // characteristic
    u64 order_bucket = 0;  // ordinary graphs: the common group order
    // vertex models, aligned with `vertices`
    std::vector<Curve> models;
};

// All supersingular j-invariants over F_{p^2} (scan of every j, fast
// probabilistic rejection, exact confirmation), each vertex normalized to
// the (p+1)^2-order model; edges from rational ell-isogeny kernels.
// p = 3 mod 4 keeps the canonical i^2 = -1 model; other odd p fall back to
// the canonical scanned modulus. ell in {2, 3, 5, 7}, ell != p, p <= 2000.
IsogenyGraph build_supersingular_graph(u64 p, unsigned ell);

// Just the vertex labels of the supersingular graph (no edge work).
std::vector<std::string> supersingular_j_labels(u64 p);

struct VolcanoReport {
    std::vector<std::string> crater;  // cycle order, lexicographically anchored
    std::map<std::string, unsigned> levels;
    unsigned height = 0;
};

// Connected ell-isogeny component of an ordinary curve over its base
// field, with levels assigned by peeling height = v_ell(f_pi) floors.
std::pair<IsogenyGraph, VolcanoReport> build_volcano(const Curve& e, unsigned ell,
                                                     unsigned max_ext_degree);

struct SchreierGraph : LabeledGraph {
    u64 n = 0;                 // order of the cyclic group acted upon
    std::vector<u64> action;   // symmetric closure of S, sorted
};

// Schreier graph of the exponentiation action sigma . g = g^sigma on the
// generators of a cyclic group of order n; S is closed under inversion
// internally. Vertices are labeled "g^k" for units k.
SchreierGraph build_schreier_exponentiation_graph(u64 n, const std::vector<u64>& s);

// Breadth-first meet-in-the-middle path between two supersingular
// j-labels in the (p, ell) graph; returns the vertices after j_start, one
// per step (empty when j_start = j_end). Each edge is re-derived through
// the isogeny enumeration before the path is returned.
std::vector<std::string> mitm_path(const IsogenyGraph& g, const std::string& j_start,
                                   const std::string& j_end, SeededRng& rng);

enum class ExportFormat { Dot, Json };

// DOT: vertices in canonical order, one line per undirected edge
// (multiplicity repeats the line, loops emitted from the diagonal pairs).
// JSON: {"edges": [[i, j, ell], ...], "vertices": [...]} with i <= j.
std::string export_graph(const LabeledGraph& g, unsigned ell, ExportFormat format);

// Uniform random neighbor walk (edge multiplicities weighted); returns the
// arrival vertex index.
size_t random_walk(const LabeledGraph& g, size_t start, unsigned steps, SeededRng& rng);

// Spectral report of an isogeny graph. Kernel counts are directed at the
// automorphism vertices j = 0 (weight 3) and j = 1728 (weight 2); the
// similarity D^{-1/2} A D^{1/2} with those weights restores symmetry and
// preserves the spectrum, so Ramanujan checks read off the usual bound.
SpectralReport isogeny_graph_spectrum(const IsogenyGraph& g);

}  // namespace isoglab
