#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isoglab/errors.hpp"

namespace isoglab {

// Spectrum of a symmetric integer adjacency matrix via cyclic Jacobi
// rotations (off-diagonal norm < 1e-10), eigenvalues descending.
std::vector<double> jacobi_eigenvalues(const std::vector<std::vector<int>>& adjacency);
std::vector<double> jacobi_eigenvalues_d(std::vector<std::vector<double>> a);

struct SpectralReport {
    std::vector<double> eigenvalues;    // descending
    std::optional<int> k;               // regularity degree, when regular
    std::optional<double> epsilon;      // two-sided: l2 <= (1-e)k and ln >= -(1-e)k
    std::optional<double> epsilon_one;  // one-sided: 1 - l2/k (drives Cheeger)
    bool ramanujan = false;             // max(|l2|, |ln|) <= 2 sqrt(k-1) + 1e-8
};

SpectralReport spectral_analysis(const std::vector<std::vector<int>>& adjacency);

// Exact edge expansion h(G) = min #boundary(F)/#F over subsets with
// #F <= #V/2, as a reduced fraction. Exhaustive over subsets; #V <= cap.
struct GraphRational {
    uint64_t num, den;
    double value() const { return (double)num / (double)den; }
};
GraphRational edge_expansion(const std::vector<std::vector<int>>& adjacency,
                             unsigned exact_cap = 20);

}  // namespace isoglab
