#include "isoglab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace isoglab {

std::vector<double> jacobi_eigenvalues(const std::vector<std::vector<int>>& adjacency) {
    size_t n = adjacency.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (adjacency[i][j] != adjacency[j][i])
                throw BadInput("adjacency matrix must be symmetric");
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = adjacency[i][j];
    return jacobi_eigenvalues_d(std::move(a));
}

std::vector<double> jacobi_eigenvalues_d(std::vector<std::vector<double>> a) {
    size_t n = a.size();
    if (n > 500) throw TooLargeForExact("spectral analysis is limited to 500 vertices");

    auto off_norm = [&] {
        double s = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
        return std::sqrt(2 * s);
    };
    for (int sweep = 0; sweep < 100 && off_norm() >= 1e-10; ++sweep) {
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (size_t i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (size_t i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.rbegin(), eig.rend());
    return eig;
}

SpectralReport spectral_analysis(const std::vector<std::vector<int>>& adjacency) {
    SpectralReport report;
    report.eigenvalues = jacobi_eigenvalues(adjacency);
    size_t n = adjacency.size();
    if (n == 0) return report;
    long long degree = 0;
    for (int v : adjacency[0]) degree += v;
    bool regular = true;
    for (size_t i = 0; i < n; ++i) {
        long long row = 0;
        for (int v : adjacency[i]) row += v;
        if (row != degree) {
            regular = false;
            break;
        }
    }
    if (!regular || degree == 0) return report;
    report.k = (int)degree;
    double k = (double)degree;
    if (n >= 2) {
        double l2 = report.eigenvalues[1];
        double ln = report.eigenvalues.back();
        report.epsilon = 1.0 - std::max(l2, -ln) / k;
        report.epsilon_one = 1.0 - l2 / k;
        report.ramanujan = std::max(std::fabs(l2), std::fabs(ln)) <= 2 * std::sqrt(k - 1) + 1e-8;
    } else {
        report.epsilon = 1.0;
        report.epsilon_one = 1.0;
        report.ramanujan = true;
    }
    return report;
}

GraphRational edge_expansion(const std::vector<std::vector<int>>& adjacency, unsigned exact_cap) {
    size_t n = adjacency.size();
    if (n > exact_cap || n > 62) throw TooLargeForExact("edge expansion subset scan too large");
    if (n < 2) return GraphRational{0, 1};
    uint64_t best_num = 0, best_den = 1;
    bool first = true;
    for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
        unsigned size = (unsigned)__builtin_popcountll(mask);
        if (2 * size > n) continue;
        uint64_t boundary = 0;
        for (size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            for (size_t j = 0; j < n; ++j)
                if (!(mask >> j & 1)) boundary += (uint64_t)adjacency[i][j];
        }
        // compare boundary/size < best_num/best_den
        if (first || boundary * best_den < best_num * size) {
            best_num = boundary;
            best_den = size;
            first = false;
        }
    }
    uint64_t a = best_num, b = best_den;
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    return GraphRational{best_num / a, best_den / a};
}

}  // namespace isoglab
