#pragma once

#include <cstdint>
#include <functional>

#include "pinvlab/operator.hpp"
#include "pinvlab/rng.hpp"
#include "pinvlab/svd.hpp"

namespace pinvlab {

// Instance policy for randomized verification runs. Singular values are kept
// inside sigma_range so that identity failures indicate defects rather than
// conditioning; rank is drawn uniformly over 0..min(m, n).
struct InstanceConfig {
    std::uint64_t seed = 42;
    int trials = 50;
    int max_dim = 64;
    double sigma_min = 0.1;
    double sigma_max = 10.0;
    std::vector<std::pair<int, int>> schedule = {{2, 2}, {3, 5}, {5, 3}, {8, 8}, {12, 7}};
};

// Unitary factor of a complex Gaussian matrix via Gram-Schmidt (two passes).
inline Matrix random_unitary(int n, Rng& rng) {
    Matrix q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = cplx(rng.gaussian(), rng.gaussian());
    for (int j = 0; j < n; ++j) {
        Vector w = q.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) {
                cplx dot{};
                for (int i = 0; i < n; ++i) dot += std::conj(q(i, k)) * w[i];
                for (int i = 0; i < n; ++i) w[i] -= dot * q(i, k);
            }
        const double nw = norm2(w);
        for (auto& z : w) z /= nw;
        q.set_col(j, w);
    }
    return q;
}

// A = U * Sigma * V^H with exactly `rank` singular values drawn log-uniformly
// from sigma_range. Deterministic in (seed, trial, m, n, rank).
inline Operator random_operator(const InstanceConfig& cfg, int trial, int m, int n, int rank) {
    if (rank < 0 || rank > std::min(m, n))
        throw std::invalid_argument("random_operator: rank out of range");
    if (rank == 0) return Operator::zero(m, n);

    Rng rng(hash_combine(hash_combine(cfg.seed, static_cast<std::uint64_t>(trial)),
                         hash_combine(static_cast<std::uint64_t>(m) * 131 + n,
                                      static_cast<std::uint64_t>(rank))));
    const Matrix u = random_unitary(m, rng);
    const Matrix v = random_unitary(n, rng);
    std::vector<double> sigma(rank);
    for (auto& s : sigma) s = rng.log_uniform(cfg.sigma_min, cfg.sigma_max);
    std::sort(sigma.begin(), sigma.end(), std::greater<>());

    Matrix a(m, n);
    for (int k = 0; k < rank; ++k)
        for (int i = 0; i < m; ++i) {
            const cplx uik = u(i, k) * sigma[k];
            for (int j = 0; j < n; ++j) a(i, j) += uik * std::conj(v(j, k));
        }
    return Operator::dense(std::move(a));
}

}  // namespace pinvlab
