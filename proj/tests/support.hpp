#pragma once

// Shared helpers for the test suites: seeded graph generators and a dense eigen oracle.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cyberdyn/graph.hpp"

namespace testing_support {

inline cyberdyn::Graph random_graph(std::mt19937_64& gen, std::size_t max_n = 25)
{
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    return cyberdyn::make_erdos_renyi(size(gen), density(gen), gen());
}

/// Largest eigenvalue of the adjacency matrix by a dense symmetric eigensolver.
inline double dense_lambda1(const cyberdyn::Graph& g)
{
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (n == 0)
        return 0.0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : g.edges()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

} // namespace testing_support
