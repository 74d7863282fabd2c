#pragma once

#include "fsgl/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace fsgl {

/// Ground-truth graph with precision Theta = L + rho I and covariance C = Theta^{-1}.
struct GroundTruth {
    WeightedGraph w_star;
    Eigen::MatrixXd theta;
    Eigen::MatrixXd cov;
    /// Symmetric square root of cov.
    Eigen::MatrixXd cov_sqrt;
    double rho = 0.5;
};

inline constexpr double kDefaultRho = 0.5;
inline constexpr double kDefaultDensity = 0.2;

/// Erdos-Renyi topology with edge probability `density`, resampled until connected
/// (after 1000 failed draws the components are joined by random bridges), with
/// weights uniform on [0.5, 1.5].
GroundTruth gen_ground_truth(int n, double density, double rho, std::uint64_t seed);

/// Connected Erdos-Renyi graph with unit weights (resampled until connected,
/// then bridged as in gen_ground_truth).
WeightedGraph random_connected_unit_graph(int n, double density, std::uint64_t seed);

/// Precision/covariance for a given graph.
GroundTruth ground_truth_from_graph(WeightedGraph g, double rho);

/// K draws from a Gaussian mixture with `n_comp` equally likely components whose
/// means are drawn once from N(0, mean_scale^2 C); all components share covariance C.
ObservationSet sample_gmm(const GroundTruth& gt, int k, int n_comp, double mean_scale, std::uint64_t seed);

/// K draws from a multivariate t with `dof` degrees of freedom, scaled so that
/// E[x x^T] = C. Throws InvalidDof when dof <= 2.
ObservationSet sample_mvt(const GroundTruth& gt, int k, double dof, std::uint64_t seed);

} // namespace fsgl
