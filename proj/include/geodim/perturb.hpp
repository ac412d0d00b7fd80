#pragma once

#include <string>

#include "geodim/manifold.hpp"
#include "geodim/rng.hpp"

namespace geodim {

enum class NoiseKind { Isotropic, Uncorrelated, Anisotropic };

const char* noise_kind_name(NoiseKind kind);
NoiseKind noise_kind_from_name(std::string_view name);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::Isotropic;
    double sigma2 = 0.0;
};

/// One diagonal matrix per cloud, entries uniform on [1 - eps/2, 1 + eps/2],
/// applied to every row. eps = 0 leaves the samples bitwise unchanged.
/// eps outside [0, 2] -> std::invalid_argument.
PointCloud squeeze(const PointCloud& cloud, double epsilon, RandomStream s);

/// Additive Gaussian noise x -> x + sigma * A z with Tr(A A^T) = 1:
///   Isotropic     A = I / sqrt(d_a)
///   Uncorrelated  A = Lambda^{1/2} / sqrt(Tr Lambda), Lambda_jj ~ U(0, 2/d_a)
///   Anisotropic   A = u / ||u||_F, u a d_a x d_a standard-normal matrix
/// One factor per cloud; per-row z from row-labeled sub-streams.
PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& noise, RandomStream s);

/// The factor A used by add_noise, rebuilt from the same stream; exposed so
/// its covariance can be checked externally.
Matrix noise_factor(NoiseKind kind, int d_a, RandomStream s);

} // namespace geodim
