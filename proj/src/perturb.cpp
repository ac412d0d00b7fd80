#include "geodim/perturb.hpp"

#include <cmath>
#include <stdexcept>

#include "geodim/cloud_io.hpp"
#include "geodim/parallel.hpp"

namespace geodim {

const char* noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::Isotropic: return "isotropic";
        case NoiseKind::Uncorrelated: return "uncorrelated";
        case NoiseKind::Anisotropic: return "anisotropic";
    }
    return "unknown";
}

NoiseKind noise_kind_from_name(std::string_view name) {
    for (NoiseKind k : {NoiseKind::Isotropic, NoiseKind::Uncorrelated, NoiseKind::Anisotropic})
        if (name == noise_kind_name(k)) return k;
    throw std::invalid_argument("unknown noise kind: " + std::string(name));
}

PointCloud squeeze(const PointCloud& cloud, double epsilon, RandomStream s) {
    if (epsilon < 0.0 || epsilon > 2.0)
        throw std::invalid_argument("squeeze: epsilon must lie in [0, 2]");
    PointCloud out = cloud;
    out.distortion_log.push_back("squeeze epsilon=" + format_double(epsilon) +
                                 " stream=" + s.label());
    if (epsilon == 0.0) return out;
    RandomStream ds = s.child("diag");
    Vector diag(cloud.ambient());
    for (int j = 0; j < cloud.ambient(); ++j)
        diag(j) = ds.uniform(1.0 - epsilon / 2.0, 1.0 + epsilon / 2.0);
    out.data = cloud.data * diag.asDiagonal();
    return out;
}

Matrix noise_factor(NoiseKind kind, int d_a, RandomStream s) {
    switch (kind) {
        case NoiseKind::Isotropic:
            return Matrix::Identity(d_a, d_a) / std::sqrt(static_cast<double>(d_a));
        case NoiseKind::Uncorrelated: {
            Vector lambda(d_a);
            for (int j = 0; j < d_a; ++j) lambda(j) = s.uniform(0.0, 2.0 / d_a);
            const double trace = lambda.sum();
            Matrix a = Matrix::Zero(d_a, d_a);
            for (int j = 0; j < d_a; ++j) a(j, j) = std::sqrt(lambda(j) / trace);
            return a;
        }
        case NoiseKind::Anisotropic: {
            Matrix u(d_a, d_a);
            for (int i = 0; i < d_a; ++i)
                for (int j = 0; j < d_a; ++j) u(i, j) = s.normal();
            return u / u.norm(); // Frobenius; Tr(u u^T)/||u||_F^2 = 1
        }
    }
    throw std::invalid_argument("noise_factor: unknown kind");
}

PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& noise, RandomStream s) {
    if (noise.sigma2 < 0.0)
        throw std::invalid_argument("add_noise: sigma2 must be non-negative");
    PointCloud out = cloud;
    out.distortion_log.push_back(std::string("noise kind=") + noise_kind_name(noise.kind) +
                                 " sigma2=" + format_double(noise.sigma2) +
                                 " stream=" + s.label());
    if (noise.sigma2 == 0.0) return out;
    const int d_a = cloud.ambient();
    const double sigma = std::sqrt(noise.sigma2);
    const Matrix a = noise_factor(noise.kind, d_a, s.child("factor"));
    parallel_for(0, static_cast<std::size_t>(cloud.count()), [&](std::size_t i) {
        RandomStream rs = s.child("row/" + std::to_string(i));
        Vector z(d_a);
        for (int j = 0; j < d_a; ++j) z(j) = rs.normal();
        out.data.row(i) += sigma * (a * z).transpose();
    });
    return out;
}

} // namespace geodim
