#include "nestres/medium.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nestres {

MediumSpec make_medium(double rho_r, double kappa_r, double rho, double kappa) {
    if (!(rho_r > 0.0) || !(kappa_r > 0.0) || !(rho > 0.0) || !(kappa > 0.0)) {
        throw std::invalid_argument("material parameters must be strictly positive");
    }
    MediumSpec m;
    m.rho_r = rho_r;
    m.kappa_r = kappa_r;
    m.rho = rho;
    m.kappa = kappa;
    m.delta = rho_r / rho;
    m.tau = std::sqrt(rho_r * kappa / (rho * kappa_r));
    m.v = std::sqrt(kappa / rho);
    m.v_r = std::sqrt(kappa_r / rho_r);
    return m;
}

MediumSpec medium_from_delta(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("contrast delta must be positive");
    MediumSpec m = make_medium(1.0, 1.0, 1.0 / delta, 1.0 / delta);
    // Keep delta exactly as given rather than 1 / (1 / delta).
    m.delta = delta;
    return m;
}

Wavenumbers wavenumbers(const MediumSpec& medium, Complex omega) {
    return {omega / medium.v, omega / medium.v_r};
}

LayeredGeometry::LayeredGeometry(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw std::invalid_argument("geometry needs at least one layer");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
            throw std::invalid_argument("radius r_" + std::to_string(i + 1) + " must be positive and finite");
        }
        if (i > 0 && !(radii_[i] < radii_[i - 1])) {
            throw std::invalid_argument("radii must be strictly decreasing (r_" + std::to_string(i) +
                                        " <= r_" + std::to_string(i + 1) + ")");
        }
    }
}

double LayeredGeometry::inner_radius(std::size_t j) const {
    if (j == 0 || j > radii_.size()) throw std::out_of_range("layer index out of range");
    return j == radii_.size() ? 0.0 : radii_[j];
}

LayeredGeometry geometry_equidistant(int n_layers) {
    if (n_layers < 1) throw std::invalid_argument("number of layers must be at least 1");
    std::vector<double> r(static_cast<std::size_t>(n_layers));
    for (int i = 1; i <= n_layers; ++i) r[i - 1] = n_layers - i + 1;
    return LayeredGeometry(std::move(r));
}

LayeredGeometry geometry_geometric(int n_layers, double r1, double s) {
    if (n_layers < 1) throw std::invalid_argument("number of layers must be at least 1");
    if (!(r1 > 0.0)) throw std::invalid_argument("outer radius must be positive");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("scale factor must lie in (0, 1)");
    std::vector<double> r(static_cast<std::size_t>(n_layers));
    r[0] = r1;
    for (std::size_t i = 1; i < r.size(); ++i) r[i] = s * r[i - 1];
    return LayeredGeometry(std::move(r));
}

LayerMaterial layer_material(std::size_t j, std::size_t n_layers, const MediumSpec& medium) {
    if (j > n_layers) throw std::out_of_range("layer index " + std::to_string(j) + " exceeds N = " + std::to_string(n_layers));
    if (is_resonator_layer(j)) return {medium.rho_r, medium.kappa_r, Phase::Resonator};
    return {medium.rho, medium.kappa, Phase::Matrix};
}

}  // namespace nestres
