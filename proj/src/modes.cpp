#include "nestres/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "nestres/quadrature.hpp"
#include "nestres/specfun.hpp"

namespace nestres {

NullVector null_vector(const ComplexMatrix& matrix, double tol) {
    const std::size_t n = matrix.rows();
    if (n == 0 || n != matrix.cols()) throw std::invalid_argument("null_vector requires a non-empty square matrix");

    ComplexMatrix u = matrix;
    std::vector<std::size_t> colperm(n);
    std::iota(colperm.begin(), colperm.end(), 0);
    NullVector out;
    out.pivot_moduli.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k;
        std::size_t pc = k;
        double best = -1.0;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                const double m = std::abs(u(i, j));
                if (m > best) {
                    best = m;
                    pr = i;
                    pc = j;
                }
            }
        }
        out.pivot_moduli.push_back(best);
        if (pr != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(u(pr, j), u(k, j));
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(u(i, pc), u(i, k));
            std::swap(colperm[pc], colperm[k]);
        }
        if (k + 1 == n || best == 0.0) continue;
        const Complex p = u(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex l = u(i, k) / p;
            if (l == Complex{0.0, 0.0}) continue;
            u(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) u(i, j) -= l * u(k, j);
        }
    }

    // Back substitution with the unknown at the final (smallest) pivot fixed to one.
    std::vector<Complex> y(n, Complex{0.0, 0.0});
    y[n - 1] = 1.0;
    for (std::size_t kk = n - 1; kk-- > 0;) {
        Complex acc = 0.0;
        for (std::size_t j = kk + 1; j < n; ++j) acc += u(kk, j) * y[j];
        if (u(kk, kk) == Complex{0.0, 0.0}) throw ResidualError("rank deficiency exceeds one", 1.0);
        y[kk] = -acc / u(kk, kk);
    }
    out.coeffs.assign(n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) out.coeffs[colperm[k]] = y[k];

    const auto ax = matrix.multiply(out.coeffs);
    double ax_norm = 0.0;
    double x_norm = 0.0;
    for (const auto& v : ax) ax_norm += std::norm(v);
    for (const auto& v : out.coeffs) x_norm += std::norm(v);
    out.residual = std::sqrt(ax_norm) / (matrix.frobenius_norm() * std::sqrt(x_norm));
    if (!(out.residual <= tol)) {
        throw ResidualError("kernel residual " + std::to_string(out.residual) + " exceeds " + std::to_string(tol) +
                                "; frequency is not a characteristic value",
                            out.residual);
    }
    return out;
}

ModeProfile build_mode(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega, double tol) {
    const NullVector kernel = null_vector(assemble(geom, medium, omega, 0), tol);
    const std::size_t N = geom.n_layers();
    ModeProfile p{omega, std::vector<Complex>(N), std::vector<Complex>(N), 1.0, kernel.residual, geom, medium};
    for (std::size_t j = 0; j < N; ++j) {
        p.a[j] = kernel.coeffs[2 * j];
        p.b[j] = kernel.coeffs[2 * j + 1];
    }
    return p;
}

std::size_t region_of(const LayeredGeometry& geom, double r) {
    const auto radii = geom.radii();
    std::size_t j = 0;
    while (j < radii.size() && r <= radii[j]) ++j;
    return j;
}

namespace {

Complex region_wavenumber(const ModeProfile& p, std::size_t j) {
    const auto [k, k_r] = wavenumbers(p.medium, p.omega);
    return is_resonator_layer(j) ? k_r : k;
}

// Coefficients (b_j, a_{j+1}) of region j; region 0 has only a_1.
std::pair<Complex, Complex> region_coeffs(const ModeProfile& p, std::size_t j) {
    const std::size_t N = p.a.size();
    if (j > N) throw std::out_of_range("region index " + std::to_string(j) + " out of range");
    if (j == 0) return {Complex{0.0, 0.0}, p.a[0]};
    const Complex b = p.b[j - 1];
    const Complex a_next = j < N ? p.a[j] : Complex{0.0, 0.0};
    return {b, a_next};
}

}  // namespace

Complex field_in_region(const ModeProfile& p, std::size_t j, double r) {
    const auto [b, a] = region_coeffs(p, j);
    const Complex z = region_wavenumber(p, j) * r;
    Complex u = 0.0;
    if (b != Complex{0.0, 0.0}) u += b * sph_bessel_j(0, z);
    if (a != Complex{0.0, 0.0}) u += a * sph_hankel1(0, z);
    return p.norm_constant * u;
}

Complex flux_in_region(const ModeProfile& p, std::size_t j, double r) {
    const auto [b, a] = region_coeffs(p, j);
    const Complex kappa = region_wavenumber(p, j);
    const Complex z = kappa * r;
    Complex du = 0.0;
    if (b != Complex{0.0, 0.0}) du += b * sph_bessel_j_prime(0, z);
    if (a != Complex{0.0, 0.0}) du += a * sph_hankel1_prime(0, z);
    const double rho = layer_material(j, p.a.size(), p.medium).density;
    return p.norm_constant * kappa * du / rho;
}

Complex evaluate_field(const ModeProfile& p, double r) {
    if (r < 0.0) throw std::invalid_argument("radius must be non-negative");
    return field_in_region(p, region_of(p.geometry, r), r);
}

double resonator_mass(const ModeProfile& p, int gl_order) {
    const GaussRule rule = gauss_legendre(gl_order);
    const std::size_t N = p.geometry.n_layers();
    double mass = 0.0;
    for (std::size_t j = 1; j <= N; j += 2) {
        const double lo = p.geometry.inner_radius(j);
        const double hi = p.geometry.outer_radius(j);
        mass += integrate(rule, lo, hi, [&](double r) { return std::norm(field_in_region(p, j, r)) * r * r; });
    }
    return 4.0 * std::numbers::pi * mass;
}

ModeProfile normalize(ModeProfile p, int gl_order) {
    const std::size_t N = p.geometry.n_layers();
    const std::size_t inner = N % 2 == 1 ? N : N - 1;
    const Complex b = p.b[inner - 1];
    if (std::abs(b) > 0.0) {
        const Complex phase = std::conj(b) / std::abs(b);
        for (auto& c : p.a) c *= phase;
        for (auto& c : p.b) c *= phase;
        p.b[inner - 1] = std::abs(b);
    }
    p.norm_constant = 1.0;
    const double mass = resonator_mass(p, gl_order);
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::domain_error("mode has zero or non-finite resonator mass");
    p.norm_constant = 1.0 / std::sqrt(mass);
    return p;
}

ModeProfile make_mode(const LayeredGeometry& geom, const MediumSpec& medium, Complex omega) {
    return normalize(build_mode(geom, medium, omega));
}

RadialSamples sample_radial(const ModeProfile& p, double r_max, int npts) {
    if (npts < 2) throw std::invalid_argument("radial sampling needs at least two points");
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    RadialSamples out;
    out.rows.reserve(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) {
        const double r = r_max * static_cast<double>(i) / (npts - 1);
        const std::size_t region = region_of(p.geometry, r);
        out.rows.push_back({r, field_in_region(p, region, r), region});
    }
    out.markers.assign(p.geometry.radii().begin(), p.geometry.radii().end());
    return out;
}

PlaneSamples sample_plane(const ModeProfile& p, double half_extent, int resolution) {
    if (!(half_extent > 0.0)) throw std::invalid_argument("half_extent must be positive");
    if (resolution < 16) throw std::invalid_argument("plane resolution must be at least 16");
    PlaneSamples out;
    out.resolution = resolution;
    out.half_extent = half_extent;
    out.coords.resize(static_cast<std::size_t>(resolution));
    // Integer-symmetric numerators make coords[i] == -coords[res - 1 - i] exactly.
    for (int i = 0; i < resolution; ++i)
        out.coords[i] = half_extent * static_cast<double>(2 * i - (resolution - 1)) / (resolution - 1);
    out.re_u.resize(static_cast<std::size_t>(resolution) * resolution);
    out.im_u.resize(out.re_u.size());
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const double r = std::hypot(out.coords[ix], out.coords[iy]);
            const Complex u = evaluate_field(p, r);
            const std::size_t at = static_cast<std::size_t>(iy) * resolution + ix;
            out.re_u[at] = u.real();
            out.im_u[at] = u.imag();
        }
    }
    out.circles.assign(p.geometry.radii().begin(), p.geometry.radii().end());
    return out;
}

std::vector<LayerFlatness> flatness(const ModeProfile& p, int points) {
    if (points < 2) throw std::invalid_argument("flatness needs at least two points per layer");
    std::vector<LayerFlatness> out;
    const std::size_t N = p.geometry.n_layers();
    for (std::size_t j = 1; j <= N; j += 2) {
        const double lo = p.geometry.inner_radius(j);
        const double hi = p.geometry.outer_radius(j);
        double mx = 0.0;
        double mn = std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (int i = 0; i < points; ++i) {
            const double r = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
            const double m = std::abs(field_in_region(p, j, r));
            mx = std::max(mx, m);
            mn = std::min(mn, m);
            sum += m;
        }
        const double mean = sum / points;
        out.push_back({j, mean > 0.0 ? (mx - mn) / mean : std::numeric_limits<double>::infinity()});
    }
    return out;
}

}  // namespace nestres
