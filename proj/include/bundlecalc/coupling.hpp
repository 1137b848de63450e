#pragma once

// Ad-invariant inner products on u(2): coupling constant and Weinberg angle.

#include <Eigen/Dense>
#include <json.hpp>

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bundlecalc {

inline constexpr double kInvarianceTolerance = 1e-10;
inline constexpr double kRoundTripTolerance = 1e-9;
inline constexpr double kRankTolerance = 1e-8;

// Real Lie algebra of anti-Hermitian matrices with structure constants
// [e_a, e_b] = Σ_c f(a,b,c) e_c.
class LieAlgebra {
public:
    static LieAlgebra from_basis(std::vector<Eigen::MatrixXcd> basis);

    static const LieAlgebra& u1();
    static const LieAlgebra& su2();
    // basis {c, s1, s2, s3}: c = (i/2)·1, s_k = (i/2)·σ_k
    static const LieAlgebra& u2();
    // t_a = (i/2)·λ_a with the Gell-Mann matrices
    static const LieAlgebra& su3();

    std::size_t dim() const noexcept { return dim_; }
    double structure(std::size_t a, std::size_t b, std::size_t c) const { return f_[(a * dim_ + b) * dim_ + c]; }
    const std::vector<Eigen::MatrixXcd>& basis() const noexcept { return basis_; }

    // Matrix of ad(e_z): column x holds the coordinates of [e_z, e_x].
    Eigen::MatrixXd ad(std::size_t z) const;

    double jacobi_residual() const;

private:
    std::size_t dim_ = 0;
    std::vector<Eigen::MatrixXcd> basis_;
    std::vector<double> f_;
};

// ⟨x, y⟩ = −2 tr(xy)
double trace_form(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

// max |⟨[z,x],y⟩ + ⟨x,[z,y]⟩| over basis triples.
double invariance_residual(const LieAlgebra& g, const Eigen::MatrixXd& gram);

// Dimension of the space of Ad-invariant symmetric bilinear forms.
std::size_t invariant_form_dimension(const LieAlgebra& g, double tolerance = kRankTolerance);
std::vector<Eigen::MatrixXd> invariant_form_basis(const LieAlgebra& g, double tolerance = kRankTolerance);

// For u(2): 2 (coupling constant and Weinberg angle).
std::size_t invariant_metric_family_dimension();

struct AdMetric {
    Eigen::Matrix4d gram;
    std::optional<double> coupling;
    std::optional<double> theta_w;
};

// gram = diag(1/g'², 1/g², 1/g², 1/g²) with g' = g·tan θ_W.
AdMetric ad_invariant_metric(double g, double theta_w);

bool is_ad_invariant(const Eigen::MatrixXd& m, double tolerance = kInvarianceTolerance);

struct EwDirections {
    Eigen::Vector4d photon;
    std::array<Eigen::Vector4d, 2> w_plane;
    Eigen::Vector4d z;
};

// φ along the second coordinate axis; all directions are unit vectors for m.
EwDirections ew_directions(const Eigen::Matrix4d& m);
EwDirections ew_directions(const AdMetric& m);

// Largest |m(u, v)| over distinct pairs among photon, w_plane, z.
double max_cross_inner_product(const Eigen::Matrix4d& m, const EwDirections& d);

double weinberg_angle(const Eigen::Matrix4d& m);
double weinberg_angle(const AdMetric& m);

// Names sorted by decreasing coupling, ties broken by name.
std::vector<std::string> strength_order(const std::map<std::string, double>& couplings);

struct CouplingConfig {
    double strong = 1.0;
    double em = 0.30;
    double weak_g = 0.1;
    double weinberg_angle = 0.49;

    std::map<std::string, double> strengths() const;
    static CouplingConfig from_json(const nlohmann::json& j);
};

} // namespace bundlecalc
