#include "bundlecalc/coupling.hpp"

#include "bundlecalc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bundlecalc {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Eigen::MatrixXcd pauli(int k) {
    Eigen::MatrixXcd m(2, 2);
    switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

std::vector<Eigen::MatrixXcd> gell_mann() {
    std::vector<Eigen::MatrixXcd> out(8, Eigen::MatrixXcd::Zero(3, 3));
    out[0](0, 1) = out[0](1, 0) = 1;
    out[1](0, 1) = -I;
    out[1](1, 0) = I;
    out[2](0, 0) = 1;
    out[2](1, 1) = -1;
    out[3](0, 2) = out[3](2, 0) = 1;
    out[4](0, 2) = -I;
    out[4](2, 0) = I;
    out[5](1, 2) = out[5](2, 1) = 1;
    out[6](1, 2) = -I;
    out[6](2, 1) = I;
    out[7](0, 0) = out[7](1, 1) = 1.0 / std::sqrt(3.0);
    out[7](2, 2) = -2.0 / std::sqrt(3.0);
    return out;
}

void require_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw DomainError("bilinear form must be square");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kInvarianceTolerance)
        throw DomainError("bilinear form must be symmetric");
}

void require_metric(const Eigen::Matrix4d& m) {
    require_symmetric(m);
    if (!m.allFinite()) throw DomainError("degenerate metric: non-finite entries");
    Eigen::LLT<Eigen::Matrix4d> llt(m);
    if (llt.info() != Eigen::Success) throw DomainError("degenerate metric: not positive definite");
    if (!is_ad_invariant(m)) throw DomainError("metric is not Ad-invariant");
}

} // namespace

double trace_form(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) { return -2.0 * (x * y).trace().real(); }

LieAlgebra LieAlgebra::from_basis(std::vector<Eigen::MatrixXcd> basis) {
    LieAlgebra g;
    g.dim_ = basis.size();
    g.basis_ = std::move(basis);
    const std::size_t n = g.dim_;

    Eigen::MatrixXd gram(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) gram(a, b) = trace_form(g.basis_[a], g.basis_[b]);
    const Eigen::LDLT<Eigen::MatrixXd> solver(gram);

    g.f_.assign(n * n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Eigen::MatrixXcd bracket = g.basis_[a] * g.basis_[b] - g.basis_[b] * g.basis_[a];
            Eigen::VectorXd rhs(n);
            for (std::size_t c = 0; c < n; ++c) rhs(c) = trace_form(g.basis_[c], bracket);
            const Eigen::VectorXd coords = solver.solve(rhs);
            for (std::size_t c = 0; c < n; ++c) {
                // snap round-off so the stored table is exact for the standard bases
                const double v = coords(c);
                g.f_[(a * n + b) * n + c] = std::abs(v - std::round(v)) < 1e-12 ? std::round(v) : v;
            }
        }
    }
    return g;
}

const LieAlgebra& LieAlgebra::u1() {
    static const LieAlgebra g = from_basis({Eigen::MatrixXcd::Identity(1, 1) * (I / std::sqrt(2.0))});
    return g;
}

const LieAlgebra& LieAlgebra::su2() {
    static const LieAlgebra g = from_basis({pauli(1) * (I / 2.0), pauli(2) * (I / 2.0), pauli(3) * (I / 2.0)});
    return g;
}

const LieAlgebra& LieAlgebra::u2() {
    static const LieAlgebra g = from_basis({Eigen::MatrixXcd::Identity(2, 2) * (I / 2.0), pauli(1) * (I / 2.0),
                                            pauli(2) * (I / 2.0), pauli(3) * (I / 2.0)});
    return g;
}

const LieAlgebra& LieAlgebra::su3() {
    static const LieAlgebra g = [] {
        std::vector<Eigen::MatrixXcd> basis;
        for (const auto& l : gell_mann()) basis.push_back(l * (I / 2.0));
        return from_basis(std::move(basis));
    }();
    return g;
}

Eigen::MatrixXd LieAlgebra::ad(std::size_t z) const {
    Eigen::MatrixXd m(dim_, dim_);
    for (std::size_t x = 0; x < dim_; ++x)
        for (std::size_t c = 0; c < dim_; ++c) m(c, x) = structure(z, x, c);
    return m;
}

double LieAlgebra::jacobi_residual() const {
    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 in coordinates
    double worst = 0.0;
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b)
            for (std::size_t c = 0; c < dim_; ++c)
                for (std::size_t e = 0; e < dim_; ++e) {
                    double sum = 0.0;
                    for (std::size_t d = 0; d < dim_; ++d)
                        sum += structure(b, c, d) * structure(a, d, e) + structure(c, a, d) * structure(b, d, e)
                             + structure(a, b, d) * structure(c, d, e);
                    worst = std::max(worst, std::abs(sum));
                }
    return worst;
}

double invariance_residual(const LieAlgebra& g, const Eigen::MatrixXd& gram) {
    if (static_cast<std::size_t>(gram.rows()) != g.dim()) throw DomainError("form dimension does not match algebra");
    double worst = 0.0;
    for (std::size_t z = 0; z < g.dim(); ++z) {
        const Eigen::MatrixXd a = g.ad(z);
        worst = std::max(worst, (a.transpose() * gram + gram * a).cwiseAbs().maxCoeff());
    }
    return worst;
}

namespace {

// Columns: symmetric basis forms E_ij (i ≤ j); rows: all (z, x, y) constraints.
Eigen::MatrixXd invariance_system(const LieAlgebra& g, std::vector<std::pair<std::size_t, std::size_t>>& slots) {
    const std::size_t n = g.dim();
    slots.clear();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) slots.emplace_back(i, j);

    Eigen::MatrixXd system(n * n * n, slots.size());
    for (std::size_t col = 0; col < slots.size(); ++col) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
        e(slots[col].first, slots[col].second) = e(slots[col].second, slots[col].first) = 1.0;
        for (std::size_t z = 0; z < n; ++z) {
            const Eigen::MatrixXd a = g.ad(z);
            const Eigen::MatrixXd r = a.transpose() * e + e * a;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) system((z * n + x) * n + y, col) = r(x, y);
        }
    }
    return system;
}

} // namespace

std::vector<Eigen::MatrixXd> invariant_form_basis(const LieAlgebra& g, double tolerance) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    const Eigen::MatrixXd system = invariance_system(g, slots);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::MatrixXd& v = svd.matrixV();

    std::vector<Eigen::MatrixXd> out;
    const std::size_t n = g.dim();
    for (Eigen::Index col = 0; col < v.cols(); ++col) {
        const double s = col < sv.size() ? sv(col) : 0.0;
        if (s >= tolerance) continue;
        Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t k = 0; k < slots.size(); ++k)
            form(slots[k].first, slots[k].second) = form(slots[k].second, slots[k].first) = v(k, col);
        out.push_back(form);
    }
    return out;
}

std::size_t invariant_form_dimension(const LieAlgebra& g, double tolerance) {
    return invariant_form_basis(g, tolerance).size();
}

std::size_t invariant_metric_family_dimension() { return invariant_form_dimension(LieAlgebra::u2()); }

AdMetric ad_invariant_metric(double g, double theta_w) {
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("coupling constant must be positive");
    if (!(theta_w > 0.0 && theta_w < std::numbers::pi / 2)) throw DomainError("Weinberg angle must lie in (0, pi/2)");
    const double g_prime = g * std::tan(theta_w);
    AdMetric m;
    m.gram = Eigen::Vector4d(1.0 / (g_prime * g_prime), 1.0 / (g * g), 1.0 / (g * g), 1.0 / (g * g)).asDiagonal();
    m.coupling = g;
    m.theta_w = theta_w;
    return m;
}

bool is_ad_invariant(const Eigen::MatrixXd& m, double tolerance) {
    require_symmetric(m);
    if (m.rows() != 4) throw DomainError("u(2) forms are 4x4");
    return invariance_residual(LieAlgebra::u2(), m) < tolerance;
}

EwDirections ew_directions(const Eigen::Matrix4d& m) {
    require_metric(m);
    const auto inner = [&](const Eigen::Vector4d& a, const Eigen::Vector4d& b) { return a.dot(m * b); };
    const auto unit = [&](const Eigen::Vector4d& a) { return Eigen::Vector4d(a / std::sqrt(inner(a, a))); };

    EwDirections d;
    // c + s3 = i·diag(1, 0): kills φ = e₂, acts on φ^⊥
    d.photon = unit(Eigen::Vector4d(1, 0, 0, 1));
    d.w_plane[0] = unit(Eigen::Vector4d(0, 1, 0, 0));
    const Eigen::Vector4d s2(0, 0, 1, 0);
    d.w_plane[1] = unit(s2 - inner(s2, d.w_plane[0]) * d.w_plane[0]);
    // metric complement of the photon inside span{c, s3}
    const double alpha = m(0, 3) + m(3, 3);
    const double beta = -(m(0, 0) + m(3, 0));
    d.z = unit(Eigen::Vector4d(alpha, 0, 0, beta));
    return d;
}

EwDirections ew_directions(const AdMetric& m) { return ew_directions(m.gram); }

double max_cross_inner_product(const Eigen::Matrix4d& m, const EwDirections& d) {
    const std::array<Eigen::Vector4d, 4> v{d.photon, d.w_plane[0], d.w_plane[1], d.z};
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, std::abs(v[i].dot(m * v[j])));
    return worst;
}

double weinberg_angle(const Eigen::Matrix4d& m) {
    require_metric(m);
    return std::atan(std::sqrt(m(3, 3) / m(0, 0)));
}

double weinberg_angle(const AdMetric& m) { return weinberg_angle(m.gram); }

std::vector<std::string> strength_order(const std::map<std::string, double>& couplings) {
    std::vector<std::pair<std::string, double>> items(couplings.begin(), couplings.end());
    for (const auto& [name, value] : items)
        if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("coupling for '" + name + "' must be positive");
    // map iteration is already name-ordered; stable sort keeps that for ties
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> out;
    for (auto& [name, value] : items) out.push_back(std::move(name));
    return out;
}

std::map<std::string, double> CouplingConfig::strengths() const {
    return {{"strong", strong}, {"electromagnetic", em}, {"weak", weak_g}};
}

CouplingConfig CouplingConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("coupling configuration must be a JSON object");
    CouplingConfig c;
    const auto read = [&](const char* key, double& into) {
        if (const auto it = j.find(key); it != j.end()) {
            if (!it->is_number()) throw ParseError(std::string("coupling configuration: '") + key + "' must be a number");
            into = it->get<double>();
        }
    };
    read("strong", c.strong);
    read("em", c.em);
    read("weak_g", c.weak_g);
    read("weinberg_angle", c.weinberg_angle);
    return c;
}

} // namespace bundlecalc
