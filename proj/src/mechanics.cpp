#include "pendtop/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pendtop::mechanics {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PendulumParams::PendulumParams(double m1, double m2, double l1, double l2, double g)
    : m1(m1), m2(m2), l1(l1), l2(l2), g(g) {
    for (double v : {m1, m2, l1, l2, g})
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("pendulum parameters must be finite and positive");
}

bool PendulumParams::degenerate(double tol_k) const { return std::abs(slope() - 1.0) < tol_k; }

double slope(const PendulumParams& params) { return params.slope(); }

std::pair<double, double> ConfigPoint::heights(const PendulumParams& params) const {
    double h1 = params.l1 * z1();
    return {h1, params.l2 * z2() + h1};
}

bool ConfigPoint::unit_norms(double tol) const {
    return std::abs(q1.norm() - 1.0) <= tol && std::abs(q2.norm() - 1.0) <= tol;
}

void ConfigPoint::require_unit_norms(double tol) const {
    if (!unit_norms(tol))
        throw std::invalid_argument("configuration point violates unit-sphere constraints");
}

double potential(const PendulumParams& params, const ConfigPoint& c) {
    return params.g * params.m2 * params.l2 * (params.slope() * c.z1() + c.z2());
}

std::pair<Vec3, Vec3> momenta_from_velocities(const PendulumParams& params, const Vec3& v1,
                                              const Vec3& v2) {
    Vec3 coupled = params.l1 * v1 + params.l2 * v2;
    Vec3 p1 = params.m1 * params.l1 * params.l1 * v1 + params.m2 * params.l1 * coupled;
    Vec3 p2 = params.m2 * params.l2 * coupled;
    return {p1, p2};
}

std::pair<Vec3, Vec3> velocities_from_momenta(const PendulumParams& params,
                                              const PhasePoint& p) {
    const double m1 = params.m1, m2 = params.m2, l1 = params.l1, l2 = params.l2;
    Vec3 v1 = (p.p1 / (m1 * l1) - p.p2 / (m1 * l2)) / l1;
    Vec3 v2 = (p.p2 / (m2 * l2) - p.p1 / (m1 * l1) + p.p2 / (m1 * l2)) / l2;
    return {v1, v2};
}

double kinetic_energy(const PendulumParams& params, const PhasePoint& p) {
    Vec3 rel = p.p1 / params.l1 - p.p2 / params.l2;
    Vec3 outer = p.p2 / params.l2;
    return 0.5 * (rel.squaredNorm() / params.m1 + outer.squaredNorm() / params.m2);
}

double hamiltonian(const PendulumParams& params, const PhasePoint& p) {
    return kinetic_energy(params, p) + potential(params, p.config);
}

std::array<double, 4> constraint_residuals(const PendulumParams& params, const PhasePoint& p) {
    const double m1 = params.m1, m2 = params.m2, l1 = params.l1, l2 = params.l2;
    const auto& q1 = p.config.q1;
    const auto& q2 = p.config.q2;
    double g1 = q1.dot(q1) - 1.0;
    double g2 = q2.dot(q2) - 1.0;
    double g3 = q1.dot(p.p1 / (m1 * l1 * l1) - p.p2 / (m1 * l1 * l2));
    double g4 = q2.dot(p.p2 / (m2 * l2 * l2) - p.p1 / (m1 * l1 * l2) + p.p2 / (m1 * l2 * l2));
    return {g1, g2, g3, g4};
}

namespace {

// Projected gradient of V on S^2 x S^2 stacked as a 6-vector.
Eigen::Matrix<double, 6, 1> projected_gradient(const PendulumParams& params,
                                               const ConfigPoint& c) {
    const double c1 = params.g * params.m2 * params.l2 * params.slope();
    const double c2 = params.g * params.m2 * params.l2;
    Vec3 e3(0, 0, 1);
    Vec3 g1 = c1 * (e3 - c.z1() * c.q1);
    Vec3 g2 = c2 * (e3 - c.z2() * c.q2);
    Eigen::Matrix<double, 6, 1> out;
    out << g1, g2;
    return out;
}

// Orthonormal tangent basis at a point of S^2.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& q) {
    Vec3 a = std::abs(q[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    Vec3 e1 = (a - q.dot(a) * q).normalized();
    Vec3 e2 = q.cross(e1);
    return {e1, e2};
}

Vec3 exp_chart(const Vec3& base, const Vec3& e1, const Vec3& e2, double u, double v) {
    double r = std::hypot(u, v);
    if (r < 1e-300) return base;
    Vec3 dir = (u * e1 + v * e2) / r;
    return std::cos(r) * base + std::sin(r) * dir;
}

// Morse index of V at a (candidate) critical point: negative eigenvalues of
// the finite-difference Hessian in a 4-dimensional exponential chart.
int numeric_morse_index(const PendulumParams& params, const ConfigPoint& c, double scale) {
    auto [a1, b1] = tangent_basis(c.q1);
    auto [a2, b2] = tangent_basis(c.q2);
    auto value = [&](const std::array<double, 4>& x) {
        ConfigPoint cc{exp_chart(c.q1, a1, b1, x[0], x[1]),
                       exp_chart(c.q2, a2, b2, x[2], x[3])};
        return potential(params, cc);
    };
    const double h = 1e-4;
    Eigen::Matrix4d hess;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            std::array<double, 4> x{};
            double f = 0.0;
            if (i == j) {
                x[i] = h;
                f += value(x);
                x[i] = -h;
                f += value(x);
                x[i] = 0;
                f -= 2.0 * value(x);
                hess(i, i) = f / (h * h);
            } else {
                x[i] = h;
                x[j] = h;
                f += value(x);
                x[j] = -h;
                f -= value(x);
                x[i] = -h;
                f += value(x);
                x[j] = h;
                f -= value(x);
                hess(i, j) = hess(j, i) = f / (4.0 * h * h);
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(hess);
    int negatives = 0;
    for (int i = 0; i < 4; ++i)
        if (solver.eigenvalues()[i] < -1e-8 * scale) ++negatives;
    return negatives;
}

}  // namespace

std::string to_string(CriticalLabel label) {
    switch (label) {
        case CriticalLabel::P1: return "P1";
        case CriticalLabel::P2: return "P2";
        case CriticalLabel::P3: return "P3";
        case CriticalLabel::P4: return "P4";
    }
    return "?";
}

CriticalPointSet critical_points(const PendulumParams& params) {
    const double k = params.slope();
    const double unit = params.g * params.m2 * params.l2;
    const Vec3 down(0, 0, -1), up(0, 0, 1);

    CriticalPointSet out;
    out.points = {
        {CriticalLabel::P1, {down, down}, unit * (-k - 1.0), 0},
        {CriticalLabel::P2, {down, up}, unit * (-k + 1.0), 2},
        {CriticalLabel::P3, {up, down}, unit * (k - 1.0), 2},
        {CriticalLabel::P4, {up, up}, unit * (k + 1.0), 4},
    };
    out.degenerate_slope_warning = params.degenerate();

    const double scale = params.potential_scale();
    for (const auto& cp : out.points) {
        if (projected_gradient(params, cp.config).norm() > 1e-8 * scale)
            throw std::logic_error("critical point failed the gradient check");
        if (numeric_morse_index(params, cp.config, scale) != cp.morse_index)
            throw std::logic_error("critical point failed the Hessian index check");
    }
    return out;
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Empty: return "Empty";
        case RegimeTag::M1: return "M1";
        case RegimeTag::M2: return "M2";
        case RegimeTag::M3: return "M3";
        case RegimeTag::M4: return "M4";
        case RegimeTag::Critical: return "Critical";
    }
    return "?";
}

EnergyRegime classify_energy(const PendulumParams& params, double h) {
    if (params.degenerate())
        throw DegenerateSlopeError(
            "slope k = 1: the middle critical values coincide and the four-band "
            "classification is undefined");

    auto cps = critical_points(params);
    std::array<double, 4> values;
    for (int i = 0; i < 4; ++i) values[i] = cps.points[i].potential_value;
    std::sort(values.begin(), values.end());   // k < 1 swaps the middle two

    const double tol = kTolCritRel * params.potential_scale();
    for (double v : values)
        if (std::abs(h - v) <= tol) return {RegimeTag::Critical, v, v};

    if (h < values[0]) return {RegimeTag::Empty, -kInf, values[0]};
    if (h < values[1]) return {RegimeTag::M1, values[0], values[1]};
    if (h < values[2]) return {RegimeTag::M2, values[1], values[2]};
    if (h < values[3]) return {RegimeTag::M3, values[2], values[3]};
    return {RegimeTag::M4, values[3], kInf};
}

bool in_accessible_region(const PendulumParams& params, double h, const ConfigPoint& c) {
    return potential(params, c) <= h;
}

namespace {

homology::HomologyProfile integer_rows(std::vector<int> free_ranks,
                                       int torsion_degree = -1, long long divisor = 0) {
    homology::HomologyProfile p(std::move(free_ranks));
    if (torsion_degree >= 0) p.set_torsion(torsion_degree, {homology::Int(divisor)});
    return p;
}

}  // namespace

TopologyReport expected_topology(RegimeTag tag) {
    using homology::HomologyProfile;
    switch (tag) {
        case RegimeTag::M1:
            return {"S^7",
                    {1, 0, 0, 0, 0, 0, 0, 1},
                    integer_rows({1, 0, 0, 0, 0, 0, 0, 1}),
                    "D^4",
                    {1, 0, 0, 0, 0},
                    "S^3",
                    HomologyProfile::sphere(3)};
        case RegimeTag::M2:
            return {"S^2 x S^5",
                    {1, 0, 1, 0, 0, 1, 0, 1},
                    integer_rows({1, 0, 1, 0, 0, 1, 0, 1}),
                    "D^2 x S^2",
                    {1, 0, 1, 0, 0},
                    "S^2 x S^1",
                    HomologyProfile({1, 1, 1, 1})};
        case RegimeTag::M3:
            return {"(S^2 x S^5) # (S^2 x S^5)",
                    {1, 0, 2, 0, 0, 2, 0, 1},
                    integer_rows({1, 0, 2, 0, 0, 2, 0, 1}),
                    "Q minus D^4",
                    {1, 0, 2, 0, 0},
                    "S^3",
                    HomologyProfile::sphere(3)};
        case RegimeTag::M4:
            return {"T1(S^2 x S^2)",
                    {1, 0, 2, 0, 0, 2, 0, 1},
                    integer_rows({1, 0, 2, 0, 0, 2, 0, 1}, 3, 4),
                    "Q",
                    {1, 0, 2, 0, 1},
                    "",
                    HomologyProfile()};
        default:
            throw NotApplicableError("no reference topology for tag " + to_string(tag));
    }
}

TopologyReport expected_topology(const EnergyRegime& regime) {
    return expected_topology(regime.tag);
}

}  // namespace pendtop::mechanics
