#pragma once
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pendtop/homology.hpp"

namespace pendtop::mechanics {

using Vec3 = Eigen::Vector3d;

struct DegenerateSlopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kTolUnit = 1e-9;    // unit-norm constraint residual
inline constexpr double kTolCon = 1e-9;     // momentum constraint residual
inline constexpr double kTolK = 1e-12;      // slope degeneracy threshold
inline constexpr double kTolCritRel = 1e-9; // critical-value margin, times potential scale

/**
 * Two coupled spherical pendula in a uniform gravitational field.
 * The slope k = (m1+m2)*l1 / (m2*l2) controls the ordering of the two
 * middle critical values of the potential.
 */
struct PendulumParams {
    double m1, m2, l1, l2, g;

    PendulumParams(double m1, double m2, double l1, double l2, double g);

    double slope() const { return (m1 + m2) * l1 / (m2 * l2); }
    bool degenerate(double tol_k = kTolK) const;
    /// Max |V| over the configuration space: g*m2*l2*(k+1).
    double potential_scale() const { return g * m2 * l2 * (slope() + 1.0); }
};

double slope(const PendulumParams& params);

/// Point of the configuration space S^2 x S^2: two unit direction vectors.
struct ConfigPoint {
    Vec3 q1, q2;

    double z1() const { return q1[2]; }
    double z2() const { return q2[2]; }
    /// Bob heights above the pivot: h1 = l1*z1, h2 = l2*z2 + h1.
    std::pair<double, double> heights(const PendulumParams& params) const;
    bool unit_norms(double tol = kTolUnit) const;
    void require_unit_norms(double tol = kTolUnit) const;
};

/// Point of the phase space T*(S^2 x S^2).
struct PhasePoint {
    ConfigPoint config;
    Vec3 p1, p2;
};

double potential(const PendulumParams& params, const ConfigPoint& c);

/// Legendre transform, momentum side:
/// p1 = m1*l1^2*v1 + m2*l1*(l1*v1 + l2*v2), p2 = m2*l2*(l1*v1 + l2*v2).
std::pair<Vec3, Vec3> momenta_from_velocities(const PendulumParams& params, const Vec3& v1,
                                              const Vec3& v2);
/// Inverse Legendre transform, velocity side.
std::pair<Vec3, Vec3> velocities_from_momenta(const PendulumParams& params,
                                              const PhasePoint& p);

double kinetic_energy(const PendulumParams& params, const PhasePoint& p);
double hamiltonian(const PendulumParams& params, const PhasePoint& p);

/// The four flow constraints (g1-1, g2-1, g3, g4): sphere constraints and
/// their momentum-level consequences q_i . dq_i/dt = 0.
std::array<double, 4> constraint_residuals(const PendulumParams& params, const PhasePoint& p);

enum class CriticalLabel { P1, P2, P3, P4 };
std::string to_string(CriticalLabel label);

struct CriticalPointInfo {
    CriticalLabel label;
    ConfigPoint config;       // z components are exactly -1 or +1
    double potential_value;
    int morse_index;          // 0, 2, 2, 4
};

struct CriticalPointSet {
    std::vector<CriticalPointInfo> points;   // P1..P4 in label order
    bool degenerate_slope_warning = false;   // V(P2) == V(P3) within tolerance
};

/**
 * The four critical points of the potential: each pendulum hanging down
 * or flipped up. Values are g*m2*l2*(+-k +- 1); Morse indices 0, 2, 2, 4.
 * Each point is also verified numerically: the projected gradient must
 * vanish and the chart Hessian signature must match the index.
 */
CriticalPointSet critical_points(const PendulumParams& params);

enum class RegimeTag { Empty, M1, M2, M3, M4, Critical };
std::string to_string(RegimeTag tag);

struct EnergyRegime {
    RegimeTag tag;
    double lower, upper;   // bracketing critical values; +-inf on open ends
};

/**
 * Locate an energy value among the four bands cut out by the critical
 * values of the potential. Throws DegenerateSlopeError when k == 1 within
 * tolerance (the middle two critical values coincide and the four-band
 * split does not exist). For k < 1 the ordering swaps the two middle
 * critical points; band labels always follow increasing energy.
 */
EnergyRegime classify_energy(const PendulumParams& params, double h);

/// True when the configuration is energetically reachable: V(c) <= h.
bool in_accessible_region(const PendulumParams& params, double h, const ConfigPoint& c);

/**
 * Reference topology of a regular energy surface: homeomorphism type,
 * Betti numbers, integer homology, plus the accessible region in the
 * configuration space and its boundary.
 */
struct TopologyReport {
    std::string space;                          // e.g. "S^2 x S^5"
    std::array<int, 8> betti;                   // degrees 0..7
    homology::HomologyProfile integer_homology;
    std::string region;                         // accessible region, e.g. "D^2 x S^2"
    std::array<int, 5> region_betti;            // degrees 0..4
    std::string region_boundary;                // "" when the region is all of Q
    homology::HomologyProfile region_boundary_profile;
};

TopologyReport expected_topology(RegimeTag tag);
TopologyReport expected_topology(const EnergyRegime& regime);

}  // namespace pendtop::mechanics
