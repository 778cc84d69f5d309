// Circular-orbit mechanics used by the spare supply chain:
// J2 nodal regression, Hohmann transfers and drift-alignment wait times.
#pragma once

#include <numbers>

namespace spares::orbits {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct EarthConstants {
    double mu_km3_s2 = 398600.4418;
    double r_earth_km = 6378.137;
    double j2 = 0.00108263;

    /// Throws std::invalid_argument unless every constant is strictly positive.
    void validate() const;
};

/// Circular orbit given by altitude above the mean Earth radius and inclination.
class CircularOrbit {
public:
    /// Throws std::invalid_argument if altitude <= 0 or inclination outside [0, 180] deg.
    CircularOrbit(double altitude_km, double inclination_deg);

    double altitude_km() const { return altitude_km_; }
    double inclination_deg() const { return inclination_deg_; }
    double inclination_rad() const { return deg_to_rad(inclination_deg_); }
    double semimajor_axis_km(const EarthConstants& earth) const {
        return earth.r_earth_km + altitude_km_;
    }

private:
    double altitude_km_;
    double inclination_deg_;
};

struct TransferResult {
    double delta_v_km_s = 0.0;
    double fuel_mass_kg = 0.0;
    double time_of_flight_days = 0.0;
};

/// Secular RAAN rate dOmega/dt = -(3 n R^2 J2 / 2 a^2) cos i, in rad/day.
double raan_drift_rate(const CircularOrbit& orbit, const EarthConstants& earth = {});

/// Raan drift of `lower` relative to `upper` (rad/day).
double relative_drift_rate(const CircularOrbit& lower, const CircularOrbit& upper,
                           const EarthConstants& earth = {});

/// Hohmann time of flight (days): half the period of the transfer ellipse.
double hohmann_time_of_flight_days(double a0_km, double a1_km, const EarthConstants& earth = {});

/// Co-planar raising Hohmann transfer. Fuel follows the rocket equation with
/// the given dry mass and effective exhaust velocity.
/// Throws std::invalid_argument for lowering transfers or differing inclinations.
TransferResult hohmann_transfer(const CircularOrbit& from, const CircularOrbit& to,
                                double m_dry_kg, double v_exhaust_km_s,
                                const EarthConstants& earth = {});

/// Drift wait plus Hohmann TOF (days) when the parking plane still has to
/// regress `delta_raan_rad` (in [0, 2pi]) to line up with the constellation plane.
/// Throws std::invalid_argument on a zero relative drift rate or bad geometry.
double transfer_time(double delta_raan_rad, const CircularOrbit& parking,
                     const CircularOrbit& plane, const EarthConstants& earth = {});

}  // namespace spares::orbits
