#include "spares/orbits.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spares::orbits {

void EarthConstants::validate() const {
    if (!(mu_km3_s2 > 0.0) || !(r_earth_km > 0.0) || !(j2 > 0.0)) {
        throw std::invalid_argument("earth constants must be strictly positive");
    }
}

CircularOrbit::CircularOrbit(double altitude_km, double inclination_deg)
    : altitude_km_(altitude_km), inclination_deg_(inclination_deg) {
    if (!(altitude_km > 0.0)) {
        throw std::invalid_argument("orbit altitude must be > 0 km, got " +
                                    std::to_string(altitude_km));
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw std::invalid_argument("orbit inclination must lie in [0, 180] deg, got " +
                                    std::to_string(inclination_deg));
    }
}

double raan_drift_rate(const CircularOrbit& orbit, const EarthConstants& earth) {
    const double a = orbit.semimajor_axis_km(earth);
    const double n = std::sqrt(earth.mu_km3_s2 / (a * a * a));  // rad/s
    const double r2 = earth.r_earth_km * earth.r_earth_km;
    const double rate = -1.5 * n * r2 * earth.j2 / (a * a) * std::cos(orbit.inclination_rad());
    return rate * kSecondsPerDay;
}

double relative_drift_rate(const CircularOrbit& lower, const CircularOrbit& upper,
                           const EarthConstants& earth) {
    return raan_drift_rate(lower, earth) - raan_drift_rate(upper, earth);
}

double hohmann_time_of_flight_days(double a0_km, double a1_km, const EarthConstants& earth) {
    const double s = a0_km + a1_km;
    return std::numbers::pi * std::sqrt(s * s * s / (8.0 * earth.mu_km3_s2)) / kSecondsPerDay;
}

TransferResult hohmann_transfer(const CircularOrbit& from, const CircularOrbit& to,
                                double m_dry_kg, double v_exhaust_km_s,
                                const EarthConstants& earth) {
    if (from.altitude_km() > to.altitude_km()) {
        throw std::invalid_argument("hohmann_transfer: only raising transfers are supported");
    }
    if (from.inclination_deg() != to.inclination_deg()) {
        throw std::invalid_argument("hohmann_transfer: orbits must be co-planar (equal inclination)");
    }
    if (!(m_dry_kg >= 0.0) || !(v_exhaust_km_s > 0.0)) {
        throw std::invalid_argument("hohmann_transfer: need m_dry >= 0 and v_exhaust > 0");
    }
    const double a0 = from.semimajor_axis_km(earth);
    const double a1 = to.semimajor_axis_km(earth);
    const double mu = earth.mu_km3_s2;

    TransferResult r;
    r.delta_v_km_s = std::sqrt(mu / a0) * (std::sqrt(2.0 * a1 / (a0 + a1)) - 1.0) +
                     std::sqrt(mu / a1) * (1.0 - std::sqrt(2.0 * a0 / (a0 + a1)));
    // Both burns vanish analytically at a0 == a1; rounding can leave -1e-17.
    if (r.delta_v_km_s < 0.0) r.delta_v_km_s = 0.0;
    r.fuel_mass_kg = m_dry_kg * std::expm1(r.delta_v_km_s / v_exhaust_km_s);
    r.time_of_flight_days = hohmann_time_of_flight_days(a0, a1, earth);
    return r;
}

double transfer_time(double delta_raan_rad, const CircularOrbit& parking,
                     const CircularOrbit& plane, const EarthConstants& earth) {
    if (!(delta_raan_rad >= 0.0 && delta_raan_rad <= kTwoPi)) {
        throw std::invalid_argument("transfer_time: delta RAAN must lie in [0, 2pi]");
    }
    if (!(parking.altitude_km() < plane.altitude_km())) {
        throw std::invalid_argument("transfer_time: parking orbit must be below the constellation");
    }
    if (parking.inclination_deg() != plane.inclination_deg()) {
        throw std::invalid_argument("transfer_time: orbits must share the same inclination");
    }
    const double rel = relative_drift_rate(parking, plane, earth);
    if (rel == 0.0) {
        throw std::invalid_argument("transfer_time: zero relative drift, planes never align");
    }
    const double tof = hohmann_time_of_flight_days(parking.semimajor_axis_km(earth),
                                                   plane.semimajor_axis_km(earth), earth);
    return delta_raan_rad / std::abs(rel) + tof;
}

}  // namespace spares::orbits
