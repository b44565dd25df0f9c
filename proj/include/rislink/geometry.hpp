#pragma once

// Link geometry, angle conventions and the frame transformations between the
// global RIS-centred frame, spherical coordinates and the tilted beam frame.
//
// All angles are radians. The RIS sits at the origin with its normal along +z.

#include <optional>

namespace rislink {

/// Carrier and receiver parameters. P_t and N_o only ever appear as a ratio,
/// so only the ratio is stored.
struct PhysicalConfig {
    double frequency = 0.0;             // Hz
    double wavelength = 0.0;            // m, c/f
    double wavenumber = 0.0;            // rad/m, 2*pi/lambda
    double power_noise_ratio = 0.0;     // P_t/N_o, linear
    double reflection_magnitude = 0.0;  // |R| in [0, 1]
    double receiver_gain = 0.0;         // G_r, linear
    double receiver_aperture = 0.0;     // m^2, G_r lambda^2 / (4 pi)

    /// Derives wavelength, wavenumber and aperture; throws ValidationError on
    /// out-of-range inputs.
    static PhysicalConfig make(double frequency_hz, double power_noise_ratio,
                               double reflection_magnitude, double receiver_gain);
};

/// Inputs from which a LinkGeometry is built. The footprint radius may be
/// given directly, derived from the AP distance and gain, or both (in which
/// case the two must agree).
struct GeometryInput {
    std::optional<double> footprint_radius;  // w_RIS, m
    std::optional<double> ap_distance;       // d_AP, m
    std::optional<double> ap_gain;           // G_AP, linear
    double ue_distance = 0.0;                // d_UE, m
    double ue_elevation = 0.0;               // theta_UE, rad
    double ue_azimuth = 0.0;                 // phi_UE, rad; only 0 is supported
    // Carried for provenance only; the field model never reads them.
    double ap_elevation = 0.0;
    double ap_azimuth = 0.0;
};

struct LinkGeometry {
    double footprint_radius = 0.0;  // w_RIS, m
    double rayleigh_length = 0.0;   // z_R, m
    double ue_distance = 0.0;       // d_UE, m
    double ue_elevation = 0.0;      // theta_UE, rad
    double ue_azimuth = 0.0;        // phi_UE, rad (always 0)
    std::optional<double> ap_distance;
    std::optional<double> ap_gain;
    double ap_elevation = 0.0;
    double ap_azimuth = 0.0;

    static LinkGeometry make(const PhysicalConfig& cfg, const GeometryInput& in);
};

/// Relative tolerance when both w_RIS and (d_AP, G_AP) are supplied.
inline constexpr double kFootprintConsistencyTol = 1e-9;

/// Rayleigh length z_R = k_o w^2 / 2.
double rayleigh_length(double wavenumber, double footprint_radius);

/// Footprint radius implied by the AP: w^2 = 8 d_AP^2 / G_AP.
double footprint_from_access_point(double ap_distance, double ap_gain);

struct BeamDirection {
    double elevation = 0.0;  // theta_B in [0, pi/2)
    double azimuth = 0.0;    // phi_B in (-pi, pi]
};

struct ObservationPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double radius() const;
};

/// Coordinates in the non-orthogonal beam frame (x_B || x, y_B || y).
struct BeamCoords {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct SphericalCoords {
    double radius = 0.0;
    double elevation = 0.0;
    double azimuth = 0.0;
};

ObservationPoint spherical_to_cartesian(double distance, double elevation, double azimuth);
SphericalCoords cartesian_to_spherical(const ObservationPoint& p);

/// Position of the UE in the global frame.
ObservationPoint ue_position(const LinkGeometry& geom);

/// Direction that points the beam exactly at the UE.
BeamDirection aligned_direction(const LinkGeometry& geom);

/// Projects p into the frame of a beam leaving the RIS along b. Throws for a
/// grazing beam (cos theta_B == 0).
BeamCoords beam_coords(const ObservationPoint& p, const BeamDirection& b);

/// Beam direction produced by pointing errors dtheta_x (on the steering plane)
/// and dtheta_y (on the steering-plane normal) around a UE at elevation
/// theta_ue on the x-z plane. Exact solution of
///   sin(tB) cos(pB) = sin(tUE + dx) cos(dy)
///   sin(tB) sin(pB) = sin(dy)
///   cos(tB)         = cos(tUE + dx) cos(dy)
/// Throws if the beam leaves the forward half-space.
BeamDirection error_angles_to_beam_direction(double theta_ue, double dtheta_x, double dtheta_y);

/// True if error_angles_to_beam_direction would accept the inputs.
bool in_forward_half_space(double theta_ue, double dtheta_x, double dtheta_y);

}  // namespace rislink
