#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ballcert::geometry {

// Double-precision planar oracle for the tangent-chord dynamics on profiles
// of bodies of revolution. This is validation machinery for the arithmetic
// certifier and the `simulate` command, never a certification input.

struct Point {
    double x = 0, y = 0;
};

/**
 * Even concave profile f > 0 on [-xmax, xmax] whose subgraph body contains
 * the closed unit disk. Circle and ellipse profiles are closed-form;
 * tabulated profiles interpolate samples with a concavity-preserving
 * piecewise-linear hull.
 */
class ConvexProfile {
public:
    static ConvexProfile circle(double radius);
    static ConvexProfile ellipse(double a, double b);
    /// Samples of f over [0, xmax] (mirrored to the left); must be concave.
    static ConvexProfile tabulated(std::vector<double> xs, std::vector<double> fs);

    double xmax() const { return xmax_; }
    double f(double x) const;
    std::string describe() const { return name_; }

private:
    ConvexProfile() = default;
    enum class Kind { circle, ellipse, tabulated } kind_ = Kind::circle;
    double r_ = 0, a_ = 0, b_ = 0;
    std::vector<double> xs_, fs_;
    double xmax_ = 0;
    std::string name_;
};

/// The tangent line through an exterior point chosen by the clockwise rule
/// c*y - d*x > 0, where (c, d) is the touch point on the unit circle.
struct TangentLine {
    bool vertical = false; ///< |x| = 1, line x = const
    double s = 0;          ///< slope (when not vertical)
    double h = 0;          ///< intercept, h = eps * sqrt(1+s^2)
    double touch_x = 0, touch_y = 0;
    int eps = 1;           ///< +1 upper touch, -1 lower touch
    double t() const;      ///< critical point -s/sqrt(1+s^2) of the cubic (eps=+1 frame)
    double z() const;      ///< axis crossing -sqrt(1+s^2)/s (s != 0)
};

TangentLine tangent_from(Point p);

/// The cubic whose increments pin the second chord endpoint:
/// P_s(x) = -(2/3)(sqrt(1+s^2)/s) x^3 - ((1+2s^2)/s^2) x^2 - 2(sqrt(1+s^2)/s) x.
double poly_P(double s, double x);

/// Second intersection of the clockwise tangent chord with the circle of
/// radius R (exterior point p with |p| = R). Rotates by -2*arccos(1/R).
Point chord_map_circle(double R, Point p);

/// Chord map on a general profile boundary via bracketed root finding;
/// agrees with chord_map_circle on circle profiles.
Point chord_map_profile(const ConvexProfile& profile, Point p);

/// Section area A = omega_2 sqrt(1+s^2) * integral of (f^2 - (h+xs)^2) over
/// the chord, by adaptive quadrature with bracketed endpoints.
double section_area(const ConvexProfile& profile, double s);

/// |P_s(b) - P_s(a) + (4/3)(R^2-1)^{3/2}/(s(1+s^2))| for the circle body;
/// vanishes identically (Prop-level identity used as a regression oracle).
double cubic_residual(double R, double s);

struct SideSignRecord {
    int sign_y = 0;         ///< sign of the y-coordinate of the chord image
    int sign_slope_sum = 0; ///< sign of s(p) + s(X(M),0)
    bool inconclusive = false;
};

/// For boundary p with upper touch and negative slope, the chord image's
/// y-sign must match the sign of s(p) + s(X(M),0).
SideSignRecord side_sign(const ConvexProfile& profile, Point p);

struct TrajectoryRow {
    int k = 0;
    double x = 0, y = 0;
    double angle = 0;      ///< atan2 angle of the point
    double angle_step = 0; ///< angle difference to the previous point (mod 2pi)
    double cubic_residual = 0;
};

std::vector<TrajectoryRow> simulate_circle(double R, int steps);

} // namespace ballcert::geometry
