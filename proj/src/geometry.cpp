#include "ballcert/geometry.hpp"

#include "ballcert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ballcert::geometry {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double hypot1(double s) { return std::sqrt(1.0 + s * s); }

} // namespace

ConvexProfile ConvexProfile::circle(double radius) {
    if (radius <= 1.0) throw DomainViolation("circle profile must strictly contain the unit disk");
    ConvexProfile p;
    p.kind_ = Kind::circle;
    p.r_ = radius;
    p.xmax_ = radius;
    std::ostringstream os;
    os << "circle(R=" << radius << ")";
    p.name_ = os.str();
    return p;
}

ConvexProfile ConvexProfile::ellipse(double a, double b) {
    if (a <= 1.0 || b <= 1.0)
        throw DomainViolation("ellipse semi-axes must exceed 1 to contain the unit disk");
    ConvexProfile p;
    p.kind_ = Kind::ellipse;
    p.a_ = a;
    p.b_ = b;
    p.xmax_ = a;
    std::ostringstream os;
    os << "ellipse(a=" << a << ",b=" << b << ")";
    p.name_ = os.str();
    return p;
}

ConvexProfile ConvexProfile::tabulated(std::vector<double> xs, std::vector<double> fs) {
    if (xs.size() != fs.size() || xs.size() < 2)
        throw DomainViolation("tabulated profile needs matching sample arrays");
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw DomainViolation("tabulated profile: x not increasing");
    if (xs.front() != 0.0) throw DomainViolation("tabulated profile starts at x = 0");
    // concavity of the piecewise-linear hull: slopes non-increasing
    for (size_t i = 2; i < xs.size(); ++i) {
        double s1 = (fs[i - 1] - fs[i - 2]) / (xs[i - 1] - xs[i - 2]);
        double s2 = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - 1]);
        if (s2 > s1 + 1e-12) throw DomainViolation("tabulated profile is not concave");
    }
    for (size_t i = 0; i < xs.size(); ++i) {
        double lim = xs[i] < 1.0 ? std::sqrt(1.0 - xs[i] * xs[i]) : 0.0;
        if (fs[i] < lim - 1e-12) throw DomainViolation("tabulated profile leaves the unit disk");
    }
    ConvexProfile p;
    p.kind_ = Kind::tabulated;
    p.xs_ = std::move(xs);
    p.fs_ = std::move(fs);
    p.xmax_ = p.xs_.back();
    p.name_ = "tabulated(" + std::to_string(p.xs_.size()) + " samples)";
    return p;
}

double ConvexProfile::f(double x) const {
    double ax = std::abs(x);
    if (ax > xmax_ + 1e-12) throw DomainViolation("profile evaluated outside [-X, X]");
    ax = std::min(ax, xmax_);
    switch (kind_) {
        case Kind::circle: return std::sqrt(std::max(0.0, r_ * r_ - ax * ax));
        case Kind::ellipse: return b_ * std::sqrt(std::max(0.0, 1.0 - (ax / a_) * (ax / a_)));
        case Kind::tabulated: {
            auto it = std::lower_bound(xs_.begin(), xs_.end(), ax);
            if (it == xs_.begin()) return fs_.front();
            if (it == xs_.end()) return fs_.back();
            size_t i = static_cast<size_t>(it - xs_.begin());
            double t = (ax - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return fs_[i - 1] + t * (fs_[i] - fs_[i - 1]);
        }
    }
    return 0;
}

double TangentLine::t() const { return -s / hypot1(s); }

double TangentLine::z() const {
    if (s == 0) throw DomainViolation("z(s) undefined for s = 0");
    return -hypot1(s) / s;
}

TangentLine tangent_from(Point p) {
    double n2 = p.x * p.x + p.y * p.y;
    if (n2 <= 1.0) throw DomainViolation("tangent line needs a point outside the unit disk");
    double w = std::sqrt(n2 - 1.0);
    // touch points ((x -+ y w), (y +- x w)) / |p|^2; the clockwise rule
    // c y - d x > 0 selects the branch with value +w
    double c = (p.x + p.y * w) / n2;
    double d = (p.y - p.x * w) / n2;
    TangentLine line;
    line.touch_x = c;
    line.touch_y = d;
    if (std::abs(d) < 1e-15) {
        line.vertical = true;
        line.eps = p.y > 0 ? 1 : -1; // not meaningful for vertical lines
        return line;
    }
    line.eps = d > 0 ? 1 : -1;
    line.s = -c / d;          // tangent at (c,d): c x + d y = 1
    line.h = 1.0 / d;         // = eps * sqrt(1+s^2)
    return line;
}

double poly_P(double s, double x) {
    if (s == 0) throw DomainViolation("P_s undefined for s = 0");
    double r = hypot1(s);
    return -(2.0 / 3.0) * (r / s) * x * x * x - ((1.0 + 2.0 * s * s) / (s * s)) * x * x -
           2.0 * (r / s) * x;
}

Point chord_map_circle(double R, Point p) {
    if (R <= 1.0) throw DomainViolation("chord map needs R > 1");
    double n2 = p.x * p.x + p.y * p.y;
    if (n2 <= 1.0) throw DomainViolation("point inside the unit disk");
    TangentLine line = tangent_from(p);
    double cx = line.touch_x, cy = line.touch_y;
    // line through touch point T and p: second circle intersection from the
    // root product t_p * t_q = |T|^2 - R^2 = 1 - R^2
    double ux = p.x - cx, uy = p.y - cy;
    double len = std::hypot(ux, uy);
    ux /= len;
    uy /= len;
    double tq = (1.0 - R * R) / len;
    return { cx + tq * ux, cy + tq * uy };
}

namespace {

double bisect(const std::function<double(double)>& g, double lo, double hi, double glo) {
    // g(lo) and g(hi) have opposite signs; lo/hi may arrive in either order
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0 || std::abs(hi - lo) < 1e-15 * std::max(1.0, std::abs(mid))) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// chord endpoints a(s) < t < b(s) on the profile for the upper tangent line
// y = s x + h, h = sqrt(1+s^2); the exit can be through the lower boundary,
// so the root function compares f against |s x + h|
std::pair<double, double> chord_endpoints(const ConvexProfile& body, double s) {
    double h = hypot1(s);
    double t = -s / h; // touch point; the line is strictly inside the body there
    auto g = [&](double x) { return body.f(x) - std::abs(s * x + h); };
    double X = body.xmax();
    if (g(t) <= 0) throw DomainViolation("tangent line does not enter the body");
    auto solve_side = [&](double from, double to) {
        double gf = g(from);
        double gt = g(to);
        if (gt >= 0) {
            // the chord exits through the vertical face x = to
            return to;
        }
        return bisect(g, from, to, gf);
    };
    double b = solve_side(t, X);
    double a = solve_side(t, -X);
    if (a > b) std::swap(a, b);
    return { a, b };
}

} // namespace

Point chord_map_profile(const ConvexProfile& profile, Point p) {
    double n2 = p.x * p.x + p.y * p.y;
    if (n2 <= 1.0) throw DomainViolation("point inside the unit disk");
    TangentLine line = tangent_from(p);
    if (line.vertical) {
        // chord x = +-1: the symmetric boundary point
        return { p.x, -p.y };
    }
    if (line.eps == -1) {
        // central symmetry: T(p) = -T(-p), and -p has an upper touch
        Point q = chord_map_profile(profile, { -p.x, -p.y });
        return { -q.x, -q.y };
    }
    double s = line.s, h = line.h;
    auto [a, b] = chord_endpoints(profile, s);
    // p is one endpoint; the image is the other one (eq_middle: x_p < t < v)
    double t = line.t();
    double v = p.x < t ? b : a;
    return { v, s * v + h };
}

double section_area(const ConvexProfile& profile, double s) {
    double h = hypot1(s);
    auto [a, b] = chord_endpoints(profile, s);
    if (b - a <= 0) throw DomainViolation("empty section");
    auto integrand = [&](double x) {
        double line = h + x * s;
        return profile.f(x) * profile.f(x) - line * line;
    };
    // adaptive Simpson
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int depth) {
            double mid = 0.5 * (lo + hi);
            double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            double flm = integrand(lm), frm = integrand(rm);
            double left = (mid - lo) / 6.0 * (flo + 4 * flm + fmid);
            double right = (hi - mid) / 6.0 * (fmid + 4 * frm + fhi);
            if (depth <= 0 || std::abs(left + right - whole) < 1e-12 * (1 + std::abs(whole)))
                return left + right + (left + right - whole) / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, depth - 1) +
                   rec(mid, hi, fmid, frm, fhi, right, depth - 1);
        };
    double flo = integrand(a), fhi = integrand(b), fmid = integrand(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (flo + 4 * fmid + fhi);
    double integral = rec(a, b, flo, fmid, fhi, whole, 48);
    return kPi * h * integral; // omega_2 = pi
}

double cubic_residual(double R, double s) {
    if (s == 0) throw DomainViolation("cubic residual undefined for s = 0");
    if (R <= 1.0) throw DomainViolation("requires R > 1");
    double h = hypot1(s);
    double w = std::sqrt(R * R - 1.0);
    // circle chord endpoints in closed form
    double a = (-s - w) / h;
    double b = (-s + w) / h;
    double rhs = -(4.0 / 3.0) * w * w * w / (s * (1.0 + s * s));
    return std::abs(poly_P(s, b) - poly_P(s, a) - rhs);
}

SideSignRecord side_sign(const ConvexProfile& profile, Point p) {
    TangentLine line = tangent_from(p);
    if (line.vertical || line.eps != 1 || line.s >= 0)
        throw DomainViolation("side_sign needs an upper touch with negative slope");
    // slope of the clockwise tangent from (X, 0)
    double X = profile.xmax();
    TangentLine from_x = tangent_from({ X, 0.0 });
    double slope_sum = line.s + from_x.s;
    Point image = chord_map_profile(profile, p);
    SideSignRecord rec;
    rec.sign_slope_sum = slope_sum > 0 ? 1 : (slope_sum < 0 ? -1 : 0);
    rec.sign_y = image.y > 0 ? 1 : (image.y < 0 ? -1 : 0);
    rec.inconclusive = std::abs(image.y) < 1e-9 || std::abs(slope_sum) < 1e-9;
    return rec;
}

std::vector<TrajectoryRow> simulate_circle(double R, int steps) {
    if (R <= 1.0) throw DomainViolation("requires R > 1");
    std::vector<TrajectoryRow> rows;
    rows.reserve(static_cast<size_t>(steps));
    Point p{ 1.0, -std::sqrt(R * R - 1.0) }; // u_1
    double prev_angle = std::atan2(p.y, p.x);
    for (int k = 1; k <= steps; ++k) {
        TrajectoryRow row;
        row.k = k;
        row.x = p.x;
        row.y = p.y;
        row.angle = std::atan2(p.y, p.x);
        double step = row.angle - prev_angle;
        while (step > 0) step -= 2 * kPi;
        while (step <= -2 * kPi) step += 2 * kPi;
        row.angle_step = k == 1 ? 0.0 : step;
        TangentLine line = tangent_from(p);
        double s_upper = line.eps * line.s; // the mirrored upper-frame slope
        row.cubic_residual =
            (line.vertical || std::abs(s_upper) < 1e-12) ? 0.0 : cubic_residual(R, s_upper);
        prev_angle = row.angle;
        p = chord_map_circle(R, p);
        rows.push_back(row);
    }
    return rows;
}

} // namespace ballcert::geometry
