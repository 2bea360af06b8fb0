#include "contrastfix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace contrastfix {

namespace {

constexpr double kPi = std::numbers::pi;

double deg_to_rad(double d) { return d * kPi / 180.0; }
double rad_to_deg(double r) { return r * 180.0 / kPi; }

double pow7(double x) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    return x3 * x3 * x;
}

}  // namespace

std::string_view to_string(WcagLevel level) { return level == WcagLevel::kAA ? "AA" : "AAA"; }

double relative_luminance(const LinearRgb& c) {
    return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b;
}

double relative_luminance(RgbColor c) { return relative_luminance(to_linear(c)); }

double contrast_ratio_from_luminance(double a, double b) {
    const double lighter = std::max(a, b);
    const double darker = std::min(a, b);
    return (lighter + 0.05) / (darker + 0.05);
}

double contrast_ratio(RgbColor a, RgbColor b) {
    return contrast_ratio_from_luminance(relative_luminance(a), relative_luminance(b));
}

double delta_e_2000(const LabColor& x, const LabColor& y) {
    const double c1 = std::hypot(x.a, x.b);
    const double c2 = std::hypot(y.a, y.b);
    const double c_bar7 = pow7(0.5 * (c1 + c2));
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + pow7(25.0))));

    const double a1p = (1.0 + g) * x.a;
    const double a2p = (1.0 + g) * y.a;
    const double c1p = std::hypot(a1p, x.b);
    const double c2p = std::hypot(a2p, y.b);

    auto hue_prime = [](double b, double ap) {
        if (b == 0.0 && ap == 0.0) return 0.0;
        double h = rad_to_deg(std::atan2(b, ap));
        return h < 0.0 ? h + 360.0 : h;
    };
    const double h1p = hue_prime(x.b, a1p);
    const double h2p = hue_prime(y.b, a2p);

    const double dl = y.l - x.l;
    const double dc = c2p - c1p;

    double dh = 0.0;
    const bool chroma_zero = c1p * c2p == 0.0;
    if (!chroma_zero) {
        dh = h2p - h1p;
        if (dh > 180.0) {
            dh -= 360.0;
        } else if (dh < -180.0) {
            dh += 360.0;
        }
    }
    const double big_dh = 2.0 * std::sqrt(c1p * c2p) * std::sin(deg_to_rad(dh / 2.0));

    const double l_bar = 0.5 * (x.l + y.l);
    const double c_bar_p = 0.5 * (c1p + c2p);

    double h_bar_p = h1p + h2p;
    if (!chroma_zero) {
        if (std::fabs(h1p - h2p) <= 180.0) {
            h_bar_p *= 0.5;
        } else if (h1p + h2p < 360.0) {
            h_bar_p = 0.5 * (h_bar_p + 360.0);
        } else {
            h_bar_p = 0.5 * (h_bar_p - 360.0);
        }
    }

    const double t = 1.0 - 0.17 * std::cos(deg_to_rad(h_bar_p - 30.0)) +
                     0.24 * std::cos(deg_to_rad(2.0 * h_bar_p)) +
                     0.32 * std::cos(deg_to_rad(3.0 * h_bar_p + 6.0)) -
                     0.20 * std::cos(deg_to_rad(4.0 * h_bar_p - 63.0));
    const double d_theta = 30.0 * std::exp(-std::pow((h_bar_p - 275.0) / 25.0, 2.0));
    const double c_bar_p7 = pow7(c_bar_p);
    const double rc = 2.0 * std::sqrt(c_bar_p7 / (c_bar_p7 + pow7(25.0)));
    const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
    const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
    const double sc = 1.0 + 0.045 * c_bar_p;
    const double sh = 1.0 + 0.015 * c_bar_p * t;
    const double rt = -std::sin(deg_to_rad(2.0 * d_theta)) * rc;

    const double tl = dl / sl;
    const double tc = dc / sc;
    const double th = big_dh / sh;
    return std::sqrt(std::max(0.0, tl * tl + tc * tc + th * th + rt * tc * th));
}

double delta_e_2000(RgbColor a, RgbColor b) { return delta_e_2000(rgb_to_lab(a), rgb_to_lab(b)); }

}  // namespace contrastfix
