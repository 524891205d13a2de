#include "collapse/geometry.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace collapse {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
constexpr int kDenseSamples = 4096;
}  // namespace

BaseKind parse_base_kind(const std::string& s) {
    if (s == "interval") return BaseKind::interval;
    if (s == "circle") return BaseKind::circle;
    throw InputError("unknown base kind '" + s + "' (interval|circle)");
}

FiberKind parse_fiber_kind(const std::string& s) {
    if (s == "interval") return FiberKind::interval;
    if (s == "disk") return FiberKind::disk;
    throw InputError("unknown fiber kind '" + s + "' (interval|disk)");
}

ShapeKind parse_shape_kind(const std::string& s) {
    if (s == "constant") return ShapeKind::constant;
    if (s == "affine") return ShapeKind::affine;
    if (s == "cosine" || s == "sinusoidal") return ShapeKind::cosine;
    if (s == "exponential") return ShapeKind::exponential;
    if (s == "table") return ShapeKind::table;
    throw InputError("unknown area kind '" + s + "' (constant|affine|cosine|exponential|table)");
}

std::string to_string(BaseKind k) { return k == BaseKind::circle ? "circle" : "interval"; }
std::string to_string(FiberKind k) { return k == FiberKind::disk ? "disk" : "interval"; }
std::string to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::constant: return "constant";
        case ShapeKind::affine: return "affine";
        case ShapeKind::cosine: return "cosine";
        case ShapeKind::exponential: return "exponential";
        case ShapeKind::table: return "table";
    }
    return "?";
}

FiberProfile::FiberProfile(const ProfileSpec& spec) : spec_(spec) {
    if (spec_.shape == ShapeKind::table) {
        require(spec_.table.size() >= 4, "profile: a table needs at least 4 samples");
        const double h = 1.0 / static_cast<double>(spec_.table.size() - 1);
        if (periodic()) {
            const double f0 = spec_.table.front(), f1 = spec_.table.back();
            require(std::abs(f0 - f1) <= 1e-10 * (1.0 + std::abs(f0)),
                    "profile: table on a circle base must have equal first and last samples");
            spec_.table.back() = f0;
        }
        table_ = UniformSpline(0.0, h, spec_.table,
                               periodic() ? UniformSpline::Ends::periodic : UniformSpline::Ends::natural);
    }
    if (spec_.shape == ShapeKind::exponential) require(spec_.a > 0.0, "profile: exponential needs a > 0");

    min_area_ = std::numeric_limits<double>::infinity();
    max_area_ = -min_area_;
    double min_shape = min_area_;
    for (int k = 0; k <= kDenseSamples; ++k) {
        const double x = static_cast<double>(k) / kDenseSamples;
        min_shape = std::min(min_shape, shape(x));
        const double a = area(x);
        min_area_ = std::min(min_area_, a);
        max_area_ = std::max(max_area_, a);
    }
    require(min_shape > 0.0 && std::isfinite(max_area_), "profile: area must be positive everywhere on the base");

    if (periodic()) {
        for (int k = 0; k <= 2; ++k) {
            const double d = std::abs(shape(0.0, k) - shape(1.0, k));
            require(d <= 1e-10 * (1.0 + std::abs(shape(0.0, k))),
                    "profile: shape and its first two derivatives must be periodic on a circle base");
        }
    }
}

void FiberProfile::check_domain(double x) const {
    if (!periodic() && (x < -1e-12 || x > 1.0 + 1e-12))
        throw InputError("profile: x outside the interval base [0,1]");
}

double FiberProfile::shape(double x, int k) const {
    check_domain(x);
    const double a = spec_.a, b = spec_.b;
    switch (spec_.shape) {
        case ShapeKind::constant: return k == 0 ? a : 0.0;
        case ShapeKind::affine: return k == 0 ? a + b * x : (k == 1 ? b : 0.0);
        case ShapeKind::cosine: {
            const double th = kTau * (x - spec_.phase);
            const double c = std::cos(th), s = std::sin(th);
            switch (k) {
                case 0: return a + b * c;
                case 1: return -kTau * b * s;
                case 2: return -kTau * kTau * b * c;
                case 3: return kTau * kTau * kTau * b * s;
                default: return 0.0;
            }
        }
        case ShapeKind::exponential: return a * std::pow(b, k) * std::exp(b * x);
        case ShapeKind::table: return table_.eval(x, k);
    }
    return 0.0;
}

double FiberProfile::area(double x, int k) const {
    if (spec_.fiber == FiberKind::interval) return shape(x, k);
    const double r0 = shape(x, 0), r1 = shape(x, 1), r2 = shape(x, 2), r3 = shape(x, 3);
    const double pi = std::numbers::pi;
    switch (k) {
        case 0: return pi * r0 * r0;
        case 1: return 2.0 * pi * r0 * r1;
        case 2: return 2.0 * pi * (r1 * r1 + r0 * r2);
        case 3: return 2.0 * pi * (3.0 * r1 * r2 + r0 * r3);
        default: return 0.0;
    }
}

double FiberProfile::dlog_area(double x) const { return area(x, 1) / area(x, 0); }

double FiberProfile::d2log_area(double x) const {
    const double a = area(x, 0), g = area(x, 1) / a;
    return area(x, 2) / a - g * g;
}

double FiberProfile::d3log_area(double x) const {
    const double a0 = area(x, 0), a1 = area(x, 1), a2 = area(x, 2), a3 = area(x, 3);
    const double g = a1 / a0, g1 = a2 / a0 - g * g;
    return a3 / a0 - a1 * a2 / (a0 * a0) - 2.0 * g * g1;
}

FiberProfile build_profile(const ProfileSpec& spec) { return FiberProfile(spec); }

double dlog_area(const FiberProfile& p, double x) { return p.dlog_area(x); }
double d2log_area(const FiberProfile& p, double x) { return p.d2log_area(x); }

double domain_measure(const FiberProfile& p, double eps) {
    require(eps > 0.0, "domain_measure: epsilon must be positive");
    constexpr int n = 2048;
    const double h = 1.0 / n;
    double sum = 0.0;
    if (p.periodic()) {
        for (int k = 0; k < n; ++k) sum += p.area(k * h);
        sum *= h;
    } else {
        sum = p.area(0.0) + p.area(1.0);
        for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * p.area(k * h);
        sum *= h / 3.0;
    }
    return std::pow(eps, p.fiber_dim()) * sum;
}

BoundaryFrame boundary_frame(const FiberProfile& p, double eps, double x, Side side) {
    require(eps > 0.0, "boundary_frame: epsilon must be positive");
    // half-width slope of the lateral wall in the (x, y) or meridian (x, r) plane
    const double w1 = p.fiber() == FiberKind::disk ? p.shape(x, 1) : 0.5 * p.shape(x, 1);
    const double sg = side == Side::top ? 1.0 : -1.0;
    BoundaryFrame f;
    f.nu = Vec2(-eps * w1, sg).normalized();
    f.n = Vec2(0.0, sg);
    f.tangent = Vec2(1.0, sg * eps * w1).normalized();
    return f;
}

ThinGrid::ThinGrid(FiberProfile profile, double eps, int nx, int ns)
    : profile_(std::move(profile)), eps_(eps), nx_(nx), ns_(ns) {
    require(eps > 0.0, "grid: epsilon must be positive");
    require(nx >= 4 && ns >= 4, "grid: need at least 4 cells in each direction");
    require(profile_.fiber() == FiberKind::interval, "grid: the flow solver supports interval fibres only");
    dx_ = 1.0 / nx;
    ds_ = 1.0 / ns;
    xc_.resize(nx);
    ac_.resize(nx);
    gc_.resize(nx);
    vol_.resize(nx);
    av_.resize(nx + 1);
    gv_.resize(nx + 1);
    for (int i = 0; i <= nx; ++i) {
        av_[i] = profile_.area(xv(i));
        gv_[i] = profile_.dlog_area(xv(i));
    }
    double amin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i) {
        xc_[i] = (i + 0.5) * dx_;
        ac_[i] = profile_.area(xc_[i]);
        gc_[i] = profile_.dlog_area(xc_[i]);
        vol_[i] = dx_ * ds_ * eps_ * 0.5 * (av_[i] + av_[i + 1]);
        amin = std::min({amin, ac_[i], av_[i], av_[i + 1]});
    }
    min_width_ = std::min(dx_, eps_ * amin * ds_);
}

Vec2 ThinGrid::wall_normal(int i, Side side) const {
    const Vec2 a = side == Side::top ? sface(i, ns_) : Vec2(-sface(i, 0));
    return a.normalized();
}

double ThinGrid::measure() const {
    double m = 0.0;
    for (int i = 0; i < nx_; ++i) m += vol_[i];
    return m * ns_;
}

}  // namespace collapse
