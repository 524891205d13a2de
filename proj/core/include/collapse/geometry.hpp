#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "collapse/error.hpp"
#include "collapse/jet.hpp"
#include "collapse/spline.hpp"

namespace collapse {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class BaseKind { interval, circle };
enum class FiberKind { interval, disk };
enum class ShapeKind { constant, affine, cosine, exponential, table };

// Describes the fibre "shape" function f(x): the fibre length A for interval
// fibres, the disk radius R for disk fibres (then A = pi R^2).
//   constant     f = a
//   affine       f = a + b x
//   cosine       f = a + b cos(2 pi (x - phase))
//   exponential  f = a exp(b x)
//   table        cubic interpolant through equispaced samples on [0, 1]
struct ProfileSpec {
    BaseKind base = BaseKind::circle;
    FiberKind fiber = FiberKind::interval;
    ShapeKind shape = ShapeKind::cosine;
    double a = 1.5;
    double b = 0.5;
    double phase = 0.0;
    std::vector<double> table;
};

BaseKind parse_base_kind(const std::string& s);
FiberKind parse_fiber_kind(const std::string& s);
ShapeKind parse_shape_kind(const std::string& s);
std::string to_string(BaseKind k);
std::string to_string(FiberKind k);
std::string to_string(ShapeKind k);

class FiberProfile {
public:
    explicit FiberProfile(const ProfileSpec& spec);

    const ProfileSpec& spec() const { return spec_; }
    BaseKind base() const { return spec_.base; }
    FiberKind fiber() const { return spec_.fiber; }
    bool periodic() const { return spec_.base == BaseKind::circle; }
    int fiber_dim() const { return spec_.fiber == FiberKind::disk ? 2 : 1; }
    int ambient_dim() const { return 1 + fiber_dim(); }
    bool analytic() const { return spec_.shape != ShapeKind::table; }

    // k-th derivative of the shape function, k in 0..3
    double shape(double x, int k = 0) const;
    // k-th derivative of the fibre area A, k in 0..3
    double area(double x, int k = 0) const;

    double dlog_area(double x) const;   // A'/A
    double d2log_area(double x) const;  // (A'/A)'
    double d3log_area(double x) const;  // (A'/A)''

    // Closed-form shape and its first derivative for analytic kinds, usable
    // with jets. Throws for tables.
    template <class T>
    T shape_expr(const T& x) const;
    template <class T>
    T shape_d1_expr(const T& x) const;
    // A'/A as an expression of x
    template <class T>
    T dlog_area_expr(const T& x) const;

    double min_area() const { return min_area_; }
    double max_area() const { return max_area_; }

private:
    void check_domain(double x) const;

    ProfileSpec spec_;
    UniformSpline table_;
    double min_area_ = 0.0, max_area_ = 0.0;
};

FiberProfile build_profile(const ProfileSpec& spec);

// g = A'/A and its derivative.
double dlog_area(const FiberProfile& p, double x);
double d2log_area(const FiberProfile& p, double x);

// Measure of the thin domain: eps^d times the x-integral of A.
double domain_measure(const FiberProfile& p, double eps);

enum class Side { bottom, top };

struct BoundaryFrame {
    Vec2 nu;       // outward unit normal of the lateral boundary
    Vec2 n;        // unit fibre direction pointing out of the base
    Vec2 tangent;  // unit tangent, oriented along increasing x
};

BoundaryFrame boundary_frame(const FiberProfile& p, double eps, double x, Side side);

// Mapped grid of the thin domain: x in [0,1], s in [-1/2, 1/2], y = eps A(x) s.
// Cells are the quadrilaterals spanned by the vertex lattice (straight edges),
// so face area vectors close exactly around every cell.
class ThinGrid {
public:
    ThinGrid(FiberProfile profile, double eps, int nx, int ns);

    const FiberProfile& profile() const { return profile_; }
    double eps() const { return eps_; }
    int nx() const { return nx_; }
    int ns() const { return ns_; }
    double dx() const { return dx_; }
    double ds() const { return ds_; }
    bool periodic() const { return profile_.periodic(); }
    int cells() const { return nx_ * ns_; }
    int index(int i, int j) const { return i * ns_ + j; }

    double xc(int i) const { return xc_[i]; }
    double sc(int j) const { return -0.5 + (j + 0.5) * ds_; }
    double xv(int i) const { return i * dx_; }
    double sv(int j) const { return -0.5 + j * ds_; }
    double area_c(int i) const { return ac_[i]; }    // A at cell centre column
    double glog_c(int i) const { return gc_[i]; }    // A'/A at cell centre column
    double area_v(int i) const { return av_[i]; }    // A at vertex column
    double glog_v(int i) const { return gv_[i]; }

    double volume(int i) const { return vol_[i]; }  // same for every j
    Vec2 centre(int i, int j) const { return {xc_[i], eps_ * ac_[i] * sc(j)}; }
    Vec2 vertex(int i, int j) const { return {xv(i), eps_ * av_[i] * sv(j)}; }
    // area vector (length = face length) of the x-face at vertex column i, row j
    Vec2 xface(int i) const { return {eps_ * av_[i] * ds_, 0.0}; }
    // area vector of the s-face between vertex columns i, i+1 at vertex row j,
    // pointing towards increasing s
    Vec2 sface(int i, int j) const {
        return {-eps_ * sv(j) * (av_[i + 1] - av_[i]), dx_};
    }
    // unit outward normal of the discrete lateral wall over cell column i
    Vec2 wall_normal(int i, Side side) const;

    double measure() const;  // sum of cell volumes
    double min_width() const { return min_width_; }

private:
    FiberProfile profile_;
    double eps_;
    int nx_, ns_;
    double dx_, ds_;
    std::vector<double> xc_, ac_, gc_, av_, gv_, vol_;
    double min_width_ = 0.0;
};

// ---- template definitions ----

template <class T>
T FiberProfile::shape_expr(const T& x) const {
    constexpr double tau = 6.283185307179586476925286766559;
    switch (spec_.shape) {
        case ShapeKind::constant: return T(spec_.a) + 0.0 * x;
        case ShapeKind::affine: return spec_.a + spec_.b * x;
        case ShapeKind::cosine: return spec_.a + spec_.b * cos(tau * (x - spec_.phase));
        case ShapeKind::exponential: return spec_.a * exp(spec_.b * x);
        case ShapeKind::table: break;
    }
    throw InputError("profile: closed form unavailable for tabulated shapes");
}

template <class T>
T FiberProfile::shape_d1_expr(const T& x) const {
    constexpr double tau = 6.283185307179586476925286766559;
    switch (spec_.shape) {
        case ShapeKind::constant: return 0.0 * x;
        case ShapeKind::affine: return T(spec_.b) + 0.0 * x;
        case ShapeKind::cosine: return -tau * spec_.b * sin(tau * (x - spec_.phase));
        case ShapeKind::exponential: return spec_.a * spec_.b * exp(spec_.b * x);
        case ShapeKind::table: break;
    }
    throw InputError("profile: closed form unavailable for tabulated shapes");
}

template <class T>
T FiberProfile::dlog_area_expr(const T& x) const {
    const T f = shape_expr(x);
    const T f1 = shape_d1_expr(x);
    // disk: A = pi R^2, A'/A = 2 R'/R
    return spec_.fiber == FiberKind::disk ? 2.0 * f1 / f : f1 / f;
}

}  // namespace collapse
