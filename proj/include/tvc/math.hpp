#pragma once

#include <cmath>

// Small fixed-size vector/quaternion math for the rigid-body model.
// Only what the simulator needs; no external linear algebra dependency.

namespace tvc {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

constexpr double clamp_abs(double x, double limit) {
    return x > limit ? limit : (x < -limit ? -limit : x);
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit quaternion, scalar-first, body-to-world convention.
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quat operator+(const Quat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quat operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

    constexpr Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    constexpr Quat conjugate() const { return {w, -x, -y, -z}; }

    // Rotate a body-frame vector into the world frame.
    Vec3 rotate(const Vec3& v) const {
        const Quat p{0.0, v.x, v.y, v.z};
        const Quat r = (*this) * p * conjugate();
        return {r.x, r.y, r.z};
    }

    static Quat from_axis_angle(const Vec3& axis, double angle_rad) {
        const double n = axis.norm();
        if (n == 0.0) return {};
        const double h = 0.5 * angle_rad;
        const double s = std::sin(h) / n;
        return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
    }

    // Quaternion derivative for body angular velocity omega (rad/s).
    constexpr Quat derivative(const Vec3& omega) const {
        const Quat om{0.0, omega.x, omega.y, omega.z};
        return ((*this) * om) * 0.5;
    }
};

// Tilt angles of the body +Z axis, matching the nozzle deflection axes:
// pitch tips +Z toward -Y, yaw tips +Z toward +X. Exact for single-axis
// rotations, small cross-coupling otherwise.
struct TiltAngles {
    double pitch_deg = 0.0;
    double yaw_deg = 0.0;
};

inline TiltAngles body_tilt(const Quat& q) {
    const Vec3 zw = q.rotate({0.0, 0.0, 1.0});
    const double zy = clamp_abs(zw.y, 1.0);
    const double zx = clamp_abs(zw.x, 1.0);
    return {rad_to_deg(std::asin(-zy)), rad_to_deg(std::asin(zx))};
}

}  // namespace tvc
