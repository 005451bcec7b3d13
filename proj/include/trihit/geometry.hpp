#pragma once
#include <cmath>
#include <numbers>

namespace trihit {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// unit vector at angle phi
inline Vec2 unit_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

inline Vec2 rotated(Vec2 v, double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// wrap into [0, 2*pi)
inline double wrap_angle(double phi) {
    double w = std::fmod(phi, two_pi);
    return w < 0.0 ? w + two_pi : w;
}

}  // namespace trihit
