#pragma once

#include <array>
#include <cmath>

namespace oilu {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }

// Convex quadrilateral in image coordinates (y grows downward).
// Corners are ordered clockwise starting from the corner nearest the
// image origin (top-left).
struct Quad {
    std::array<Point, 4> corners;

    double area() const {
        double a = 0.0;
        for (int i = 0; i < 4; ++i) {
            a += cross(corners[i], corners[(i + 1) % 4]);
        }
        return std::abs(a) / 2.0;
    }

    // True when p lies inside or on the boundary.
    bool contains(Point p) const {
        bool has_pos = false, has_neg = false;
        for (int i = 0; i < 4; ++i) {
            double s = cross(corners[(i + 1) % 4] - corners[i], p - corners[i]);
            if (s > 0) has_pos = true;
            if (s < 0) has_neg = true;
        }
        return !(has_pos && has_neg);
    }

    Point centroid() const {
        Point c{0, 0};
        for (const Point& p : corners) c = c + p;
        return {c.x / 4.0, c.y / 4.0};
    }
};

}  // namespace oilu
