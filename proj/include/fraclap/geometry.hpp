#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "fraclap/errors.hpp"

namespace fraclap {

// A point of R^n.  Engines are implemented for n in {2,3}; the type itself
// carries any n >= 1 so that problem data can be described generically.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw_error(error::kind::argument, "Point: empty coordinate list");
  }
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  static Point zero(int n) { return Point(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }
  // k-th coordinate unit vector scaled by a.
  static Point axis(int n, int k, double a) {
    Point p = zero(n);
    p.c_[static_cast<std::size_t>(k)] = a;
    return p;
  }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return c_; }

  double norm_sq() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  friend Point operator+(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] += b[i];
    return r;
  }
  friend Point operator-(const Point& a, const Point& b) {
    Point r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] -= b[i];
    return r;
  }
  friend Point operator*(double t, const Point& a) {
    Point r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] *= t;
    return r;
  }
  friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

inline double dist(const Point& a, const Point& b) { return (a - b).norm(); }

class Ball {
 public:
  Ball(Point center, double radius) : center_(std::move(center)), radius_(radius) {
    if (!(radius > 0.0))
      throw_error(error::kind::argument, "Ball: radius must be positive");
  }

  static Ball unit(int n) { return Ball(Point::zero(n), 1.0); }

  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  int dim() const { return center_.dim(); }

  bool contains(const Point& p) const { return dist(p, center_) < radius_; }
  bool strictly_outside(const Point& p) const { return dist(p, center_) > radius_; }

 private:
  Point center_;
  double radius_;
};

}  // namespace fraclap
