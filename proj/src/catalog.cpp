#include "fraclap/catalog.hpp"

#include <cmath>

#include "fraclap/expr.hpp"

namespace fraclap {
namespace {

// splitmix64: deterministic across platforms
std::uint64_t mix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t& state) {
  return 2.0 * (static_cast<double>(mix(state) >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

std::vector<ScalarField> random_angular_family(int dim, int count, std::uint64_t seed) {
  std::vector<ScalarField> out;
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  for (int i = 0; i < count; ++i) {
    std::vector<double> a(3), b(3);
    double amp = 0.0;
    for (int m = 0; m < 3; ++m) {
      a[static_cast<std::size_t>(m)] = uniform_pm1(state);
      b[static_cast<std::size_t>(m)] = uniform_pm1(state);
      amp += std::abs(a[static_cast<std::size_t>(m)]) + std::abs(b[static_cast<std::size_t>(m)]);
    }
    double zc = dim == 3 ? 0.5 * uniform_pm1(state) : 0.0;
    amp += std::abs(zc);
    auto h = [a, b, zc](const Point& p) {
      double th = std::atan2(p[1], p[0]);
      double v = 0.0;
      for (int m = 1; m <= 3; ++m)
        v += a[static_cast<std::size_t>(m - 1)] * std::cos(m * th) +
             b[static_cast<std::size_t>(m - 1)] * std::sin(m * th);
      if (p.dim() >= 3) {
        double r = p.norm();
        if (r > 0.0) v += zc * p[2] / r;
      }
      return v;
    };
    out.push_back(ScalarField::from_function(dim, h).with_decay({amp, 0.0}));
  }
  return out;
}

std::vector<ScalarField> default_rhs_family(int dim) {
  std::vector<ScalarField> fam;
  fam.push_back(ScalarField::constant(dim, 1.0));
  {
    FieldSpec spec;
    spec.expression = parse_expr("cos(x1)");
    spec.dimension = dim;
    spec.holder_alpha = 2.0;
    fam.push_back(compile_field(spec));
  }
  {
    FieldSpec spec;
    spec.expression = parse_expr("rnorm^0.5");
    spec.dimension = dim;
    spec.holder_alpha = 0.5;
    fam.push_back(compile_field(spec));
  }
  return fam;
}

}  // namespace fraclap
