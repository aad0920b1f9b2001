#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace d2d {

// Dense row-major matrix, just enough for assignment/power tables.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return a[static_cast<size_t>(i) * cols + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return a[static_cast<size_t>(i) * cols + j];
  }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

inline double max_abs_diff(const Mat& x, const Mat& y) {
  assert(x.same_shape(y));
  double m = 0.0;
  for (size_t k = 0; k < x.a.size(); ++k) {
    double d = x.a[k] - y.a[k];
    if (d < 0) d = -d;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace d2d
