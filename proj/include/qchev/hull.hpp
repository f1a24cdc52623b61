#pragma once

// Exact convex hulls of small point sets in Z^r.

#include <vector>

#include "qchev/cartan.hpp"
#include "qchev/linalg.hpp"

namespace qchev {

class ConvexHull {
 public:
  explicit ConvexHull(const std::vector<Weight>& points);

  int dimension() const { return dim_; }
  bool contains(const Weight& p) const;
  /// Input points that are vertices of the hull, sorted.
  std::vector<Weight> vertices() const;
  /// All integral points of the hull, sorted.
  std::vector<Weight> lattice_points() const;

 private:
  struct Facet {
    QVector normal;  // in local coordinates
    Rational bound;  // normal · y <= bound
  };
  bool local_coords(const Weight& p, QVector& y) const;

  std::vector<Weight> pts_;
  int ambient_ = 0;
  int dim_ = -1;
  Weight origin_;
  QMatrix basis_;                     // dim_ rows, ambient columns
  std::vector<std::size_t> key_cols_;  // pivot columns of basis_
  std::vector<QVector> local_;        // local coordinates of input points
  std::vector<Facet> facets_;
};

}  // namespace qchev
