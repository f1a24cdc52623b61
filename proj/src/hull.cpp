#include "qchev/hull.hpp"

#include <algorithm>
#include <set>

#include "qchev/errors.hpp"

namespace qchev {

namespace {

Rational dot(const QVector& a, const QVector& b) {
  Rational s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  for (;;) {
    fn(idx);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

ConvexHull::ConvexHull(const std::vector<Weight>& points) {
  std::set<Weight> uniq(points.begin(), points.end());
  pts_.assign(uniq.begin(), uniq.end());
  if (pts_.empty()) return;
  ambient_ = pts_[0].rank();
  origin_ = pts_[0];
  QMatrix diffs(pts_.size() - 1, static_cast<std::size_t>(ambient_));
  for (std::size_t k = 1; k < pts_.size(); ++k)
    for (int j = 0; j < ambient_; ++j) diffs(k - 1, static_cast<std::size_t>(j)) = pts_[k][j] - origin_[j];
  Echelon<Rational> e = rref(diffs);
  basis_ = e.rref;
  key_cols_ = e.pivots;
  dim_ = static_cast<int>(key_cols_.size());
  for (const Weight& p : pts_) {
    QVector y;
    if (!local_coords(p, y)) throw TheoremViolation("hull: point outside its own affine hull");
    local_.push_back(std::move(y));
  }
  if (dim_ == 0) return;

  const std::size_t d = static_cast<std::size_t>(dim_);
  std::set<std::vector<Rational>> seen;
  for_each_subset(local_.size(), d, [&](const std::vector<std::size_t>& idx) {
    QMatrix m(d - 1, d);
    for (std::size_t r = 1; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = local_[idx[r]][c] - local_[idx[0]][c];
    auto ker = kernel_basis(m);
    if (ker.size() != 1) return;
    QVector n = ker[0];
    Rational b = dot(n, local_[idx[0]]);
    bool le = true, ge = true;
    for (const QVector& y : local_) {
      const Rational v = dot(n, y);
      if (v > b) le = false;
      if (v < b) ge = false;
      if (!le && !ge) return;
    }
    if (!le) {
      for (Rational& x : n) x = -x;
      b = -b;
    }
    Rational scale(0);
    for (const Rational& x : n)
      if (x != 0) {
        scale = abs(x);
        break;
      }
    std::vector<Rational> key;
    for (Rational& x : n) {
      x /= scale;
      key.push_back(x);
    }
    b /= scale;
    key.push_back(b);
    if (seen.insert(key).second) facets_.push_back({std::move(n), b});
  });
}

bool ConvexHull::local_coords(const Weight& p, QVector& y) const {
  y.assign(key_cols_.size(), Rational(0));
  for (std::size_t k = 0; k < key_cols_.size(); ++k) y[k] = p[static_cast<int>(key_cols_[k])] - origin_[static_cast<int>(key_cols_[k])];
  for (int j = 0; j < ambient_; ++j) {
    Rational s(0);
    for (std::size_t k = 0; k < key_cols_.size(); ++k) s += y[k] * basis_(k, static_cast<std::size_t>(j));
    if (s != p[j] - origin_[j]) return false;
  }
  return true;
}

bool ConvexHull::contains(const Weight& p) const {
  if (dim_ < 0 || p.rank() != ambient_) return false;
  QVector y;
  if (!local_coords(p, y)) return false;
  for (const Facet& f : facets_)
    if (dot(f.normal, y) > f.bound) return false;
  return true;
}

std::vector<Weight> ConvexHull::vertices() const {
  std::vector<Weight> out;
  if (dim_ < 0) return out;
  if (dim_ == 0) return pts_;
  for (std::size_t k = 0; k < local_.size(); ++k) {
    std::vector<QVector> tight;
    for (const Facet& f : facets_)
      if (dot(f.normal, local_[k]) == f.bound) tight.push_back(f.normal);
    if (tight.size() < static_cast<std::size_t>(dim_)) continue;
    QMatrix m(tight.size(), static_cast<std::size_t>(dim_));
    for (std::size_t r = 0; r < tight.size(); ++r)
      for (std::size_t c = 0; c < static_cast<std::size_t>(dim_); ++c) m(r, c) = tight[r][c];
    if (rank(m) == static_cast<std::size_t>(dim_)) out.push_back(pts_[k]);
  }
  return out;
}

std::vector<Weight> ConvexHull::lattice_points() const {
  std::vector<Weight> out;
  if (dim_ < 0) return out;
  Weight lo = pts_[0], hi = pts_[0];
  for (const Weight& p : pts_)
    for (int j = 0; j < ambient_; ++j) {
      lo.c[j] = std::min(lo[j], p[j]);
      hi.c[j] = std::max(hi[j], p[j]);
    }
  Weight cur = lo;
  for (;;) {
    if (contains(cur)) out.push_back(cur);
    int j = ambient_ - 1;
    while (j >= 0 && cur[j] == hi[j]) {
      cur.c[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++cur.c[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qchev
