#include "qchev/cartan.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "qchev/errors.hpp"

namespace qchev {

// --------------------------------------------------------------------- Weight

bool Weight::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

bool Weight::is_dominant() const {
  return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.c.size() != c.size()) throw DomainError("weight rank mismatch");
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.c.size() != c.size()) throw DomainError("weight rank mismatch");
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= o.c[k];
  return *this;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- CartanDatum

namespace {

std::vector<std::vector<int>> chain(int n) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    a[i][i] = 2;
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

}  // namespace

CartanDatum::CartanDatum(char type, int rank) : type_(type), rank_(rank) {
  const std::string label = std::string(1, type) + std::to_string(rank);
  if (rank < 1 || rank > kMaxRank) throw ConfigError("unsupported rank in " + label);
  switch (type) {
    case 'A':
      a_ = chain(rank);
      d_.assign(static_cast<std::size_t>(rank), 1);
      break;
    case 'B':
      if (rank < 2) throw ConfigError("B needs rank >= 2");
      a_ = chain(rank);
      a_[rank - 1][rank - 2] = -2;
      d_.assign(static_cast<std::size_t>(rank), 2);
      d_.back() = 1;
      break;
    case 'C':
      if (rank < 2) throw ConfigError("C needs rank >= 2");
      a_ = chain(rank);
      a_[rank - 2][rank - 1] = -2;
      d_.assign(static_cast<std::size_t>(rank), 1);
      d_.back() = 2;
      break;
    case 'D':
      if (rank < 4) throw ConfigError("D needs rank >= 4");
      a_ = chain(rank);
      a_[rank - 2][rank - 1] = a_[rank - 1][rank - 2] = 0;
      a_[rank - 3][rank - 1] = a_[rank - 1][rank - 3] = -1;
      d_.assign(static_cast<std::size_t>(rank), 1);
      break;
    case 'G':
      if (rank != 2) throw ConfigError("G exists only in rank 2");
      a_ = {{2, -3}, {-1, 2}};
      d_ = {1, 3};
      break;
    default:
      throw ConfigError("unknown Cartan type '" + label + "'");
  }

  const std::size_t r = static_cast<std::size_t>(rank);
  QMatrix sym(r, r), am(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j && a_[i][j] != 2) throw ConfigError("a_ii != 2");
      if (i != j && (a_[i][j] > 0 || ((a_[i][j] == 0) != (a_[j][i] == 0))))
        throw ConfigError("invalid off-diagonal Cartan entry");
      if (d_[i] * a_[i][j] != d_[j] * a_[j][i]) throw ConfigError("symmetrizer check failed");
      sym(i, j) = d_[i] * a_[i][j];
      am(i, j) = a_[i][j];
    }
  // Positive definiteness via leading principal minors.
  for (std::size_t k = 1; k <= r; ++k) {
    QMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = sym(i, j);
    QMatrix copy = lead;
    // Determinant by elimination.
    Rational det(1);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      while (p < k && copy(p, c) == 0) ++p;
      if (p == k) {
        det = 0;
        break;
      }
      if (p != c) {
        for (std::size_t j = 0; j < k; ++j) std::swap(copy(p, j), copy(c, j));
        det = -det;
      }
      det *= copy(c, c);
      for (std::size_t i = c + 1; i < k; ++i) {
        Rational f = copy(i, c) / copy(c, c);
        for (std::size_t j = c; j < k; ++j) copy(i, j) -= f * copy(c, j);
      }
    }
    if (det <= 0) throw ConfigError("symmetrized Cartan matrix is not positive definite");
  }

  inv_cartan_ = inverse(am);
  gram_ = QMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram_(i, j) = inv_cartan_(j, i) * d_[j];
  mpz_class l(1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), gram_(i, j).get_den_mpz_t());
  L_ = static_cast<int>(l.get_si());
  if (kExpDen % (2 * L_) != 0)
    throw ConfigError("exponent unit does not cover pairing denominator of " + label);

  // Positive roots: W-orbit of the simple roots, restricted to the positive cone.
  std::set<Weight> seen;
  std::deque<Weight> todo;
  for (int i = 0; i < rank; ++i) {
    Weight s = simple_root(i);
    if (seen.insert(s).second) todo.push_back(s);
  }
  while (!todo.empty()) {
    Weight b = todo.front();
    todo.pop_front();
    for (int i = 0; i < rank; ++i) {
      Weight n = reflect(i, b);
      if (seen.insert(n).second) todo.push_back(n);
    }
  }
  for (const Weight& b : seen) {
    auto rc = root_coords(b);
    if (std::all_of(rc.begin(), rc.end(), [](const Rational& x) { return x >= 0; })) pos_roots_.push_back(b);
  }
}

CartanDatum CartanDatum::from_name(const std::string& name) {
  if (name.size() < 2) throw ConfigError("bad Cartan type '" + name + "'");
  int rank = 0;
  try {
    std::size_t used = 0;
    rank = std::stoi(name.substr(1), &used);
    if (used != name.size() - 1) throw ConfigError("bad Cartan type '" + name + "'");
  } catch (const std::logic_error&) {
    throw ConfigError("bad Cartan type '" + name + "'");
  }
  return CartanDatum(static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))), rank);
}

Weight CartanDatum::simple_root(int i) const {
  Weight w = Weight::zero(rank_);
  for (int j = 0; j < rank_; ++j) w.c[j] = a(j, i);
  return w;
}

Weight CartanDatum::fundamental(int i) const {
  Weight w = Weight::zero(rank_);
  w.c[i] = 1;
  return w;
}

Rational CartanDatum::pairing(const Weight& l, const Weight& m) const {
  if (l.rank() != rank_ || m.rank() != rank_) throw DomainError("weight rank mismatch");
  Rational s(0);
  for (int i = 0; i < rank_; ++i) {
    if (l[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      if (m[j] != 0) s += gram_(i, j) * (l[i] * m[j]);
  }
  return s;
}

std::vector<Rational> CartanDatum::root_coords(const Weight& l) const {
  std::vector<Rational> x(static_cast<std::size_t>(rank_), Rational(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) x[i] += inv_cartan_(i, j) * l[j];
  return x;
}

bool CartanDatum::in_root_lattice(const Weight& l) const {
  for (const Rational& x : root_coords(l))
    if (x.get_den() != 1) return false;
  return true;
}

int CartanDatum::height(const Weight& l) const {
  Rational s(0);
  for (const Rational& x : root_coords(l)) s += x;
  if (s.get_den() != 1) throw DomainError("height of a weight outside the root lattice");
  return static_cast<int>(s.get_num().get_si());
}

Weight CartanDatum::reflect(int i, const Weight& l) const {
  Weight out = l;
  const int k = l[i];
  if (k == 0) return out;
  for (int j = 0; j < rank_; ++j) out.c[j] -= k * a(j, i);
  return out;
}

// ---------------------------------------------------------------- WeylElement

WeylElement WeylElement::from_rho_image(const CartanDatum& dat, Weight image) {
  std::vector<int> word;
  Weight mu = image;
  for (;;) {
    int i = 0;
    while (i < dat.rank() && mu[i] >= 0) ++i;
    if (i == dat.rank()) break;
    word.push_back(i);
    mu = dat.reflect(i, mu);
  }
  return WeylElement(std::move(word), std::move(image));
}

WeylElement WeylElement::identity(const CartanDatum& dat) { return WeylElement({}, dat.rho()); }

WeylElement WeylElement::from_word(const CartanDatum& dat, const std::vector<int>& word) {
  Weight img = dat.rho();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= dat.rank()) throw DomainError("reflection index out of range");
    img = dat.reflect(*it, img);
  }
  return from_rho_image(dat, std::move(img));
}

Weight WeylElement::act(const CartanDatum& dat, const Weight& l) const {
  Weight out = l;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) out = dat.reflect(*it, out);
  return out;
}

WeylElement WeylElement::inverse(const CartanDatum& dat) const {
  return from_word(dat, std::vector<int>(word_.rbegin(), word_.rend()));
}

WeylElement WeylElement::compose(const CartanDatum& dat, const WeylElement& o) const {
  std::vector<int> w = word_;
  w.insert(w.end(), o.word_.begin(), o.word_.end());
  return from_word(dat, w);
}

std::string WeylElement::to_string() const {
  if (word_.empty()) return "e";
  std::ostringstream os;
  for (std::size_t k = 0; k < word_.size(); ++k) os << (k ? "." : "") << 's' << word_[k] + 1;
  return os.str();
}

std::vector<WeylElement> weyl_group(const CartanDatum& dat) {
  std::set<Weight> seen{dat.rho()};
  std::deque<Weight> todo{dat.rho()};
  while (!todo.empty()) {
    Weight x = todo.front();
    todo.pop_front();
    for (int i = 0; i < dat.rank(); ++i) {
      Weight y = dat.reflect(i, x);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  std::vector<WeylElement> out;
  for (const Weight& img : seen) {
    DominantRep d = dominant_representative(dat, img);
    out.push_back(d.w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeylElement longest_element(const CartanDatum& dat) {
  return dominant_representative(dat, -dat.rho()).w;
}

Weight dot_action(const CartanDatum& dat, const WeylElement& w, const Weight& l) {
  return w.act(dat, l + dat.rho()) - dat.rho();
}

DominantRep dominant_representative(const CartanDatum& dat, const Weight& l) {
  std::vector<int> word;
  Weight mu = l;
  for (;;) {
    int i = 0;
    while (i < dat.rank() && mu[i] >= 0) ++i;
    if (i == dat.rank()) break;
    word.push_back(i);
    mu = dat.reflect(i, mu);
  }
  return {mu, WeylElement::from_word(dat, word)};
}

int inversion_count(const CartanDatum& dat, const WeylElement& w) {
  int n = 0;
  for (const Weight& b : dat.positive_roots()) {
    auto rc = dat.root_coords(w.act(dat, b));
    if (std::any_of(rc.begin(), rc.end(), [](const Rational& x) { return x < 0; })) ++n;
  }
  return n;
}

std::vector<Weight> weyl_orbit(const CartanDatum& dat, const Weight& l) {
  std::set<Weight> seen{l};
  std::deque<Weight> todo{l};
  while (!todo.empty()) {
    Weight x = todo.front();
    todo.pop_front();
    for (int i = 0; i < dat.rank(); ++i) {
      Weight y = dat.reflect(i, x);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace qchev
