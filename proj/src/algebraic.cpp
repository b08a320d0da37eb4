#include "okb/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace okb {

namespace {

bool perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

// n = square * kernel with the kernel free of small square factors.
void extract_square(const Int& n, Int& square_root, Int& kernel) {
  square_root = 1;
  kernel = n;
  for (Int p = 2; p <= 1000 && p * p <= kernel; ++p) {
    while (kernel % (p * p) == 0) {
      kernel /= p * p;
      square_root *= p;
    }
  }
  Int r;
  if (perfect_square(kernel, r)) {
    square_root *= r;
    kernel = 1;
  }
}

// Rational enclosure of sqrt(d) with denominator 2^prec.
void sqrt_interval(const Int& d, unsigned prec, Rat& lo, Rat& hi) {
  Int scaled = d << (2 * prec);
  Int s = sqrt(scaled);
  Int denom = Int(1) << prec;
  lo = Rat(s, denom);
  hi = Rat(s + 1, denom);
}

struct Interval {
  Rat lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

void AlgReal::trim() {
  // drop bases no coordinate refers to
  int k = static_cast<int>(bases_.size());
  for (int i = k - 1; i >= 0; --i) {
    bool used = false;
    for (size_t m = 0; m < coords_.size(); ++m)
      if ((m >> i) & 1) used |= coords_[m] != 0;
    if (used) continue;
    std::vector<Rat> nc(coords_.size() / 2);
    for (size_t m = 0; m < coords_.size(); ++m) {
      if ((m >> i) & 1) continue;
      size_t low = m & ((size_t(1) << i) - 1);
      size_t high = (m >> (i + 1)) << i;
      nc[high | low] = coords_[m];
    }
    coords_ = std::move(nc);
    bases_.erase(bases_.begin() + i);
  }
}

AlgReal AlgReal::with_basis(std::vector<Int> bases, std::vector<Rat> coords) {
  AlgReal a;
  a.bases_ = std::move(bases);
  a.coords_ = std::move(coords);
  a.trim();
  return a;
}

AlgReal alg_test_hook(std::vector<Int> b, std::vector<Rat> c) {
  return AlgReal::with_basis(std::move(b), std::move(c));
}

AlgReal AlgReal::sqrt_of(const Rat& r) {
  if (r < 0) throw std::domain_error("sqrt of a negative rational");
  if (r == 0) return AlgReal();
  // sqrt(p/q) = sqrt(p q) / q
  Int n = num(r) * den(r);
  Int s, kernel;
  extract_square(n, s, kernel);
  Rat coeff(s, den(r));
  if (kernel == 1) return AlgReal(coeff);
  AlgReal out;
  out.bases_ = {kernel};
  out.coords_ = {Rat(0), coeff};
  return out;
}

// Expresses each of b's bases in terms of the (possibly extended) base
// list of a, then rewrites both operands over the common list.
void AlgReal::unify(const AlgReal& a, const AlgReal& b, AlgReal& ua, AlgReal& ub) {
  std::vector<Int> bases = a.bases_;
  // for each base of b: either sqrt(d) = c * sqrt(prod of subset), or a new base
  struct Expr {
    Rat coeff;
    size_t mask;
  };
  std::vector<Expr> bexpr;
  for (const Int& d : b.bases_) {
    bool found = false;
    for (size_t s = 0; s < (size_t(1) << bases.size()) && !found; ++s) {
      Int prod = d;
      for (size_t i = 0; i < bases.size(); ++i)
        if ((s >> i) & 1) prod *= bases[i];
      Int root;
      if (perfect_square(prod, root)) {
        Int subset_prod = 1;
        for (size_t i = 0; i < bases.size(); ++i)
          if ((s >> i) & 1) subset_prod *= bases[i];
        bexpr.push_back({Rat(root, subset_prod), s});
        found = true;
      }
    }
    if (!found) {
      bexpr.push_back({Rat(1), size_t(1) << bases.size()});
      bases.push_back(d);
    }
  }
  size_t total = size_t(1) << bases.size();
  std::vector<Rat> ca(total, Rat(0)), cb(total, Rat(0));
  for (size_t m = 0; m < a.coords_.size(); ++m) ca[m] = a.coords_[m];
  for (size_t m = 0; m < b.coords_.size(); ++m) {
    if (b.coords_[m] == 0) continue;
    Rat coeff = b.coords_[m];
    size_t mask = 0;
    for (size_t i = 0; i < b.bases_.size(); ++i) {
      if (!((m >> i) & 1)) continue;
      // multiply the accumulated term by sqrt(b.bases_[i])
      size_t em = bexpr[i].mask;
      coeff *= bexpr[i].coeff;
      size_t common = mask & em;
      for (size_t j = 0; j < bases.size(); ++j)
        if ((common >> j) & 1) coeff *= Rat(bases[j]);
      mask ^= em;
    }
    cb[mask] += coeff;
  }
  // both outputs deliberately share the untrimmed basis so coordinates
  // stay aligned for the caller
  ua.bases_ = bases;
  ua.coords_ = std::move(ca);
  ub.bases_ = std::move(bases);
  ub.coords_ = std::move(cb);
}

AlgReal AlgReal::operator-() const {
  AlgReal r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

AlgReal AlgReal::operator+(const AlgReal& o) const {
  AlgReal a, b;
  unify(*this, o, a, b);
  for (size_t m = 0; m < a.coords_.size(); ++m) a.coords_[m] += b.coords_[m];
  a.trim();
  return a;
}

AlgReal AlgReal::operator-(const AlgReal& o) const { return *this + (-o); }

AlgReal AlgReal::operator*(const AlgReal& o) const {
  AlgReal a, b;
  unify(*this, o, a, b);
  size_t total = a.coords_.size();
  std::vector<Rat> prod(total, Rat(0));
  for (size_t m1 = 0; m1 < total; ++m1) {
    if (a.coords_[m1] == 0) continue;
    for (size_t m2 = 0; m2 < total; ++m2) {
      if (b.coords_[m2] == 0) continue;
      Rat c = a.coords_[m1] * b.coords_[m2];
      size_t common = m1 & m2;
      for (size_t j = 0; j < a.bases_.size(); ++j)
        if ((common >> j) & 1) c *= Rat(a.bases_[j]);
      prod[m1 ^ m2] += c;
    }
  }
  return with_basis(a.bases_, std::move(prod));
}

AlgReal AlgReal::operator/(const AlgReal& o) const {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  if (o.is_rational()) {
    AlgReal r = *this;
    for (auto& c : r.coords_) c /= o.coords_[0];
    return r;
  }
  // multiply by the product of the nontrivial conjugates; the denominator
  // becomes the rational field norm
  size_t k = o.bases_.size();
  AlgReal conj_prod(Rat(1));
  for (size_t eps = 1; eps < (size_t(1) << k); ++eps) {
    AlgReal c = o;
    for (size_t m = 0; m < c.coords_.size(); ++m) {
      int flips = 0;
      for (size_t i = 0; i < k; ++i)
        if (((eps >> i) & 1) && ((m >> i) & 1)) ++flips;
      if (flips & 1) c.coords_[m] = -c.coords_[m];
    }
    conj_prod = conj_prod * c;
  }
  AlgReal norm = o * conj_prod;
  if (!norm.is_rational()) throw std::logic_error("field norm not rational");
  return (*this * conj_prod) / AlgReal(norm.as_rational());
}

bool AlgReal::is_rational() const {
  for (size_t m = 1; m < coords_.size(); ++m)
    if (coords_[m] != 0) return false;
  return true;
}

Rat AlgReal::as_rational() const {
  if (!is_rational()) throw std::domain_error("value is irrational");
  return coords_[0];
}

int AlgReal::sign() const {
  bool all_zero = true;
  for (const auto& c : coords_)
    if (c != 0) all_zero = false;
  if (all_zero) return 0;
  if (is_rational()) return okb::sign(coords_[0]);
  // the value is nonzero, so interval refinement terminates
  for (unsigned prec = 8;; prec *= 2) {
    Interval total{Rat(0), Rat(0)};
    for (size_t m = 0; m < coords_.size(); ++m) {
      if (coords_[m] == 0) continue;
      Interval term{coords_[m], coords_[m]};
      for (size_t i = 0; i < bases_.size(); ++i) {
        if (!((m >> i) & 1)) continue;
        Rat lo, hi;
        sqrt_interval(bases_[i], prec, lo, hi);
        term = mul(term, {lo, hi});
      }
      total.lo += term.lo;
      total.hi += term.hi;
    }
    if (total.lo > 0) return 1;
    if (total.hi < 0) return -1;
    if (prec > 4096) throw std::logic_error("sign refinement did not converge");
  }
}

double AlgReal::approx() const {
  double v = 0;
  for (size_t m = 0; m < coords_.size(); ++m) {
    if (coords_[m] == 0) continue;
    double t = static_cast<double>(coords_[m]);
    for (size_t i = 0; i < bases_.size(); ++i)
      if ((m >> i) & 1) t *= std::sqrt(static_cast<double>(bases_[i]));
    v += t;
  }
  return v;
}

std::string AlgReal::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t m = 0; m < coords_.size(); ++m) {
    if (coords_[m] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << rat_str(coords_[m]);
    for (size_t i = 0; i < bases_.size(); ++i)
      if ((m >> i) & 1) os << "*sqrt(" << bases_[i].str() << ")";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace okb
