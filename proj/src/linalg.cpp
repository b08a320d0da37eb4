#include "okb/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace okb {

Rat dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec sub(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec scale(const QVec& a, const Rat& c) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

QVec to_qvec(const ZVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

QVec to_qvec(const std::vector<long long>& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(Int(v[i]));
  return r;
}

ZVec primitive(const QVec& v) {
  Int l = common_denominator(v);
  ZVec w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * l;
    w[i] = num(s);
    g = gcd(g, w[i]);
  }
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  for (auto& x : w) x /= g;
  return w;
}

std::vector<int> row_echelon(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pr = row;
    while (pr < m.size() && m[pr][col] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[row], m[pr]);
    Rat inv = Rat(1) / m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);  // drop zero rows
  return pivots;
}

int rank(QMat m) { return static_cast<int>(row_echelon(m).size()); }

std::optional<QVec> solve(QMat a, QVec b) {
  size_t rows = a.size();
  size_t n = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = row_echelon(a);
  QVec x(n, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == static_cast<int>(n)) return std::nullopt;  // 0 = 1 row
    x[pivots[i]] = a[i][n];
  }
  return x;
}

std::vector<QVec> nullspace(QMat a, int n) {
  auto pivots = row_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVec v(n, Rat(0));
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> inverse(QMat a) {
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n, Rat(0));
    a[i][n + i] = 1;
  }
  auto pivots = row_echelon(a);
  if (pivots.size() != n || pivots.back() != static_cast<int>(n) - 1) return std::nullopt;
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

Rat determinant(QMat a) {
  size_t n = a.size();
  Rat det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pr = col;
    while (pr < n && a[pr][col] == 0) ++pr;
    if (pr == n) return Rat(0);
    if (pr != col) {
      std::swap(a[pr], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rat inv = Rat(1) / a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] * inv;
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

Int lattice_index(std::vector<ZVec> gens, int n) {
  // Integer row reduction to an upper-triangular (Hermite-style) form.
  std::vector<ZVec> m = std::move(gens);
  int row = 0;
  for (int col = 0; col < n && row < static_cast<int>(m.size()); ++col) {
    // gcd-reduce the entries of this column below `row` into one row
    while (true) {
      int best = -1;
      for (int i = row; i < static_cast<int>(m.size()); ++i)
        if (m[i][col] != 0 && (best < 0 || abs(m[i][col]) < abs(m[best][col]))) best = i;
      if (best < 0) break;
      std::swap(m[row], m[best]);
      bool cleared = true;
      for (int i = row + 1; i < static_cast<int>(m.size()); ++i) {
        if (m[i][col] == 0) continue;
        Int q = m[i][col] / m[row][col];
        for (int j = 0; j < n; ++j) m[i][j] -= q * m[row][j];
        if (m[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (row < static_cast<int>(m.size()) && m[row][col] != 0) ++row;
  }
  if (row < n) return 0;  // rank deficient: infinite index
  Int idx = 1;
  // after elimination the first n used rows are upper triangular (in the
  // pivot columns scanned in order), so the index is the diagonal product
  int r = 0;
  for (int col = 0; col < n; ++col) {
    idx *= abs(m[r][col]);
    ++r;
  }
  return idx;
}

Signature symmetric_signature(QMat q) {
  int n = static_cast<int>(q.size());
  Signature sig;
  // Congruence elimination: at each step find a nonzero diagonal entry
  // (creating one from an off-diagonal pair if needed) and clear its row
  // and column with the same operations.
  for (int k = 0; k < n; ++k) {
    if (q[k][k] == 0) {
      int j = -1;
      for (int i = k + 1; i < n; ++i)
        if (q[k][i] != 0) {
          j = i;
          break;
        }
      if (j < 0) {
        sig.zero++;
        continue;
      }
      // add (or subtract) row/col j into k: diagonal becomes +-2*q[k][j] + q[j][j],
      // and at least one of the two signs is nonzero since q[k][j] != 0
      Rat s = (2 * q[k][j] + q[j][j] != 0) ? Rat(1) : Rat(-1);
      for (int c = 0; c < n; ++c) q[k][c] += s * q[j][c];
      for (int r = 0; r < n; ++r) q[r][k] += s * q[r][j];
    }
    if (q[k][k] > 0)
      sig.positive++;
    else
      sig.negative++;
    Rat inv = Rat(1) / q[k][k];
    for (int i = 0; i < n; ++i) {
      if (i == k || q[i][k] == 0) continue;
      Rat f = q[i][k] * inv;
      for (int c = 0; c < n; ++c) q[i][c] -= f * q[k][c];
      for (int r = 0; r < n; ++r) q[r][i] -= f * q[r][k];
    }
  }
  return sig;
}

}  // namespace okb
