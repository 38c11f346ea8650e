#include "replete/matrix.hpp"

#include "replete/errors.hpp"

#include <utility>

namespace replete {

RationalVector row_times(const RationalVector& v, const QMatrix& m) {
  RationalVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

Rational determinant(QMatrix m) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& a) {
  const std::size_t n = a.rows();
  QMatrix m = a;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw DomainError("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational s = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Polynomial characteristic_polynomial(const QMatrix& a) {
  const std::size_t n = a.rows();
  QMatrix h = a;
  // Similarity transforms to upper Hessenberg form.
  for (std::size_t c = 0; c + 2 <= n; ++c) {
    std::size_t p = c + 1;
    while (p < n && h(p, c) == 0) ++p;
    if (p == n) continue;
    if (p != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(p, j), h(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, p), h(i, c + 1));
    }
    for (std::size_t i = c + 2; i < n; ++i) {
      if (h(i, c) == 0) continue;
      Rational f = h(i, c) / h(c + 1, c);
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(c + 1, j);
      for (std::size_t k = 0; k < n; ++k) h(k, c + 1) += f * h(k, i);
    }
  }
  // Recurrence on leading principal submatrices.
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial({Rational(1)});
  const Polynomial x({Rational(0), Rational(1)});
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = (x - Polynomial({h(m - 1, m - 1)})) * p[m - 1];
    Rational t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t *= h(m - i, m - i - 1);
      if (t == 0) break;
      p[m] = p[m] - Polynomial({t * h(m - i - 1, m - 1)}) * p[m - i - 1];
    }
  }
  return p[n];
}

QMatrix kronecker(const QMatrix& a, const QMatrix& b) {
  QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

ZMatrix hermite_normal_form(const ZMatrix& gens) {
  const std::size_t n = gens.cols();
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < gens.rows(); ++i) rows.push_back(gens.row(i));

  ZMatrix h(n, n);
  std::size_t top = 0;  // rows[top..] still active
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid on column c across the active rows until a single nonzero entry remains.
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c])) piv = i;
      }
      if (piv == rows.size()) throw DomainError("generators do not span a full-rank lattice");
      std::swap(rows[top], rows[piv]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] < 0)
      for (std::size_t j = c; j < n; ++j) rows[top][j] = -rows[top][j];
    h.set_row(c, rows[top]);
    ++top;
  }
  // Reduce entries above the pivots.
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < c; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(c, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < n; ++j) h(i, j) -= q * h(c, j);
    }
  }
  return h;
}

Integer determinant(const ZMatrix& upper_triangular) {
  Integer d = 1;
  for (std::size_t i = 0; i < upper_triangular.rows(); ++i) d *= upper_triangular(i, i);
  return d;
}

}  // namespace replete
