#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace chev {

Q parse_rational(const std::string& s)
{
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational: '" + s + "'");
  q.canonicalize();
  return q;
}

ZMat hnf(ZMat rows)
{
  if (rows.empty())
    return rows;
  const size_t ncol = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < ncol && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end
    for (;;) {
      size_t best = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
          best = i;
      if (best == rows.size())
        break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (size_t j = c; j < ncol; ++j)
          rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (rows[r][c] == 0)
      continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r])
        x = -x;
    for (size_t i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (size_t j = c; j < ncol; ++j)
          rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

Z gcd_all(const ZVec& v)
{
  Z g = 0;
  for (auto& x : v)
    g = gcd(g, x);
  return g;
}

Z lcm_denominators(const QVec& v)
{
  Z l = 1;
  for (auto& x : v)
    l = lcm(l, x.get_den());
  return l;
}

QMat lattice_basis(const QMat& rows)
{
  if (rows.empty())
    return {};
  Z d = 1;
  for (auto& r : rows)
    d = lcm(d, lcm_denominators(r));
  ZMat m;
  for (auto& r : rows) {
    ZVec z;
    for (auto& x : r)
      z.push_back(Z(x * d));
    m.push_back(std::move(z));
  }
  QMat out;
  for (auto& r : hnf(std::move(m))) {
    QVec q;
    for (auto& x : r) {
      Q y(x, d);
      y.canonicalize();
      q.push_back(y);
    }
    out.push_back(std::move(q));
  }
  return out;
}

bool same_lattice(const QMat& a, const QMat& b)
{
  return lattice_basis(a) == lattice_basis(b);
}

int rref(QMat& m, std::vector<int>* pivots)
{
  if (pivots)
    pivots->clear();
  if (m.empty())
    return 0;
  const size_t ncol = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < ncol && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0)
      ++p;
    if (p == m.size())
      continue;
    std::swap(m[r], m[p]);
    Q inv = 1 / m[r][c];
    for (size_t j = c; j < ncol; ++j)
      m[r][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      Q f = m[i][c];
      for (size_t j = c; j < ncol; ++j)
        m[i][j] -= f * m[r][j];
    }
    if (pivots)
      pivots->push_back(int(c));
    ++r;
  }
  m.resize(r);
  return int(r);
}

int rank(QMat m) { return rref(m); }

std::optional<QVec> solve_in_span(const QMat& basis, const QVec& v)
{
  const size_t k = basis.size();
  if (k == 0) {
    for (auto& x : v)
      if (x != 0)
        return std::nullopt;
    return QVec{};
  }
  const size_t n = v.size();
  // columns = basis vectors, augmented with v; eliminate on the transpose
  QMat a(n, QVec(k + 1));
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < n; ++i)
      a[i][j] = basis[j][i];
  for (size_t i = 0; i < n; ++i)
    a[i][k] = v[i];
  std::vector<int> piv;
  rref(a, &piv);
  QVec c(k);
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == int(k))
      return std::nullopt;
    c[piv[i]] = a[i][k];
  }
  if (int(piv.size()) < int(k))
    throw std::invalid_argument("solve_in_span: dependent basis");
  return c;
}

ZMat integer_kernel(const ZVec& a, int n)
{
  ZMat m;
  for (int i = 0; i < n; ++i) {
    ZVec row(n + 1);
    row[0] = a[i];
    row[i + 1] = 1;
    m.push_back(std::move(row));
  }
  ZMat h = hnf(std::move(m));
  ZMat out;
  for (auto& r : h)
    if (r[0] == 0)
      out.emplace_back(r.begin() + 1, r.end());
  return out;
}

}  // namespace chev
