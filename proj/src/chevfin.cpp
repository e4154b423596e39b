#include "chevalley/chevfin.hpp"

#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chev {

namespace {

IVec add(const IVec& a, const IVec& b)
{
  IVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

IVec sub(const IVec& a, const IVec& b)
{
  IVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

// Structure constants via extraspecial pairs: N = +(p+1) on each
// extraspecial pair, all others forced by the standard identities.
class Constants {
public:
  explicit Constants(const RootSystem& rs) : rs_(rs)
  {
    std::vector<int> pos = rs.positive_indices();
    std::stable_sort(pos.begin(), pos.end(),
                     [&](int a, int b) { return rs.height(rs.roots[a]) < rs.height(rs.roots[b]); });
    for (int xi : pos) {
      const IVec& x = rs.roots[xi];
      if (rs.height(x) < 2)
        continue;
      // extraspecial pair: smallest positive a with x - a positive
      int ap = -1;
      for (int a : rs.positive_indices()) {
        IVec d = sub(x, rs.roots[a]);
        if (rs.is_root(d) && rs.height(d) > 0) {
          ap = a;
          break;
        }
      }
      const IVec& a1 = rs.roots[ap];
      IVec b1 = sub(x, a1);
      auto [p, q] = root_string(rs, b1, a1);
      (void)q;
      set(a1, b1, p + 1);
      // every other positive pair summing to x
      for (int a : rs.positive_indices()) {
        const IVec& al = rs.roots[a];
        IVec be = sub(x, al);
        if (!rs.is_root(be) || rs.height(be) <= 0 || memo_.count({al, be}))
          continue;
        Q acc = 0;
        IVec t1 = sub(be, a1);
        if (rs.is_root(t1))
          acc += frac(get(be, neg(a1)) * get(al, neg(b1)), rs.norm(t1));
        IVec t2 = sub(al, a1);
        if (rs.is_root(t2))
          acc += frac(get(neg(a1), al) * get(be, neg(b1)), rs.norm(t2));
        Q n = frac(rs.norm(x), p + 1) * acc;
        if (!is_integer(n) || n == 0)
          throw std::logic_error("chevfin: structure constant solve failed");
        set(al, be, n.get_num().get_si());
      }
    }
  }

  long get(const IVec& a, const IVec& b) const
  {
    IVec s = add(a, b);
    if (!rs_.is_root(s))
      return 0;
    int ha = rs_.height(a), hb = rs_.height(b);
    if (ha > 0 && hb > 0)
      return memo_.at({a, b});
    if (ha < 0 && hb < 0)
      return -get(neg(a), neg(b));
    if (ha < 0)
      return -get(b, a);
    // a > 0 > b
    if (rs_.height(s) > 0) {
      Q v = frac(rs_.norm(s), rs_.norm(a)) * Q(-get(neg(b), s));
      return exact(v);
    }
    IVec t = neg(s);
    Q v = frac(rs_.norm(t), rs_.norm(b)) * Q(get(t, a));
    return exact(v);
  }

private:
  static IVec neg(const IVec& v) { return RootSystem::negate(v); }
  static long exact(const Q& v)
  {
    if (!is_integer(v))
      throw std::logic_error("chevfin: non-integral structure constant");
    return v.get_num().get_si();
  }
  void set(const IVec& a, const IVec& b, long n)
  {
    memo_[{a, b}] = n;
    memo_[{b, a}] = -n;
  }

  const RootSystem& rs_;
  std::map<std::pair<IVec, IVec>, long> memo_;
};

void add_term(SparseInt& s, int idx, long c)
{
  if (c == 0)
    return;
  for (auto& t : s)
    if (t.idx == idx) {
      t.coeff += c;
      return;
    }
  s.push_back({idx, c});
}

}  // namespace

FiniteChevalleyAlgebra build_chevalley_algebra(const RootSystem& rs)
{
  FiniteChevalleyAlgebra g;
  g.rs = rs;
  g.nroots = rs.num_roots();
  g.dim = g.nroots + rs.rank;
  g.table.assign(g.dim, std::vector<SparseInt>(g.dim));
  Constants nc(rs);
  for (int a = 0; a < g.nroots; ++a) {
    const IVec& ra = rs.roots[a];
    for (int b = 0; b < g.nroots; ++b) {
      const IVec& rb = rs.roots[b];
      IVec s = add(ra, rb);
      SparseInt& out = g.table[a][b];
      if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; })) {
        IVec c = rs.coroot(ra);
        for (int i = 0; i < rs.rank; ++i) add_term(out, g.cartan_index(i), c[i]);
      } else if (rs.is_root(s)) {
        add_term(out, rs.find(s), nc.get(ra, rb));
      }
    }
    for (int i = 0; i < rs.rank; ++i) {
      IVec ai(rs.rank, 0);
      ai[i] = 1;
      long c = rs.cartan_int(ra, ai);
      add_term(g.table[g.cartan_index(i)][a], a, c);
      add_term(g.table[a][g.cartan_index(i)], a, -c);
    }
  }
  for (auto& row : g.table)
    for (auto& s : row)
      std::sort(s.begin(), s.end(), [](const Term& x, const Term& y) { return x.idx < y.idx; });

  g.gram.assign(g.dim, std::vector<Q>(g.dim));
  for (int a = 0; a < g.nroots; ++a)
    g.gram[a][g.neg(a)] = frac(2, rs.norm(rs.roots[a]));
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) {
      Q v = frac(4 * rs.gram[i][j], rs.gram[i][i] * rs.gram[j][j]);
      v.canonicalize();
      g.gram[g.cartan_index(i)][g.cartan_index(j)] = v;
    }
  for (auto& row : g.gram)
    for (auto& x : row) x.canonicalize();
  return g;
}

long FiniteChevalleyAlgebra::structure_constant(int a, int b) const
{
  if (!is_root(a) || !is_root(b))
    return 0;
  IVec s = add(rs.roots[a], rs.roots[b]);
  int k = rs.find(s);
  if (k < 0)
    return 0;
  for (auto& t : table[a][b])
    if (t.idx == k)
      return t.coeff;
  return 0;
}

std::string FiniteChevalleyAlgebra::basis_name(int a) const
{
  if (is_root(a))
    return "x[" + root_name(rs.roots[a]) + "]";
  return "h" + std::to_string(a - nroots + 1);
}

GVec FiniteChevalleyAlgebra::unit(int a) const
{
  GVec v(dim);
  v[a] = 1;
  return v;
}

GVec FiniteChevalleyAlgebra::h_of(int root) const
{
  GVec v(dim);
  IVec c = rs.coroot(rs.roots[root]);
  for (int i = 0; i < rs.rank; ++i) v[cartan_index(i)] = c[i];
  return v;
}

GVec bracket_fin(const FiniteChevalleyAlgebra& g, const GVec& x, const GVec& y)
{
  if (int(x.size()) != g.dim || int(y.size()) != g.dim)
    throw std::invalid_argument("chevfin: element does not belong to this algebra");
  GVec r(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    if (x[a] == 0)
      continue;
    for (int b = 0; b < g.dim; ++b) {
      if (y[b] == 0)
        continue;
      const SparseInt& s = g.table[a][b];
      if (s.empty())
        continue;
      Q c = x[a] * y[b];
      for (auto& t : s) r[t.idx] += c * t.coeff;
    }
  }
  return r;
}

Q invariant_form_fin(const FiniteChevalleyAlgebra& g, const GVec& x, const GVec& y)
{
  Q s = 0;
  for (int a = 0; a < g.dim; ++a) {
    if (x[a] == 0)
      continue;
    for (int b = 0; b < g.dim; ++b)
      if (y[b] != 0 && g.gram[a][b] != 0)
        s += x[a] * y[b] * g.gram[a][b];
  }
  return s;
}

GVec AlgebraAutomorphism::apply(const GVec& v) const
{
  GVec r(v.size());
  for (size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0)
      continue;
    const GVec& col = image[j];
    for (size_t i = 0; i < col.size(); ++i)
      if (col[i] != 0)
        r[i] += v[j] * col[i];
  }
  return r;
}

AlgebraAutomorphism AlgebraAutomorphism::compose(const AlgebraAutomorphism& inner) const
{
  AlgebraAutomorphism r;
  r.name = name + "*" + inner.name;
  for (auto& col : inner.image) r.image.push_back(apply(col));
  return r;
}

bool AlgebraAutomorphism::is_identity() const
{
  for (size_t j = 0; j < image.size(); ++j)
    for (size_t i = 0; i < image[j].size(); ++i)
      if (image[j][i] != (i == j ? 1 : 0))
        return false;
  return true;
}

AlgebraAutomorphism identity_automorphism(const FiniteChevalleyAlgebra& g)
{
  AlgebraAutomorphism a;
  a.name = "id";
  a.order = 1;
  for (int j = 0; j < g.dim; ++j) a.image.push_back(g.unit(j));
  return a;
}

AlgebraAutomorphism chevalley_involution(const FiniteChevalleyAlgebra& g)
{
  AlgebraAutomorphism t;
  t.name = "tau";
  t.order = 2;
  for (int j = 0; j < g.dim; ++j) {
    GVec v(g.dim);
    if (g.is_root(j))
      v[g.neg(j)] = -1;
    else
      v[j] = -1;
    t.image.push_back(std::move(v));
  }
  return t;
}

AlgebraAutomorphism diagram_automorphism(const FiniteChevalleyAlgebra& g, const std::vector<int>& perm)
{
  const RootSystem& rs = g.rs;
  const int l = rs.rank;
  if (int(perm.size()) != l)
    throw std::invalid_argument("chevfin: symmetry has the wrong length");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < l; ++i)
    if (sorted[i] != i)
      throw std::invalid_argument("chevfin: symmetry is not a permutation");
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j])
        throw std::invalid_argument("chevfin: permutation is not a Dynkin diagram symmetry");
  int order = 1;
  for (int i = 0; i < l; ++i) {
    int k = 1, j = perm[i];
    while (j != i) {
      j = perm[j];
      ++k;
    }
    order = std::lcm(order, k);
  }
  if (order > 2)
    throw std::invalid_argument("chevfin: diagram symmetry of order " + std::to_string(order) +
                                " is out of scope (orders 1 and 2 only)");

  auto act = [&](const IVec& r) {
    IVec s(l);
    for (int i = 0; i < l; ++i) s[perm[i]] = r[i];
    return s;
  };
  // sign of sigma(x_r) = sign * x_{sigma r}
  std::map<IVec, long> sign;
  for (int i = 0; i < l; ++i) {
    IVec e(l, 0);
    e[i] = 1;
    sign[e] = 1;
    sign[RootSystem::negate(e)] = 1;
  }
  std::vector<int> order_idx(g.nroots);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::stable_sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    return std::abs(rs.height(rs.roots[a])) < std::abs(rs.height(rs.roots[b]));
  });
  for (int xi : order_idx) {
    const IVec& x = rs.roots[xi];
    if (std::abs(rs.height(x)) < 2)
      continue;
    int sgn = rs.height(x) > 0 ? 1 : -1;
    // x = s + y with s = +-simple
    for (int i = 0; i < l; ++i) {
      IVec s(l, 0);
      s[i] = sgn;
      IVec y = sub(x, s);
      if (!rs.is_root(y))
        continue;
      long n = g.structure_constant(rs.find(s), rs.find(y));
      long m = g.structure_constant(rs.find(act(s)), rs.find(act(y)));
      Q v = frac(sign.at(y) * m, n);
      if (!is_integer(v) || (v != 1 && v != -1))
        throw std::logic_error("chevfin: diagram automorphism sign propagation failed");
      sign[x] = v.get_num().get_si();
      break;
    }
  }
  AlgebraAutomorphism a;
  a.name = "sigma";
  a.order = order;
  for (int j = 0; j < g.dim; ++j) {
    GVec v(g.dim);
    if (g.is_root(j))
      v[rs.find(act(rs.roots[j]))] = sign.at(rs.roots[j]);
    else
      v[g.cartan_index(perm[j - g.nroots])] = 1;
    a.image.push_back(std::move(v));
  }
  if (!is_automorphism(g, a))
    throw std::logic_error("chevfin: diagram map is not an automorphism");
  return a;
}

FinChevalleySystem standard_system(const FiniteChevalleyAlgebra& g)
{
  FinChevalleySystem c;
  for (int a = 0; a < g.nroots; ++a) c.push_back(g.unit(a));
  return c;
}

AlgebraAutomorphism exp_ad(const FiniteChevalleyAlgebra& g, const GVec& x)
{
  AlgebraAutomorphism e;
  e.name = "exp";
  for (int j = 0; j < g.dim; ++j) {
    GVec acc = g.unit(j), term = g.unit(j);
    int k = 1;
    for (;; ++k) {
      term = bracket_fin(g, x, term);
      bool zero = std::all_of(term.begin(), term.end(), [](const Q& q) { return q == 0; });
      if (zero)
        break;
      if (k > g.dim + 1)
        throw std::invalid_argument("chevfin: ad x is not nilpotent");
      for (auto& t : term) t /= k;
      for (int i = 0; i < g.dim; ++i) acc[i] += term[i];
    }
    e.image.push_back(std::move(acc));
  }
  return e;
}

AlgebraAutomorphism n_alpha(const FiniteChevalleyAlgebra& g, int root, const FinChevalleySystem& c)
{
  if (!g.is_root(root))
    throw std::invalid_argument("chevfin: n_alpha needs a root");
  GVec xm = c[g.neg(root)];
  for (auto& q : xm) q = -q;
  auto ep = exp_ad(g, c[root]);
  auto em = exp_ad(g, xm);
  auto n = ep.compose(em.compose(ep));
  n.name = "n[" + root_name(g.rs.roots[root]) + "]";
  return n;
}

bool is_automorphism(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a)
{
  for (int i = 0; i < g.dim; ++i)
    for (int j = i + 1; j < g.dim; ++j) {
      GVec lhs = a.apply(bracket_fin(g, g.unit(i), g.unit(j)));
      GVec rhs = bracket_fin(g, a.image[i], a.image[j]);
      if (lhs != rhs)
        return false;
    }
  return true;
}

bool preserves_form(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a)
{
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      if (invariant_form_fin(g, a.image[i], a.image[j]) != g.gram[i][j])
        return false;
  return true;
}

int fixed_dimension(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a)
{
  QMat m;
  for (int j = 0; j < g.dim; ++j) {
    GVec col = a.image[j];
    col[j] -= 1;
    m.push_back(col);
  }
  return g.dim - rank(m);
}

}  // namespace chev
