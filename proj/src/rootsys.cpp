#include "chevalley/rootsys.hpp"

#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace chev {

namespace {

struct Label {
  char family;
  int rank;
};

Label parse_label(const std::string& s)
{
  if (s.size() < 2 || s.size() > 3)
    throw std::invalid_argument("rootsys: unsupported type label '" + s + "'");
  char f = s[0];
  for (size_t i = 1; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("rootsys: unsupported type label '" + s + "'");
  int l = std::atoi(s.c_str() + 1);
  bool ok = false;
  switch (f) {
  case 'A': ok = l >= 1 && l <= 30; break;
  case 'B': ok = l >= 2 && l <= 30; break;
  case 'C': ok = l >= 3 && l <= 30; break;
  case 'D': ok = l >= 4 && l <= 30; break;
  case 'E': ok = l >= 6 && l <= 8; break;
  case 'F': ok = l == 4; break;
  case 'G': ok = l == 2; break;
  default: ok = false;
  }
  if (!ok)
    throw std::invalid_argument("rootsys: unsupported type label '" + s + "'");
  return {f, l};
}

// Bourbaki numbering; returns simple root norms and edges (i,j)
void diagram(Label lb, std::vector<int>& norms, std::vector<std::pair<int, int>>& edges)
{
  int l = lb.rank;
  norms.assign(l, 2);
  edges.clear();
  switch (lb.family) {
  case 'A':
    for (int i = 0; i + 1 < l; ++i) edges.push_back({i, i + 1});
    break;
  case 'B':
    for (int i = 0; i + 1 < l; ++i) edges.push_back({i, i + 1});
    for (int i = 0; i + 1 < l; ++i) norms[i] = 4;
    break;
  case 'C':
    for (int i = 0; i + 1 < l; ++i) edges.push_back({i, i + 1});
    norms[l - 1] = 4;
    break;
  case 'D':
    for (int i = 0; i + 2 < l; ++i) edges.push_back({i, i + 1});
    edges.push_back({l - 3, l - 1});
    break;
  case 'E':
    edges.push_back({0, 2});
    edges.push_back({1, 3});
    for (int i = 2; i + 1 < l; ++i) edges.push_back({i, i + 1});
    break;
  case 'F':
    for (int i = 0; i < 3; ++i) edges.push_back({i, i + 1});
    norms = {4, 4, 2, 2};
    break;
  case 'G':
    edges.push_back({0, 1});
    norms = {2, 6};
    break;
  }
}

}  // namespace

IVec RootSystem::negate(IVec v)
{
  for (auto& x : v)
    x = -x;
  return v;
}

int RootSystem::find(const IVec& r) const
{
  auto it = index.find(r);
  return it == index.end() ? -1 : it->second;
}

int RootSystem::form(const IVec& a, const IVec& b) const
{
  int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (a[i] == 0)
      continue;
    for (int j = 0; j < rank; ++j)
      s += a[i] * gram[i][j] * b[j];
  }
  return s;
}

int RootSystem::max_norm() const
{
  int m = 0;
  for (int i = 0; i < rank; ++i)
    m = std::max(m, gram[i][i]);
  return m;
}

int RootSystem::height(const IVec& a) const { return std::accumulate(a.begin(), a.end(), 0); }

int RootSystem::cartan_int(const IVec& b, const IVec& a) const
{
  int n = norm(a);
  if (n == 0)
    throw std::invalid_argument("rootsys: coroot of an isotropic vector");
  int num = 2 * form(b, a);
  if (num % n != 0)
    throw std::logic_error("rootsys: non-integral Cartan integer");
  return num / n;
}

IVec RootSystem::coroot(const IVec& a) const
{
  int n = norm(a);
  IVec c(rank);
  for (int i = 0; i < rank; ++i) {
    int num = a[i] * gram[i][i];
    if (num % n != 0)
      throw std::logic_error("rootsys: non-integral coroot expansion");
    c[i] = num / n;
  }
  return c;
}

std::vector<int> RootSystem::positive_indices() const
{
  std::vector<int> out;
  for (int i = 0; i < num_roots(); ++i)
    if (height(roots[i]) > 0)
      out.push_back(i);
  return out;
}

RootSystem root_system_from_cartan(const std::vector<std::vector<int>>& cartan)
{
  RootSystem rs;
  const int l = int(cartan.size());
  if (l == 0)
    throw std::invalid_argument("rootsys: empty Cartan matrix");
  rs.rank = l;
  rs.cartan = cartan;

  // norms from the symmetrization n_j = n_i c_ji / c_ij, propagated along the diagram
  std::vector<Q> n(l, 0);
  n[0] = 1;
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int i = todo.front();
    todo.pop_front();
    for (int j = 0; j < l; ++j)
      if (j != i && cartan[i][j] != 0 && n[j] == 0) {
        n[j] = n[i] * cartan[j][i] / cartan[i][j];
        todo.push_back(j);
      }
  }
  for (auto& x : n)
    if (x == 0)
      throw std::invalid_argument("rootsys: Dynkin diagram not connected");
  Q mn = *std::min_element(n.begin(), n.end());
  std::vector<int> norms(l);
  for (int i = 0; i < l; ++i) {
    Q v = 2 * n[i] / mn;
    if (!is_integer(v))
      throw std::invalid_argument("rootsys: Cartan matrix not symmetrizable");
    norms[i] = int(v.get_num().get_si());
  }
  rs.gram.assign(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      int num = cartan[i][j] * norms[j];
      if (num % 2 != 0)
        throw std::invalid_argument("rootsys: Cartan matrix not symmetrizable");
      rs.gram[i][j] = num / 2;
    }
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (rs.gram[i][j] != rs.gram[j][i])
        throw std::invalid_argument("rootsys: Cartan matrix not symmetrizable");

  // positive roots by root strings through simple roots
  std::set<IVec> pos;
  std::vector<IVec> layer;
  for (int i = 0; i < l; ++i) {
    IVec e(l, 0);
    e[i] = 1;
    layer.push_back(e);
    pos.insert(e);
  }
  while (!layer.empty()) {
    std::vector<IVec> next;
    for (auto& b : layer)
      for (int i = 0; i < l; ++i) {
        IVec a(l, 0);
        a[i] = 1;
        IVec d = b;
        int p = 0;
        for (;;) {
          d[i] -= 1;
          if (!pos.count(d))
            break;
          ++p;
        }
        int q = p - rs.cartan_int(b, a);
        if (q > 0) {
          IVec u = b;
          u[i] += 1;
          if (!pos.count(u)) {
            pos.insert(u);
            next.push_back(u);
          }
        }
        if (int(pos.size()) > 100000)
          throw std::invalid_argument("rootsys: Cartan matrix is not of finite type");
      }
    layer = std::move(next);
  }
  for (auto& p : pos) {
    rs.roots.push_back(p);
    rs.roots.push_back(RootSystem::negate(p));
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [&](const IVec& a, const IVec& b) {
    int ha = rs.height(a), hb = rs.height(b);
    if (ha != hb)
      return ha < hb;
    return a < b;
  });
  for (int i = 0; i < rs.num_roots(); ++i)
    rs.index[rs.roots[i]] = i;

  // recognize the type
  int npos = int(pos.size());
  int mx = *std::max_element(norms.begin(), norms.end());
  int nlong = int(std::count(norms.begin(), norms.end(), mx));
  char f = 0;
  if (mx == 2) {
    if (npos == l * (l + 1) / 2)
      f = 'A';
    else if (npos == l * (l - 1))
      f = 'D';
    else if ((l == 6 && npos == 36) || (l == 7 && npos == 63) || (l == 8 && npos == 120))
      f = 'E';
  } else if (mx == 6 && l == 2) {
    f = 'G';
  } else if (mx == 4) {
    if (l == 4 && nlong == 2)
      f = 'F';
    else if (nlong == l - 1)
      f = 'B';
    else if (nlong == 1)
      f = 'C';
  }
  if (!f)
    throw std::invalid_argument("rootsys: unrecognized Cartan matrix");
  rs.family = f;
  rs.label = std::string(1, f) + std::to_string(l);
  return rs;
}

RootSystem build_root_system(const std::string& label)
{
  if (label.rfind("BC", 0) == 0)
    throw std::invalid_argument("rootsys: type BC is not supported (non-reduced)");
  Label lb = parse_label(label);
  std::vector<int> norms;
  std::vector<std::pair<int, int>> edges;
  diagram(lb, norms, edges);
  int l = lb.rank;
  std::vector<std::vector<int>> gram(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    gram[i][i] = norms[i];
  for (auto [i, j] : edges) {
    int v = -std::max(norms[i], norms[j]) / 2;
    gram[i][j] = gram[j][i] = v;
  }
  std::vector<std::vector<int>> cartan(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      cartan[i][j] = 2 * gram[i][j] / gram[j][j];
  RootSystem rs = root_system_from_cartan(cartan);
  rs.label = label;
  rs.family = lb.family;
  return rs;
}

IVec reflect(const RootSystem& rs, const IVec& alpha, const IVec& beta)
{
  if (rs.norm(alpha) == 0)
    throw std::invalid_argument("rootsys: reflection in an isotropic root");
  int c = rs.cartan_int(beta, alpha);
  IVec r = beta;
  for (int i = 0; i < rs.rank; ++i)
    r[i] -= c * alpha[i];
  return r;
}

std::pair<int, int> root_string(const RootSystem& rs, const IVec& beta, const IVec& alpha)
{
  // proportional roots: beta = +-alpha (reduced systems)
  if (beta == alpha || beta == RootSystem::negate(alpha))
    throw std::invalid_argument("rootsys: root string through a proportional root");
  if (!rs.is_root(beta) || !rs.is_root(alpha))
    throw std::invalid_argument("rootsys: root string of non-roots");
  int d = 0, u = 0;
  IVec v = beta;
  for (;;) {
    for (int i = 0; i < rs.rank; ++i) v[i] -= alpha[i];
    if (!rs.is_root(v)) break;
    ++d;
  }
  v = beta;
  for (;;) {
    for (int i = 0; i < rs.rank; ++i) v[i] += alpha[i];
    if (!rs.is_root(v)) break;
    ++u;
  }
  return {d, u};
}

std::string root_name(const IVec& r)
{
  std::string s;
  for (size_t i = 0; i < r.size(); ++i) {
    int c = r[i];
    if (c == 0)
      continue;
    if (c < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (std::abs(c) != 1)
      s += std::to_string(std::abs(c));
    s += "a" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

bool EalaRoot::isotropic() const
{
  for (int x : fin)
    if (x != 0)
      return false;
  return true;
}

std::string eala_root_name(const EalaRoot& r)
{
  std::string s = root_name(r.fin) + "@(";
  for (size_t i = 0; i < r.lam.size(); ++i)
    s += (i ? "," : "") + std::to_string(r.lam[i]);
  return s + ")";
}

int sup_norm(const IVec& v)
{
  int m = 0;
  for (int x : v)
    m = std::max(m, std::abs(x));
  return m;
}

bool EalaRootSystem::contains(const EalaRoot& r) const
{
  if (int(r.lam.size()) != nullity || int(r.fin.size()) != base.rank)
    return false;
  if (r.isotropic())
    return !support || support(-1, r.lam);
  int i = base.find(r.fin);
  if (i < 0)
    return false;
  return !support || support(i, r.lam);
}

namespace {

void for_each_lambda(int nu, int radius, const std::function<void(const IVec&)>& f)
{
  IVec lam(nu, -radius);
  if (nu == 0) {
    f(lam);
    return;
  }
  for (;;) {
    f(lam);
    int k = nu - 1;
    while (k >= 0 && lam[k] == radius) {
      lam[k] = -radius;
      --k;
    }
    if (k < 0)
      break;
    ++lam[k];
  }
}

}  // namespace

std::vector<EalaRoot> EalaRootSystem::nonisotropic_in_ball(int radius) const
{
  std::vector<EalaRoot> out;
  for_each_lambda(nullity, radius, [&](const IVec& lam) {
    for (int i = 0; i < base.num_roots(); ++i)
      if (!support || support(i, lam))
        out.push_back({base.roots[i], lam});
  });
  return out;
}

EalaRootSystem build_eala_root_system(const std::string& label, int nullity)
{
  if (nullity < 0 || nullity > 4)
    throw std::invalid_argument("rootsys: nullity must be in [0,4]");
  EalaRootSystem e;
  e.base = build_root_system(label);
  e.nullity = nullity;
  return e;
}

EalaRoot reflect(const EalaRootSystem& ers, const EalaRoot& alpha, const EalaRoot& beta)
{
  if (alpha.isotropic())
    throw std::invalid_argument("rootsys: reflection in an isotropic root");
  int c = ers.base.cartan_int(beta.fin, alpha.fin);
  EalaRoot r = beta;
  for (int i = 0; i < ers.base.rank; ++i)
    r.fin[i] -= c * alpha.fin[i];
  for (int i = 0; i < ers.nullity; ++i)
    r.lam[i] -= c * alpha.lam[i];
  return r;
}

namespace {

std::set<EalaRoot> closure(const EalaRootSystem& ers, const std::vector<EalaRoot>& pi, int ball)
{
  std::set<EalaRoot> seen;
  std::deque<EalaRoot> q;
  for (auto& p : pi)
    if (sup_norm(p.lam) <= ball && seen.insert(p).second)
      q.push_back(p);
  while (!q.empty()) {
    EalaRoot x = q.front();
    q.pop_front();
    for (auto& p : pi) {
      EalaRoot y = reflect(ers, p, x);
      if (sup_norm(y.lam) <= ball && seen.insert(y).second)
        q.push_back(y);
    }
  }
  return seen;
}

const char* kNecessaryOnly =
    "coverage inside a finite ball is a necessary condition only; it does not "
    "certify W_Pi Pi = R^x globally";

}  // namespace

ReflectableBaseReport check_reflectable_base(const EalaRootSystem& ers,
                                             const std::vector<EalaRoot>& pi, int ball,
                                             bool check_minimal)
{
  if (ball < 1)
    throw std::invalid_argument("rootsys: ball radius must be >= 1");
  for (auto& p : pi) {
    if (p.isotropic())
      throw std::invalid_argument("rootsys: candidate base contains an isotropic root " +
                                  eala_root_name(p));
    if (!ers.contains(p))
      throw std::invalid_argument("rootsys: candidate " + eala_root_name(p) + " is not a root");
  }
  ReflectableBaseReport rep;
  rep.pi = pi;
  rep.ball = ball;
  auto all = ers.nonisotropic_in_ball(ball);
  rep.total = int(all.size());
  auto seen = closure(ers, pi, ball);
  for (auto& r : all)
    if (seen.count(r))
      rep.covered.push_back(r);
  rep.covers = int(rep.covered.size()) == rep.total;
  rep.index_estimate = int(pi.size()) - ers.dim_v();
  if (check_minimal && rep.covers) {
    rep.minimality_checked = true;
    rep.minimal_within_ball = true;
    // coverage is monotone in Pi, so dropping one element at a time suffices
    for (size_t k = 0; k < pi.size() && rep.minimal_within_ball; ++k) {
      std::vector<EalaRoot> sub;
      for (size_t j = 0; j < pi.size(); ++j)
        if (j != k)
          sub.push_back(pi[j]);
      auto s = closure(ers, sub, ball);
      size_t c = 0;
      for (auto& r : all)
        c += s.count(r);
      if (int(c) == rep.total)
        rep.minimal_within_ball = false;
    }
  }
  rep.note = kNecessaryOnly;
  return rep;
}

ReflectableBaseReport search_reflectable_base(const EalaRootSystem& ers, int ball, long budget)
{
  if (ball < 1)
    throw std::invalid_argument("rootsys: ball radius must be >= 1");
  if (ers.support)
    throw std::invalid_argument("rootsys: search requires an untwisted root system");
  // candidates: positive finite part, lambda in the unit cube (w_{-a} = w_a)
  std::vector<EalaRoot> pool;
  auto pos = ers.base.positive_indices();
  std::vector<IVec> lams;
  for_each_lambda(ers.nullity, std::min(ball, 1), [&](const IVec& l) { lams.push_back(l); });
  std::stable_sort(lams.begin(), lams.end(), [](const IVec& a, const IVec& b) {
    int na = 0, nb = 0;
    for (int x : a) na += std::abs(x);
    for (int x : b) nb += std::abs(x);
    if (na != nb) return na < nb;
    return a > b;
  });
  for (auto& l : lams)
    for (int i : pos)
      pool.push_back({ers.base.roots[i], l});

  const int dim = ers.dim_v();
  auto all = ers.nonisotropic_in_ball(ball);
  long runs = 0;
  std::vector<int> pick;
  std::vector<EalaRoot> found;
  bool exhausted = false;

  auto coords = [&](const EalaRoot& r) {
    QVec v;
    for (int x : r.fin) v.push_back(x);
    for (int x : r.lam) v.push_back(x);
    return v;
  };

  // depth-first over increasing index sequences; prune when the remaining
  // picks cannot raise the rank to dim V
  std::function<bool(int, int, QMat&)> rec = [&](int start, int size, QMat& rows) -> bool {
    if (int(pick.size()) == size) {
      if (rank(rows) < dim)
        return false;
      if (++runs > budget) {
        exhausted = true;
        return false;
      }
      std::vector<EalaRoot> pi;
      for (int k : pick) pi.push_back(pool[k]);
      auto s = closure(ers, pi, ball);
      for (auto& r : all)
        if (!s.count(r))
          return false;
      found = pi;
      return true;
    }
    for (int k = start; k < int(pool.size()); ++k) {
      if (exhausted)
        return false;
      rows.push_back(coords(pool[k]));
      int rk = rank(rows);
      int remaining = size - int(pick.size()) - 1;
      if (rk + remaining >= dim) {
        pick.push_back(k);
        if (rec(k + 1, size, rows))
          return true;
        pick.pop_back();
      }
      rows.pop_back();
    }
    return false;
  };

  for (int size = dim; size <= int(pool.size()) && !exhausted; ++size) {
    QMat rows;
    pick.clear();
    if (rec(0, size, rows)) {
      auto rep = check_reflectable_base(ers, found, ball, true);
      return rep;
    }
  }
  ReflectableBaseReport rep;
  rep.ball = ball;
  rep.total = int(all.size());
  rep.budget_exhausted = exhausted;
  rep.note = exhausted ? "search budget exhausted" : "no candidate covers the ball";
  return rep;
}

}  // namespace chev
