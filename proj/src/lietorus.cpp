#include "chevalley/lietorus.hpp"

#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chev {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("lietorus: " + msg); }

IVec vadd(const IVec& a, const IVec& b)
{
  IVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

bool is_zero_vec(const IVec& v)
{
  for (int x : v)
    if (x)
      return false;
  return true;
}

int period_of(const AlgebraAutomorphism& s)
{
  if (s.is_identity())
    return 1;
  if (s.compose(s).is_identity())
    return 2;
  fail("twist " + s.name + " has period above 2 (unsupported)");
}

GVec primitive(GVec v)
{
  Z d = 1;
  for (auto& x : v) d = lcm(d, x.get_den());
  Z gcd_ = 0;
  for (auto& x : v) {
    x *= d;
    gcd_ = gcd(gcd_, x.get_num());
  }
  if (gcd_ == 0)
    return v;
  for (auto& x : v) x /= gcd_;
  for (auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

bool in_span(const std::vector<GVec>& basis, const GVec& v)
{
  bool zero = std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
  if (zero)
    return true;
  if (basis.empty())
    return false;
  return solve_in_span(basis, v).has_value();
}

}  // namespace

bool MultiLoopAlgebra::twisted() const
{
  return std::any_of(period.begin(), period.end(), [](int m) { return m != 1; });
}

unsigned MultiLoopAlgebra::parity(const Deg& lam) const
{
  unsigned p = 0;
  for (int i = 0; i < nu; ++i)
    if (period[i] == 2 && (lam[i] & 1))
      p |= 1u << i;
  return p;
}

bool MultiLoopAlgebra::in_gamma(const Deg& mu) const
{
  for (int i = 0; i < kMaxNullity; ++i) {
    if (i >= nu) {
      if (mu[i] != 0)
        return false;
    } else if (mu[i] % period[i] != 0) {
      return false;
    }
  }
  return true;
}

std::vector<IVec> MultiLoopAlgebra::grades() const
{
  std::vector<IVec> r{zero_grade()};
  for (auto& a : delta.roots) r.push_back(a);
  return r;
}

std::vector<GVec> MultiLoopAlgebra::piece(const IVec& beta, const Deg& lam) const
{
  if (dropped.count({beta, lam}))
    return {};
  auto it = pieces.find({beta, parity(lam)});
  if (it == pieces.end())
    return {};
  return it->second;
}

bool MultiLoopAlgebra::supported(const IVec& beta, const Deg& lam) const { return !piece(beta, lam).empty(); }

std::vector<Elem> MultiLoopAlgebra::basis(const IVec& beta, const Deg& lam) const
{
  std::vector<Elem> r;
  for (auto& v : piece(beta, lam)) r.push_back(embed(v, lam));
  return r;
}

Elem MultiLoopAlgebra::embed(const GVec& v, const Deg& lam) const
{
  Elem e;
  for (int j = 0; j < int(v.size()); ++j)
    if (v[j] != 0)
      e.emplace(Key{Kind::Loop, j, lam}, v[j]);
  return e;
}

GVec MultiLoopAlgebra::component(const Elem& x, const Deg& lam) const
{
  GVec v(g->dim);
  for (auto& [k, c] : x)
    if (k.kind == Kind::Loop && k.deg == lam)
      v[k.idx] = c;
  return v;
}

Q MultiLoopAlgebra::eval(const IVec& beta, const GVec& h) const
{
  if (is_zero_vec(beta))
    return 0;
  auto it = fibre.find(beta);
  if (it == fibre.end())
    fail("eval: " + root_name(beta) + " is not a grade");
  const IVec& gamma = g->rs.roots[it->second.front()];
  Q s = 0;
  for (int i = 0; i < g->rs.rank; ++i) {
    IVec e(g->rs.rank, 0);
    e[i] = 1;
    s += h[g->cartan_index(i)] * g->rs.cartan_int(gamma, e);
  }
  return s;
}

std::string MultiLoopAlgebra::graded_name(const IVec& beta, const Deg& lam) const
{
  return eala_root_name(EalaRoot{beta, from_deg(lam, nu)});
}

std::vector<Deg> MultiLoopAlgebra::ball(int r) const
{
  std::vector<Deg> out;
  Deg d{};
  for (int i = 0; i < nu; ++i) d[i] = -r;
  for (;;) {
    out.push_back(d);
    int i = nu - 1;
    while (i >= 0 && d[i] == r) d[i--] = -r;
    if (i < 0)
      break;
    ++d[i];
  }
  return out;
}

MultiLoopAlgebra build_multiloop(std::shared_ptr<const FiniteChevalleyAlgebra> g,
                                 std::vector<AlgebraAutomorphism> twists, int nu)
{
  if (nu < 0 || nu > kMaxNullity)
    fail("nullity must be in 0.." + std::to_string(kMaxNullity));
  if (int(twists.size()) > nu)
    fail("more twists than directions");
  while (int(twists.size()) < nu) twists.push_back(identity_automorphism(*g));

  MultiLoopAlgebra L;
  L.g = g;
  L.nu = nu;
  const RootSystem& rs = g->rs;
  const int l = rs.rank;

  std::vector<std::vector<int>> perms;
  for (auto& s : twists) {
    if (int(s.image.size()) != g->dim)
      fail("twist has the wrong size");
    int m = period_of(s);
    if (m == 2 && (!is_automorphism(*g, s) || !preserves_form(*g, s)))
      fail("twist " + s.name + " is not a form-preserving automorphism");
    L.period.push_back(m);
    // induced permutation of roots; the Cartan part must be stable
    std::vector<int> perm(g->nroots);
    for (int a = 0; a < g->dim; ++a) {
      int hit = -1, cnt = 0;
      for (int b = 0; b < g->dim; ++b)
        if (s.image[a][b] != 0) {
          ++cnt;
          hit = b;
        }
      if (g->is_root(a)) {
        if (cnt != 1 || !g->is_root(hit))
          fail("twist does not permute the root spaces");
        perm[a] = hit;
      } else {
        for (int b = 0; b < g->nroots; ++b)
          if (s.image[a][b] != 0)
            fail("twist does not stabilize the Cartan subalgebra");
      }
    }
    for (int i = 0; i < l; ++i) {
      IVec e(l, 0);
      e[i] = 1;
      if (rs.height(rs.roots[perm[rs.find(e)]]) != 1)
        fail("twist does not preserve the positive system");
    }
    perms.push_back(perm);
  }
  for (int i = 0; i < nu; ++i)
    for (int j = i + 1; j < nu; ++j)
      if (!(twists[i].compose(twists[j]) == twists[j].compose(twists[i])))
        fail("twists do not commute");
  L.twists = twists;

  // orbits of simple roots
  std::vector<int> cls(l);
  std::iota(cls.begin(), cls.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& perm : perms)
      for (int i = 0; i < l; ++i) {
        IVec e(l, 0);
        e[i] = 1;
        const IVec& img = rs.roots[perm[rs.find(e)]];
        int j = int(std::find(img.begin(), img.end(), 1) - img.begin());
        int m = std::min(cls[i], cls[j]);
        if (cls[i] != m || cls[j] != m) {
          cls[i] = cls[j] = m;
          changed = true;
        }
      }
  }
  std::map<int, int> cls_id;
  for (int i = 0; i < l; ++i)
    if (!cls_id.count(cls[i])) {
      int id = int(cls_id.size());
      cls_id[cls[i]] = id;
    }
  const int k = int(cls_id.size());
  L.simple_classes.assign(k, {});
  for (int i = 0; i < l; ++i) L.simple_classes[cls_id[cls[i]]].push_back(i);

  // Cartan matrix of the restricted system from orbit averages
  std::vector<std::vector<Q>> avg(k, std::vector<Q>(k));
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d) {
      Q s = 0;
      for (int i : L.simple_classes[c])
        for (int j : L.simple_classes[d]) s += rs.gram[i][j];
      avg[c][d] = s / int(L.simple_classes[c].size() * L.simple_classes[d].size());
    }
  std::vector<std::vector<int>> cart(k, std::vector<int>(k));
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d) {
      Q v = 2 * avg[c][d] / avg[d][d];
      if (!is_integer(v))
        fail("restricted Cartan matrix is not integral");
      cart[c][d] = int(v.get_num().get_si());
    }
  L.delta = k == l && !L.twisted() ? rs : root_system_from_cartan(cart);

  L.grade_of.assign(g->dim, IVec(k, 0));
  for (int a = 0; a < g->nroots; ++a) {
    IVec b(k, 0);
    for (int i = 0; i < l; ++i) b[cls_id[cls[i]]] += rs.roots[a][i];
    if (!L.delta.is_root(b))
      fail("restricted root system is not reduced (type BC twists are not supported)");
    L.grade_of[a] = b;
  }
  for (int a = 0; a < g->dim; ++a) L.fibre[L.grade_of[a]].push_back(a);

  // eigenspace pieces: prod_i (1 + eps_i sigma_i) applied to the fibre
  unsigned tw = 0;
  for (int i = 0; i < nu; ++i)
    if (L.period[i] == 2)
      tw |= 1u << i;
  for (auto& [beta, idx] : L.fibre)
    for (unsigned p = 0; p < (1u << nu); ++p) {
      if (p & ~tw)
        continue;
      std::vector<GVec> chosen;
      for (int j : idx) {
        GVec v = g->unit(j);
        for (int i = 0; i < nu; ++i) {
          if (!(tw >> i & 1))
            continue;
          GVec sv = twists[i].apply(v);
          Q eps = (p >> i & 1) ? -1 : 1;
          for (int t = 0; t < g->dim; ++t) v[t] += eps * sv[t];
        }
        if (std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; }))
          continue;
        v = primitive(v);
        QMat m = chosen;
        m.push_back(v);
        if (rank(m) == int(chosen.size()) + 1)
          chosen.push_back(v);
      }
      if (!chosen.empty())
        L.pieces[{beta, p}] = chosen;
    }
  return L;
}

MultiLoopAlgebra build_toroidal(const std::string& type, int nu)
{
  auto g = std::make_shared<const FiniteChevalleyAlgebra>(build_chevalley_algebra(build_root_system(type)));
  return build_multiloop(g, {}, nu);
}

MultiLoopAlgebra build_multiloop(const std::string& type, int nu, const std::string& twist)
{
  if (twist.empty() || twist == "none" || twist == "id")
    return build_toroidal(type, nu);
  if (twist != "flip")
    fail("unknown twist '" + twist + "' (expected none or flip)");
  if (nu < 1)
    fail("a twist needs nullity >= 1");
  auto g = std::make_shared<const FiniteChevalleyAlgebra>(build_chevalley_algebra(build_root_system(type)));
  const RootSystem& rs = g->rs;
  std::vector<int> perm(rs.rank);
  std::iota(perm.begin(), perm.end(), 0);
  switch (rs.family) {
    case 'A':
      std::reverse(perm.begin(), perm.end());
      break;
    case 'D':
      std::swap(perm[rs.rank - 2], perm[rs.rank - 1]);
      break;
    case 'E':
      if (rs.rank != 6)
        fail("type " + type + " has no diagram flip");
      perm = {5, 1, 4, 3, 2, 0};
      break;
    default:
      fail("type " + type + " has no diagram flip");
  }
  if (perm == std::vector<int>([&] {
        std::vector<int> id(rs.rank);
        std::iota(id.begin(), id.end(), 0);
        return id;
      }()))
    fail("type " + type + " has no diagram flip");
  return build_multiloop(g, {diagram_automorphism(*g, perm)}, nu);
}

Elem bracket_loop(const MultiLoopAlgebra& L, const Elem& x, const Elem& y)
{
  Elem r;
  for (auto& [k1, c1] : x) {
    if (k1.kind != Kind::Loop)
      fail("bracket_loop: non-loop key");
    for (auto& [k2, c2] : y) {
      if (k2.kind != Kind::Loop)
        fail("bracket_loop: non-loop key");
      Deg d = k1.deg + k2.deg;
      for (auto& t : L.g->table[k1.idx][k2.idx]) add_to(r, Key{Kind::Loop, t.idx, d}, c1 * c2 * t.coeff);
    }
  }
  return r;
}

Q loop_form(const MultiLoopAlgebra& L, const Elem& x, const Elem& y)
{
  Q s = 0;
  for (auto& [k1, c1] : x) {
    if (k1.kind != Kind::Loop)
      continue;
    for (auto& [k2, c2] : y)
      if (k2.kind == Kind::Loop && is_zero(k1.deg + k2.deg))
        s += c1 * c2 * L.g->gram[k1.idx][k2.idx];
  }
  return s;
}

Elem centroid_apply(const MultiLoopAlgebra& L, const Deg& mu, const Elem& x)
{
  if (!L.in_gamma(mu))
    fail("centroid degree " + deg_name(mu, L.nu) + " is not in Gamma");
  Elem r;
  for (auto& [k, c] : x) {
    if (k.kind != Kind::Loop)
      fail("centroid_apply: non-loop key");
    r.emplace(Key{Kind::Loop, k.idx, k.deg + mu}, c);
  }
  return r;
}

Elem LoopAutomorphism::apply(const MultiLoopAlgebra& L, const Elem& x) const
{
  (void)L;
  Elem r;
  for (auto& [k, c] : x) {
    if (k.kind != Kind::Loop)
      fail("loop automorphism applied to a non-loop key");
    const GVec& col = fin.image[k.idx];
    Deg d = invert ? -k.deg : k.deg;
    for (int j = 0; j < int(col.size()); ++j)
      if (col[j] != 0)
        add_to(r, Key{Kind::Loop, j, d}, c * col[j]);
  }
  return r;
}

LoopAutomorphism tau_psi(const MultiLoopAlgebra& L, const AlgebraAutomorphism& tau,
                         const AlgebraAutomorphism& psi)
{
  const auto& g = *L.g;
  if (!tau.compose(tau).is_identity() || !is_automorphism(g, tau))
    fail("tau is not an involutive automorphism");
  for (int a = 0; a < g.dim; ++a) {
    GVec want = g.zero();
    if (g.is_root(a)) {
      for (int b = 0; b < g.dim; ++b)
        if (tau.image[a][b] != 0 && b != g.neg(a))
          fail("tau does not send g_a to g_-a");
    } else {
      want[a] = -1;
      if (tau.image[a] != want)
        fail("tau is not -1 on the Cartan subalgebra");
    }
  }
  for (auto& s : L.twists)
    if (!(psi.compose(s) == s.compose(psi)))
      fail("psi does not preserve the twist eigenspaces");
  if (!is_automorphism(g, psi) || !preserves_form(g, psi))
    fail("psi is not a form-preserving automorphism");
  auto it = L.pieces.find({L.zero_grade(), 0u});
  if (it != L.pieces.end())
    for (auto& h : it->second)
      if (psi.apply(h) != h)
        fail("psi does not fix the invariant Cartan part");
  for (auto& s : L.twists)
    if (!(tau.compose(s) == s.compose(tau)))
      fail("tau does not commute with the twists");
  if (!(tau.compose(psi) == psi.compose(tau)))
    fail("tau and psi do not commute");
  LoopAutomorphism r;
  r.fin = psi.compose(tau);
  r.fin.name = "tau_psi";
  r.invert = true;
  AlgebraAutomorphism p = r.fin;
  int order = 1;
  while (!p.is_identity()) {
    if (++order > 12)
      fail("tau_psi does not have finite order");
    p = p.compose(r.fin);
  }
  r.fin.order = order;
  return r;
}

LoopAutomorphism default_involution(const MultiLoopAlgebra& L)
{
  return tau_psi(L, chevalley_involution(*L.g), identity_automorphism(*L.g));
}

Q rational_sqrt_or_throw(const Q& c2)
{
  if (c2 <= 0)
    fail("normalization constant squared is not positive: " + to_string(c2));
  Z n = c2.get_num(), d = c2.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    Z rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Q r(rn, rd);
    r.canonicalize();
    return r;
  }
  // squarefree part of n*d
  Z m = n * d, sf = 1;
  for (Z p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e & 1)
      sf *= p;
  }
  sf *= m;
  throw std::domain_error("lietorus: normalization needs sqrt(" + to_string(c2) +
                          "); coefficients would have to be extended to Q(sqrt(" + sf.get_str() + "))");
}

Q normalization_constant(const Q& norm, const Q& pairing)
{
  if (norm == 0 || pairing == 0)
    fail("normalization: zero norm or pairing");
  return rational_sqrt_or_throw(Q(2) / (norm * pairing));
}

ChevalleySystemT::ChevalleySystemT(const MultiLoopAlgebra& L, LoopAutomorphism tau) : L_(&L), tau_(std::move(tau)) {}

const Elem& ChevalleySystemT::x(const IVec& beta, const Deg& lam) const
{
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find({beta, lam});
    if (it != cache_.end())
      return it->second;
  }
  const MultiLoopAlgebra& L = *L_;
  if (is_zero_vec(beta) || !L.delta.is_root(beta))
    fail("Chevalley system: " + root_name(beta) + " is not a nonzero root");
  auto b = L.basis(beta, lam);
  if (b.empty())
    fail("Chevalley system: " + L.graded_name(beta, lam) + " is not in the support");
  if (b.size() != 1)
    fail("Chevalley system: " + L.graded_name(beta, lam) + " has dimension above 1");
  Elem v;
  if (L.delta.height(beta) > 0) {
    Elem xp = b[0];
    Elem xm = -tau_.apply(L, xp);
    Elem h = bracket_loop(L, xp, xm);
    Q a;
    if (!proportional(bracket_loop(L, h, xp), xp, &a) || a == 0)
      fail("Chevalley system: no sl2 triple at " + L.graded_name(beta, lam));
    v = scaled(xp, rational_sqrt_or_throw(Q(2) / a));
  } else {
    v = -tau_.apply(L, x(RootSystem::negate(beta), -lam));
  }
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.emplace(std::make_pair(beta, lam), std::move(v)).first->second;
}

ChevalleySystemT build_chevalley_system(const MultiLoopAlgebra& L, const LoopAutomorphism& tau)
{
  return ChevalleySystemT(L, tau);
}

namespace {

struct GradedElem {
  IVec beta;
  Deg lam;
  Elem e;
};

std::vector<GradedElem> graded_basis(const MultiLoopAlgebra& L, int ball)
{
  std::vector<GradedElem> out;
  for (auto& lam : L.ball(ball))
    for (auto& b : L.grades())
      for (auto& e : L.basis(b, lam)) out.push_back({b, lam, e});
  return out;
}

bool is_grade(const MultiLoopAlgebra& L, const IVec& b) { return is_zero_vec(b) || L.delta.is_root(b); }

}  // namespace

CertificateSet check_lie_torus_axioms(const MultiLoopAlgebra& L, int ball)
{
  CertificateSet out;
  auto mk = [&](const char* id) {
    Certificate c;
    c.axiom_id = id;
    c.ball = ball;
    return c;
  };
  const auto B = graded_basis(L, ball);

  // LT1: grading
  Certificate lt1 = mk("LT1");
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = i; j < B.size(); ++j) {
      Deg d = B[i].lam + B[j].lam;
      if (sup_norm(d) > ball)
        continue;
      ++lt1.checked;
      Elem w = bracket_loop(L, B[i].e, B[j].e);
      if (w.empty())
        continue;
      IVec gsum = vadd(B[i].beta, B[j].beta);
      if (!is_grade(L, gsum) || !in_span(L.piece(gsum, d), L.component(w, d)))
        lt1.fail(L.graded_name(gsum, d), "bracket inside the graded piece",
                 "[" + L.graded_name(B[i].beta, B[i].lam) + ", " + L.graded_name(B[j].beta, B[j].lam) + "] outside");
    }
  out.push_back(lt1);

  // LT2: dimension bounds
  Certificate lt2 = mk("LT2");
  for (auto& b : L.delta.roots) {
    for (auto& lam : L.ball(ball)) {
      ++lt2.checked;
      size_t dim = L.piece(b, lam).size();
      if (dim > 1)
        lt2.fail(L.graded_name(b, lam), "dim <= 1", "dim " + std::to_string(dim));
    }
    if (L.piece(b, Deg{}).empty())
      lt2.fail(L.graded_name(b, Deg{}), "dim 1", "dim 0");
  }
  out.push_back(lt2);

  // LT3: [[e,f],y] = <gamma, beta^vee> y
  Certificate lt3 = mk("LT3");
  for (auto& b : L.delta.roots)
    for (auto& lam : L.ball(ball)) {
      auto eb = L.basis(b, lam);
      if (eb.empty())
        continue;
      IVec nb = RootSystem::negate(b);
      auto fb = L.basis(nb, -lam);
      if (fb.empty()) {
        lt3.fail(L.graded_name(nb, -lam), "nonzero partner space", "zero");
        continue;
      }
      Elem h = bracket_loop(L, eb[0], fb[0]);
      Q a;
      if (h.empty() || !proportional(bracket_loop(L, h, eb[0]), eb[0], &a) || a == 0) {
        lt3.fail(L.graded_name(b, lam), "sl2 triple", "degenerate");
        continue;
      }
      h = scaled(h, Q(2) / a);
      for (auto& y : B) {
        ++lt3.checked;
        int want = is_zero_vec(y.beta) ? 0 : L.delta.cartan_int(y.beta, b);
        if (bracket_loop(L, h, y.e) != scaled(y.e, want))
          lt3.fail(L.graded_name(b, lam), std::to_string(want) + " on " + L.graded_name(y.beta, y.lam),
                   "different action");
      }
    }
  out.push_back(lt3);

  // LT4: L^lambda_0 spanned by brackets of opposite root spaces
  Certificate lt4 = mk("LT4");
  const IVec z = L.zero_grade();
  for (auto& lam : L.ball(ball)) {
    size_t dim = L.piece(z, lam).size();
    QMat gens;
    for (auto& b : L.delta.roots)
      for (auto& mu : L.ball(ball)) {
        Deg a = lam + mu;
        if (sup_norm(a) > ball)
          continue;
        for (auto& u : L.basis(b, a))
          for (auto& v : L.basis(RootSystem::negate(b), -mu)) gens.push_back(L.component(bracket_loop(L, u, v), lam));
      }
    ++lt4.checked;
    int r = gens.empty() ? 0 : rank(gens);
    if (size_t(r) != dim)
      lt4.fail(L.graded_name(z, lam), "rank " + std::to_string(dim), "rank " + std::to_string(r));
  }
  out.push_back(lt4);

  // LT5: support generates Lambda
  Certificate lt5 = mk("LT5");
  ZMat rows;
  for (auto& lam : L.ball(ball))
    for (auto& b : L.grades())
      if (L.supported(b, lam)) {
        ZVec r;
        for (int i = 0; i < L.nu; ++i) r.push_back(lam[i]);
        rows.push_back(r);
        break;
      }
  ++lt5.checked;
  if (L.nu > 0) {
    ZMat h = hnf(rows);
    ZMat id(L.nu, ZVec(L.nu));
    for (int i = 0; i < L.nu; ++i) id[i][i] = 1;
    if (h != id) {
      Z idx = 0;
      if (int(h.size()) == L.nu) {
        idx = 1;
        for (int i = 0; i < L.nu; ++i) idx *= h[i][i];
      }
      lt5.fail("support", "generates Z^" + std::to_string(L.nu),
               idx == 0 ? "rank deficient" : "index " + idx.get_str());
    }
  }
  out.push_back(lt5);
  return out;
}

Certificate check_chevalley_involution(const MultiLoopAlgebra& L, const LoopAutomorphism& tau, int ball)
{
  Certificate c;
  c.axiom_id = "CINV";
  c.ball = ball;
  const auto B = graded_basis(L, ball);
  int order = tau.fin.order > 0 ? tau.fin.order : 2;
  if (tau.invert && order % 2)
    order *= 2;
  for (auto& u : B) {
    ++c.checked;
    std::string nm = L.graded_name(u.beta, u.lam);
    Elem t = tau.apply(L, u.e);
    IVec nb = RootSystem::negate(u.beta);
    Deg nl = tau.invert ? -u.lam : u.lam;
    if (!in_span(L.piece(nb, nl), L.component(t, nl)) || t.size() != L.embed(L.component(t, nl), nl).size())
      c.fail(nm, "image in " + L.graded_name(nb, nl), "elsewhere");
    if (is_zero_vec(u.beta) && is_zero(u.lam) && t != -u.e)
      c.fail(nm, "-x on L^0_0", "different");
    Elem p = u.e;
    for (int k = 0; k < order; ++k) p = tau.apply(L, p);
    if (p != u.e)
      c.fail(nm, "tau^" + std::to_string(order) + " = id", "different");
  }
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = i; j < B.size(); ++j) {
      Deg d = B[i].lam + B[j].lam;
      if (sup_norm(d) > ball)
        continue;
      ++c.checked;
      Elem tu = tau.apply(L, B[i].e), tv = tau.apply(L, B[j].e);
      if (tau.apply(L, bracket_loop(L, B[i].e, B[j].e)) != bracket_loop(L, tu, tv))
        c.fail(L.graded_name(B[i].beta, B[i].lam) + " x " + L.graded_name(B[j].beta, B[j].lam), "multiplicative",
               "not");
      if (is_zero(d) && loop_form(L, tu, tv) != loop_form(L, B[i].e, B[j].e))
        c.fail(L.graded_name(B[i].beta, B[i].lam) + " x " + L.graded_name(B[j].beta, B[j].lam), "form preserved",
               "not");
    }
  return c;
}

}  // namespace chev
