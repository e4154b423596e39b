#include "chevalley/integrality.hpp"

#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace chev {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("integrality: " + msg); }

bool lex_positive(const Deg& d)
{
  for (int x : d)
    if (x)
      return x > 0;
  return false;
}

EalaRoot key_root(const MultiLoopAlgebra& L, const Key& k)
{
  if (k.kind == Kind::Loop)
    return EalaRoot{L.grade_of[k.idx], from_deg(k.deg, L.nu)};
  return EalaRoot{L.zero_grade(), from_deg(k.deg, L.nu)};
}

// rows of elements over a shared key set
struct KeyFrame {
  std::map<Key, int> col;
  void add(const Elem& e)
  {
    for (auto& [k, c] : e) col.emplace(k, 0);
  }
  void freeze()
  {
    int i = 0;
    for (auto& [k, v] : col) v = i++;
  }
  QVec row(const Elem& e) const
  {
    QVec r(col.size());
    for (auto& [k, c] : e) r[col.at(k)] = c;
    return r;
  }
  Elem elem(const QVec& r) const
  {
    Elem e;
    for (auto& [k, i] : col) add_to(e, k, r[i]);
    return e;
  }
};

std::vector<Elem> zbasis(const std::vector<Elem>& gens)
{
  KeyFrame f;
  for (auto& g : gens) f.add(g);
  f.freeze();
  if (f.col.empty())
    return {};
  QMat m;
  for (auto& g : gens) m.push_back(f.row(g));
  std::vector<Elem> out;
  for (auto& r : lattice_basis(m)) out.push_back(f.elem(r));
  return out;
}

using SystemFn = std::function<Elem(const EalaRoot&)>;

struct SystemBuild {
  IntegralStructure B;
  // generators x^a_sigma per positive sigma, with the Pi element used
  std::map<Deg, std::vector<std::pair<EalaRoot, Elem>>> gens;
};

EalaRoot neg_root(const EalaRoot& r)
{
  EalaRoot n{RootSystem::negate(r.fin), r.lam};
  for (auto& x : n.lam) x = -x;
  return n;
}

EalaRoot shift(const EalaRoot& r, const Deg& s, int nu)
{
  EalaRoot n = r;
  for (int i = 0; i < nu; ++i) n.lam[i] += s[i];
  return n;
}

SystemBuild build_from_system(const EalaAlgebra& E, const SystemFn& x, const std::vector<EalaRoot>& pi, int ball)
{
  const MultiLoopAlgebra& L = *E.L;
  auto tau = extend_involution(E, default_involution(L));
  SystemBuild sb;
  sb.B.ball = ball;

  std::vector<Elem> h;
  for (auto& a : pi) h.push_back(bracket_eala(E, x(a), x(neg_root(a))));
  auto b0 = zbasis(h);

  std::map<Deg, std::vector<Elem>> bsig;
  for (auto& lam : L.ball(ball)) {
    if (!lex_positive(lam))
      continue;
    std::vector<Elem> g;
    for (auto& a : pi) {
      EalaRoot as = shift(a, lam, L.nu);
      if (!L.supported(as.fin, to_deg(as.lam)))
        continue;
      Elem v = bracket_eala(E, x(as), x(neg_root(a)));
      sb.gens[lam].push_back({a, v});
      g.push_back(v);
    }
    bsig[lam] = zbasis(g);
    for (auto& e : bsig[lam]) bsig[-lam].push_back(-tau.apply(E, e));
  }

  for (auto& r : roots_in_ball(E, ball)) {
    if (!r.isotropic()) {
      sb.B.add(x(r), r, "x");
      continue;
    }
    Deg lam = to_deg(r.lam);
    const auto& v = is_zero(lam) ? b0 : bsig[lam];
    if (v.size() > pi.size())
      throw std::logic_error("integrality: degree " + eala_root_name(r) + " needs more than |Pi| generators");
    for (auto& e : v) sb.B.add(e, r, is_zero(lam) ? "h" : "s");
  }
  return sb;
}

void require_system_input(const EalaAlgebra& E, const std::vector<EalaRoot>& pi, int ball)
{
  if (E.L->delta.rank < 2)
    fail("rank 1 root systems are excluded");
  // with nullity 0 the ball is immaterial
  auto rep = check_reflectable_base(eala_root_system(E), pi, E.nu == 0 ? std::max(ball, 1) : ball, false);
  if (!rep.covers)
    fail("Pi does not cover the nonisotropic roots within ball " + std::to_string(ball) + " (" +
         std::to_string(rep.covered.size()) + " of " + std::to_string(rep.total) + ")");
}

}  // namespace

bool same_zspan(const std::vector<Elem>& a, const std::vector<Elem>& b)
{
  KeyFrame f;
  for (auto& e : a) f.add(e);
  for (auto& e : b) f.add(e);
  f.freeze();
  if (f.col.empty())
    return true;
  QMat ma, mb;
  for (auto& e : a) ma.push_back(f.row(e));
  for (auto& e : b) mb.push_back(f.row(e));
  return same_lattice(ma, mb);
}

int span_rank(const std::vector<Elem>& v)
{
  KeyFrame f;
  for (auto& e : v) f.add(e);
  f.freeze();
  if (f.col.empty())
    return 0;
  QMat m;
  for (auto& e : v) m.push_back(f.row(e));
  return rank(m);
}

void IntegralStructure::add(Elem v, EalaRoot root, std::string tag)
{
  by_root[root].push_back(int(elems.size()));
  elems.push_back({std::move(v), std::move(root), std::move(tag)});
}

std::vector<Elem> IntegralStructure::at(const EalaRoot& r) const
{
  std::vector<Elem> out;
  auto it = by_root.find(r);
  if (it != by_root.end())
    for (int i : it->second) out.push_back(elems[i].v);
  return out;
}

IntegralStructure IntegralStructure::core() const
{
  IntegralStructure c;
  c.ball = ball;
  for (auto& e : elems)
    if (in_core(e.v))
      c.add(e.v, e.root, e.tag);
  return c;
}

std::map<std::string, int> IntegralStructure::counts() const
{
  std::map<std::string, int> m;
  for (auto& e : elems) ++m[e.tag];
  return m;
}

EalaRootSystem eala_root_system(const EalaAlgebra& E)
{
  EalaRootSystem ers;
  ers.base = E.L->delta;
  ers.nullity = E.nu;
  if (E.L->twisted()) {
    auto L = E.L;
    ers.support = [L](int i, const IVec& lam) {
      if (i < 0)
        return true;
      return L->supported(L->delta.roots[i], to_deg(lam));
    };
  }
  return ers;
}

ZVec to_zvec(const IVec& v)
{
  ZVec z;
  for (int x : v) z.push_back(x);
  return z;
}

std::vector<IVec> lattice_kernel_basis(const IVec& mu)
{
  std::vector<IVec> out;
  for (auto& r : integer_kernel(to_zvec(mu), int(mu.size()))) {
    IVec v;
    for (auto& x : r) v.push_back(int(x.get_si()));
    out.push_back(v);
  }
  return out;
}

IntegralStructure toroidal_core_basis(const EalaAlgebra& E, int ball)
{
  const MultiLoopAlgebra& L = *E.L;
  if (L.twisted())
    fail("toroidal_core_basis needs an untwisted torus; use core_integral_structure_from_system");
  Q pre = Q(2) / L.delta.max_norm();
  auto tau = extend_involution(E, default_involution(L));

  std::map<Deg, std::vector<Elem>> duals;
  for (int i = 0; i < E.nu; ++i) duals[Deg{}].push_back(single(Key{Kind::Dual, i, Deg{}}, pre));
  for (auto& mu : L.ball(ball)) {
    if (!lex_positive(mu) || !E.in_gamma_d(mu))
      continue;
    std::vector<Elem> g;
    for (int i = 0; i < E.nu; ++i) {
      QVec e(E.nu, 0);
      e[i] = 1;
      g.push_back(scaled(E.dual(mu, e), pre));
    }
    duals[mu] = zbasis(g);
    for (auto& b : duals[mu]) duals[-mu].push_back(-tau.apply(E, b));
  }

  IntegralStructure B;
  B.ball = ball;
  for (auto& lam : L.ball(ball)) {
    for (int a = 0; a < L.g->dim; ++a) {
      Key k{Kind::Loop, a, lam};
      B.add(single(k), key_root(L, k), L.g->is_root(a) ? "x" : "h");
    }
    auto it = duals.find(lam);
    if (it != duals.end())
      for (auto& e : it->second) B.add(e, EalaRoot{L.zero_grade(), from_deg(lam, E.nu)}, "c");
  }
  return B;
}

IntegralStructure torus_chevalley_basis(const MultiLoopAlgebra& L, int ball)
{
  if (L.twisted())
    fail("torus_chevalley_basis needs an untwisted torus");
  IntegralStructure B;
  B.ball = ball;
  for (auto& lam : L.ball(ball))
    for (int a = 0; a < L.g->dim; ++a) {
      Key k{Kind::Loop, a, lam};
      B.add(single(k), key_root(L, k), L.g->is_root(a) ? "x" : "h");
    }
  return B;
}

std::map<int, Q> coordinates(const MultiLoopAlgebra& L, const IntegralStructure& B, const Elem& x,
                             bool require_integer)
{
  std::map<EalaRoot, Elem> parts;
  for (auto& [k, c] : x) parts[key_root(L, k)].emplace(k, c);
  std::map<int, Q> out;
  for (auto& [r, part] : parts) {
    if (sup_norm(r.lam) > B.ball)
      throw std::domain_error("integrality: degree " + eala_root_name(r) + " outside ball " +
                              std::to_string(B.ball));
    auto it = B.by_root.find(r);
    if (it == B.by_root.end())
      throw std::domain_error("integrality: no structure elements at " + eala_root_name(r));
    KeyFrame f;
    for (int i : it->second) f.add(B.elems[i].v);
    f.freeze();
    for (auto& [k, c] : part)
      if (!f.col.count(k))
        throw std::domain_error("integrality: element not in the span at " + eala_root_name(r));
    QMat rows;
    for (int i : it->second) rows.push_back(f.row(B.elems[i].v));
    auto s = solve_in_span(rows, f.row(part));
    if (!s)
      throw std::domain_error("integrality: element not in the span at " + eala_root_name(r));
    for (size_t j = 0; j < s->size(); ++j) {
      const Q& q = (*s)[j];
      if (q == 0)
        continue;
      if (require_integer && !is_integer(q))
        throw std::domain_error("integrality: non-integral coordinate " + to_string(q) + " at " +
                                eala_root_name(r));
      out[it->second[j]] = q;
    }
  }
  return out;
}

CertificateSet check_extension_conditions(const EalaAlgebra& E, const IntegralStructure& Bc, int ball)
{
  const MultiLoopAlgebra& L = *E.L;
  Certificate n1{"EXT-symmetric", ball}, ns{"EXT-directions", ball}, ex{"EXT-centroid", ball};
  for (auto& mu : L.ball(ball)) {
    if (!E.in_gamma_d(mu))
      continue;
    std::string where = deg_name(mu, E.nu);
    ++n1.checked;
    // chi^-mu D^mu and chi^mu D^-mu as subspaces of directions
    QMat a, b;
    for (auto& e : E.der_basis(mu)) {
      QVec th(E.nu);
      for (auto& [k, c] : e) th[k.idx] = c;
      a.push_back(th);
    }
    for (auto& e : E.der_basis(-mu)) {
      QVec th(E.nu);
      for (auto& [k, c] : e) th[k.idx] = c;
      b.push_back(th);
    }
    QMat ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    int ra = a.empty() ? 0 : rank(a), rb = b.empty() ? 0 : rank(b), rab = ab.empty() ? 0 : rank(ab);
    if (ra != rab || rb != rab)
      n1.fail(where, "equal direction spaces", "ranks " + std::to_string(ra) + "," + std::to_string(rb));
    ++ns.checked;
    int want = is_zero(mu) ? E.nu : E.nu - 1;
    bool integral = true;
    for (auto& r : a)
      for (auto& q : r) integral = integral && is_integer(q);
    if (ra != want || !integral)
      ns.fail(where, "integer spanning set of rank " + std::to_string(want), "rank " + std::to_string(ra));
  }
  for (auto& se : Bc.elems) {
    bool loop_only = !se.v.empty();
    for (auto& [k, c] : se.v) loop_only = loop_only && k.kind == Kind::Loop;
    if (!loop_only)
      continue;
    for (auto& mu : L.ball(ball)) {
      if (is_zero(mu) || !E.in_gamma_d(mu))
        continue;
      if (sup_norm(to_deg(se.root.lam) + mu) > Bc.ball)
        continue;
      ++ex.checked;
      try {
        coordinates(L, Bc, centroid_apply(L, mu, se.v), true);
      } catch (const std::domain_error& e) {
        ex.fail("chi^" + deg_name(mu, E.nu) + " on " + eala_root_name(se.root), "integral", e.what());
      }
    }
  }
  return {n1, ns, ex};
}

IntegralStructure extend_to_eala(const EalaAlgebra& E, const IntegralStructure& Bc)
{
  for (auto& c : check_extension_conditions(E, Bc, Bc.ball))
    if (!c.pass)
      fail("condition " + c.axiom_id + " fails at " + c.witnesses.front().where);
  IntegralStructure B = Bc;
  for (auto& mu : E.L->ball(Bc.ball)) {
    if (!E.in_gamma_d(mu))
      continue;
    for (auto& d : E.der_basis(mu)) B.add(d, EalaRoot{E.L->zero_grade(), from_deg(mu, E.nu)}, "d");
  }
  return B;
}

IntegralStructure core_integral_structure_from_system(const EalaAlgebra& E, const ChevalleySystemT& C,
                                                      const std::vector<EalaRoot>& pi, int ball)
{
  require_system_input(E, pi, ball);
  auto x = [&](const EalaRoot& r) { return C.x(r.fin, to_deg(r.lam)); };
  return build_from_system(E, x, pi, ball).B;
}

SignTwist sign_twist_from_bits(const RootSystem& delta, unsigned bits)
{
  auto pos = delta.positive_indices();
  std::map<IVec, int> sign;
  for (size_t i = 0; i < pos.size(); ++i) {
    int s = (bits >> i & 1) ? -1 : 1;
    sign[delta.roots[pos[i]]] = s;
    sign[RootSystem::negate(delta.roots[pos[i]])] = s;
  }
  SignTwist t;
  t.name = "bits" + std::to_string(bits);
  t.mu = [sign](const EalaRoot& r) {
    auto it = sign.find(r.fin);
    return it == sign.end() ? 1 : it->second;
  };
  return t;
}

TwistReport twist_and_compare(const EalaAlgebra& E, const ChevalleySystemT& C, const ReflectableBaseReport& pirep,
                              const SignTwist& twist, int ball)
{
  const MultiLoopAlgebra& L = *E.L;
  if (L.delta.family == 'B' && pirep.index_estimate != 0)
    fail("type B with nonzero index is outside the uniqueness hypothesis");
  require_system_input(E, pirep.pi, ball);
  auto mu = [&](const EalaRoot& r) {
    int s = twist.mu(r);
    if ((s != 1 && s != -1) || twist.mu(neg_root(r)) != s)
      fail("sign twist " + twist.name + " is inconsistent at " + eala_root_name(r));
    return s;
  };
  for (auto& r : eala_root_system(E).nonisotropic_in_ball(ball)) mu(r);

  auto x = [&](const EalaRoot& r) { return C.x(r.fin, to_deg(r.lam)); };
  auto xbar = [&](const EalaRoot& r) { return scaled(C.x(r.fin, to_deg(r.lam)), mu(r)); };
  SystemBuild sb = build_from_system(E, x, pirep.pi, ball);
  SystemBuild sbar = build_from_system(E, xbar, pirep.pi, ball);
  IntegralStructure B = extend_to_eala(E, sb.B);
  TwistReport rep;
  rep.bbar = extend_to_eala(E, sbar.B);
  auto tau = extend_involution(E, default_involution(L));

  // Psi on generators of B_sigma: x^a_s -> mu^a_s xbar^a_s with mu^a_s = mu_{a+s} mu_a
  std::map<Deg, std::pair<QMat, std::vector<Elem>>> gen_images;
  std::map<Deg, KeyFrame> frames;
  for (auto& [sig, gl] : sb.gens) {
    std::vector<Elem> src, img;
    auto bit = sbar.gens.find(sig);
    for (size_t i = 0; i < gl.size(); ++i) {
      const EalaRoot& a = gl[i].first;
      int m = mu(shift(a, sig, L.nu)) * mu(a);
      src.push_back(gl[i].second);
      img.push_back(scaled(bit->second[i].second, m));
    }
    KeyFrame f;
    for (auto& e : src) f.add(e);
    for (auto& e : img) f.add(e);
    f.freeze();
    QMat both, only;
    for (size_t i = 0; i < src.size(); ++i) {
      QVec r = f.row(src[i]), s = f.row(img[i]);
      only.push_back(r);
      r.insert(r.end(), s.begin(), s.end());
      both.push_back(r);
    }
    frames[sig] = f;
    if (rank(both) != rank(only)) {
      rep.well_defined = false;
      rep.witnesses.push_back({"sigma " + deg_name(sig, L.nu), "relations preserved", "broken"});
    }
    // independent subset of the generators, for expansions
    QMat rows;
    std::vector<Elem> indep_img;
    for (size_t i = 0; i < src.size(); ++i) {
      QMat t = rows;
      t.push_back(f.row(src[i]));
      if (rank(t) > int(rows.size())) {
        rows = t;
        indep_img.push_back(img[i]);
      }
    }
    gen_images[sig] = {rows, indep_img};
  }

  std::vector<Elem> psi(B.size());
  for (size_t i = 0; i < B.size(); ++i) {
    const auto& se = B.elems[i];
    Deg lam = to_deg(se.root.lam);
    if (se.tag == "x") {
      psi[i] = scaled(xbar(se.root), mu(se.root));
    } else if (se.tag == "s") {
      bool pos = lex_positive(lam);
      Deg sig = pos ? lam : -lam;
      Elem b = pos ? se.v : -tau.apply(E, se.v);
      auto& [rows, imgs] = gen_images.at(sig);
      auto q = solve_in_span(rows, frames.at(sig).row(b));
      if (!q)
        throw std::logic_error("integrality: B_sigma element outside the generator span");
      Elem im;
      for (size_t k = 0; k < q->size(); ++k) axpy(im, (*q)[k], imgs[k]);
      psi[i] = pos ? im : -tau.apply(E, im);
    } else {
      psi[i] = se.v;  // B_0 and derivations are fixed
    }
  }

  for (auto& [r, idx] : B.by_root) {
    std::vector<Elem> img;
    for (int i : idx) img.push_back(psi[i]);
    if (!same_zspan(img, rep.bbar.at(r))) {
      rep.lattice_match = false;
      rep.witnesses.push_back({eala_root_name(r), "Psi(B) spans span_Z(Bbar)", "different lattice"});
    }
  }

  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = i; j < B.size(); ++j) {
      Deg d = to_deg(B.elems[i].root.lam) + to_deg(B.elems[j].root.lam);
      if (sup_norm(d) > ball)
        continue;
      ++rep.pairs_checked;
      Elem w = bracket_eala(E, B.elems[i].v, B.elems[j].v);
      Elem lhs;
      try {
        for (auto& [k, q] : coordinates(L, B, w, true)) axpy(lhs, q, psi[k]);
      } catch (const std::domain_error& e) {
        rep.bracket_compatible = false;
        rep.witnesses.push_back({eala_root_name(B.elems[i].root) + " x " + eala_root_name(B.elems[j].root),
                                 "integral bracket", e.what()});
        continue;
      }
      if (lhs != bracket_eala(E, psi[i], psi[j])) {
        rep.bracket_compatible = false;
        if (rep.witnesses.size() < 16)
          rep.witnesses.push_back({eala_root_name(B.elems[i].root) + " x " + eala_root_name(B.elems[j].root),
                                   "Psi[u,v] = [Psi u, Psi v]", "different"});
      }
    }
  return rep;
}

}  // namespace chev
