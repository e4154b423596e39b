#include "chevalley/verify.hpp"

#include "chevalley/intlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <thread>

namespace chev {

namespace {

EalaRoot neg_root(const EalaRoot& r)
{
  EalaRoot n{RootSystem::negate(r.fin), r.lam};
  for (auto& x : n.lam) x = -x;
  return n;
}

EalaRoot add_roots(const EalaRoot& a, const EalaRoot& b)
{
  EalaRoot r = a;
  for (size_t i = 0; i < r.fin.size(); ++i) r.fin[i] += b.fin[i];
  for (size_t i = 0; i < r.lam.size(); ++i) r.lam[i] += b.lam[i];
  return r;
}

Certificate cert(const char* id, int ball)
{
  Certificate c;
  c.axiom_id = id;
  c.ball = ball;
  return c;
}

bool in_cartan(const EalaAlgebra& E, const Elem& h)
{
  for (auto& [k, c] : h) {
    if (!is_zero(k.deg))
      return false;
    if (k.kind == Kind::Loop && E.L->g->is_root(k.idx))
      return false;
  }
  return true;
}

bool contains(const std::vector<Elem>& v, const Elem& e)
{
  for (auto& x : v)
    if (x == e)
      return true;
  return false;
}

// b is a root vector of weight r: keys of root r and the eigenvalue equation
bool is_root_vector(const EalaAlgebra& E, const std::vector<Elem>& H, const EalaRoot& r, const Elem& b)
{
  if (b.empty())
    return false;
  for (auto& [k, c] : b)
    if (E.root_of(k) != r)
      return false;
  for (auto& h : H)
    if (bracket_eala(E, h, b) != scaled(b, E.eval(r, h)))
      return false;
  return true;
}

void check_system(const EalaAlgebra& E, const ChevalleyMap& C, const EalaAutomorphism& tau, Certificate& ci,
                  Certificate& cii)
{
  for (auto& [r, x] : C) {
    auto it = C.find(neg_root(r));
    std::string nm = eala_root_name(r);
    if (it == C.end()) {
      ci.fail(nm, "partner at the negative root", "missing");
      continue;
    }
    const Elem& y = it->second;
    ++ci.checked;
    Elem h = bracket_eala(E, x, y);
    if (!in_cartan(E, h))
      ci.fail(nm, "[x_a, x_-a] in H", "outside H");
    else if (bracket_eala(E, h, x) != scaled(x, 2) || bracket_eala(E, h, y) != scaled(y, -2))
      ci.fail(nm, "[h_a, x_+-a] = +-2 x_+-a", "different");
    ++cii.checked;
    if (tau.apply(E, x) != -y)
      cii.fail(nm, "tau(x_a) = -x_-a", "different");
  }
}

// (C4)/(CB4): span_Z(B n E_s) = span_Z [B n E_{a+s}, B n E_-a]
void check_isotropic_spans(const EalaAlgebra& E, const IntegralStructure& B, int ball, Certificate& c,
                           bool core_only)
{
  auto roots = roots_in_ball(E, ball);
  auto at = [&](const EalaRoot& r) {
    std::vector<Elem> v;
    for (auto& e : B.at(r))
      if (!core_only || in_core(e))
        v.push_back(e);
    return v;
  };
  for (auto& s : roots) {
    if (!s.isotropic())
      continue;
    std::vector<Elem> gens;
    for (auto& a : roots) {
      if (a.isotropic())
        continue;
      EalaRoot as = add_roots(a, s);
      if (sup_norm(as.lam) > ball)
        continue;
      for (auto& u : at(as))
        for (auto& v : at(neg_root(a))) gens.push_back(bracket_eala(E, u, v));
    }
    ++c.checked;
    if (!same_zspan(at(s), gens))
      c.fail(eala_root_name(s), "span_Z(B n E_s) = span_Z of brackets", "different lattices");
  }
}

void check_tau_symmetry(const EalaAlgebra& E, const IntegralStructure& B, const EalaAutomorphism& tau,
                        Certificate& c)
{
  for (auto& se : B.elems) {
    if (sup_norm(se.root.lam) > c.ball)
      continue;
    ++c.checked;
    if (!contains(B.at(neg_root(se.root)), -tau.apply(E, se.v)))
      c.fail(eala_root_name(se.root), "-tau(b) in B", "missing");
  }
}

ChevalleyMap singletons(const EalaAlgebra& E, const IntegralStructure& B, int ball, Certificate& c)
{
  ChevalleyMap m;
  for (auto& r : roots_in_ball(E, ball)) {
    if (r.isotropic())
      continue;
    auto v = B.at(r);
    ++c.checked;
    if (v.size() != 1) {
      c.fail(eala_root_name(r), "exactly one element", std::to_string(v.size()) + " elements");
      continue;
    }
    m[r] = v[0];
  }
  return m;
}

}  // namespace

int thread_count()
{
  if (const char* s = std::getenv("CHEVALLEY_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1)
      return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ChevalleyMap system_in_ball(const EalaAlgebra& E, const ChevalleySystemT& C, int ball)
{
  ChevalleyMap m;
  for (auto& r : roots_in_ball(E, ball))
    if (!r.isotropic())
      m[r] = C.x(r.fin, to_deg(r.lam));
  return m;
}

ChevalleyMap system_from_structure(const EalaAlgebra& E, const IntegralStructure& B)
{
  ChevalleyMap m;
  for (auto& [r, idx] : B.by_root)
    if (!r.isotropic() && idx.size() == 1)
      m[r] = B.elems[idx[0]].v;
  (void)E;
  return m;
}

CertificateSet verify_chevalley_system(const EalaAlgebra& E, const ChevalleyMap& C, const EalaAutomorphism& tau,
                                       int ball)
{
  Certificate ci = cert("CS-i", ball), cii = cert("CS-ii", ball);
  check_system(E, C, tau, ci, cii);
  return {ci, cii};
}

CertificateSet verify_core_axioms(const EalaAlgebra& E, const IntegralStructure& Bc, const EalaAutomorphism& tau,
                                  int ball)
{
  auto H = E.cartan_basis();
  Certificate c1 = cert("C1", ball), c2 = cert("C2", ball), c3 = cert("C3", ball), c4 = cert("C4", ball);
  for (auto& se : Bc.elems) {
    if (sup_norm(se.root.lam) > ball)
      continue;
    ++c1.checked;
    if (!in_core(se.v))
      c1.fail(eala_root_name(se.root), "element of the core", "has derivation part");
    else if (!is_root_vector(E, H, se.root, se.v))
      c1.fail(eala_root_name(se.root), "root vector", "not a root vector");
  }
  check_tau_symmetry(E, Bc, tau, c2);
  auto sys = singletons(E, Bc, ball, c3);
  Certificate tmp = cert("C3", ball);
  check_system(E, sys, tau, c3, tmp);
  for (auto& w : tmp.witnesses) c3.fail(w.where, w.expected, w.actual);
  check_isotropic_spans(E, Bc, ball, c4, false);
  return {c1, c2, c3, c4};
}

CertificateSet verify_eala_axioms(const EalaAlgebra& E, const IntegralStructure& B, const EalaAutomorphism& tau,
                                  int ball)
{
  auto H = E.cartan_basis();
  Certificate c1 = cert("CB1", ball), c2 = cert("CB2", ball), c3 = cert("CB3", ball), c4 = cert("CB4", ball),
              c5 = cert("CB5", ball);
  for (auto& se : B.elems) {
    if (sup_norm(se.root.lam) > ball)
      continue;
    ++c1.checked;
    if (!is_root_vector(E, H, se.root, se.v))
      c1.fail(eala_root_name(se.root), "root vector", "not a root vector");
  }
  for (auto& r : roots_in_ball(E, ball)) {
    ++c1.checked;
    auto full = root_space_basis(E, r, ball);
    auto mine = B.at(r);
    int dim = int(full.size()), rk = span_rank(mine);
    auto both = full;
    both.insert(both.end(), mine.begin(), mine.end());
    if (rk != dim || span_rank(both) != dim)
      c1.fail(eala_root_name(r), "spans E_r (dim " + std::to_string(dim) + ")", "rank " + std::to_string(rk));
  }
  check_tau_symmetry(E, B, tau, c2);
  auto sys = singletons(E, B, ball, c3);
  Certificate tmp = cert("CB3", ball);
  check_system(E, sys, tau, c3, tmp);
  for (auto& w : tmp.witnesses) c3.fail(w.where, w.expected, w.actual);
  check_isotropic_spans(E, B, ball, c4, true);
  for (auto& d : B.elems) {
    if (in_core(d.v) || sup_norm(d.root.lam) > ball)
      continue;
    for (auto& b : B.elems) {
      if (sup_norm(to_deg(d.root.lam) + to_deg(b.root.lam)) > ball)
        continue;
      ++c5.checked;
      try {
        coordinates(*E.L, B, bracket_eala(E, d.v, b.v), true);
      } catch (const std::domain_error& e) {
        c5.fail(eala_root_name(d.root) + " x " + eala_root_name(b.root), "integral coordinates", e.what());
      }
    }
  }
  return {c1, c2, c3, c4, c5};
}

CertificateSet verify_torus_axioms(const MultiLoopAlgebra& L, const IntegralStructure& B, const LoopAutomorphism& tau,
                                   int ball)
{
  Certificate c1 = cert("CBT1", ball), c2 = cert("CBT2", ball), c3 = cert("CBT3", ball);
  for (auto& se : B.elems) {
    if (sup_norm(se.root.lam) > ball)
      continue;
    ++c1.checked;
    if (!contains(B.at(neg_root(se.root)), -tau.apply(L, se.v)))
      c1.fail(eala_root_name(se.root), "-tau(b) in B", "missing");
  }
  for (auto& lam : L.ball(ball))
    for (auto& b : L.delta.roots) {
      if (!L.supported(b, lam))
        continue;
      EalaRoot r{b, from_deg(lam, L.nu)};
      auto x = B.at(r), y = B.at(neg_root(r));
      ++c2.checked;
      if (x.size() != 1 || y.size() != 1) {
        c2.fail(eala_root_name(r), "one element per root space", std::to_string(x.size()) + " elements");
        continue;
      }
      Elem h = bracket_loop(L, x[0], y[0]);
      if (bracket_loop(L, h, x[0]) != scaled(x[0], 2) || bracket_loop(L, h, y[0]) != scaled(y[0], -2))
        c2.fail(eala_root_name(r), "sl2 triple", "different");
      if (tau.apply(L, x[0]) != -y[0])
        c2.fail(eala_root_name(r), "tau(x) = -x_-", "different");
    }
  const IVec z = L.zero_grade();
  for (auto& lam : L.ball(ball)) {
    std::vector<Elem> gens;
    for (auto& b : L.delta.roots)
      for (auto& mu : L.ball(ball)) {
        if (sup_norm(lam + mu) > ball)
          continue;
        for (auto& u : B.at(EalaRoot{b, from_deg(lam + mu, L.nu)}))
          for (auto& v : B.at(EalaRoot{RootSystem::negate(b), from_deg(-mu, L.nu)}))
            gens.push_back(bracket_loop(L, u, v));
      }
    ++c3.checked;
    EalaRoot s{z, from_deg(lam, L.nu)};
    if (!same_zspan(B.at(s), gens))
      c3.fail(eala_root_name(s), "span_Z(B n L^l_0) = span_Z of brackets", "different lattices");
  }
  return {c1, c2, c3};
}

CertificateSet verify_extension_conditions(const EalaAlgebra& E, const IntegralStructure& Bc, int ball)
{
  return check_extension_conditions(E, Bc, ball);
}

Certificate verify_zform_closure(const EalaAlgebra& E, const IntegralStructure& B, int ball)
{
  const int n = int(B.size());
  const int nt = std::max(1, std::min(thread_count(), n));
  std::vector<Certificate> part(nt, cert("ZCLOSE", ball));
  auto work = [&](int t) {
    for (int i = t; i < n; i += nt)
      for (int j = i; j < n; ++j) {
        const auto& a = B.elems[i];
        const auto& b = B.elems[j];
        if (sup_norm(a.root.lam) > ball || sup_norm(b.root.lam) > ball ||
            sup_norm(to_deg(a.root.lam) + to_deg(b.root.lam)) > ball)
          continue;
        ++part[t].checked;
        try {
          coordinates(*E.L, B, bracket_eala(E, a.v, b.v), true);
        } catch (const std::domain_error& e) {
          part[t].fail(eala_root_name(a.root) + " x " + eala_root_name(b.root), "integral coordinates", e.what());
        }
      }
  };
  std::vector<std::thread> th;
  for (int t = 1; t < nt; ++t) th.emplace_back(work, t);
  work(0);
  for (auto& x : th) x.join();
  Certificate c = cert("ZCLOSE", ball);
  for (auto& p : part) {
    c.checked += p.checked;
    for (auto& w : p.witnesses) c.fail(w.where, w.expected, w.actual);
    if (!p.pass)
      c.pass = false;
  }
  return c;
}

Certificate verify_weyl_automorphisms(const FiniteChevalleyAlgebra& g, const FinChevalleySystem& sys)
{
  Certificate c = cert("NALPHA", 0);
  const auto& rs = g.rs;
  auto tau = chevalley_involution(g);
  for (int a = 0; a < g.nroots; ++a) {
    std::string nm = root_name(rs.roots[a]);
    AlgebraAutomorphism n;
    try {
      n = n_alpha(g, a, sys);
    } catch (const std::exception& e) {
      c.fail(nm, "n_a defined", e.what());
      continue;
    }
    for (int b = 0; b < g.nroots; ++b) {
      ++c.checked;
      IVec wb = reflect(rs, rs.roots[a], rs.roots[b]);
      int wi = rs.find(wb);
      GVec img = n.apply(g.unit(b));
      for (int j = 0; j < g.dim; ++j)
        if (img[j] != 0 && j != wi) {
          c.fail(nm, "n_a(E_" + root_name(rs.roots[b]) + ") in E_" + root_name(wb), "leaves the root space");
          break;
        }
      if (n.apply(g.h_of(b)) != g.h_of(wi))
        c.fail(nm, "n_a(h_" + root_name(rs.roots[b]) + ") = h_" + root_name(wb), "different");
    }
    bool integral = true;
    for (auto& col : n.image)
      for (auto& q : col) integral = integral && is_integer(q);
    AlgebraAutomorphism n4 = n.compose(n).compose(n).compose(n);
    if (!integral || !n4.is_identity())
      c.fail(nm, "n_a preserves span_Z of the basis", "not integral or not invertible over Z");
    if (!(tau.compose(n) == n.compose(tau)))
      c.fail(nm, "tau n_a = n_a tau", "different");
  }
  return c;
}

Certificate verify_string_proportionality(const EalaAlgebra& E, const ChevalleySystemT& C, const IVec& alpha, const IVec& sigma,
                        int nmin, int nmax)
{
  Certificate c = cert("PROP", std::max(std::abs(nmin), std::abs(nmax)));
  const MultiLoopAlgebra& L = *E.L;
  Deg s = to_deg(sigma);
  // x^b_s = [x_{b+s}, x_-b]
  auto xs = [&](const IVec& fin, const Deg& lam) -> Elem {
    if (!L.supported(fin, lam + s) || !L.supported(RootSystem::negate(fin), -lam))
      return {};
    return bracket_eala(E, C.x(fin, lam + s), C.x(RootSystem::negate(fin), -lam));
  };
  IVec na = RootSystem::negate(alpha);
  Elem ref = xs(alpha, Deg{});
  if (ref.empty()) {
    c.fail(root_name(alpha), "x^a_s nonzero", "zero");
    return c;
  }
  for (int n = nmin; n <= nmax; ++n) {
    Deg ns{};
    for (int i = 0; i < L.nu; ++i) ns[i] = n * s[i];
    std::vector<std::pair<std::string, Elem>> v{{"x^{a+ns}", xs(alpha, ns)},
                                                {"x^{-a}", xs(na, Deg{})},
                                                {"x^{-a+ns}", xs(na, ns)}};
    for (auto& [nm, e] : v) {
      ++c.checked;
      if (e.empty() || !proportional(e, ref))
        c.fail(nm + " n=" + std::to_string(n), "proportional to x^a_s", e.empty() ? "zero" : "not proportional");
    }
  }
  return c;
}

Certificate verify_reflectable_base(const EalaRootSystem& ers, const std::vector<EalaRoot>& pi, int ball)
{
  Certificate c = cert("REFL", ball);
  auto rep = check_reflectable_base(ers, pi, ball, true);
  c.checked = rep.total;
  c.note = "necessary condition only: coverage and minimality within the ball; |Pi| = " +
           std::to_string(pi.size()) + ", index estimate " + std::to_string(rep.index_estimate);
  if (!rep.covers) {
    std::set<EalaRoot> got(rep.covered.begin(), rep.covered.end());
    for (auto& r : ers.nonisotropic_in_ball(ball))
      if (!got.count(r)) {
        c.fail(eala_root_name(r), "reached from Pi", "not reached");
        if (c.witnesses.size() >= 4)
          break;
      }
  } else if (!rep.minimal_within_ball) {
    c.fail("Pi", "minimal", "a proper subset covers");
  }
  return c;
}

Certificate probe_tameness(const EalaAlgebra& E, int ball)
{
  Certificate c = cert("TAME-evidence", ball);
  c.note = "evidence only: no nonzero derivation in the ball centralizes the core elements in the ball";
  std::vector<Elem> ders, core;
  for (auto& r : roots_in_ball(E, ball))
    for (auto& e : root_space_basis(E, r, ball)) (in_core(e) ? core : ders).push_back(e);
  // derivation j -> concatenated brackets with the core
  std::vector<Elem> rows;
  for (auto& d : ders) {
    Elem row;
    for (size_t i = 0; i < core.size(); ++i)
      for (auto& [k, q] : bracket_eala(E, d, core[i])) {
        Key t = k;
        t.idx = k.idx + 1024 * int(i + 1);  // distinct slot per core element
        add_to(row, t, q);
      }
    rows.push_back(row);
  }
  c.checked = long(ders.size());
  int r = span_rank(rows);
  if (r != int(ders.size()))
    c.fail("D", "ad-faithful on the core", "rank " + std::to_string(r) + " of " + std::to_string(ders.size()));
  return c;
}

Certificate probe_local_nilpotency(const EalaAlgebra& E, const ChevalleyMap& C, int ball)
{
  Certificate c = cert("NILP-evidence", ball);
  c.note = "evidence only: (ad x_a)^4 kills every basis element in the ball";
  std::vector<Elem> basis;
  for (auto& r : roots_in_ball(E, ball))
    for (auto& e : root_space_basis(E, r, ball)) basis.push_back(e);
  for (auto& [r, x] : C)
    for (auto& y : basis) {
      ++c.checked;
      Elem z = y;
      for (int k = 0; k < 4 && !z.empty(); ++k) z = bracket_eala(E, x, z);
      if (!z.empty())
        c.fail(eala_root_name(r), "(ad x)^4 y = 0", "nonzero");
    }
  return c;
}

}  // namespace chev
