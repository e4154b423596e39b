// One PASS/FAIL line per acceptance criterion.  argv[1] is the CLI binary.
#include "chevalley/table_io.hpp"
#include "chevalley/verify.hpp"
#include "chevalley/intlinalg.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

using namespace chev;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what)
  {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

EalaAlgebra toroidal(const char* t, int nu, DMode m)
{
  return build_eala(std::make_shared<const MultiLoopAlgebra>(build_toroidal(t, nu)), m);
}

EalaAutomorphism inv(const EalaAlgebra& E) { return extend_involution(E, default_involution(*E.L)); }

IVec add(IVec a, const IVec& b, int s = 1)
{
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

Result finite_constants()
{
  Result r;
  for (const char* t : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    auto g = build_chevalley_algebra(build_root_system(t));
    const auto& rs = g.rs;
    for (int a = 0; a < g.nroots; ++a)
      for (int b = 0; b < g.nroots; ++b) {
        IVec s = add(rs.roots[a], rs.roots[b]);
        GVec xy = bracket_fin(g, g.unit(a), g.unit(b));
        if (!rs.is_root(s))
          continue;
        long n = g.structure_constant(a, b);
        // down bound: largest d with b - d a a root
        int d = 0;
        while (rs.is_root(add(rs.roots[b], rs.roots[a], -(d + 1)))) ++d;
        GVec want = g.zero();
        want[rs.find(s)] = n;
        std::string where = std::string(t) + " N(" + root_name(rs.roots[a]) + "," + root_name(rs.roots[b]) + ")";
        r.check(xy == want, where + " is not the bracket coefficient");
        r.check(std::labs(n) == d + 1, where + " != +-(d+1)");
        r.check(g.structure_constant(g.neg(a), g.neg(b)) == -n, where + " sign rule");
      }
    for (int i = 0; i < g.dim; ++i)
      for (int j = i; j < g.dim; ++j) {
        GVec ij = bracket_fin(g, g.unit(i), g.unit(j));
        for (auto& q : ij) r.check(is_integer(q), std::string(t) + " non-integral constant");
        for (int k = j; k < g.dim; ++k) {
          GVec s = bracket_fin(g, g.unit(i), bracket_fin(g, g.unit(j), g.unit(k)));
          GVec u = bracket_fin(g, g.unit(j), bracket_fin(g, g.unit(k), g.unit(i)));
          GVec v = bracket_fin(g, g.unit(k), ij);
          bool zero = true;
          for (int m = 0; m < g.dim; ++m) zero = zero && s[m] + u[m] + v[m] == 0;
          r.check(zero, std::string(t) + " Jacobi");
        }
      }
  }
  return r;
}

Result involutions()
{
  Result r;
  for (const char* t : {"A1", "A2", "A3", "B2", "B3", "C3", "G2"}) {
    auto g = build_chevalley_algebra(build_root_system(t));
    auto tau = chevalley_involution(g);
    r.check(tau.compose(tau).is_identity(), std::string(t) + " tau^2 != id");
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        r.check(tau.apply(bracket_fin(g, g.unit(i), g.unit(j))) ==
                    bracket_fin(g, tau.apply(g.unit(i)), tau.apply(g.unit(j))),
                std::string(t) + " tau not multiplicative");
    auto c = verify_weyl_automorphisms(g, standard_system(g));
    r.check(c.pass, std::string(t) + " n_alpha: " + (c.witnesses.empty() ? "" : c.witnesses[0].where));
  }
  return r;
}

Result zclosure()
{
  Result r;
  for (const char* t : {"A2", "B2", "G2"})
    for (DMode m : {DMode::Zero, DMode::Full}) {
      auto E = toroidal(t, 2, m);
      auto Bc = toroidal_core_basis(E, 2);
      auto B = extend_to_eala(E, Bc);
      std::string where = std::string(t) + " " + dmode_name(m);
      auto c = verify_zform_closure(E, B, 2);
      r.check(c.pass && c.checked > 0, where + " closure");
      // central coefficient on (2/k) c_{e_i}, against the form evaluated directly
      int k = E.L->delta.max_norm();
      std::map<int, int> dual_at;
      for (int j = 0; j < int(Bc.size()); ++j)
        for (auto& [key, q] : Bc.elems[j].v)
          if (key.kind == Kind::Dual && is_zero(key.deg)) dual_at[key.idx] = j;
      for (auto& lam : E.L->ball(2))
        for (auto& a : E.L->delta.roots) {
          Elem x = single(Key{Kind::Loop, E.L->g->root_index(a), lam});
          Elem y = single(Key{Kind::Loop, E.L->g->root_index(RootSystem::negate(a)), -lam});
          auto co = coordinates(*E.L, Bc, bracket_eala(E, x, y), true);
          Q pair = loop_form(*E.L, x, y);
          for (int i = 0; i < 2; ++i) {
            Q got = co.count(dual_at[i]) ? co[dual_at[i]] : Q(0);
            r.check(got == lam[i] * pair * k / 2 && got == frac(lam[i] * k, E.L->delta.norm(a)),
                    where + " central law at " + eala_root_name({a, from_deg(lam, 2)}));
          }
        }
    }
  return r;
}

IntegralStructure with(const IntegralStructure& B, int i, const Elem& v)
{
  IntegralStructure r;
  r.ball = B.ball;
  for (int j = 0; j < int(B.size()); ++j) r.add(j == i ? v : B.elems[j].v, B.elems[j].root, B.elems[j].tag);
  return r;
}

IntegralStructure without(const IntegralStructure& B, int i)
{
  IntegralStructure r;
  r.ball = B.ball;
  for (int j = 0; j < int(B.size()); ++j)
    if (j != i) r.add(B.elems[j].v, B.elems[j].root, B.elems[j].tag);
  return r;
}

int find_elem(const IntegralStructure& B, const std::string& tag, const IVec& lam)
{
  for (int j = 0; j < int(B.size()); ++j)
    if (B.elems[j].tag == tag && B.elems[j].root.lam == lam) return j;
  return -1;
}

// the corrupted axiom fails and names the expected place
bool caught(const CertificateSet& s, const std::string& id, const std::string& where)
{
  auto c = find_cert(s, id);
  if (!c || c->pass)
    return false;
  for (auto& w : c->witnesses)
    if (w.where.find(where) != std::string::npos) return true;
  return false;
}

Result axiom_suites()
{
  Result r;
  for (int nu : {1, 2})
    for (const char* t : {"A2", "B2", "G2"}) {
      std::string where = std::string(t) + " nu=" + std::to_string(nu);
      for (DMode m : {DMode::Zero, DMode::Full}) {
        auto E = toroidal(t, nu, m);
        auto Bc = toroidal_core_basis(E, 2);
        r.check(all_pass(verify_core_axioms(E, Bc, inv(E), 2)), where + " C");
        r.check(all_pass(verify_eala_axioms(E, extend_to_eala(E, Bc), inv(E), 2)), where + " CB");
      }
      auto L = build_toroidal(t, nu);
      r.check(all_pass(verify_torus_axioms(L, torus_chevalley_basis(L, 2), default_involution(L), 2)), where + " CBT");
    }

  auto E = toroidal("A2", 2, DMode::Zero);
  auto tau = inv(E);
  auto Bc = toroidal_core_basis(E, 2);
  int x = find_elem(Bc, "x", {1, 1});
  std::string xr = eala_root_name(Bc.elems[x].root);
  int h = find_elem(Bc, "h", {1, 0});
  r.check(caught(verify_core_axioms(E, with(Bc, h, Bc.elems[h].v + Bc.elems[x].v), tau, 2), "C1", "0@(1,0)"),
          "C1 corruption");
  r.check(caught(verify_core_axioms(E, with(Bc, x, -Bc.elems[x].v), tau, 2), "C2", xr), "C2 corruption");
  IntegralStructure dup = Bc;
  dup.add(scaled(Bc.elems[x].v, 2), Bc.elems[x].root, "x");
  r.check(caught(verify_core_axioms(E, dup, tau, 2), "C3", xr), "C3 corruption");
  r.check(caught(verify_core_axioms(E, without(Bc, find_elem(Bc, "c", {0, 0})), tau, 2), "C4", "0@(0,0)"),
          "C4 corruption");

  auto B = extend_to_eala(E, Bc);
  int bx = find_elem(B, "x", {0, 1});
  std::string bxr = eala_root_name(B.elems[bx].root);
  int d = find_elem(B, "d", {0, 0});
  r.check(caught(verify_eala_axioms(E, B.core(), tau, 2), "CB1", "0@(0,0)"), "CB1 corruption");
  r.check(caught(verify_eala_axioms(E, with(B, bx, -B.elems[bx].v), tau, 2), "CB2", bxr), "CB2 corruption");
  r.check(caught(verify_eala_axioms(E, with(B, bx, scaled(B.elems[bx].v, 2)), tau, 2), "CB3", bxr),
          "CB3 corruption");
  r.check(caught(verify_eala_axioms(E, without(B, find_elem(B, "c", {0, 0})), tau, 2), "CB4", "0@(0,0)"),
          "CB4 corruption");
  r.check(caught(verify_eala_axioms(E, with(B, d, scaled(B.elems[d].v, frac(1, 2))), tau, 2), "CB5", "0@(0,0)"),
          "CB5 corruption");

  auto L = build_toroidal("A2", 2);
  auto T = torus_chevalley_basis(L, 2);
  auto lt = default_involution(L);
  int tx = find_elem(T, "x", {1, -1});
  std::string txr = eala_root_name(T.elems[tx].root);
  int th = find_elem(T, "h", {1, 1});
  r.check(caught(verify_torus_axioms(L, with(T, tx, -T.elems[tx].v), lt, 2), "CBT1", txr), "CBT1 corruption");
  r.check(caught(verify_torus_axioms(L, with(T, tx, scaled(T.elems[tx].v, 3)), lt, 2), "CBT2", txr),
          "CBT2 corruption");
  r.check(caught(verify_torus_axioms(L, with(T, th, scaled(T.elems[th].v, 2)), lt, 2), "CBT3", "(1,1)"),
          "CBT3 corruption");
  return r;
}

Result kernel_oracle()
{
  Result r;
  for (int nu = 1; nu <= 3; ++nu) {
    std::vector<IVec> mus, thetas;
    std::function<void(IVec&, int, int, std::vector<IVec>&)> grid = [&](IVec& v, int i, int R,
                                                                       std::vector<IVec>& out) {
      if (i == nu) {
        out.push_back(v);
        return;
      }
      for (int a = -R; a <= R; ++a) {
        v[i] = a;
        grid(v, i + 1, R, out);
      }
    };
    IVec v(nu);
    grid(v, 0, 3, mus);
    grid(v, 0, 5, thetas);
    for (auto& mu : mus) {
      auto K = lattice_kernel_basis(mu);
      QMat rows;
      for (auto& k : K) {
        long dot = 0;
        for (int i = 0; i < nu; ++i) dot += long(k[i]) * mu[i];
        r.check(dot == 0, "kernel vector does not annihilate mu");
        rows.push_back(QVec(k.begin(), k.end()));
      }
      for (auto& th : thetas) {
        long dot = 0;
        for (int i = 0; i < nu; ++i) dot += long(th[i]) * mu[i];
        if (dot != 0)
          continue;
        bool nonzero = false;
        for (int x : th) nonzero = nonzero || x != 0;
        if (!nonzero)
          continue;
        QMat more = rows;
        more.push_back(QVec(th.begin(), th.end()));
        r.check(!rows.empty() && same_lattice(rows, more), "kernel point outside the Z-span");
      }
    }
  }
  return r;
}

Result proportionality()
{
  Result r;
  for (const char* t : {"A1", "A2"}) {
    auto E = toroidal(t, 2, DMode::Zero);
    auto C = build_chevalley_system(*E.L, default_involution(*E.L));
    for (auto& a : E.L->delta.roots)
      for (auto& sig : E.L->ball(2)) {
        if (is_zero(sig) || std::abs(sig[0]) + std::abs(sig[1]) > 2)
          continue;
        auto c = verify_string_proportionality(E, C, a, from_deg(sig, 2), -2, 2);
        r.check(c.pass && c.checked > 0, std::string(t) + " " + root_name(a) + " sigma " + deg_name(sig, 2));
      }
  }
  return r;
}

std::vector<EalaRoot> a2_pi() { return {{{0, 1}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {0, 1}}}; }

Result sign_twists()
{
  Result r;
  auto E = toroidal("A2", 2, DMode::Zero);
  auto C = build_chevalley_system(*E.L, default_involution(*E.L));
  auto rep = check_reflectable_base(eala_root_system(E), a2_pi(), 2, false);
  r.check(rep.covers, "base does not cover");
  for (unsigned bits = 0; bits < 8; ++bits) {
    auto rep2 = twist_and_compare(E, C, rep, sign_twist_from_bits(E.L->delta, bits), 2);
    r.check(rep2.ok() && rep2.pairs_checked > 0, "twist " + std::to_string(bits) + " not compatible");
  }
  return r;
}

// independent orbit search: W_Pi Pi within a margin, compared with R^x in the ball
bool covers(const EalaRootSystem& ers, const std::vector<EalaRoot>& pi, int ball)
{
  std::set<EalaRoot> seen(pi.begin(), pi.end());
  std::vector<EalaRoot> todo(pi.begin(), pi.end());
  while (!todo.empty()) {
    EalaRoot b = todo.back();
    todo.pop_back();
    for (auto& a : pi) {
      int c = 2 * ers.form(b, a) / ers.form(a, a);
      EalaRoot w{add(b.fin, a.fin, -c), add(b.lam, a.lam, -c)};
      if (sup_norm(w.lam) <= ball + 2 && seen.insert(w).second)
        todo.push_back(w);
    }
  }
  for (auto& x : ers.nonisotropic_in_ball(ball))
    if (!seen.count(x))
      return false;
  return true;
}

Result reflectable_bases()
{
  Result r;
  auto ers = build_eala_root_system("A2", 2);
  auto rb = search_reflectable_base(ers, 3);
  r.check(rb.pi.size() == 4, "A2+Z^2: |Pi| = " + std::to_string(rb.pi.size()));
  r.check(rb.index_estimate == 0 && ers.dim_v() == 4, "A2+Z^2 index estimate");
  r.check(rb.covers && covers(ers, rb.pi, 3), "A2+Z^2 coverage");
  for (const char* t : {"A1", "A2", "A3"}) {
    auto e0 = build_eala_root_system(t, 0);
    auto b0 = search_reflectable_base(e0, 1);
    r.check(int(b0.pi.size()) == e0.base.rank && covers(e0, b0.pi, 1), std::string(t) + " nullity 0");
  }
  return r;
}

Result twisted_flip()
{
  Result r;
  auto L = build_multiloop("A3", 1, "flip");
  r.check(L.delta.label == "B2", "restricted type " + L.delta.label);
  r.check(all_pass(check_lie_torus_axioms(L, 3)), "Lie torus axioms");
  auto t = tau_psi(L, chevalley_involution(*L.g), identity_automorphism(*L.g));
  r.check(check_chevalley_involution(L, t, 3).pass, "tau_psi");
  return r;
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result cli_round_trip(const std::string& cli)
{
  Result r;
  if (cli.empty()) {
    r.check(false, "no CLI path given");
    return r;
  }
  auto dir = std::filesystem::temp_directory_path() / ("chevalley_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto run = [&](const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args + " > \"" + (dir / "log").string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  for (const char* flags : {"--type A2 --nullity 2 --dmode zero --ball 2", "--type B2 --nullity 1 --dmode full --ball 2",
                            "--type A3 --nullity 1 --twist flip --ball 2"}) {
    std::string f(flags);
    auto a = dir / "a.tbl", b = dir / "b.tbl", c = dir / "c.tbl";
    r.check(run("build " + f + " --out \"" + a.string() + "\"") == 0, f + ": build");
    r.check(run("build " + f + " --out \"" + b.string() + "\"") == 0, f + ": second build");
    r.check(run("export \"" + a.string() + "\" --out \"" + c.string() + "\"") == 0, f + ": export");
    std::string ta = slurp(a);
    r.check(!ta.empty() && ta == slurp(b) && slurp(a.string() + ".manifest") == slurp(b.string() + ".manifest"),
            f + ": reruns differ");
    r.check(ta == slurp(c), f + ": export differs");
    try {
      AlgSpec s = read_header(slurp(c));
      auto E = build_from_spec(s);
      auto T = read_table(E, slurp(c));
      std::vector<Elem> basis;
      for (auto& rt : roots_in_ball(E, s.ball))
        for (auto& e : root_space_basis(E, rt, s.ball)) basis.push_back(e);
      long bad = 0, n = 0;
      for (auto& x : basis)
        for (auto& y : basis) {
          if (sup_norm(x.begin()->first.deg + y.begin()->first.deg) > s.ball)
            continue;
          ++n;
          bad += replay_bracket(T, x, y) != bracket_eala(E, x, y);
        }
      r.check(n > 0 && bad == 0, f + ": " + std::to_string(bad) + " replayed brackets differ");
    } catch (const std::exception& e) {
      r.check(false, f + ": " + e.what());
    }
  }
  std::filesystem::remove_all(dir);
  return r;
}

}  // namespace

int main(int argc, char** argv)
{
  std::string cli = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<Result()>>> crit{
      {"finite structure constants", finite_constants},
      {"involution and Weyl automorphisms", involutions},
      {"toroidal Z-form closure and central law", zclosure},
      {"axiom suites C, CB, CBT with corruptions", axiom_suites},
      {"lattice kernel basis oracle", kernel_oracle},
      {"root-string proportionality", proportionality},
      {"eight sign twists", sign_twists},
      {"reflectable base search", reflectable_bases},
      {"A3 diagram flip Lie torus and involution", twisted_flip},
      {"CLI round trip and determinism", [&] { return cli_round_trip(cli); }},
  };
  bool all = true;
  for (size_t i = 0; i < crit.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = crit[i].second();
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && r.pass;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << "  " << crit[i].first << " ("
         << s << " s)";
    if (!r.pass)
      line << ": " << r.detail;
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
