#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevalley/verify.hpp"

using namespace chev;

static Deg D(std::initializer_list<int> v) { return to_deg(IVec(v)); }

static EalaAlgebra mk(const char* t, int nu, DMode m)
{
  return build_eala(std::make_shared<const MultiLoopAlgebra>(build_toroidal(t, nu)), m);
}

static EalaAutomorphism inv(const EalaAlgebra& E) { return extend_involution(E, default_involution(*E.L)); }

static bool witness_contains(const Certificate& c, const std::string& s)
{
  for (auto& w : c.witnesses)
    if (w.where.find(s) != std::string::npos) return true;
  return false;
}

static const Certificate& get(const CertificateSet& s, const char* id)
{
  auto c = find_cert(s, id);
  REQUIRE(c);
  return *c;
}

// replace element i of B
static IntegralStructure with(const IntegralStructure& B, int i, Elem v)
{
  IntegralStructure r;
  r.ball = B.ball;
  for (int j = 0; j < int(B.size()); ++j) r.add(j == i ? v : B.elems[j].v, B.elems[j].root, B.elems[j].tag);
  return r;
}

static IntegralStructure without(const IntegralStructure& B, int i)
{
  IntegralStructure r;
  r.ball = B.ball;
  for (int j = 0; j < int(B.size()); ++j)
    if (j != i) r.add(B.elems[j].v, B.elems[j].root, B.elems[j].tag);
  return r;
}

static int find_elem(const IntegralStructure& B, const std::string& tag, const IVec& lam, int skip = 0)
{
  for (int j = 0; j < int(B.size()); ++j)
    if (B.elems[j].tag == tag && B.elems[j].root.lam == lam && skip-- == 0) return j;
  return -1;
}

TEST_CASE("Chevalley system checks")
{
  auto E = mk("A2", 2, DMode::Zero);
  auto C = build_chevalley_system(*E.L, default_involution(*E.L));
  auto sys = system_in_ball(E, C, 2);
  CHECK(sys.size() == 6 * 25);
  CHECK(all_pass(verify_chevalley_system(E, sys, inv(E), 2)));
  EalaRoot a{{1, 1}, {1, 0}};
  sys[a] = scaled(sys[a], 2);
  auto bad = verify_chevalley_system(E, sys, inv(E), 2);
  CHECK_FALSE(all_pass(bad));
  CHECK(witness_contains(get(bad, "CS-i"), "a1+a2@(1,0)"));

  auto S = mk("A1", 0, DMode::Zero);
  auto CS = build_chevalley_system(*S.L, default_involution(*S.L));
  CHECK(all_pass(verify_chevalley_system(S, system_in_ball(S, CS, 0), inv(S), 0)));
}

TEST_CASE("core axioms")
{
  for (int nu : {1, 2})
    for (const char* t : {"A2", "B2", "G2"}) {
      auto E = mk(t, nu, DMode::Full);
      auto Bc = toroidal_core_basis(E, 2);
      CHECK_MESSAGE(all_pass(verify_core_axioms(E, Bc, inv(E), 2)), t);
    }
  auto E = mk("A2", 2, DMode::Zero);
  auto Bc = toroidal_core_basis(E, 2);
  // missing dual generator
  auto c4 = verify_core_axioms(E, without(Bc, find_elem(Bc, "c", {0, 0})), inv(E), 2);
  CHECK_FALSE(get(c4, "C4").pass);
  CHECK(witness_contains(get(c4, "C4"), "0@(0,0)"));
  // sign-broken tau pair
  int i = find_elem(Bc, "x", {1, 1});
  auto c2 = verify_core_axioms(E, with(Bc, i, -Bc.elems[i].v), inv(E), 2);
  CHECK_FALSE(get(c2, "C2").pass);
  // not a root vector
  int h = find_elem(Bc, "h", {1, 0});
  auto c1 = verify_core_axioms(E, with(Bc, h, Bc.elems[h].v + Bc.elems[i].v), inv(E), 2);
  CHECK_FALSE(get(c1, "C1").pass);
  // two vectors in one nonisotropic root space
  IntegralStructure dup = Bc;
  dup.add(scaled(Bc.elems[i].v, 2), Bc.elems[i].root, "x");
  CHECK_FALSE(get(verify_core_axioms(E, dup, inv(E), 2), "C3").pass);
}

TEST_CASE("EALA axioms")
{
  for (DMode m : {DMode::Zero, DMode::Full})
    for (const char* t : {"A2", "B2", "G2"}) {
      auto E = mk(t, 2, m);
      auto B = extend_to_eala(E, toroidal_core_basis(E, 2));
      CHECK_MESSAGE(all_pass(verify_eala_axioms(E, B, inv(E), 2)), t);
    }
  auto E = mk("A2", 2, DMode::Zero);
  auto B = extend_to_eala(E, toroidal_core_basis(E, 2));
  int d = find_elem(B, "d", {0, 0});
  auto cb5 = verify_eala_axioms(E, with(B, d, scaled(B.elems[d].v, frac(1, 2))), inv(E), 2);
  CHECK_FALSE(get(cb5, "CB5").pass);
  CHECK(get(cb5, "CB1").pass);
  auto cb1 = verify_eala_axioms(E, B.core(), inv(E), 2);
  CHECK_FALSE(get(cb1, "CB1").pass);
  int x = find_elem(B, "x", {0, 1});
  CHECK_FALSE(get(verify_eala_axioms(E, with(B, x, -B.elems[x].v), inv(E), 2), "CB2").pass);
  CHECK_FALSE(get(verify_eala_axioms(E, with(B, x, scaled(B.elems[x].v, 2)), inv(E), 2), "CB3").pass);
  auto cb4 = verify_eala_axioms(E, without(B, find_elem(B, "c", {0, 0})), inv(E), 2);
  CHECK_FALSE(get(cb4, "CB4").pass);
}

TEST_CASE("torus axioms")
{
  for (int nu : {1, 2})
    for (const char* t : {"A2", "B2", "G2"}) {
      auto L = build_toroidal(t, nu);
      auto B = torus_chevalley_basis(L, 2);
      CHECK_MESSAGE(all_pass(verify_torus_axioms(L, B, default_involution(L), 2)), t);
    }
  auto L = build_toroidal("A2", 2);
  auto B = torus_chevalley_basis(L, 2);
  int x = find_elem(B, "x", {1, -1});
  CHECK_FALSE(get(verify_torus_axioms(L, with(B, x, -B.elems[x].v), default_involution(L), 2), "CBT1").pass);
  CHECK_FALSE(
      get(verify_torus_axioms(L, with(B, x, scaled(B.elems[x].v, 3)), default_involution(L), 2), "CBT2").pass);
  int h = find_elem(B, "h", {1, 1});
  auto cbt3 = verify_torus_axioms(L, with(B, h, scaled(B.elems[h].v, 2)), default_involution(L), 2);
  CHECK_FALSE(get(cbt3, "CBT3").pass);
  CHECK(witness_contains(get(cbt3, "CBT3"), "(1,1)"));
}

TEST_CASE("extension conditions")
{
  for (DMode m : {DMode::Zero, DMode::Full}) {
    auto E = mk("B2", 2, m);
    CHECK(all_pass(verify_extension_conditions(E, toroidal_core_basis(E, 2), 2)));
  }
  auto E = mk("A2", 2, DMode::Full);
  auto Bc = toroidal_core_basis(E, 2);
  // scale every vector of one degree
  IntegralStructure s;
  s.ball = 2;
  for (auto& e : Bc.elems) s.add(e.root.lam == IVec{1, 0} && e.tag == "x" ? scaled(e.v, 2) : e.v, e.root, e.tag);
  auto r = verify_extension_conditions(E, s, 2);
  CHECK_FALSE(get(r, "EXT-centroid").pass);
  CHECK(get(r, "EXT-symmetric").pass);
  CHECK(get(r, "EXT-directions").pass);
}

TEST_CASE("Z-form closure")
{
  auto E = mk("B2", 2, DMode::Full);
  auto B = extend_to_eala(E, toroidal_core_basis(E, 2));
  auto c = verify_zform_closure(E, B, 2);
  CHECK(c.pass);
  CHECK(c.checked > 1000);
  int x = find_elem(B, "x", {0, 0});
  auto bad = verify_zform_closure(E, with(B, x, scaled(B.elems[x].v, frac(1, 2))), 2);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witnesses.empty());

  auto F = mk("F4", 0, DMode::Zero);
  auto BF = toroidal_core_basis(F, 0);
  CHECK(BF.size() == 52);
  CHECK(verify_zform_closure(F, BF, 0).pass);
  // monotone in the ball
  auto E1 = mk("A2", 2, DMode::Zero);
  auto B1 = extend_to_eala(E1, toroidal_core_basis(E1, 2));
  CHECK(verify_zform_closure(E1, B1, 2).pass);
  CHECK(verify_zform_closure(E1, B1, 1).pass);
}

TEST_CASE("Weyl automorphisms")
{
  auto g = build_chevalley_algebra(build_root_system("A2"));
  auto sys = standard_system(g);
  CHECK(verify_weyl_automorphisms(g, sys).pass);
  auto s2 = build_chevalley_algebra(build_root_system("A1"));
  auto n = n_alpha(s2, s2.root_index({1}), standard_system(s2));
  GVec h = s2.unit(s2.cartan_index(0)), minus_h = h;
  for (auto& q : minus_h) q = -q;
  CHECK(n.apply(h) == minus_h);
  auto broken = sys;
  int a = g.root_index({1, 0});
  for (auto& q : broken[a]) q *= 2;
  CHECK_FALSE(verify_weyl_automorphisms(g, broken).pass);
}

TEST_CASE("proportionality lemma")
{
  auto E = mk("A1", 1, DMode::Zero);
  auto C = build_chevalley_system(*E.L, default_involution(*E.L));
  Elem xa = bracket_eala(E, C.x({1}, D({1})), C.x({-1}, D({0})));
  Elem h = single(Key{Kind::Loop, E.L->g->cartan_index(0), D({1})});
  CHECK(xa == h);
  Elem xma = bracket_eala(E, C.x({-1}, D({1})), C.x({1}, D({0})));
  CHECK(xma == -h);
  CHECK(verify_string_proportionality(E, C, {1}, {1}, 0, 0).pass);
  CHECK(verify_string_proportionality(E, C, {1}, {1}, -2, 2).pass);
  auto A = mk("A2", 2, DMode::Zero);
  auto CA = build_chevalley_system(*A.L, default_involution(*A.L));
  CHECK(verify_string_proportionality(A, CA, {1, 0}, {1, 1}, -2, 2).pass);
}

TEST_CASE("reflectable base certificate and probes")
{
  auto E = mk("A2", 2, DMode::Full);
  auto ers = eala_root_system(E);
  std::vector<EalaRoot> pi{{{0, 1}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {0, 1}}};
  auto c = verify_reflectable_base(ers, pi, 2);
  CHECK(c.pass);
  CHECK(c.note.find("necessary") != std::string::npos);
  CHECK_FALSE(verify_reflectable_base(ers, {pi[0], pi[1], pi[2]}, 2).pass);
  auto t = probe_tameness(E, 1);
  CHECK(t.pass);
  CHECK(t.note.find("evidence") != std::string::npos);
  auto C = build_chevalley_system(*E.L, default_involution(*E.L));
  CHECK(probe_local_nilpotency(E, system_in_ball(E, C, 1), 1).pass);
}
