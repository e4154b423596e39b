#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevalley/intlinalg.hpp"
#include "chevalley/lietorus.hpp"

#include <random>

using namespace chev;

static Deg D(std::initializer_list<int> v) { return to_deg(IVec(v)); }

static Elem lk(const MultiLoopAlgebra& L, const IVec& root, Deg lam, Q c = 1)
{
  return single(Key{Kind::Loop, L.g->root_index(root), lam}, c);
}

static Elem hk(const MultiLoopAlgebra& L, int i, Deg lam, Q c = 1)
{
  return single(Key{Kind::Loop, L.g->cartan_index(i), lam}, c);
}

TEST_CASE("untwisted loop algebra of sl2")
{
  auto L = build_toroidal("A1", 1);
  CHECK_FALSE(L.twisted());
  for (int n = -3; n <= 3; ++n) {
    CHECK(L.supported({1}, D({n})));
    CHECK(L.supported({-1}, D({n})));
    CHECK(L.basis({1}, D({n})).size() == 1);
    CHECK(L.basis({0}, D({n})).size() == 1);
  }
  CHECK_FALSE(L.supported({2}, D({0})));
  // [e z, f z^-1] = h
  CHECK(bracket_loop(L, lk(L, {1}, D({1})), lk(L, {-1}, D({-1}))) == hk(L, 0, D({0})));
  CHECK(is_zero(bracket_loop(L, lk(L, {1}, D({1})), lk(L, {1}, D({2})))));
  CHECK(loop_form(L, lk(L, {1}, D({1})), lk(L, {-1}, D({-1}))) == 1);
  CHECK(loop_form(L, lk(L, {1}, D({1})), lk(L, {-1}, D({1}))) == 0);
}

TEST_CASE("toroidal A2 grading and bracket")
{
  auto L = build_toroidal("A2", 2);
  for (auto& lam : L.ball(2))
    for (auto& r : L.delta.roots) {
      auto b = L.basis(r, lam);
      REQUIRE(b.size() == 1);
      CHECK(b[0] == lk(L, r, lam));
    }
  long n = L.g->structure_constant(L.g->root_index({1, 0}), L.g->root_index({0, 1}));
  CHECK(bracket_loop(L, lk(L, {1, 0}, D({1, 0})), lk(L, {0, 1}, D({0, -2}))) ==
        lk(L, {1, 1}, D({1, -2}), n));
}

TEST_CASE("form invariance and centroid, random triples")
{
  for (const char* t : {"A2", "B2", "G2"}) {
    auto L = build_toroidal(t, 2);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> gi(0, L.g->dim - 1), di(-2, 2), ci(-3, 3);
    auto rnd = [&] {
      Elem e;
      for (int k = 0; k < 3; ++k) add_to(e, Key{Kind::Loop, gi(rng), D({di(rng), di(rng)})}, ci(rng));
      return e;
    };
    for (int trial = 0; trial < 60; ++trial) {
      Elem x = rnd(), y = rnd(), w = rnd();
      CHECK(loop_form(L, x, bracket_loop(L, y, w)) == loop_form(L, bracket_loop(L, x, y), w));
      CHECK(loop_form(L, x, y) == loop_form(L, y, x));
      Deg mu = D({di(rng), di(rng)});
      CHECK(centroid_apply(L, mu, bracket_loop(L, x, y)) == bracket_loop(L, centroid_apply(L, mu, x), y));
    }
    Elem x = lk(L, L.delta.roots[0], D({1, -1}));
    CHECK(centroid_apply(L, D({0, 0}), x) == x);
    CHECK(centroid_apply(L, D({2, 1}), x) == lk(L, L.delta.roots[0], D({3, 0})));
    CHECK(centroid_apply(L, D({1, 1}), centroid_apply(L, D({-2, 0}), x)) == centroid_apply(L, D({-1, 1}), x));
  }
}

// independent oracle: dimension of the (+-1)-eigenspace of sigma on span(fibre)
static int eigen_dim(const MultiLoopAlgebra& L, const IVec& beta, int sign)
{
  auto it = L.fibre.find(beta);
  if (it == L.fibre.end())
    return 0;
  const auto& sig = L.twists[0];
  QMat m;
  for (int j : it->second) {
    GVec v = sig.apply(L.g->unit(j));
    v[j] -= sign;
    m.push_back(v);
  }
  return int(it->second.size()) - rank(m);
}

TEST_CASE("A3 diagram flip")
{
  auto L = build_multiloop("A3", 1, "flip");
  CHECK(L.twisted());
  CHECK(L.period[0] == 2);
  CHECK(L.delta.rank == 2);
  CHECK(L.delta.num_roots() == 8);  // B2
  int short_n = 0, long_n = 0;
  for (auto& b : L.grades())
    for (int n = -3; n <= 3; ++n) {
      int want = eigen_dim(L, b, n % 2 == 0 ? 1 : -1);
      CHECK(int(L.basis(b, D({n})).size()) == want);
      CHECK(L.supported(b, D({n})) == (want > 0));
    }
  for (auto& r : L.delta.roots) {
    bool is_long = L.delta.norm(r) == L.delta.max_norm();
    (is_long ? long_n : short_n)++;
    CHECK(L.basis(r, D({0})).size() == 1);
    CHECK(L.basis(r, D({1})).size() == (is_long ? 0u : 1u));
  }
  CHECK(short_n == 4);
  CHECK(long_n == 4);
  CHECK(L.basis(L.zero_grade(), D({0})).size() == 2);
  CHECK(L.basis(L.zero_grade(), D({1})).size() == 1);
  CHECK(L.in_gamma(D({2})));
  CHECK_FALSE(L.in_gamma(D({1})));
  CHECK_THROWS(centroid_apply(L, D({1}), L.basis(L.zero_grade(), D({0}))[0]));
}

TEST_CASE("twist errors")
{
  CHECK_THROWS(build_multiloop("A2", 1, "flip"));  // BC type
  auto g = std::make_shared<const FiniteChevalleyAlgebra>(build_chevalley_algebra(build_root_system("A2")));
  auto sys = standard_system(*g);
  CHECK_THROWS(build_multiloop(g, {n_alpha(*g, g->root_index({1, 0}), sys)}, 1));  // period 4
  auto d4 = std::make_shared<const FiniteChevalleyAlgebra>(build_chevalley_algebra(build_root_system("D4")));
  auto s1 = diagram_automorphism(*d4, {0, 1, 3, 2});
  auto s2 = diagram_automorphism(*d4, {2, 1, 0, 3});
  CHECK_THROWS(build_multiloop(d4, {s1, s2}, 2));  // do not commute
  CHECK_THROWS(build_multiloop("A1", 1, "bogus"));
}

TEST_CASE("loop involution")
{
  auto L = build_toroidal("A2", 2);
  auto tau = default_involution(L);
  for (auto& r : L.delta.roots)
    CHECK(tau.apply(L, lk(L, r, D({1, -2}))) == lk(L, RootSystem::negate(r), D({-1, 2}), -1));
  for (auto& lam : L.ball(1))
    for (int a = 0; a < L.g->dim; ++a) {
      Elem x = single(Key{Kind::Loop, a, lam});
      CHECK(tau.apply(L, tau.apply(L, x)) == x);
    }
  auto c = check_chevalley_involution(L, tau, 1);
  CHECK(c.pass);

  auto T = build_multiloop("A3", 1, "flip");
  auto tt = tau_psi(T, chevalley_involution(*T.g), identity_automorphism(*T.g));
  CHECK(check_chevalley_involution(T, tt, 3).pass);
  auto sys = standard_system(*T.g);
  CHECK_THROWS(tau_psi(T, chevalley_involution(*T.g), n_alpha(*T.g, T.g->root_index({1, 0, 0}), sys)));
}

TEST_CASE("Chevalley systems")
{
  auto L = build_toroidal("B2", 2);
  auto C = build_chevalley_system(L, default_involution(L));
  for (auto& lam : L.ball(1))
    for (auto& r : L.delta.roots) CHECK(C.x(r, lam) == lk(L, r, lam));

  auto T = build_multiloop("A3", 1, "flip");
  auto tau = default_involution(T);
  auto CT = build_chevalley_system(T, tau);
  for (int n = -3; n <= 3; ++n)
    for (auto& r : T.delta.roots) {
      Deg lam = D({n});
      if (!T.supported(r, lam)) {
        CHECK_THROWS(CT.x(r, lam));
        continue;
      }
      const Elem& x = CT.x(r, lam);
      const Elem& y = CT.x(RootSystem::negate(r), -lam);
      CHECK(tau.apply(T, x) == -y);
      Elem h = bracket_loop(T, x, y);
      CHECK(bracket_loop(T, h, x) == scaled(x, 2));
      CHECK(bracket_loop(T, h, y) == scaled(y, -2));
    }

  CHECK(normalization_constant(2, 1) == 1);
  // pairing 2t/(a,a) gives c^2 = 1/t
  CHECK(normalization_constant(4, frac(2 * 4, 4)) == frac(1, 2));
  CHECK_THROWS_WITH(normalization_constant(2, 2), doctest::Contains("sqrt(2)"));
  CHECK_THROWS_WITH(rational_sqrt_or_throw(frac(3, 4)), doctest::Contains("sqrt(3)"));
}

TEST_CASE("Lie torus axioms")
{
  auto L = build_toroidal("A2", 2);
  auto cs = check_lie_torus_axioms(L, 2);
  CHECK(all_pass(cs));
  CHECK(cs.size() == 5);
  for (auto& c : cs) CHECK(c.ball == 2);

  auto T = build_multiloop("A3", 1, "flip");
  CHECK(all_pass(check_lie_torus_axioms(T, 3)));

  auto bad = L;
  bad.dropped.insert({IVec{1, 0}, D({1, 0})});
  auto cb = check_lie_torus_axioms(bad, 2);
  CHECK_FALSE(all_pass(cb));
  bool named = false;
  for (auto& c : cb)
    for (auto& w : c.witnesses) named = named || w.where == "a1@(1,0)";
  CHECK(named);
  auto lt3 = find_cert(cb, "LT3");
  REQUIRE(lt3);
  CHECK_FALSE(lt3->pass);
}
