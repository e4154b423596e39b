#pragma once

#include "chevalley/certificate.hpp"
#include "chevalley/chevfin.hpp"
#include "chevalley/element.hpp"

#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace chev {

// Multi-loop algebra M(g, sigma_1..sigma_nu) inside g (x) Q[z_1^+-1..z_nu^+-1].
// Twists have period 1 or 2.  Elements use Loop keys (g-basis index, lambda).
// The grading root system delta is the restricted root system of the twists
// (equal to the root system of g when untwisted); grades are integer vectors
// over delta's simple roots.
struct MultiLoopAlgebra {
  std::shared_ptr<const FiniteChevalleyAlgebra> g;
  int nu = 0;
  std::vector<AlgebraAutomorphism> twists;  // one per direction
  std::vector<int> period;
  RootSystem delta;
  std::vector<IVec> grade_of;  // per g-basis index
  std::vector<std::vector<int>> simple_classes;  // orbits of simple roots of g
  std::map<IVec, std::vector<int>> fibre;      // grade -> g-basis indices
  // (grade, parity bits) -> basis of the matching eigenspace, primitive integer vectors
  std::map<std::pair<IVec, unsigned>, std::vector<GVec>> pieces;
  // corruption hook: pieces treated as zero
  std::set<std::pair<IVec, Deg>> dropped;

  bool twisted() const;
  unsigned parity(const Deg& lam) const;
  bool in_gamma(const Deg& mu) const;  // centroid exponent group
  IVec zero_grade() const { return IVec(delta.rank, 0); }
  std::vector<IVec> grades() const;  // zero first, then delta roots in order
  bool supported(const IVec& beta, const Deg& lam) const;
  std::vector<GVec> piece(const IVec& beta, const Deg& lam) const;
  std::vector<Elem> basis(const IVec& beta, const Deg& lam) const;
  Elem embed(const GVec& v, const Deg& lam) const;
  GVec component(const Elem& x, const Deg& lam) const;
  // beta(h) for h in the Cartan part of g (h fixed by the twists if beta is restricted)
  Q eval(const IVec& beta, const GVec& h) const;
  std::string graded_name(const IVec& beta, const Deg& lam) const;
  // all degrees with |lambda|_inf <= r, lexicographic
  std::vector<Deg> ball(int r) const;
};

MultiLoopAlgebra build_multiloop(std::shared_ptr<const FiniteChevalleyAlgebra> g,
                                 std::vector<AlgebraAutomorphism> twists, int nu);
MultiLoopAlgebra build_toroidal(const std::string& type, int nu);
// twist: "none", or "flip" (diagram involution in direction 1)
MultiLoopAlgebra build_multiloop(const std::string& type, int nu, const std::string& twist);

Elem bracket_loop(const MultiLoopAlgebra& L, const Elem& x, const Elem& y);
Q loop_form(const MultiLoopAlgebra& L, const Elem& x, const Elem& y);
Elem centroid_apply(const MultiLoopAlgebra& L, const Deg& mu, const Elem& x);

// v (x) z^lambda -> fin(v) (x) z^(invert ? -lambda : lambda)
struct LoopAutomorphism {
  AlgebraAutomorphism fin;
  bool invert = true;
  Elem apply(const MultiLoopAlgebra& L, const Elem& x) const;
};

// tau_psi(v (x) z^lambda) = psi tau (v) (x) z^-lambda
LoopAutomorphism tau_psi(const MultiLoopAlgebra& L, const AlgebraAutomorphism& tau,
                         const AlgebraAutomorphism& psi);
// tau = Chevalley involution of g, psi = id
LoopAutomorphism default_involution(const MultiLoopAlgebra& L);

// c with c^2 = c2, or an error naming the quadratic extension required
Q rational_sqrt_or_throw(const Q& c2);
// c^2 = 2 / (norm * pairing)
Q normalization_constant(const Q& norm, const Q& pairing);

// Chevalley system x^lambda_alpha, computed on demand and cached.
class ChevalleySystemT {
public:
  ChevalleySystemT(const MultiLoopAlgebra& L, LoopAutomorphism tau);
  const Elem& x(const IVec& beta, const Deg& lam) const;  // throws if unsupported
  const MultiLoopAlgebra& algebra() const { return *L_; }
  const LoopAutomorphism& involution() const { return tau_; }

private:
  const MultiLoopAlgebra* L_;
  LoopAutomorphism tau_;
  mutable std::mutex mu_;  // guards cache_ insertion only
  mutable std::map<std::pair<IVec, Deg>, Elem> cache_;
};

ChevalleySystemT build_chevalley_system(const MultiLoopAlgebra& L, const LoopAutomorphism& tau);

// LT1..LT5 within the ball
CertificateSet check_lie_torus_axioms(const MultiLoopAlgebra& L, int ball);
// finite order, tau(L^l_a) = L^-l_-a, -id on L^0_0, multiplicative, form preserving
Certificate check_chevalley_involution(const MultiLoopAlgebra& L, const LoopAutomorphism& tau, int ball);

}  // namespace chev
