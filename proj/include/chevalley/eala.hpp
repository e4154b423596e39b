#pragma once

#include "chevalley/lietorus.hpp"

#include <memory>
#include <string>
#include <vector>

namespace chev {

// D = SCDer(L)^0 (zero) or all skew centroidal derivations (full)
enum class DMode { Zero, Full };
std::string dmode_name(DMode m);
DMode parse_dmode(const std::string& s);

// E = L + D^gr* + D with the affine cocycle set to 0.
//   Dual key (i, mu) is c^(mu)_{e_i} for i != pivot(mu); c^(mu)_lambda depends
//   only on lambda modulo the line through mu and is expanded over these keys.
//   Der key (i, mu) is chi^mu d_{e_i}; elements of D are combinations with
//   theta(mu) = 0.
struct EalaAlgebra {
  std::shared_ptr<const MultiLoopAlgebra> L;
  DMode mode = DMode::Zero;
  int nu = 0;

  bool in_gamma_d(const Deg& mu) const;
  int pivot(const Deg& mu) const;  // first nonzero coordinate, -1 for mu = 0
  Elem dual(const Deg& mu, const QVec& lam) const;
  Elem der(const Deg& mu, const QVec& theta) const;  // requires theta(mu) = 0
  std::vector<Elem> dual_basis(const Deg& mu) const;
  std::vector<Elem> der_basis(const Deg& mu) const;  // integer kernel of mu
  EalaRoot root_of(const Key& k) const;
  std::vector<Elem> cartan_basis() const;
  // rho(h) for h in H
  Q eval(const EalaRoot& rho, const Elem& h) const;
  std::string key_name(const Key& k) const;
  Key parse_key(const std::string& s) const;
};

EalaAlgebra build_eala(std::shared_ptr<const MultiLoopAlgebra> L, DMode mode, int certify_ball = 1);

Elem bracket_eala(const EalaAlgebra& E, const Elem& x, const Elem& y);
Q eala_form(const EalaAlgebra& E, const Elem& x, const Elem& y);

// basis of E_rho; empty if rho is not a root
std::vector<Elem> root_space_basis(const EalaAlgebra& E, const EalaRoot& rho, int ball);
// all roots with |lambda|_inf <= ball, zero-part roots first within each degree
std::vector<EalaRoot> roots_in_ball(const EalaAlgebra& E, int ball);
bool in_core(const Elem& x);  // no derivation keys

struct EalaAutomorphism {
  LoopAutomorphism loop;
  Elem apply(const EalaAlgebra& E, const Elem& x) const;
};

EalaAutomorphism extend_involution(const EalaAlgebra& E, const LoopAutomorphism& tau);

}  // namespace chev
