#pragma once

#include "chevalley/eala.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace chev {

// Tags: "x" Chevalley-system vector, "h" Cartan vector (h_i z^l or B_0),
// "s" isotropic-degree basis B_sigma, "c" dual basis, "d" derivation basis.
struct StructElem {
  Elem v;
  EalaRoot root;
  std::string tag;
};

// Finite, ball-bounded piece of an integral structure.
struct IntegralStructure {
  int ball = 0;
  std::vector<StructElem> elems;
  std::map<EalaRoot, std::vector<int>> by_root;

  void add(Elem v, EalaRoot root, std::string tag);
  std::vector<Elem> at(const EalaRoot& r) const;
  size_t size() const { return elems.size(); }
  IntegralStructure core() const;  // without derivations
  std::map<std::string, int> counts() const;
};

EalaRootSystem eala_root_system(const EalaAlgebra& E);

IntegralStructure toroidal_core_basis(const EalaAlgebra& E, int ball);
// Z-basis of {theta in Z^nu : theta.mu = 0}, HNF rows
std::vector<IVec> lattice_kernel_basis(const IVec& mu);
// ZVec form of x in Z^n, for callers working over mpz
ZVec to_zvec(const IVec& v);

// EXT-symmetric, EXT-directions, EXT-centroid within the ball
CertificateSet check_extension_conditions(const EalaAlgebra& E, const IntegralStructure& Bc, int ball);
IntegralStructure extend_to_eala(const EalaAlgebra& E, const IntegralStructure& Bc);

IntegralStructure core_integral_structure_from_system(const EalaAlgebra& E, const ChevalleySystemT& C,
                                                      const std::vector<EalaRoot>& pi, int ball);
// untwisted Lie torus: {x_a z^l} u {h_i z^l}
IntegralStructure torus_chevalley_basis(const MultiLoopAlgebra& L, int ball);

// Coordinates of x over B, grouped by root space; keys are element indices.
// Throws std::domain_error when x is outside the span or, with the flag,
// when a coordinate is not an integer.
std::map<int, Q> coordinates(const MultiLoopAlgebra& L, const IntegralStructure& B, const Elem& x,
                             bool require_integer);

// Z-span comparison and Q-rank of sparse elements
bool same_zspan(const std::vector<Elem>& a, const std::vector<Elem>& b);
int span_rank(const std::vector<Elem>& v);

struct SignTwist {
  std::function<int(const EalaRoot&)> mu;
  std::string name;
};

struct TwistReport {
  bool well_defined = true;       // Psi respects the relations among generators
  bool lattice_match = true;      // Psi(B) spans span_Z(Bbar) in every degree
  bool bracket_compatible = true; // Psi[u,v] = [Psi u, Psi v]
  long pairs_checked = 0;
  std::vector<Witness> witnesses;
  IntegralStructure bbar;
  bool ok() const { return well_defined && lattice_match && bracket_compatible; }
};

// sign pattern by positive finite root: bits[i] is the sign class of the i-th
// positive root of delta (bit set = -1)
SignTwist sign_twist_from_bits(const RootSystem& delta, unsigned bits);

TwistReport twist_and_compare(const EalaAlgebra& E, const ChevalleySystemT& C, const ReflectableBaseReport& pi,
                              const SignTwist& twist, int ball);

}  // namespace chev
