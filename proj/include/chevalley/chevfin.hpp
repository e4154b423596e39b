#pragma once

#include "chevalley/rootsys.hpp"

#include <string>
#include <vector>

namespace chev {

struct Term {
  int idx;
  long coeff;
};
using SparseInt = std::vector<Term>;

// Dense coordinate vector over the basis of a finite algebra.
using GVec = QVec;

// Finite simple Lie algebra in a Chevalley basis.  Basis indices
// 0..nroots-1 are x_alpha in root order, nroots+i is h_{i+1}.
struct FiniteChevalleyAlgebra {
  RootSystem rs;
  int nroots = 0;
  int dim = 0;
  std::vector<std::vector<SparseInt>> table;  // table[a][b] = [e_a, e_b]
  std::vector<std::vector<Q>> gram;          // invariant form on basis pairs

  bool is_root(int a) const { return a < nroots; }
  int neg(int a) const { return rs.neg(a); }
  int cartan_index(int i) const { return nroots + i; }
  int root_index(const IVec& r) const { return rs.find(r); }
  // N_{a,b} for roots with a+b a root; 0 otherwise
  long structure_constant(int a, int b) const;
  std::string basis_name(int a) const;
  GVec unit(int a) const;
  GVec zero() const { return GVec(dim); }
  // h_alpha as an integer combination of the h_i
  GVec h_of(int root) const;
};

FiniteChevalleyAlgebra build_chevalley_algebra(const RootSystem& rs);

GVec bracket_fin(const FiniteChevalleyAlgebra& g, const GVec& x, const GVec& y);
Q invariant_form_fin(const FiniteChevalleyAlgebra& g, const GVec& x, const GVec& y);

struct AlgebraAutomorphism {
  std::vector<GVec> image;  // image[j] = image of basis vector j
  int order = 0;            // declared order, 0 if unknown
  std::string name;

  GVec apply(const GVec& v) const;
  AlgebraAutomorphism compose(const AlgebraAutomorphism& inner) const;  // this o inner
  bool is_identity() const;
  bool operator==(const AlgebraAutomorphism& o) const { return image == o.image; }
};

AlgebraAutomorphism identity_automorphism(const FiniteChevalleyAlgebra& g);
AlgebraAutomorphism chevalley_involution(const FiniteChevalleyAlgebra& g);
// perm[i] = index of the image of simple root i; orders 1 and 2 only.
// Fixes the pinning: x_{+-a_i} -> x_{+-a_perm(i)}.
AlgebraAutomorphism diagram_automorphism(const FiniteChevalleyAlgebra& g, const std::vector<int>& perm);

// Chevalley system of g: system[a] is the chosen vector in g_a (roots only).
using FinChevalleySystem = std::vector<GVec>;
FinChevalleySystem standard_system(const FiniteChevalleyAlgebra& g);

// exp(ad x) as an automorphism; x must be ad-nilpotent
AlgebraAutomorphism exp_ad(const FiniteChevalleyAlgebra& g, const GVec& x);
// exp(ad x_a) exp(-ad x_{-a}) exp(ad x_a)
AlgebraAutomorphism n_alpha(const FiniteChevalleyAlgebra& g, int root, const FinChevalleySystem& c);

// multiplicativity on every basis pair
bool is_automorphism(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a);
bool preserves_form(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a);
// dimension of the fixed-point subalgebra
int fixed_dimension(const FiniteChevalleyAlgebra& g, const AlgebraAutomorphism& a);

}  // namespace chev
