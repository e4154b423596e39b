#pragma once

#include "chevalley/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chev {

using IVec = std::vector<int>;

// Finite irreducible reduced root system.  Roots are integer coordinate
// vectors over the simple roots; the form is scaled so short roots have
// norm 2.
struct RootSystem {
  char family = 0;
  int rank = 0;
  std::string label;
  std::vector<std::vector<int>> gram;    // (a_i, a_j)
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <a_i, a_j^vee>
  std::vector<IVec> roots;               // sorted by height, then lex
  std::map<IVec, int> index;

  int num_roots() const { return int(roots.size()); }
  int find(const IVec& r) const;  // -1 if absent
  bool is_root(const IVec& r) const { return find(r) >= 0; }
  int form(const IVec& a, const IVec& b) const;
  int norm(const IVec& a) const { return form(a, a); }
  int max_norm() const;
  int height(const IVec& a) const;
  // <b, a^vee> = 2(b,a)/(a,a)
  int cartan_int(const IVec& b, const IVec& a) const;
  // h_a = sum c_i h_i
  IVec coroot(const IVec& a) const;
  std::vector<int> positive_indices() const;
  int neg(int i) const { return find(negate(roots[i])); }
  static IVec negate(IVec v);
};

RootSystem build_root_system(const std::string& label);
// Build from a Cartan matrix (cartan[i][j] = <a_i, a_j^vee>); the label is
// recognized from the Dynkin diagram.
RootSystem root_system_from_cartan(const std::vector<std::vector<int>>& cartan);

IVec reflect(const RootSystem& rs, const IVec& alpha, const IVec& beta);
std::pair<int, int> root_string(const RootSystem& rs, const IVec& beta, const IVec& alpha);

std::string root_name(const IVec& r);  // "a1+2a2", "-a3", "0"

// Extended affine root system R = (Delta u {0}) + Z^nu, optionally cut down
// by a support predicate (twisted case).
struct EalaRoot {
  IVec fin;  // coordinates over simple roots, or zero
  IVec lam;  // Lambda-part
  bool isotropic() const;
  auto operator<=>(const EalaRoot&) const = default;
};

std::string eala_root_name(const EalaRoot& r);

struct EalaRootSystem {
  RootSystem base;
  int nullity = 0;
  // (index of finite root, lambda) -> in R ?  empty means untwisted
  std::function<bool(int, const IVec&)> support;

  bool contains(const EalaRoot& r) const;
  int form(const EalaRoot& a, const EalaRoot& b) const { return base.form(a.fin, b.fin); }
  // non-isotropic roots with |lambda|_inf <= radius, in deterministic order
  std::vector<EalaRoot> nonisotropic_in_ball(int radius) const;
  int dim_v() const { return base.rank + nullity; }
};

EalaRootSystem build_eala_root_system(const std::string& label, int nullity);

EalaRoot reflect(const EalaRootSystem& ers, const EalaRoot& alpha, const EalaRoot& beta);

int sup_norm(const IVec& v);

struct ReflectableBaseReport {
  std::vector<EalaRoot> pi;
  int ball = 0;
  std::vector<EalaRoot> covered;
  int total = 0;  // |R^x within the ball|
  bool covers = false;
  bool minimal_within_ball = false;
  bool minimality_checked = false;
  int index_estimate = 0;
  bool budget_exhausted = false;
  std::string note;
};

ReflectableBaseReport check_reflectable_base(const EalaRootSystem& ers,
                                             const std::vector<EalaRoot>& pi,
                                             int ball, bool check_minimal = true);

ReflectableBaseReport search_reflectable_base(const EalaRootSystem& ers, int ball,
                                              long budget = 2000000);

}  // namespace chev
