#pragma once

#include "chevalley/rational.hpp"
#include "chevalley/rootsys.hpp"

#include <array>
#include <compare>
#include <map>
#include <string>

namespace chev {

constexpr int kMaxNullity = 4;
using Deg = std::array<int, kMaxNullity>;

Deg to_deg(const IVec& v);
IVec from_deg(const Deg& d, int nu);
Deg operator+(const Deg& a, const Deg& b);
Deg operator-(const Deg& a);
Deg operator-(const Deg& a, const Deg& b);
bool is_zero(const Deg& d);
int sup_norm(const Deg& d);
std::string deg_name(const Deg& d, int nu);

// Basis keys of E = L + D^gr* + D.
//   Loop: idx = basis index of g, deg = lambda     (g-basis vector (x) z^lambda)
//   Dual: idx = i, deg = mu                       (c^(mu)_{e_i}, i != pivot(mu))
//   Der:  idx = i, deg = mu                       (chi^mu d_{e_i})
enum class Kind : unsigned char { Loop = 0, Dual = 1, Der = 2 };

struct Key {
  Kind kind;
  int idx;
  Deg deg;
  auto operator<=>(const Key&) const = default;
};

using Elem = std::map<Key, Q>;

void axpy(Elem& acc, const Q& c, const Elem& x);  // acc += c x
void add_to(Elem& acc, const Key& k, const Q& c);
Elem scaled(const Elem& x, const Q& c);
Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
bool is_zero(const Elem& x);
Elem single(const Key& k, const Q& c = 1);

// c with x = c y, if x is a scalar multiple of y (y nonzero)
bool proportional(const Elem& x, const Elem& y, Q* factor = nullptr);

}  // namespace chev
