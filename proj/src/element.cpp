#include "chevalley/element.hpp"

#include <cstdlib>
#include <stdexcept>

namespace chev {

Deg to_deg(const IVec& v)
{
  if (v.size() > size_t(kMaxNullity))
    throw std::invalid_argument("nullity above " + std::to_string(kMaxNullity) + " is not supported");
  Deg d{};
  for (size_t i = 0; i < v.size(); ++i) d[i] = v[i];
  return d;
}

IVec from_deg(const Deg& d, int nu) { return IVec(d.begin(), d.begin() + nu); }

Deg operator+(const Deg& a, const Deg& b)
{
  Deg r;
  for (int i = 0; i < kMaxNullity; ++i) r[i] = a[i] + b[i];
  return r;
}

Deg operator-(const Deg& a)
{
  Deg r;
  for (int i = 0; i < kMaxNullity; ++i) r[i] = -a[i];
  return r;
}

Deg operator-(const Deg& a, const Deg& b) { return a + (-b); }

bool is_zero(const Deg& d)
{
  for (int x : d)
    if (x)
      return false;
  return true;
}

int sup_norm(const Deg& d)
{
  int m = 0;
  for (int x : d) m = std::max(m, std::abs(x));
  return m;
}

std::string deg_name(const Deg& d, int nu)
{
  std::string s = "(";
  for (int i = 0; i < nu; ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

void add_to(Elem& acc, const Key& k, const Q& c)
{
  if (c == 0)
    return;
  auto [it, fresh] = acc.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0)
      acc.erase(it);
  }
}

void axpy(Elem& acc, const Q& c, const Elem& x)
{
  if (c == 0)
    return;
  for (auto& [k, v] : x) add_to(acc, k, c * v);
}

Elem scaled(const Elem& x, const Q& c)
{
  Elem r;
  if (c == 0)
    return r;
  for (auto& [k, v] : x) r.emplace(k, v * c);
  return r;
}

Elem operator+(const Elem& a, const Elem& b)
{
  Elem r = a;
  axpy(r, 1, b);
  return r;
}

Elem operator-(const Elem& a, const Elem& b)
{
  Elem r = a;
  axpy(r, -1, b);
  return r;
}

Elem operator-(const Elem& a) { return scaled(a, -1); }

bool is_zero(const Elem& x) { return x.empty(); }

Elem single(const Key& k, const Q& c)
{
  Elem e;
  add_to(e, k, c);
  return e;
}

bool proportional(const Elem& x, const Elem& y, Q* factor)
{
  if (y.empty())
    throw std::invalid_argument("proportional: zero reference vector");
  if (x.empty()) {
    if (factor)
      *factor = 0;
    return true;
  }
  if (x.size() != y.size())
    return false;
  Q c = x.begin()->second / y.begin()->second;
  for (auto& [k, v] : y) {
    auto it = x.find(k);
    if (it == x.end() || it->second != c * v)
      return false;
  }
  if (factor)
    *factor = c;
  return true;
}

}  // namespace chev
