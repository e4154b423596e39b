#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace chev {

using Q = mpq_class;
using Z = mpz_class;

// canonical a/b
inline Q frac(long a, long b)
{
  Q q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

// "p" or "p/q", always reduced
inline std::string to_string(const Q& q)
{
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q parse_rational(const std::string& s);

using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;   // row-major
using ZVec = std::vector<Z>;
using ZMat = std::vector<ZVec>;

}  // namespace chev
