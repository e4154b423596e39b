#pragma once

#include <string>
#include <vector>

namespace chev {

struct Witness {
  std::string where;
  std::string expected;
  std::string actual;
};

// Ball-bounded verification record.  A failing certificate always carries
// at least one witness.
struct Certificate {
  std::string axiom_id;
  int ball = 0;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::string note;
  long checked = 0;  // number of elementary checks performed

  void fail(std::string where, std::string expected, std::string actual)
  {
    pass = false;
    if (witnesses.size() < 16)
      witnesses.push_back({std::move(where), std::move(expected), std::move(actual)});
  }
};

using CertificateSet = std::vector<Certificate>;

inline bool all_pass(const CertificateSet& s)
{
  for (auto& c : s)
    if (!c.pass)
      return false;
  return true;
}

inline const Certificate* find_cert(const CertificateSet& s, const std::string& id)
{
  for (auto& c : s)
    if (c.axiom_id == id)
      return &c;
  return nullptr;
}

}  // namespace chev
