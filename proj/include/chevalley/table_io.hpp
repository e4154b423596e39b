#pragma once

#include "chevalley/certificate.hpp"
#include "chevalley/integrality.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chev {

struct AlgSpec {
  std::string type;
  int nullity = 0;
  std::string twist = "none";
  DMode mode = DMode::Zero;
  int ball = 1;
};

// throws with a module-qualified message on a bad spec
EalaAlgebra build_from_spec(const AlgSpec& s);

// Key-level structure constants on the ball: every key occurring in a basis
// element of degree |l| <= ball, and [a, b] for declared a < b whenever the
// degree of the result stays in the ball and the bracket is nonzero.
struct BracketTable {
  AlgSpec spec;
  std::vector<Key> keys;
  std::map<std::pair<Key, Key>, Elem> brk;
  CertificateSet certs;
};

BracketTable make_table(const EalaAlgebra& E, const AlgSpec& s);

// bilinear replay of the table; throws if a key is undeclared or the result
// degree leaves the ball
Elem replay_bracket(const BracketTable& T, const Elem& x, const Elem& y);

// Text format, one record per line, tab-separated:
//   ALG  type  nullity  twist  dmode  ball
//   KEY  name
//   BRK  left  right  terms
//   CERT id  ball  PASS|FAIL  checked  witnesses  note
// terms are space-separated coeff*key with coeff p or p/q.
std::string write_table(const EalaAlgebra& E, const BracketTable& T);
AlgSpec read_header(const std::string& text);
BracketTable read_table(const EalaAlgebra& E, const std::string& text);

std::string format_terms(const EalaAlgebra& E, const Elem& x);
Elem parse_terms(const EalaAlgebra& E, const std::string& s);

// Structure manifest: COUNT lines per tag, then ELEM  tag  root  terms
std::string write_manifest(const EalaAlgebra& E, const IntegralStructure& B);
IntegralStructure read_manifest(const EalaAlgebra& E, const std::string& text);

// the integral structure the build pipeline attaches to a spec
IntegralStructure default_structure(const EalaAlgebra& E, int ball);

}  // namespace chev
