#include "chevalley/table_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chev {

namespace {

[[noreturn]] void fail(const std::string& m) { throw std::runtime_error("table: " + m); }

[[noreturn]] void fail_at(int line, const std::string& m) { fail("line " + std::to_string(line) + ": " + m); }

std::vector<std::string> split_tabs(const std::string& line)
{
  std::vector<std::string> out;
  size_t pos = 0;
  for (;;) {
    size_t t = line.find('\t', pos);
    out.push_back(line.substr(pos, t == std::string::npos ? std::string::npos : t - pos));
    if (t == std::string::npos)
      return out;
    pos = t + 1;
  }
}

std::string clean(std::string s)
{
  for (auto& ch : s)
    if (ch == '\t' || ch == '\n' || ch == '\r')
      ch = ' ';
  return s;
}

int parse_int(const std::string& s, int line, const char* what)
{
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size())
      return v;
  } catch (const std::exception&) {
  }
  fail_at(line, std::string("bad ") + what + " '" + s + "'");
}

template <class F>
void for_lines(const std::string& text, F f)
{
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#')
      continue;
    f(no, split_tabs(line));
  }
}

std::string cert_line(const Certificate& c)
{
  std::string s = "CERT\t" + clean(c.axiom_id) + "\t" + std::to_string(c.ball) + "\t" + (c.pass ? "PASS" : "FAIL") +
                  "\t" + std::to_string(c.checked) + "\t" + clean(c.note);
  for (auto& w : c.witnesses) s += "\t" + clean(w.where) + "\t" + clean(w.expected) + "\t" + clean(w.actual);
  return s + "\n";
}

Certificate parse_cert(const std::vector<std::string>& f, int line)
{
  if (f.size() < 6 || (f.size() - 6) % 3 != 0)
    fail_at(line, "CERT needs id, ball, status, checked, note and witness triples");
  Certificate c;
  c.axiom_id = f[1];
  c.ball = parse_int(f[2], line, "ball");
  if (f[3] != "PASS" && f[3] != "FAIL")
    fail_at(line, "bad status '" + f[3] + "'");
  c.pass = f[3] == "PASS";
  c.checked = parse_int(f[4], line, "count");
  c.note = f[5];
  for (size_t i = 6; i < f.size(); i += 3) c.witnesses.push_back({f[i], f[i + 1], f[i + 2]});
  if (!c.pass && c.witnesses.empty())
    fail_at(line, "failing certificate without a witness");
  return c;
}

}  // namespace

EalaAlgebra build_from_spec(const AlgSpec& s)
{
  if (s.nullity < 0 || s.nullity > 4)
    fail("nullity must be in 0..4");
  if (s.ball < 1)
    fail("ball radius must be >= 1");
  auto L = std::make_shared<const MultiLoopAlgebra>(build_multiloop(s.type, s.nullity, s.twist));
  return build_eala(L, s.mode);
}

BracketTable make_table(const EalaAlgebra& E, const AlgSpec& s)
{
  BracketTable T;
  T.spec = s;
  // ambient keys: g (x) z^l, duals and derivations, so that key brackets
  // never leave the table even for twisted loops
  std::set<Key> keys;
  for (auto& mu : E.L->ball(s.ball)) {
    for (int a = 0; a < E.L->g->dim; ++a) keys.insert(Key{Kind::Loop, a, mu});
    if (!E.in_gamma_d(mu))
      continue;
    for (int i = 0; i < E.nu; ++i) {
      keys.insert(Key{Kind::Der, i, mu});
      if (i != E.pivot(mu))
        keys.insert(Key{Kind::Dual, i, mu});
    }
  }
  T.keys.assign(keys.begin(), keys.end());
  for (size_t i = 0; i < T.keys.size(); ++i)
    for (size_t j = i + 1; j < T.keys.size(); ++j) {
      const Key &a = T.keys[i], &b = T.keys[j];
      if (sup_norm(a.deg + b.deg) > s.ball)
        continue;
      Elem r = bracket_eala(E, single(a), single(b));
      if (r.empty())
        continue;
      for (auto& [k, c] : r)
        if (!keys.count(k))
          fail("bracket of " + E.key_name(a) + " and " + E.key_name(b) + " leaves the key set");
      T.brk[{a, b}] = std::move(r);
    }
  return T;
}

Elem replay_bracket(const BracketTable& T, const Elem& x, const Elem& y)
{
  Elem out;
  for (auto& [a, p] : x)
    for (auto& [b, q] : y) {
      if (!std::binary_search(T.keys.begin(), T.keys.end(), a) ||
          !std::binary_search(T.keys.begin(), T.keys.end(), b))
        fail("undeclared key in replay");
      if (sup_norm(a.deg + b.deg) > T.spec.ball)
        fail("replayed bracket leaves the ball");
      if (a == b)
        continue;
      bool swap = b < a;
      auto it = T.brk.find(swap ? std::make_pair(b, a) : std::make_pair(a, b));
      if (it != T.brk.end())
        axpy(out, swap ? Q(-p * q) : Q(p * q), it->second);
    }
  return out;
}

std::string format_terms(const EalaAlgebra& E, const Elem& x)
{
  if (x.empty())
    return "0";
  std::string s;
  for (auto& [k, c] : x) {
    if (!s.empty())
      s += ' ';
    s += to_string(c) + "*" + E.key_name(k);
  }
  return s;
}

Elem parse_terms(const EalaAlgebra& E, const std::string& s)
{
  Elem out;
  if (s == "0")
    return out;
  std::istringstream in(s);
  std::string tok;
  bool any = false;
  while (in >> tok) {
    any = true;
    auto star = tok.find('*');
    if (star == std::string::npos)
      fail("term '" + tok + "' is not coeff*key");
    std::string cs = tok.substr(0, star);
    auto slash = cs.find('/');
    if (slash != std::string::npos && cs.find_first_not_of('0', slash + 1) == std::string::npos)
      fail("zero denominator in '" + tok + "'");
    Q c;
    try {
      c = parse_rational(cs);
    } catch (const std::exception&) {
      fail("bad coefficient in '" + tok + "'");
    }
    add_to(out, E.parse_key(tok.substr(star + 1)), c);
  }
  if (!any)
    fail("empty term list");
  return out;
}

std::string write_table(const EalaAlgebra& E, const BracketTable& T)
{
  std::ostringstream o;
  const AlgSpec& s = T.spec;
  o << "ALG\t" << s.type << "\t" << s.nullity << "\t" << s.twist << "\t" << dmode_name(s.mode) << "\t" << s.ball
    << "\n";
  for (auto& k : T.keys) o << "KEY\t" << E.key_name(k) << "\n";
  for (auto& [p, r] : T.brk)
    o << "BRK\t" << E.key_name(p.first) << "\t" << E.key_name(p.second) << "\t" << format_terms(E, r) << "\n";
  for (auto& c : T.certs) o << cert_line(c);
  return o.str();
}

AlgSpec read_header(const std::string& text)
{
  AlgSpec s;
  bool seen = false;
  for_lines(text, [&](int no, const std::vector<std::string>& f) {
    if (seen)
      return;
    if (f[0] != "ALG" || f.size() != 6)
      fail_at(no, "expected the ALG header: type, nullity, twist, dmode, ball");
    s.type = f[1];
    s.nullity = parse_int(f[2], no, "nullity");
    s.twist = f[3];
    try {
      s.mode = parse_dmode(f[4]);
    } catch (const std::exception& e) {
      fail_at(no, e.what());
    }
    s.ball = parse_int(f[5], no, "ball");
    seen = true;
  });
  if (!seen)
    fail("missing ALG header");
  return s;
}

BracketTable read_table(const EalaAlgebra& E, const std::string& text)
{
  BracketTable T;
  T.spec = read_header(text);
  std::set<Key> declared;
  bool header = true;
  Key last{};
  for_lines(text, [&](int no, const std::vector<std::string>& f) {
    if (header) {
      header = false;
      return;
    }
    auto key = [&](const std::string& name, bool must_exist) {
      Key k;
      try {
        k = E.parse_key(name);
      } catch (const std::exception& e) {
        fail_at(no, e.what());
      }
      if (must_exist && !declared.count(k))
        fail_at(no, "key '" + name + "' used before its declaration");
      return k;
    };
    if (f[0] == "KEY") {
      if (f.size() != 2)
        fail_at(no, "KEY takes one name");
      Key k = key(f[1], false);
      if (!declared.empty() && !(last < k))
        fail_at(no, "keys must be declared once, in increasing order");
      if (sup_norm(k.deg) > T.spec.ball)
        fail_at(no, "key outside the ball");
      declared.insert(k);
      T.keys.push_back(k);
      last = k;
    } else if (f[0] == "BRK") {
      if (f.size() != 4)
        fail_at(no, "BRK takes left, right and terms");
      Key a = key(f[1], true), b = key(f[2], true);
      if (!(a < b))
        fail_at(no, "BRK operands must be in declaration order");
      Elem r;
      try {
        r = parse_terms(E, f[3]);
      } catch (const std::exception& e) {
        fail_at(no, e.what());
      }
      for (auto& [k, c] : r)
        if (!declared.count(k))
          fail_at(no, "result key '" + E.key_name(k) + "' is not declared");
      if (!T.brk.emplace(std::make_pair(a, b), r).second)
        fail_at(no, "duplicate BRK line");
    } else if (f[0] == "CERT") {
      T.certs.push_back(parse_cert(f, no));
    } else if (f[0] == "ALG") {
      fail_at(no, "second ALG header");
    } else {
      fail_at(no, "unknown record kind '" + f[0] + "'");
    }
  });
  return T;
}

std::string write_manifest(const EalaAlgebra& E, const IntegralStructure& B)
{
  std::ostringstream o;
  o << "BALL\t" << B.ball << "\n";
  for (auto& [tag, n] : B.counts()) o << "COUNT\t" << tag << "\t" << n << "\n";
  for (auto& e : B.elems) o << "ELEM\t" << e.tag << "\t" << eala_root_name(e.root) << "\t" << format_terms(E, e.v) << "\n";
  return o.str();
}

IntegralStructure read_manifest(const EalaAlgebra& E, const std::string& text)
{
  IntegralStructure B;
  std::map<std::string, int> counts;
  for_lines(text, [&](int no, const std::vector<std::string>& f) {
    if (f[0] == "BALL" && f.size() == 2) {
      B.ball = parse_int(f[1], no, "ball");
    } else if (f[0] == "COUNT" && f.size() == 3) {
      counts[f[1]] = parse_int(f[2], no, "count");
    } else if (f[0] == "ELEM" && f.size() == 4) {
      Elem v;
      try {
        v = parse_terms(E, f[3]);
      } catch (const std::exception& e) {
        fail_at(no, e.what());
      }
      if (v.empty())
        fail_at(no, "zero structure element");
      EalaRoot r = E.root_of(v.begin()->first);
      if (eala_root_name(r) != f[2])
        fail_at(no, "root '" + f[2] + "' does not match the element (" + eala_root_name(r) + ")");
      B.add(std::move(v), r, f[1]);
    } else {
      fail_at(no, "bad manifest record");
    }
  });
  if (counts != B.counts())
    fail("manifest counts do not match its elements");
  return B;
}

IntegralStructure default_structure(const EalaAlgebra& E, int ball)
{
  if (!E.L->twisted())
    return extend_to_eala(E, toroidal_core_basis(E, ball));
  // simple roots at degree 0 and, per coordinate, the first simple root
  // present in degree e_j
  const MultiLoopAlgebra& L = *E.L;
  std::vector<IVec> simple;
  for (int i = 0; i < L.delta.rank; ++i) {
    IVec a(L.delta.rank, 0);
    a[i] = 1;
    simple.push_back(a);
  }
  std::vector<EalaRoot> pi;
  for (auto& a : simple) pi.push_back({a, IVec(E.nu, 0)});
  for (int j = 0; j < E.nu; ++j) {
    Deg e{};
    e[j] = 1;
    for (auto& a : simple)
      if (L.supported(a, e)) {
        pi.push_back({a, from_deg(e, E.nu)});
        break;
      }
  }
  auto C = build_chevalley_system(L, default_involution(L));
  return extend_to_eala(E, core_integral_structure_from_system(E, C, pi, ball));
}

}  // namespace chev
