#include "chevalley/table_io.hpp"
#include "chevalley/verify.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <iostream>
#include <sstream>

using namespace chev;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Usage("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw Usage("cannot write '" + path + "'");
}

struct SpecFlags {
  std::string type, twist = "none", dmode = "zero";
  int nullity = 0, ball = 1;

  void add(CLI::App* c)
  {
    c->add_option("--type", type, "finite type, e.g. A2, B3, G2");
    c->add_option("--nullity", nullity, "rank of the grading lattice");
    c->add_option("--twist", twist, "none or flip");
    c->add_option("--dmode", dmode, "zero or full");
    c->add_option("--ball", ball, "radius of the degree ball");
  }
  AlgSpec spec() const
  {
    if (type.empty())
      throw Usage("--type is required");
    AlgSpec s;
    s.type = type;
    s.nullity = nullity;
    s.twist = twist;
    s.mode = parse_dmode(dmode);
    s.ball = ball;
    return s;
  }
};

// algebra from a table file or from flags
struct Loaded {
  AlgSpec spec;
  EalaAlgebra E;
  std::optional<BracketTable> table;
  std::string file;
};

Loaded load(const std::string& file, const SpecFlags& f)
{
  Loaded l;
  if (file.empty()) {
    l.spec = f.spec();
    l.E = build_from_spec(l.spec);
    return l;
  }
  std::string text = slurp(file);
  l.spec = read_header(text);
  l.E = build_from_spec(l.spec);
  l.table = read_table(l.E, text);
  l.file = file;
  return l;
}

void print_cert(std::ostream& o, const Certificate& c)
{
  o << (c.pass ? "PASS" : "FAIL") << "  " << c.axiom_id << "  ball " << c.ball << "  checked " << c.checked << "\n";
  if (!c.note.empty())
    o << "  note: " << c.note << "\n";
  for (auto& w : c.witnesses) o << "  witness: " << w.where << " | expected " << w.expected << " | got " << w.actual << "\n";
}

// every BRK line agrees with the algebra and no nonzero bracket is missing
Certificate check_table(const EalaAlgebra& E, const BracketTable& T)
{
  Certificate c;
  c.axiom_id = "TABLE";
  c.ball = T.spec.ball;
  BracketTable ref = make_table(E, T.spec);
  if (ref.keys != T.keys)
    c.fail("KEY", std::to_string(ref.keys.size()) + " keys", std::to_string(T.keys.size()) + " keys");
  for (auto& [p, r] : ref.brk) {
    ++c.checked;
    auto it = T.brk.find(p);
    std::string where = E.key_name(p.first) + " x " + E.key_name(p.second);
    if (it == T.brk.end())
      c.fail(where, format_terms(E, r), "missing");
    else if (it->second != r)
      c.fail(where, format_terms(E, r), format_terms(E, it->second));
  }
  for (auto& [p, r] : T.brk)
    if (!ref.brk.count(p)) {
      ++c.checked;
      c.fail(E.key_name(p.first) + " x " + E.key_name(p.second), "0", format_terms(E, r));
    }
  return c;
}

const std::vector<std::string> kSuites{"table", "lt", "c", "cb", "cbt", "ext", "zclose", "weyl"};

std::set<std::string> parse_suites(const std::string& list)
{
  std::set<std::string> out;
  std::stringstream s(list);
  std::string t;
  while (std::getline(s, t, ',')) {
    if (t == "all") {
      out.insert(kSuites.begin(), kSuites.end());
      continue;
    }
    if (std::find(kSuites.begin(), kSuites.end(), t) == kSuites.end())
      throw Usage("unknown suite '" + t + "'");
    out.insert(t);
  }
  if (out.empty())
    throw Usage("empty suite list");
  return out;
}

int cmd_build(const SpecFlags& f, const std::string& out)
{
  AlgSpec s = f.spec();
  EalaAlgebra E = build_from_spec(s);
  BracketTable T = make_table(E, s);
  std::string table = write_table(E, T);
  if (out.empty()) {
    std::cout << table;
    return 0;
  }
  IntegralStructure B = default_structure(E, s.ball);
  spit(out, table);
  spit(out + ".manifest", write_manifest(E, B));
  std::cout << "algebra " << s.type << " nullity " << s.nullity << " twist " << s.twist << " dmode "
            << dmode_name(s.mode) << " ball " << s.ball << "\n";
  std::cout << "keys " << T.keys.size() << "\nbrackets " << T.brk.size() << "\n";
  std::cout << "structure " << B.size() << "\n";
  for (auto& [tag, n] : B.counts()) std::cout << "  " << tag << " " << n << "\n";
  return 0;
}

int cmd_bracket(const Loaded& l, const std::vector<std::string>& terms)
{
  if (terms.size() != 2)
    throw Usage("bracket takes two elements");
  Elem x = parse_terms(l.E, terms[0]), y = parse_terms(l.E, terms[1]);
  Elem r = l.table ? replay_bracket(*l.table, x, y) : bracket_eala(l.E, x, y);
  std::cout << format_terms(l.E, r) << "\n";
  return 0;
}

int cmd_verify(const Loaded& l, const std::string& suite, int ball, const std::string& out)
{
  auto suites = parse_suites(suite);
  const EalaAlgebra& E = l.E;
  const MultiLoopAlgebra& L = *E.L;
  if (ball < 1 || ball > l.spec.ball)
    throw Usage("verify ball must be in 1.." + std::to_string(l.spec.ball));
  IntegralStructure B;
  std::string mpath = l.file + ".manifest";
  if (!l.file.empty() && std::filesystem::exists(mpath))
    B = read_manifest(E, slurp(mpath));
  else
    B = default_structure(E, l.spec.ball);
  if (ball > B.ball)
    throw Usage("structure covers ball " + std::to_string(B.ball) + " only");
  auto tau = default_involution(L);
  auto etau = extend_involution(E, tau);

  CertificateSet certs;
  std::vector<std::string> skipped;
  auto add = [&](const CertificateSet& s) { certs.insert(certs.end(), s.begin(), s.end()); };
  if (suites.count("table")) {
    if (l.table)
      certs.push_back(check_table(E, *l.table));
    else
      skipped.push_back("table (no table file)");
  }
  if (suites.count("lt")) {
    add(check_lie_torus_axioms(L, ball));
    certs.push_back(check_chevalley_involution(L, tau, ball));
  }
  if (suites.count("c"))
    add(verify_core_axioms(E, B.core(), etau, ball));
  if (suites.count("cb"))
    add(verify_eala_axioms(E, B, etau, ball));
  if (suites.count("cbt")) {
    if (L.twisted())
      skipped.push_back("cbt (twisted loop)");
    else
      add(verify_torus_axioms(L, torus_chevalley_basis(L, ball), tau, ball));
  }
  if (suites.count("ext"))
    add(verify_extension_conditions(E, B.core(), ball));
  if (suites.count("zclose"))
    certs.push_back(verify_zform_closure(E, B, ball));
  if (suites.count("weyl")) {
    auto c = verify_weyl_automorphisms(*L.g, standard_system(*L.g));
    c.ball = ball;
    certs.push_back(c);
  }

  for (auto& c : certs) print_cert(std::cout, c);
  for (auto& s : skipped) std::cout << "SKIP  " << s << "\n";
  bool ok = all_pass(certs);
  std::cout << (ok ? "all certificates pass" : "verification failed") << "\n";
  if (!out.empty()) {
    BracketTable T;
    T.spec = l.spec;
    T.certs = certs;
    spit(out, write_table(E, T));
  }
  return ok ? 0 : 1;
}

int cmd_reflbase(const SpecFlags& f)
{
  AlgSpec s = f.spec();
  if (s.twist != "none")
    throw Usage("reflbase: only untwisted root systems are searched");
  if (s.ball < 1)
    throw Usage("reflbase: ball 0 leaves nothing to search");
  auto ers = build_eala_root_system(s.type, s.nullity);
  auto rb = search_reflectable_base(ers, s.ball);
  std::cout << "type " << s.type << " nullity " << s.nullity << " ball " << s.ball << "\n";
  std::cout << "size " << rb.pi.size() << "\n";
  std::cout << "dim V " << ers.dim_v() << "\n";
  std::cout << "index estimate " << rb.index_estimate << "\n";
  std::cout << "covered " << rb.covered.size() << " of " << rb.total << "\n";
  std::cout << "minimal within ball " << (rb.minimal_within_ball ? "yes" : "no") << "\n";
  for (auto& r : rb.pi) std::cout << "  " << eala_root_name(r) << "\n";
  if (!rb.note.empty())
    std::cout << "note: " << rb.note << "\n";
  return rb.covers ? 0 : 1;
}

int cmd_export(const Loaded& l, const std::string& out)
{
  std::string text;
  if (l.table)
    text = write_table(l.E, *l.table);
  else
    text = write_table(l.E, make_table(l.E, l.spec));
  if (out.empty())
    std::cout << text;
  else
    spit(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Chevalley bases and integral structures"};
  app.require_subcommand(1);
  SpecFlags f;
  std::string out, file, suite = "all";
  std::vector<std::string> terms;

  auto* build = app.add_subcommand("build", "write the bracket table and structure manifest");
  f.add(build);
  build->add_option("--out", out, "table path; the manifest goes to PATH.manifest");

  auto* brk = app.add_subcommand("bracket", "bracket two elements given as coeff*key terms");
  f.add(brk);
  brk->add_option("--table", file, "replay from a table file");
  brk->add_option("elements", terms, "two elements")->expected(2);

  auto* ver = app.add_subcommand("verify", "run certificate suites");
  ver->add_option("file", file, "table file (spec flags used otherwise)");
  f.add(ver);
  ver->add_option("--suite", suite, "comma list of table,lt,c,cb,cbt,ext,zclose,weyl or all");
  ver->add_option("--out", out, "write CERT records here");

  auto* refl = app.add_subcommand("reflbase", "search a reflectable base");
  f.add(refl);

  auto* exp = app.add_subcommand("export", "write the bracket table");
  exp->add_option("file", file, "table file to re-export");
  f.add(exp);
  exp->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (build->parsed())
      return cmd_build(f, out);
    if (brk->parsed())
      return cmd_bracket(load(file, f), terms);
    if (ver->parsed()) {
      Loaded l = load(file, f);
      // with a file, --ball selects the check radius inside the table ball
      return cmd_verify(l, suite, ver->count("--ball") ? f.ball : l.spec.ball, out);
    }
    if (refl->parsed())
      return cmd_reflbase(f);
    if (exp->parsed())
      return cmd_export(load(file, f), out);
  } catch (const std::exception& e) {
    std::cerr << "chevalley: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
