#include "chevalley/eala.hpp"

#include "chevalley/intlinalg.hpp"

#include <stdexcept>

namespace chev {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("eala: " + msg); }

Q dot(const QVec& a, const Deg& d)
{
  Q s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * d[i];
  return s;
}

IVec parse_root(const std::string& s, int rank)
{
  IVec r(rank, 0);
  if (s == "0")
    return r;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    int c = 0;
    size_t j = i;
    while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) c = c * 10 + (s[j++] - '0');
    if (j == i)
      c = 1;
    if (j >= s.size() || s[j] != 'a')
      fail("bad root name '" + s + "'");
    size_t k = ++j;
    int idx = 0;
    while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) idx = idx * 10 + (s[j++] - '0');
    if (j == k || idx < 1 || idx > rank)
      fail("bad root name '" + s + "'");
    r[idx - 1] += sign * c;
    i = j;
  }
  return r;
}

}  // namespace

std::string dmode_name(DMode m) { return m == DMode::Zero ? "zero" : "full"; }

DMode parse_dmode(const std::string& s)
{
  if (s == "zero")
    return DMode::Zero;
  if (s == "full")
    return DMode::Full;
  fail("unknown derivation mode '" + s + "' (expected zero or full)");
}

bool EalaAlgebra::in_gamma_d(const Deg& mu) const
{
  if (mode == DMode::Zero)
    return is_zero(mu);
  return L->in_gamma(mu);
}

int EalaAlgebra::pivot(const Deg& mu) const
{
  for (int i = 0; i < nu; ++i)
    if (mu[i] != 0)
      return i;
  return -1;
}

Elem EalaAlgebra::dual(const Deg& mu, const QVec& lam) const
{
  if (!in_gamma_d(mu))
    fail("no dual space in degree " + deg_name(mu, nu));
  Elem e;
  int p = pivot(mu);
  Q t = p < 0 ? Q(0) : Q(lam[p] / mu[p]);
  for (int i = 0; i < nu; ++i)
    if (i != p)
      add_to(e, Key{Kind::Dual, i, mu}, lam[i] - t * mu[i]);
  return e;
}

Elem EalaAlgebra::der(const Deg& mu, const QVec& theta) const
{
  if (!in_gamma_d(mu))
    fail("no derivations in degree " + deg_name(mu, nu));
  if (dot(theta, mu) != 0)
    fail("derivation direction does not annihilate its degree");
  Elem e;
  for (int i = 0; i < nu; ++i) add_to(e, Key{Kind::Der, i, mu}, theta[i]);
  return e;
}

std::vector<Elem> EalaAlgebra::dual_basis(const Deg& mu) const
{
  std::vector<Elem> out;
  if (!in_gamma_d(mu))
    return out;
  int p = pivot(mu);
  for (int i = 0; i < nu; ++i)
    if (i != p)
      out.push_back(single(Key{Kind::Dual, i, mu}));
  return out;
}

std::vector<Elem> EalaAlgebra::der_basis(const Deg& mu) const
{
  std::vector<Elem> out;
  if (!in_gamma_d(mu))
    return out;
  ZVec m;
  for (int i = 0; i < nu; ++i) m.push_back(mu[i]);
  for (auto& row : integer_kernel(m, nu)) {
    QVec th(row.begin(), row.end());
    out.push_back(der(mu, th));
  }
  return out;
}

EalaRoot EalaAlgebra::root_of(const Key& k) const
{
  if (k.kind == Kind::Loop)
    return EalaRoot{L->grade_of[k.idx], from_deg(k.deg, nu)};
  return EalaRoot{L->zero_grade(), from_deg(k.deg, nu)};
}

std::vector<Elem> EalaAlgebra::cartan_basis() const
{
  std::vector<Elem> out = L->basis(L->zero_grade(), Deg{});
  for (auto& e : dual_basis(Deg{})) out.push_back(e);
  for (auto& e : der_basis(Deg{})) out.push_back(e);
  return out;
}

Q EalaAlgebra::eval(const EalaRoot& rho, const Elem& h) const
{
  GVec hv(L->g->dim);
  Q s = 0;
  for (auto& [k, c] : h) {
    if (!is_zero(k.deg))
      fail("eval: element not in H");
    switch (k.kind) {
      case Kind::Loop:
        if (L->g->is_root(k.idx))
          fail("eval: element not in H");
        hv[k.idx] = c;
        break;
      case Kind::Der:
        s += c * rho.lam[k.idx];
        break;
      case Kind::Dual:
        break;
    }
  }
  return s + L->eval(rho.fin, hv);
}

std::string EalaAlgebra::key_name(const Key& k) const
{
  std::string d = "@" + deg_name(k.deg, nu);
  switch (k.kind) {
    case Kind::Loop:
      return L->g->basis_name(k.idx) + d;
    case Kind::Dual:
      return "c" + std::to_string(k.idx + 1) + d;
    case Kind::Der:
      return "d" + std::to_string(k.idx + 1) + d;
  }
  return "?";
}

Key EalaAlgebra::parse_key(const std::string& s) const
{
  auto at = s.find('@');
  if (at == std::string::npos || at == 0)
    fail("bad key '" + s + "'");
  std::string head = s.substr(0, at), tail = s.substr(at + 1);
  if (tail.size() < 2 || tail.front() != '(' || tail.back() != ')')
    fail("bad key degree in '" + s + "'");
  IVec lam;
  std::string body = tail.substr(1, tail.size() - 2);
  size_t pos = 0;
  while (!body.empty() && pos <= body.size()) {
    size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      lam.push_back(std::stoi(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail("bad key degree in '" + s + "'");
    }
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  if (int(lam.size()) != nu)
    fail("key degree has the wrong length in '" + s + "'");
  Key k{Kind::Loop, 0, to_deg(lam)};
  const auto& g = *L->g;
  auto index = [&](const std::string& t, int lim) {
    int i = 0;
    try {
      size_t used = 0;
      i = std::stoi(t, &used);
      if (used != t.size())
        throw std::invalid_argument(t);
    } catch (const std::exception&) {
      fail("bad key '" + s + "'");
    }
    if (i < 1 || i > lim)
      fail("key index out of range in '" + s + "'");
    return i - 1;
  };
  if (head.size() > 3 && head[0] == 'x' && head[1] == '[' && head.back() == ']') {
    int r = g.root_index(parse_root(head.substr(2, head.size() - 3), g.rs.rank));
    if (r < 0)
      fail("not a root in '" + s + "'");
    k.idx = r;
  } else if (head[0] == 'h') {
    k.idx = g.cartan_index(index(head.substr(1), g.rs.rank));
  } else if (head[0] == 'c') {
    k.kind = Kind::Dual;
    k.idx = index(head.substr(1), nu);
    if (k.idx == pivot(k.deg))
      fail("dual key on the pivot coordinate in '" + s + "'");
  } else if (head[0] == 'd') {
    k.kind = Kind::Der;
    k.idx = index(head.substr(1), nu);
  } else {
    fail("bad key '" + s + "'");
  }
  return k;
}

EalaAlgebra build_eala(std::shared_ptr<const MultiLoopAlgebra> L, DMode mode, int certify_ball)
{
  if (!L)
    fail("null Lie torus");
  for (auto& c : check_lie_torus_axioms(*L, certify_ball))
    if (!c.pass)
      fail("L is not a certified Lie torus: " + c.axiom_id + " fails at " +
           (c.witnesses.empty() ? std::string("?") : c.witnesses[0].where));
  EalaAlgebra E;
  E.L = std::move(L);
  E.mode = mode;
  E.nu = E.L->nu;
  // evaluation D -> (Lambda (x) Q)* x Gamma is injective with lattice image
  // for both built-in modes: D^mu is cut out by theta(mu) = 0 over integers
  for (auto& mu : E.L->ball(1))
    if (E.in_gamma_d(mu) && int(E.der_basis(mu).size()) != (is_zero(mu) ? E.nu : E.nu - 1))
      throw std::logic_error("eala: derivation space of unexpected dimension");
  return E;
}

namespace {

// c^(mu)_{e_j} acted on by chi^nu d_{e_i}
Elem der_on_dual(const EalaAlgebra& E, int i, const Deg& nu_, int j, const Deg& mu)
{
  Deg s = mu + nu_;
  if (!E.in_gamma_d(s))
    return {};
  QVec lam(E.nu, 0);
  Q f = mu[i] + nu_[i];
  lam[j] += f;
  if (i == j)
    for (int t = 0; t < E.nu; ++t) lam[t] += nu_[t];
  return E.dual(s, lam);
}

void bracket_keys(const EalaAlgebra& E, const Key& a, const Key& b, const Q& c, Elem& out)
{
  const auto& g = *E.L->g;
  if (a.kind == Kind::Loop && b.kind == Kind::Loop) {
    Deg d = a.deg + b.deg;
    for (auto& t : g.table[a.idx][b.idx]) add_to(out, Key{Kind::Loop, t.idx, d}, c * t.coeff);
    const Q& f = g.gram[a.idx][b.idx];
    if (f != 0 && E.in_gamma_d(d)) {
      QVec lam(a.deg.begin(), a.deg.begin() + E.nu);
      axpy(out, c * f, E.dual(d, lam));
    }
  } else if (a.kind == Kind::Der && b.kind == Kind::Loop) {
    add_to(out, Key{Kind::Loop, b.idx, a.deg + b.deg}, c * b.deg[a.idx]);
  } else if (a.kind == Kind::Loop && b.kind == Kind::Der) {
    add_to(out, Key{Kind::Loop, a.idx, a.deg + b.deg}, -c * a.deg[b.idx]);
  } else if (a.kind == Kind::Der && b.kind == Kind::Der) {
    // [chi^m d_i, chi^n d_j] = chi^(m+n) (n_i d_j - m_j d_i)
    Deg s = a.deg + b.deg;
    add_to(out, Key{Kind::Der, b.idx, s}, c * b.deg[a.idx]);
    add_to(out, Key{Kind::Der, a.idx, s}, -c * a.deg[b.idx]);
  } else if (a.kind == Kind::Der && b.kind == Kind::Dual) {
    axpy(out, c, der_on_dual(E, a.idx, a.deg, b.idx, b.deg));
  } else if (a.kind == Kind::Dual && b.kind == Kind::Der) {
    axpy(out, -c, der_on_dual(E, b.idx, b.deg, a.idx, a.deg));
  }
}

}  // namespace

Elem bracket_eala(const EalaAlgebra& E, const Elem& x, const Elem& y)
{
  Elem out;
  for (auto& [a, ca] : x)
    for (auto& [b, cb] : y) bracket_keys(E, a, b, ca * cb, out);
  return out;
}

Q eala_form(const EalaAlgebra& E, const Elem& x, const Elem& y)
{
  Q s = loop_form(*E.L, x, y);
  for (auto& [a, ca] : x)
    for (auto& [b, cb] : y) {
      if (!is_zero(a.deg + b.deg) || a.idx != b.idx)
        continue;
      if ((a.kind == Kind::Dual && b.kind == Kind::Der) || (a.kind == Kind::Der && b.kind == Kind::Dual))
        s += ca * cb;
    }
  return s;
}

std::vector<Elem> root_space_basis(const EalaAlgebra& E, const EalaRoot& rho, int ball)
{
  if (sup_norm(rho.lam) > ball)
    fail("root " + eala_root_name(rho) + " outside the ball");
  Deg lam = to_deg(rho.lam);
  auto out = E.L->basis(rho.fin, lam);
  if (!rho.isotropic())
    return out;
  for (auto& e : E.dual_basis(lam)) out.push_back(e);
  for (auto& e : E.der_basis(lam)) out.push_back(e);
  return out;
}

std::vector<EalaRoot> roots_in_ball(const EalaAlgebra& E, int ball)
{
  std::vector<EalaRoot> out;
  for (auto& lam : E.L->ball(ball))
    for (auto& b : E.L->grades()) {
      bool zero = b == E.L->zero_grade();
      if (E.L->supported(b, lam) || (zero && E.in_gamma_d(lam)))
        out.push_back(EalaRoot{b, from_deg(lam, E.nu)});
    }
  return out;
}

bool in_core(const Elem& x)
{
  for (auto& [k, c] : x)
    if (k.kind == Kind::Der)
      return false;
  return true;
}

Elem EalaAutomorphism::apply(const EalaAlgebra& E, const Elem& x) const
{
  Elem loop_part, out;
  for (auto& [k, c] : x) {
    switch (k.kind) {
      case Kind::Loop:
        loop_part.emplace(k, c);
        break;
      case Kind::Dual:  // c^(mu)_l -> c^(-mu)_-l
      case Kind::Der:   // chi^mu d -> -chi^-mu d
        add_to(out, Key{k.kind, k.idx, -k.deg}, -c);
        break;
    }
  }
  axpy(out, 1, loop.apply(*E.L, loop_part));
  return out;
}

EalaAutomorphism extend_involution(const EalaAlgebra& E, const LoopAutomorphism& tau)
{
  // chi^-mu D^mu = chi^mu D^-mu: both are the kernel of theta -> theta(mu)
  for (auto& mu : E.L->ball(1)) {
    if (!E.in_gamma_d(mu))
      continue;
    ZVec a, b;
    for (int i = 0; i < E.nu; ++i) {
      a.push_back(mu[i]);
      b.push_back(-mu[i]);
    }
    if (integer_kernel(a, E.nu) != integer_kernel(b, E.nu))
      throw std::logic_error("eala: derivation spaces in degrees mu and -mu differ");
  }
  if (!tau.invert)
    fail("extend_involution: tau must reverse degrees");
  return EalaAutomorphism{tau};
}

}  // namespace chev
