#include "mrv/horace.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mrv::horace {

namespace {

// Floored division/remainder; numerators can go negative on stuck paths and
// the bookkeeping must stay consistent there too.
i64 fdiv(i64 a, i64 b) {
  i64 q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
i64 fmod(i64 a, i64 b) { return a - fdiv(a, b) * b; }

}  // namespace

Bundle Bundle::free_sum(int dim, std::vector<i64> twists) {
  if (dim < 1 || twists.empty())
    throw std::invalid_argument("free_sum: need dim >= 1 and at least one twist");
  Bundle b;
  b.kind = Kind::free_sum;
  b.dim = dim;
  b.twists = std::move(twists);
  return b;
}

Bundle Bundle::tangent(int dim, i64 ell) {
  if (dim < 1) throw std::invalid_argument("tangent: need dim >= 1");
  Bundle b;
  b.kind = Kind::tangent;
  b.dim = dim;
  b.ell = ell;
  return b;
}

i64 Bundle::rank() const {
  return kind == Kind::free_sum ? static_cast<i64>(twists.size()) : dim;
}

i64 Bundle::h0() const {
  if (kind == Kind::tangent) return t_dim(dim, ell);
  i64 s = 0;
  for (i64 k : twists) s = checked_add(s, o_dim(dim, k));
  return s;
}

i64 Bundle::h1() const {
  if (kind == Kind::free_sum) {
    if (dim >= 2) return 0;
    i64 s = 0;
    for (i64 k : twists) s = checked_add(s, o_dim(1, -k - 2));
    return s;
  }
  // T(l) = Omega^{dim-1}(l + dim + 1)
  return bott(dim, dim - 1, ell + dim + 1, 1);
}

bool Bundle::equal_twists() const {
  if (kind != Kind::free_sum) return false;
  for (i64 k : twists)
    if (k != twists[0]) return false;
  return true;
}

std::string Bundle::label() const {
  std::ostringstream s;
  if (kind == Kind::tangent) {
    s << "T_{P^" << dim << "}(" << ell << ")";
  } else {
    s << "O_{P^" << dim << "}(";
    for (std::size_t i = 0; i < twists.size(); ++i) {
      if (i) s << ",";
      s << twists[i];
    }
    s << ")";
  }
  return s.str();
}

Statement Statement::r(Bundle f, i64 a) {
  Statement s;
  s.kind = Kind::r;
  s.f = std::move(f);
  s.alpha = a;
  return s;
}

Statement Statement::rb(Bundle f, Bundle fp, i64 z, i64 y, i64 alpha, i64 beta) {
  Statement s;
  s.kind = Kind::rb;
  s.f = std::move(f);
  s.g = std::move(fp);
  s.z = z;
  s.y = y;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

Statement Statement::mb(Bundle f, Bundle g, i64 z, i64 y, i64 a) {
  Statement s;
  s.kind = Kind::mb;
  s.f = std::move(f);
  s.g = std::move(g);
  s.z = z;
  s.y = y;
  s.alpha = a;
  return s;
}

std::string Statement::kind_name() const {
  switch (kind) {
    case Kind::r: return "R";
    case Kind::rb: return "RB";
    case Kind::mb: return "MB";
  }
  return "?";
}

std::string Statement::label() const {
  std::ostringstream s;
  switch (kind) {
    case Kind::r:
      s << "R(" << f.label() << "; " << alpha << ")";
      break;
    case Kind::rb:
      s << "RB(" << f.label() << ", " << g.label() << ", " << z << ", " << y << "; " << alpha
        << ", " << beta << ")";
      break;
    case Kind::mb:
      s << "MB(" << f.label() << ", " << g.label() << ", " << z << ", " << y << "; " << alpha
        << ")";
      break;
  }
  return s.str();
}

std::vector<Condition> statement_conditions(const Statement& s) {
  std::vector<Condition> c;
  auto add = [&c](const char* name, i64 lhs, i64 rhs, bool pass) {
    c.push_back({name, lhs, rhs, pass});
  };
  if (s.kind == Statement::Kind::r) {
    add("r-a-range", s.alpha, s.f.rank(), 0 <= s.alpha && s.alpha <= s.f.rank());
    return c;
  }
  if (s.kind == Statement::Kind::rb) {
    i64 r = s.f.rank(), rp = s.g.rank();
    i64 b = s.beta != 0 ? rp : 0;
    add("rb1", r * s.z + rp * s.y + s.alpha + s.beta, s.f.h0(),
        r * s.z + rp * s.y + s.alpha + s.beta == s.f.h0());
    add("rb2", rp * s.y + s.alpha + b, s.g.h0(), rp * s.y + s.alpha + b <= s.g.h0());
    add("rb3", s.alpha, rp, 0 <= s.alpha && s.alpha <= rp);
    add("rb4", s.beta, r, s.beta == 0 || (rp <= s.beta && s.beta < r));
    add("rb-z-nonneg", s.z, 0, s.z >= 0);
    add("rb-y-nonneg", s.y, 0, s.y >= 0);
    return c;
  }
  i64 rf = s.f.rank(), rg = s.g.rank();
  add("mb1", rf * s.z + rg * s.y + s.alpha, s.f.h0(),
      rf * s.z + rg * s.y + s.alpha == s.f.h0());
  add("mb2", rg * (s.z + s.y) + s.alpha, s.g.h0(), rg * (s.z + s.y) + s.alpha <= s.g.h0());
  add("mb3", s.alpha, rg, s.alpha < rg);
  return c;
}

std::vector<Condition> check_conditions(const Statement& s) {
  std::vector<Condition> out;
  for (Condition& c : statement_conditions(s))
    if (!c.pass) out.push_back(std::move(c));
  return out;
}

namespace {

Reduction stuck(std::string why) {
  Reduction red;
  red.rule = "stuck";
  red.notes.push_back(std::move(why));
  return red;
}

Reduction trivial() {
  Reduction red;
  red.rule = "trivial";
  return red;
}

bool bullets_pass(const Statement& s) { return check_conditions(s).empty(); }

// The shared one-step recursion behind both RB reductions: split off the
// hyperplane statement R(F'; a(alpha)) and continue with RB(E, F'', z', y';
// alpha', beta') where E is the twisted-down kernel bundle.
Reduction lem_rb_step(const Statement& s, const char* rule, Bundle E, Bundle Fpp) {
  Reduction red;
  red.rule = rule;
  LemRbParams p;
  p.r = s.f.rank();
  p.rp = s.g.rank();
  i64 b = s.beta != 0 ? p.rp : 0;
  p.t = s.g.h0() - p.rp * s.y - s.alpha - b;
  p.yp = fdiv(p.t, p.rp);
  p.delta = fmod(p.t, p.rp);
  p.zeta = p.delta != 0 ? 1 : 0;
  p.beta_p = p.zeta * (p.r - p.delta);
  p.alpha_p = s.beta != 0 ? s.beta - p.rp : 0;
  p.zp = s.z - p.yp - p.zeta;

  red.side_conditions.push_back({"h1-aux", E.h1(), 0, E.h1() == 0});
  red.side_conditions.push_back({"zprime-nonneg", p.zp, 0, p.zp >= 0});
  if (p.beta_p != 0) {
    std::ostringstream n;
    n << "fractional point: " << p.beta_p
      << "-dimensional quotient at one point, kernel containment tracked dimensionally";
    red.notes.push_back(n.str());
  }

  Statement child_r = Statement::r(s.g, s.alpha == 0 ? 0 : 1);
  Statement child_rb = Statement::rb(std::move(E), std::move(Fpp), p.zp, p.yp, p.alpha_p, p.beta_p);
  // Child balance is forced by parent balance; a failure here is an engine bug.
  if (bullets_pass(s)) {
    i64 lhs = child_rb.f.rank() * p.zp + child_rb.g.rank() * p.yp + p.alpha_p + p.beta_p;
    if (lhs != child_rb.f.h0())
      throw std::logic_error("residual statement lost the balance equation");
  }
  red.children.push_back(std::move(child_r));
  red.children.push_back(std::move(child_rb));
  red.rb_params = p;
  return red;
}

}  // namespace

Reduction reduce_r(const Statement& s) {
  if (s.kind != Statement::Kind::r) throw std::invalid_argument("reduce_r: not an R statement");
  const Bundle& F = s.f;
  if (F.kind == Bundle::Kind::free_sum) {
    if (F.equal_twists()) return trivial();
    return stuck("interpolation for mixed twists is not uniform; no rule");
  }
  if (F.dim == 1 || F.ell <= -2) return trivial();
  Reduction red;
  red.rule = "lemiii";
  QrSplit sp = qr_split(F.dim, F.ell);
  red.children.push_back(Statement::rb(Bundle::tangent(F.dim, F.ell),
                                       Bundle::free_sum(F.dim - 1, {F.ell + 1}), sp.q, 0, 0,
                                       sp.r));
  return red;
}

Reduction reduce_rb(const Statement& s) {
  if (s.kind != Statement::Kind::rb) throw std::invalid_argument("reduce_rb: not an RB statement");
  const Bundle& F = s.f;
  const Bundle& Fp = s.g;
  if (F.h0() == 0 && s.z == 0 && s.y == 0 && s.alpha == 0 && s.beta == 0) return trivial();
  if (F.kind == Bundle::Kind::free_sum && F.equal_twists() && s.y == 0 && s.alpha == 0 &&
      s.beta == 0)
    return trivial();  // plain interpolation; balance pins z to the section count

  if (F.kind == Bundle::Kind::tangent) {
    if (F.dim == 1) return trivial();  // T on P^1 is a line bundle
    int m = F.dim;
    i64 l = F.ell;
    if (!(Fp.kind == Bundle::Kind::free_sum && Fp.dim == m - 1 &&
          Fp.twists == std::vector<i64>{l + 1}))
      return stuck("hyperplane bundle is not O(l+1); no rule");
    Reduction red = lem_rb_step(s, "lemred1", Bundle::free_sum(m, std::vector<i64>(m, l + 1)),
                                Bundle::tangent(m - 1, l));
    const LemRbParams& p = *red.rb_params;
    i64 btld = s.beta == 0 ? 0 : 1;
    i64 disp_z = s.z - o_dim(m, l + 1) + s.y + btld;
    if (disp_z != p.zp && (s.beta == 0 || s.beta == 1) && s.alpha == 0) {
      std::ostringstream w;
      w << "lemred1-display: displayed z' " << disp_z << " vs balanced " << p.zp << " at "
        << s.label();
      red.warnings.push_back(w.str());
    }
    return red;
  }

  // Hyperplane-restriction shape: F = O(l+1)^m on P^m, F' = T(l) on P^{m-1}.
  int m = F.dim;
  if (!F.equal_twists() || static_cast<i64>(F.twists.size()) != m)
    return stuck("free part is not O(l+1)^m; no rule");
  i64 l = F.twists[0] - 1;
  if (!(Fp.kind == Bundle::Kind::tangent && Fp.dim == m - 1 && Fp.ell == l))
    return stuck("hyperplane bundle is not T(l); no rule");

  if (s.z > o_dim(m, l) + o_dim(m - 1, l)) {
    Reduction red;
    red.rule = "alakon";
    Bundle FmX = Bundle::free_sum(m, std::vector<i64>(m, l));
    red.side_conditions.push_back({"h1-twist-down", FmX.h1(), 0, FmX.h1() == 0});
    red.children.push_back(Statement::r(FmX, 0));
    red.children.push_back(Statement::mb(Bundle::free_sum(m - 1, std::vector<i64>(m, l + 1)),
                                         Bundle::tangent(m - 1, l), s.z - o_dim(m, l), s.y,
                                         s.alpha));
    return red;
  }

  i64 b = s.beta != 0 ? Fp.rank() : 0;
  i64 t_general = Fp.h0() - Fp.rank() * s.y - s.alpha - b;
  i64 disp_t = t_dim(m, l) - 3 * s.y - s.alpha;
  Reduction red = lem_rb_step(s, "lemred2", Bundle::tangent(m, l - 1),
                              Bundle::free_sum(m - 1, {l}));
  if (disp_t != t_general) {
    std::ostringstream w;
    w << "lemred2-display-t: displayed t " << disp_t << " vs general formula " << t_general
      << " at " << s.label();
    red.warnings.push_back(w.str());
  }
  return red;
}

Reduction reduce_mb(const Statement& s) {
  if (s.kind != Statement::Kind::mb) throw std::invalid_argument("reduce_mb: not an MB statement");
  const Bundle& F = s.f;
  const Bundle& G = s.g;
  int m = F.dim;
  if (!(F.kind == Bundle::Kind::free_sum && F.equal_twists() &&
        static_cast<i64>(F.twists.size()) == m + 1))
    return stuck("free part is not O(l+1)^{m+1}; no rule");
  i64 l = F.twists[0] - 1;
  if (!(G.kind == Bundle::Kind::tangent && G.dim == m && G.ell == l))
    return stuck("quotient is not T(l); no rule");

  if (s.z == o_dim(m, l + 1)) {
    Reduction red;
    red.rule = "iv-case1";
    return red;
  }

  if (m == 1) {
    if (s.z == o_dim(1, l) && s.y + s.alpha == 2) {
      Reduction red;
      red.rule = "base-n1";
      return red;
    }
    return stuck("dimension-1 statement outside the base shape");
  }

  if (o_dim(m, l - 1) + o_dim(m - 1, l + 1) <= s.z && s.z < o_dim(m, l + 1)) {
    Reduction red;
    red.rule = "iv-case2";
    Bundle FmX = Bundle::free_sum(m, std::vector<i64>(m + 1, l));
    red.side_conditions.push_back({"h1-twist-down", FmX.h1(), 0, FmX.h1() == 0});
    red.children.push_back(Statement::r(FmX, 0));
    red.children.push_back(Statement::mb(FmX, Bundle::tangent(m, l - 1),
                                         s.z - o_dim(m - 1, l + 1), s.y, s.alpha));
    return red;
  }

  if (s.z == o_dim(m, l)) {
    Reduction red;
    red.rule = "iv-case3";
    red.children.push_back(Statement::r(Bundle::free_sum(m, {l}), 0));
    red.children.push_back(Statement::rb(Bundle::tangent(m, l), Bundle::free_sum(m - 1, {l + 1}),
                                         o_dim(m, l) + s.y, 0, 0, s.alpha));
    return red;
  }

  if (o_dim(m, l) < s.z && s.z < o_dim(m, l - 1) + o_dim(m - 1, l + 1)) {
    Reduction red;
    red.rule = "iv-case4";
    CaseIvParams p;
    i64 a = s.alpha;
    p.alpha_iv = a != 0 ? 1 : 0;
    p.d = s.z - o_dim(m, l - 1);
    {
      std::ostringstream w;
      w << "case4-d-display: displayed d " << s.z - o_dim(m, l) << " vs balanced " << p.d
        << " at " << s.label();
      red.warnings.push_back(w.str());
    }
    p.yp = o_dim(m - 1, l + 1) - p.d - p.alpha_iv;
    p.a_p = a >= 1 ? a - 1 : 0;
    p.e = m * o_dim(m - 1, l + 1) - p.d * m - (m - 1) * p.yp - p.a_p;
    p.f = fdiv(p.e, m - 1);
    p.g = fmod(p.e, m - 1);
    red.side_conditions.push_back({"yprime-nonneg", p.yp, 0, p.yp >= 0});
    red.side_conditions.push_back({"e-nonneg", p.e, 0, p.e >= 0});
    red.side_conditions.push_back({"y-lower-bound", s.y, p.yp + p.f + 1, s.y >= p.yp + p.f + 1});

    Bundle hyper_free = Bundle::free_sum(m - 1, std::vector<i64>(m, l + 1));
    Statement mb_child;
    Statement rb_child;
    if (p.g == 0) {
      mb_child = Statement::mb(hyper_free, Bundle::tangent(m - 1, l), p.d, p.yp + p.f, p.a_p);
      i64 z2 = o_dim(m, l - 1) + s.y - p.yp - p.f;
      red.side_conditions.push_back(
          {"z2-balance", m * z2 + p.f, t_dim(m, l - 1), m * z2 + p.f == t_dim(m, l - 1)});
      i64 disp_z2 = o_dim(m, l) - 1 + s.y - p.yp - p.f;
      if (disp_z2 != z2) {
        std::ostringstream w;
        w << "case4-g0-display: displayed z " << disp_z2 << " vs balanced " << z2 << " at "
          << s.label();
        red.warnings.push_back(w.str());
      }
      rb_child = Statement::rb(Bundle::tangent(m, l - 1), Bundle::free_sum(m - 1, {l}), z2, p.f,
                               0, 0);
    } else {
      i64 ga = p.g + p.a_p;
      if (ga <= m - 2) {
        mb_child = Statement::mb(hyper_free, Bundle::tangent(m - 1, l), p.d, p.yp + p.f, ga);
      } else {
        if (ga <= m - 1) {
          std::ostringstream w;
          w << "case4-variant-boundary: g+a' = " << ga << " meets rank bound " << m - 1
            << "; carry variant applied at " << s.label();
          red.warnings.push_back(w.str());
        }
        mb_child =
            Statement::mb(hyper_free, Bundle::tangent(m - 1, l), p.d, p.yp + p.f + 1, ga - (m - 1));
      }
      p.delta_d = m - p.g;
      i64 z2 = o_dim(m, l - 1) + s.y - p.yp - p.f - 1;
      red.side_conditions.push_back({"z2-balance", m * z2 + p.f + p.delta_d, t_dim(m, l - 1),
                                     m * z2 + p.f + p.delta_d == t_dim(m, l - 1)});
      {
        std::ostringstream w;
        w << "case4-g1-ambient: displayed residual tangent on P^" << m - 1
          << " vs balanced ambient P^" << m << " at " << s.label();
        red.warnings.push_back(w.str());
      }
      {
        std::ostringstream nte;
        nte << "quotient of dimension " << p.delta_d
            << " at one point; kernel constrained to the twisted-down subsheaf";
        red.notes.push_back(nte.str());
      }
      rb_child = Statement::rb(Bundle::tangent(m, l - 1), Bundle::free_sum(m - 1, {l}), z2, p.f,
                               0, p.delta_d);
    }
    red.children.push_back(Statement::r(Bundle::free_sum(m - 1, {l + 1}), p.alpha_iv));
    red.children.push_back(std::move(mb_child));
    red.children.push_back(std::move(rb_child));
    red.iv_params = p;
    return red;
  }

  return stuck("point count outside every case range");
}

Reduction reduce_statement(const Statement& s) {
  switch (s.kind) {
    case Statement::Kind::r: return reduce_r(s);
    case Statement::Kind::rb: return reduce_rb(s);
    case Statement::Kind::mb: return reduce_mb(s);
  }
  throw std::invalid_argument("reduce_statement: unknown statement kind");
}

namespace {

constexpr int kMaxRecursion = 512;

struct Engine {
  std::map<Statement, int> ids;
  std::vector<bool> done;
  ReductionTrace trace;

  int visit(const Statement& s, int depth) {
    if (auto it = ids.find(s); it != ids.end()) {
      if (!done[it->second]) throw std::logic_error("reduction cycle detected");
      return it->second;
    }
    if (depth > kMaxRecursion) throw std::logic_error("reduction recursion too deep");
    int id = static_cast<int>(trace.nodes.size());
    ids.emplace(s, id);
    done.push_back(false);
    trace.nodes.emplace_back();

    std::vector<Condition> conds = statement_conditions(s);
    Reduction red = reduce_statement(s);
    bool ok = red.rule != "stuck";
    for (const Condition& c : conds) ok = ok && c.pass;
    for (const Condition& c : red.side_conditions) ok = ok && c.pass;
    std::vector<int> child_ids;
    child_ids.reserve(red.children.size());
    for (const Statement& c : red.children) {
      int cid = visit(c, depth + 1);
      ok = ok && trace.nodes[cid].ok;
      child_ids.push_back(cid);
    }
    TraceNode node;
    node.id = id;
    node.stmt = s;
    node.rule = red.rule;
    node.children = std::move(child_ids);
    node.conditions = std::move(conds);
    node.conditions.insert(node.conditions.end(), red.side_conditions.begin(),
                           red.side_conditions.end());
    node.warnings = std::move(red.warnings);
    node.notes = std::move(red.notes);
    node.ok = ok;
    trace.nodes[id] = std::move(node);
    done[id] = true;
    return id;
  }
};

int longest_path(const ReductionTrace& t, int id, std::vector<int>& memo) {
  if (memo[id] != 0) return memo[id];
  int best = 0;
  for (int c : t.nodes[id].children) best = std::max(best, longest_path(t, c, memo));
  memo[id] = 1 + best;
  return memo[id];
}

}  // namespace

ReductionTrace schedule(int n, i64 ell) {
  if (n < 1) throw std::invalid_argument("schedule: need n >= 1");
  Engine eng;
  eng.trace.n = n;
  eng.trace.ell = ell;
  Statement root;
  if (n == 1 || ell <= -2) {
    root = Statement::r(Bundle::tangent(n, ell), 0);
  } else {
    QrSplit sp = qr_split(n, ell);
    root = Statement::rb(Bundle::tangent(n, ell), Bundle::free_sum(n - 1, {ell + 1}), sp.q, 0, 0,
                         sp.r);
  }
  eng.visit(root, 0);
  ReductionTrace& tr = eng.trace;
  tr.certified = tr.nodes[0].ok;
  std::vector<int> memo(tr.nodes.size(), 0);
  tr.max_depth = longest_path(tr, 0, memo);
  tr.depth_bound = static_cast<int>(std::max<i64>(1, 10 * (n + ell + 2)));
  if (tr.max_depth > tr.depth_bound)
    throw std::logic_error("reduction depth exceeds the termination bound");
  for (const TraceNode& node : tr.nodes) {
    for (const std::string& w : node.warnings) tr.warnings.push_back(w);
    if (!node.ok) {
      std::ostringstream why;
      why << node.stmt.label() << " [rule " << node.rule;
      for (const Condition& c : node.conditions)
        if (!c.pass) why << "; " << c.name << " " << c.lhs << " vs " << c.rhs;
      why << "]";
      tr.stuck.push_back(why.str());
    }
  }
  return tr;
}

bool verify_remark(const ReductionTrace& trace) {
  for (const TraceNode& node : trace.nodes) {
    if (node.stmt.kind != Statement::Kind::rb) continue;
    const Bundle& F = node.stmt.f;
    if (F.kind != Bundle::Kind::free_sum) continue;
    i64 l = F.twists[0] - 1;
    if (node.stmt.z < o_dim(F.dim, l)) return false;
  }
  return true;
}

bool verify_remark(int n, i64 ell) { return verify_remark(schedule(n, ell)); }

}  // namespace mrv::horace
