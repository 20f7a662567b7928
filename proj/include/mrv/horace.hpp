#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mrv/exactdims.hpp"

// Symbolic replay of the inductive Horace-style reduction: statements about
// maximal rank of twisted evaluation maps are rewritten into statements on a
// hyperplane plus residual statements with twisted-down kernels, until every
// leaf is trivially true.  Everything is exact integer bookkeeping; the
// engine emits a certificate trace whose side conditions are all re-checked.
//
// Parameter policy: child parameters always come from the general recursion
// formulas plus the balance equation.  Where a known display of the same
// quantity disagrees, the engine keeps the balanced value and records a
// warning naming both numbers.

namespace mrv::horace {

struct Bundle {
  enum class Kind { free_sum, tangent };
  Kind kind = Kind::free_sum;
  int dim = 1;              // the bundle lives on P^dim
  std::vector<i64> twists;  // free_sum: one entry per summand
  i64 ell = 0;              // tangent twist

  static Bundle free_sum(int dim, std::vector<i64> twists);
  static Bundle tangent(int dim, i64 ell);

  i64 rank() const;
  i64 h0() const;
  i64 h1() const;
  bool equal_twists() const;
  std::string label() const;  // "O_{P^2}(2,2)" / "T_{P^2}(1)"

  auto tie() const { return std::tie(kind, dim, twists, ell); }
  friend bool operator==(const Bundle& a, const Bundle& b) { return a.tie() == b.tie(); }
  friend bool operator<(const Bundle& a, const Bundle& b) { return a.tie() < b.tie(); }
};

// R(F; a): evaluation of H^0(F) at any number of general points plus a
// general linear conditions has maximal rank.
// RB(F, F'; z, y; alpha, beta): F on P^m, F' on a hyperplane P^{m-1};
// z plain points, y points on the hyperplane carrying F'-fibers, alpha
// conditions on H^0(F'), beta a partial fiber (quotient) at one more point.
// MB(F, G; z, y; a): F on P^m with quotient bundle G; z full F-fibers,
// y G-fibers, a extra conditions inside one more G-fiber.
struct Statement {
  enum class Kind { r, rb, mb };
  Kind kind = Kind::r;
  Bundle f;
  Bundle g;  // unused for R statements
  i64 z = 0, y = 0, alpha = 0, beta = 0;  // R: alpha = a; MB: alpha = a, beta = 0

  static Statement r(Bundle f, i64 a);
  static Statement rb(Bundle f, Bundle fp, i64 z, i64 y, i64 alpha, i64 beta);
  static Statement mb(Bundle f, Bundle g, i64 z, i64 y, i64 a);

  std::string kind_name() const;  // "R" / "RB" / "MB"
  std::string label() const;      // e.g. "RB(T_{P^2}(1), O_{P^1}(2), 7, 0; 0, 1)"

  auto tie() const { return std::tie(kind, f, g, z, y, alpha, beta); }
  friend bool operator==(const Statement& a, const Statement& b) { return a.tie() == b.tie(); }
  friend bool operator<(const Statement& a, const Statement& b) { return a.tie() < b.tie(); }
};

struct Condition {
  std::string name;
  i64 lhs = 0;
  i64 rhs = 0;
  bool pass = false;
};

// All bullet conditions of the statement, with pass flags.
std::vector<Condition> statement_conditions(const Statement& s);

// Only the violated bullets (empty means the statement is well-formed).
std::vector<Condition> check_conditions(const Statement& s);

// General one-hyperplane-step parameters shared by the RB reductions.
struct LemRbParams {
  i64 t = 0;      // h0(F') - r'*y - alpha - b(beta)
  i64 yp = 0;     // t div r'
  i64 delta = 0;  // t mod r'
  i64 zeta = 0;   // 1 iff delta != 0
  i64 beta_p = 0; // zeta * (r - delta)
  i64 alpha_p = 0;// beta - r' when beta != 0, else 0
  i64 zp = 0;     // z - yp - zeta
  i64 r = 0, rp = 0;
};

struct CaseIvParams {
  i64 alpha_iv = 0;  // 1 iff a != 0
  i64 d = 0;         // z - o(m, l-1), the balance-consistent count
  i64 yp = 0;
  i64 a_p = 0;       // max(a-1, 0)
  i64 e = 0;
  i64 f = 0;
  i64 g = 0;
  i64 delta_d = 0;   // m - g when g != 0
};

struct Reduction {
  std::string rule;  // trivial | lemiii | lemred1 | lemred2 | alakon |
                     // iv-case1..4 | base-n1 | stuck
  std::vector<Statement> children;
  std::vector<Condition> side_conditions;  // beyond the statement bullets
  std::vector<std::string> warnings;       // display-vs-balance reconciliations
  std::vector<std::string> notes;          // quotient/kernel bookkeeping
  std::optional<LemRbParams> rb_params;
  std::optional<CaseIvParams> iv_params;
};

// One reduction step, no recursion.  Never throws on malformed statements;
// those come back with rule "stuck" and a note.
Reduction reduce_r(const Statement& s);
Reduction reduce_rb(const Statement& s);
Reduction reduce_mb(const Statement& s);
Reduction reduce_statement(const Statement& s);

struct TraceNode {
  int id = 0;
  Statement stmt;
  std::string rule;
  std::vector<int> children;
  std::vector<Condition> conditions;  // statement bullets + rule side conditions
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  bool ok = false;  // rule applied, all conditions pass, all children ok
};

struct ReductionTrace {
  int n = 0;
  i64 ell = 0;
  std::vector<TraceNode> nodes;  // node 0 is the root
  bool certified = false;
  int max_depth = 0;   // nodes on the longest root-to-leaf path
  int depth_bound = 0;
  std::vector<std::string> stuck;     // labels of failing nodes with reasons
  std::vector<std::string> warnings;  // aggregated from nodes
};

// Full reduction of the critical square statement for T(ell) on P^n.
// n == 1 or ell <= -2 give a single trivial node.  Requires n >= 1.
ReductionTrace schedule(int n, i64 ell);

// Every hyperplane-restriction node keeps at least a full degree-l kernel
// of points: z >= o(m, l) at each free-sum RB node.
bool verify_remark(const ReductionTrace& trace);
bool verify_remark(int n, i64 ell);

}  // namespace mrv::horace
