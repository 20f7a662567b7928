#include "mrv/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mrv/exactdims.hpp"

namespace mrv {

ordered_json rank_report_json(const RankReport& rep) {
  ordered_json j;
  j["statement"] = rep.statement;
  j["space_dim"] = rep.space_dim;
  j["target_dim"] = rep.target_dim;
  j["expected"] = rep.expected;
  j["achieved"] = rep.achieved;
  j["verdict"] = to_string(rep.verdict);
  j["note"] = rep.note;
  return j;
}

ordered_json consistency_json(const ConsistencyReport& rep) {
  ordered_json j;
  j["tangent"] = rank_report_json(rep.tangent);
  j["omega"] = rank_report_json(rep.omega);
  j["consistent"] = rep.consistent;
  return j;
}

ordered_json betti_table_json(const BettiTable& table) {
  ordered_json j;
  j["n"] = table.n;
  j["a"] = table.a;
  j["d"] = table.d;
  ordered_json entries = ordered_json::array();
  for (std::size_t p = 0; p < table.entries.size(); ++p) {
    const BettiEntry& e = table.entries[p];
    ordered_json row;
    row["p"] = p;
    row["a"] = e.a;
    row["b"] = e.b;
    row["a_known"] = e.a_known;
    row["b_known"] = e.b_known;
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

ordered_json comparison_json(const MrcComparison& cmp) {
  ordered_json j;
  j["computed"] = betti_table_json(cmp.computed);
  j["predicted"] = betti_table_json(cmp.predicted);
  j["a_match"] = cmp.a_match;
  j["b_match"] = cmp.b_match;
  j["all_match"] = cmp.all_match;
  j["warnings"] = cmp.warnings;
  return j;
}

ordered_json theorem1_json(const Theorem1Check& chk) {
  ordered_json j;
  j["n"] = chk.predicted.n;
  j["a"] = chk.predicted.a;
  j["d"] = chk.predicted.d;
  j["h"] = chk.predicted.h;
  j["predicted_a_nm2"] = chk.predicted.a_nm2;
  j["predicted_b_nm1"] = chk.predicted.b_nm1;
  j["computed_a_nm2"] = chk.computed_a_nm2;
  j["computed_b_nm1"] = chk.computed_b_nm1;
  j["known"] = chk.known;
  j["match"] = chk.match;
  return j;
}

namespace {

ordered_json bundle_json(const horace::Bundle& b) {
  ordered_json j;
  j["kind"] = b.kind == horace::Bundle::Kind::free_sum ? "free" : "tangent";
  j["dim"] = b.dim;
  if (b.kind == horace::Bundle::Kind::free_sum)
    j["twists"] = b.twists;
  else
    j["ell"] = b.ell;
  j["label"] = b.label();
  return j;
}

ordered_json statement_json(const horace::Statement& s) {
  ordered_json j;
  j["kind"] = s.kind_name();
  j["label"] = s.label();
  j["f"] = bundle_json(s.f);
  switch (s.kind) {
    case horace::Statement::Kind::r:
      j["a"] = s.alpha;
      break;
    case horace::Statement::Kind::rb:
      j["g"] = bundle_json(s.g);
      j["z"] = s.z;
      j["y"] = s.y;
      j["alpha"] = s.alpha;
      j["beta"] = s.beta;
      break;
    case horace::Statement::Kind::mb:
      j["g"] = bundle_json(s.g);
      j["z"] = s.z;
      j["y"] = s.y;
      j["a"] = s.alpha;
      break;
  }
  return j;
}

ordered_json condition_json(const horace::Condition& c) {
  ordered_json j;
  j["name"] = c.name;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

ordered_json trace_json(const horace::ReductionTrace& trace) {
  ordered_json j;
  j["n"] = trace.n;
  j["ell"] = trace.ell;
  j["certified"] = trace.certified;
  j["node_count"] = trace.nodes.size();
  j["max_depth"] = trace.max_depth;
  j["depth_bound"] = trace.depth_bound;
  j["stuck"] = trace.stuck;
  ordered_json nodes = ordered_json::array();
  for (const horace::TraceNode& node : trace.nodes) {
    ordered_json nj;
    nj["id"] = node.id;
    nj["rule"] = node.rule;
    nj["ok"] = node.ok;
    nj["statement"] = statement_json(node.stmt);
    nj["children"] = node.children;
    ordered_json conds = ordered_json::array();
    for (const horace::Condition& c : node.conditions) conds.push_back(condition_json(c));
    nj["conditions"] = conds;
    nj["warnings"] = node.warnings;
    nj["notes"] = node.notes;
    nodes.push_back(nj);
  }
  j["nodes"] = nodes;
  return j;
}

namespace {

struct OutputSpec {
  std::string format = "json";
  std::string path;
};

void add_output_flags(CLI::App* cmd, OutputSpec* spec) {
  cmd->add_option("--format", spec->format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", spec->path, "write the report to a file instead of stdout");
}

ordered_json make_doc(const std::string& command, ordered_json params, ordered_json result,
                      std::vector<std::string> warnings, const std::string& verdict) {
  ordered_json doc;
  doc["command"] = command;
  doc["params"] = std::move(params);
  doc["result"] = std::move(result);
  doc["warnings"] = warnings;
  doc["verdict"] = verdict;
  return doc;
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string rank_report_csv(const RankReport& rep) {
  std::ostringstream csv;
  csv << "trial,achieved,expected,verdict\n";
  for (std::size_t i = 0; i < rep.achieved.size(); ++i)
    csv << i << "," << rep.achieved[i] << "," << rep.expected << "," << to_string(rep.verdict)
        << "\n";
  return csv.str();
}

std::string rank_report_text(const RankReport& rep) {
  std::ostringstream txt;
  txt << "statement: " << rep.statement << "\n";
  txt << "space_dim: " << rep.space_dim << "  target_dim: " << rep.target_dim << "\n";
  txt << "expected rank: " << rep.expected << "\n";
  txt << "achieved:";
  for (i64 r : rep.achieved) txt << " " << r;
  txt << "\n";
  txt << "verdict: " << to_string(rep.verdict) << "\n";
  if (!rep.note.empty()) txt << "note: " << rep.note << "\n";
  return txt.str();
}

std::string betti_csv(const MrcComparison& cmp) {
  std::ostringstream csv;
  csv << "p,a_p,b_p,pred_a_p,pred_b_p,match\n";
  for (std::size_t p = 0; p < cmp.computed.entries.size(); ++p) {
    const BettiEntry& c = cmp.computed.entries[p];
    const BettiEntry& q = cmp.predicted.entries[p];
    bool row_match = cmp.a_match[p] && cmp.b_match[p];
    csv << p << ",";
    if (c.a_known)
      csv << c.a;
    csv << "," << c.b << "," << q.a << "," << q.b << "," << (row_match ? "true" : "false") << "\n";
  }
  return csv.str();
}

std::string betti_text(const MrcComparison& cmp, const Theorem1Check& chk) {
  std::ostringstream txt;
  txt << "resolution of " << cmp.computed.a << " general points in P^" << cmp.computed.n
      << " (d = " << cmp.computed.d << ")\n";
  txt << "  p   a_p   b_p   pred_a   pred_b\n";
  for (std::size_t p = 0; p < cmp.computed.entries.size(); ++p) {
    const BettiEntry& c = cmp.computed.entries[p];
    const BettiEntry& q = cmp.predicted.entries[p];
    txt << std::setw(3) << p;
    if (c.a_known)
      txt << std::setw(6) << c.a;
    else
      txt << std::setw(6) << "?";
    txt << std::setw(6) << c.b << std::setw(9) << q.a << std::setw(9) << q.b << "\n";
  }
  txt << "all entries match: " << (cmp.all_match ? "yes" : "no") << "\n";
  txt << "middle pair (a_" << cmp.computed.n - 2 << ", b_" << cmp.computed.n - 1 << "): computed ("
      << chk.computed_a_nm2 << ", " << chk.computed_b_nm1 << ") vs predicted ("
      << chk.predicted.a_nm2 << ", " << chk.predicted.b_nm1 << ") -> "
      << (chk.match ? "match" : "mismatch") << "\n";
  return txt.str();
}

std::string trace_csv(const horace::ReductionTrace& trace) {
  std::ostringstream csv;
  csv << "id,kind,rule,ok,label\n";
  for (const horace::TraceNode& node : trace.nodes)
    csv << node.id << "," << node.stmt.kind_name() << "," << node.rule << ","
        << (node.ok ? "true" : "false") << "," << csv_quote(node.stmt.label()) << "\n";
  return csv.str();
}

void trace_text_rec(const horace::ReductionTrace& trace, int id, int indent,
                    std::ostringstream& txt) {
  const horace::TraceNode& node = trace.nodes[static_cast<std::size_t>(id)];
  txt << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "#" << node.id << " "
      << node.stmt.label() << "  [" << node.rule << (node.ok ? "" : ", FAILS") << "]\n";
  for (int c : node.children) trace_text_rec(trace, c, indent + 1, txt);
}

std::string trace_text(const horace::ReductionTrace& trace) {
  std::ostringstream txt;
  txt << "reduction for T(" << trace.ell << ") on P^" << trace.n << ": "
      << (trace.certified ? "certified" : "stuck") << ", " << trace.nodes.size() << " nodes, depth "
      << trace.max_depth << "\n";
  if (!trace.nodes.empty()) trace_text_rec(trace, 0, 1, txt);
  for (const std::string& s : trace.stuck) txt << "stuck: " << s << "\n";
  for (const std::string& w : trace.warnings) txt << "warning: " << w << "\n";
  return txt.str();
}

std::string dims_text(const ordered_json& params, const ordered_json& result) {
  std::ostringstream txt;
  int n = params["n"].get<int>();
  if (result.contains("o")) {
    i64 l = params["ell"].get<i64>();
    txt << "o(" << n << ", " << l << ") = " << result["o"].get<i64>() << "\n";
    txt << "t(" << n << ", " << l << ") = " << result["t"].get<i64>() << "\n";
    if (result.contains("q"))
      txt << "split: q = " << result["q"].get<i64>() << ", r = " << result["r"].get<i64>() << "\n";
  }
  if (result.contains("omega")) {
    const ordered_json& om = result["omega"];
    txt << "h^" << om["q"].get<int>() << "(P^" << n << ", Omega^" << om["p"].get<i64>() << "("
        << om["k"].get<i64>() << ")) = " << om["value"].get<i64>() << "\n";
  }
  return txt.str();
}

std::string dims_csv(const ordered_json& result) {
  std::ostringstream csv;
  csv << "key,value\n";
  if (result.contains("o")) {
    csv << "o," << result["o"].get<i64>() << "\n";
    csv << "t," << result["t"].get<i64>() << "\n";
    if (result.contains("q")) {
      csv << "q," << result["q"].get<i64>() << "\n";
      csv << "r," << result["r"].get<i64>() << "\n";
    }
  }
  if (result.contains("omega")) csv << "omega," << result["omega"]["value"].get<i64>() << "\n";
  return csv.str();
}

int emit(const OutputSpec& spec, const ordered_json& doc, const std::string& csv,
         const std::string& text, std::ostream& out, std::ostream& err, int code) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!spec.path.empty()) {
    file.open(spec.path);
    if (!file) {
      err << "error: cannot open output file: " << spec.path << "\n";
      return 2;
    }
    sink = &file;
  }
  if (spec.format == "json")
    *sink << doc.dump(2) << "\n";
  else if (spec.format == "csv")
    *sink << csv;
  else
    *sink << text;
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"maximal-rank checks for evaluation of twisted bundle sections at general points"};
  app.name("mrv");
  app.require_subcommand(1);

  OutputSpec output;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int trials = 5;
  int quotient_samples = 3;
  auto add_field_flags = [&](CLI::App* cmd) {
    cmd->add_option("--prime", prime, "field characteristic, a prime in [2^16, 2^31 - 1]");
    cmd->add_option("--seed", seed, "master seed; all sampling derives from it");
    cmd->add_option("--trials", trials, "independent point samples");
  };

  // dims
  auto* dims = app.add_subcommand("dims", "exact dimension formulas, no sampling");
  int dims_n = 0;
  i64 dims_ell = 0;
  std::vector<i64> dims_omega;
  int dims_q = 0;
  dims->add_option("--n", dims_n, "ambient projective dimension")->required();
  auto* dims_ell_opt = dims->add_option("--ell", dims_ell, "twist for the tangent sheaf");
  dims->add_option("--omega", dims_omega, "P K: twisted P-form bundle in degree K")
      ->expected(2);
  dims->add_option("--q", dims_q, "cohomology index for --omega (default 0)");
  add_output_flags(dims, &output);

  // maxrank
  auto* mr = app.add_subcommand("maxrank", "sampled rank certification over a prime field");
  mr->require_subcommand(1);
  int mr_n = 0, mr_p = 0;
  i64 mr_ell = 0, mr_k = 0, mr_points = 0;
  auto* mr_tan = mr->add_subcommand("tangent", "evaluation of tangent sections at --points");
  mr_tan->add_option("--n", mr_n)->required();
  mr_tan->add_option("--ell", mr_ell)->required();
  mr_tan->add_option("--points", mr_points)->required();
  add_field_flags(mr_tan);
  add_output_flags(mr_tan, &output);
  auto* mr_tau = mr->add_subcommand("tau", "the critical square case, points plus one quotient");
  mr_tau->add_option("--n", mr_n)->required();
  mr_tau->add_option("--ell", mr_ell)->required();
  mr_tau->add_option("--quotient-samples", quotient_samples,
                     "random quotients tried per point sample");
  add_field_flags(mr_tau);
  add_output_flags(mr_tau, &output);
  auto* mr_om = mr->add_subcommand("omega", "evaluation of twisted p-form sections at --points");
  mr_om->add_option("--n", mr_n)->required();
  mr_om->add_option("--p", mr_p)->required();
  mr_om->add_option("--k", mr_k)->required();
  mr_om->add_option("--points", mr_points)->required();
  add_field_flags(mr_om);
  add_output_flags(mr_om, &output);

  // betti
  auto* betti = app.add_subcommand("betti", "computed resolution table vs prediction");
  int betti_n = 0;
  i64 betti_points = 0;
  betti->add_option("--n", betti_n)->required();
  betti->add_option("--points", betti_points)->required();
  add_field_flags(betti);
  add_output_flags(betti, &output);

  // horace
  auto* horace_cmd = app.add_subcommand("horace", "symbolic reduction certificate");
  int h_n = 0;
  i64 h_ell = 0;
  horace_cmd->add_option("--n", h_n)->required();
  horace_cmd->add_option("--ell", h_ell)->required();
  add_output_flags(horace_cmd, &output);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("mrv");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dims->parsed()) {
      bool has_ell = dims_ell_opt->count() > 0;
      bool has_omega = !dims_omega.empty();
      if (!has_ell && !has_omega) {
        err << "error: dims needs --ell and/or --omega\n";
        return 2;
      }
      ordered_json params;
      params["n"] = dims_n;
      if (has_ell) params["ell"] = dims_ell;
      ordered_json result;
      if (has_ell) {
        result["o"] = o_dim(dims_n, dims_ell);
        result["t"] = t_dim(dims_n, dims_ell);
        if (dims_ell >= -1) {
          QrSplit s = qr_split(dims_n, dims_ell);
          result["q"] = s.q;
          result["r"] = s.r;
        }
      }
      if (has_omega) {
        params["omega_p"] = dims_omega[0];
        params["omega_k"] = dims_omega[1];
        params["q"] = dims_q;
        ordered_json om;
        om["p"] = dims_omega[0];
        om["k"] = dims_omega[1];
        om["q"] = dims_q;
        om["value"] = bott(dims_n, dims_omega[0], dims_omega[1], dims_q);
        result["omega"] = om;
      }
      ordered_json doc = make_doc("dims", params, result, {}, "ok");
      return emit(output, doc, dims_csv(result), dims_text(params, result), out, err, 0);
    }

    if (trials < 1) {
      err << "error: --trials must be >= 1\n";
      return 2;
    }
    if (quotient_samples < 1) {
      err << "error: --quotient-samples must be >= 1\n";
      return 2;
    }
    TrialConfig cfg;
    cfg.field = FieldSpec::validated(prime);
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.quotient_samples = quotient_samples;

    if (mr->parsed()) {
      RankReport rep;
      ordered_json params;
      params["n"] = mr_n;
      std::string sub;
      if (mr_tan->parsed()) {
        sub = "tangent";
        params["ell"] = mr_ell;
        params["points"] = mr_points;
        rep = verify_sigma(mr_n, mr_ell, mr_points, cfg);
      } else if (mr_tau->parsed()) {
        sub = "tau";
        params["ell"] = mr_ell;
        params["quotient_samples"] = quotient_samples;
        rep = verify_tau(mr_n, mr_ell, cfg);
      } else {
        sub = "omega";
        params["p"] = mr_p;
        params["k"] = mr_k;
        params["points"] = mr_points;
        rep = verify_omega(mr_n, mr_p, mr_k, mr_points, cfg);
      }
      params["prime"] = prime;
      params["seed"] = seed;
      params["trials"] = trials;
      std::vector<std::string> warnings;
      if (rep.verdict != Verdict::certified && !rep.note.empty()) warnings.push_back(rep.note);
      ordered_json doc = make_doc("maxrank " + sub, params, rank_report_json(rep), warnings,
                                  to_string(rep.verdict));
      return emit(output, doc, rank_report_csv(rep), rank_report_text(rep), out, err,
                  rep.verdict == Verdict::certified ? 0 : 1);
    }

    if (betti->parsed()) {
      ordered_json params;
      params["n"] = betti_n;
      params["points"] = betti_points;
      params["prime"] = prime;
      params["seed"] = seed;
      params["trials"] = trials;
      std::vector<std::string> warnings;
      BettiTable computed = betti_table(betti_n, betti_points, cfg, &warnings);
      BettiTable predicted = mrc_prediction(betti_n, betti_points);
      MrcComparison cmp = compare_mrc(computed, predicted);
      Theorem1Check chk;
      chk.predicted = theorem1_prediction(betti_n, betti_points);
      chk.computed_a_nm2 = computed.entries[static_cast<std::size_t>(betti_n) - 2].a;
      chk.computed_b_nm1 = computed.entries[static_cast<std::size_t>(betti_n) - 1].b;
      chk.known = computed.entries[static_cast<std::size_t>(betti_n) - 2].a_known;
      chk.match = chk.known && chk.computed_a_nm2 == chk.predicted.a_nm2 &&
                  chk.computed_b_nm1 == chk.predicted.b_nm1;
      for (const std::string& w : cmp.warnings) warnings.push_back(w);
      if (!cmp.all_match)
        warnings.push_back("computed table differs from the closed-form prediction");
      ordered_json result = comparison_json(cmp);
      result["theorem1"] = theorem1_json(chk);
      ordered_json doc =
          make_doc("betti", params, result, warnings, chk.match ? "match" : "mismatch");
      return emit(output, doc, betti_csv(cmp), betti_text(cmp, chk), out, err, chk.match ? 0 : 1);
    }

    if (horace_cmd->parsed()) {
      ordered_json params;
      params["n"] = h_n;
      params["ell"] = h_ell;
      horace::ReductionTrace trace = horace::schedule(h_n, h_ell);
      ordered_json result = trace_json(trace);
      result["remark_z_bound"] = horace::verify_remark(trace);
      ordered_json doc = make_doc("horace", params, result, trace.warnings,
                                  trace.certified ? "certified" : "stuck");
      return emit(output, doc, trace_csv(trace), trace_text(trace), out, err,
                  trace.certified ? 0 : 1);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace mrv
