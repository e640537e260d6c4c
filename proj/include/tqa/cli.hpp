#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqa/builtins.hpp"
#include "tqa/comparison.hpp"
#include "tqa/example83.hpp"
#include "tqa/parse.hpp"
#include "tqa/ring.hpp"

namespace tqa::cli {

enum ExitCode { kOk = 0, kInvalid = 1, kCheckFailed = 2, kResource = 3 };

using ojson = nlohmann::ordered_json;

struct Options {
  std::string builtin;
  std::string file;
  std::optional<int> N;
  int max_degree = 4;
  std::optional<int> i, m;
  std::string left, right;
  std::string format = "text";
  std::size_t max_paths = kDefaultCap;
  std::size_t max_words = kDefaultCap;
};

struct Context {
  std::string name;
  TruncatedAlgebra A;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Context load(const Options& o, std::ostream& err) {
  if (o.builtin.empty() == o.file.empty()) throw ValidationError("give exactly one of --builtin or --file");
  std::optional<int> N = o.N;
  Quiver q;
  std::string name;
  if (!o.builtin.empty()) {
    q = builtin_quiver(o.builtin);
    name = o.builtin;
  } else {
    auto spec = parse_quiver(read_file(o.file));
    q = std::move(spec.quiver);
    if (!N) N = spec.N;
    name = o.file;
  }
  if (!N) throw ValidationError("no truncation given; pass --N");
  if (!structure_flags(q).is_connected) err << "warning: quiver is not connected\n";
  return {name, TruncatedAlgebra(std::move(q), *N)};
}

inline ojson cochain_json(const Quiver& q, const DualCochain& f) {
  ojson terms = ojson::array();
  for (const auto& [p, c] : f.terms)
    terms.push_back({{"alpha", format_path(q, p.first)}, {"pi", format_path(q, p.second)}, {"coeff", to_string(c)}});
  return terms;
}

inline void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- verbs

inline int run_paths(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  const Quiver& q = ctx.A.quiver();
  std::vector<int> lengths;
  if (o.m) {
    if (*o.m < 0) throw ValidationError("--m must be non-negative");
    lengths.push_back(*o.m);
  } else {
    for (int n = 0; n < ctx.A.N(); ++n) lengths.push_back(n);
  }
  ojson all = ojson::array();
  if (o.format == "csv") out << "length,path\n";
  for (int len : lengths) {
    auto ps = paths(q, len, o.max_paths);
    if (o.format == "json") {
      ojson list = ojson::array();
      for (const auto& p : ps) list.push_back(format_path(q, p));
      all.push_back({{"length", len}, {"count", ps.size()}, {"paths", list}});
    } else if (o.format == "csv") {
      for (const auto& p : ps) out << len << "," << format_path(q, p) << "\n";
    } else {
      out << "length " << len << " (" << ps.size() << "):";
      for (const auto& p : ps) out << " " << format_path(q, p);
      out << "\n";
    }
  }
  if (o.format == "json") emit(out, {{"quiver", ctx.name}, {"N", ctx.A.N()}, {"lengths", all}});
  return kOk;
}

inline int run_cohomology(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  const Quiver& q = ctx.A.quiver();
  const int N = ctx.A.N();
  Cohomology H(ctx.A, o.max_paths);
  ojson degrees = ojson::array();
  if (o.format == "csv") {
    out << "degree";
    for (int i = 0; i < N; ++i) out << ",row" << i;
    out << ",total\n";
  } else if (o.format == "text") {
    out << "quiver " << ctx.name << ", N = " << N << "\n";
  }
  for (int n = 0; n <= o.max_degree; ++n) {
    const auto& sp = H.space(n);
    if (o.format == "json") {
      ojson rows = ojson::object();
      for (int i = 0; i < N; ++i) rows[std::to_string(i)] = sp.row_dims[i];
      ojson reps = ojson::array();
      for (const auto& r : sp.reps) reps.push_back(cochain_json(q, r));
      degrees.push_back({{"degree", n}, {"rows", rows}, {"total", sp.total()}, {"representatives", reps}});
    } else if (o.format == "csv") {
      out << n;
      for (auto d : sp.row_dims) out << "," << d;
      out << "," << sp.total() << "\n";
    } else {
      out << "H^" << n << ": dim " << sp.total() << "  rows (";
      for (int i = 0; i < N; ++i) out << (i ? ", " : "") << sp.row_dims[i];
      out << ")\n";
      for (std::size_t r = 0; r < sp.total(); ++r)
        out << "  row " << sp.rep_rows[r] << ": " << format_cochain(q, sp.reps[r]) << "\n";
    }
  }
  if (o.format == "json") emit(out, {{"quiver", ctx.name}, {"N", N}, {"degrees", degrees}});
  return kOk;
}

inline int run_medals(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  if (!o.i || !o.m) throw ValidationError("medals needs --i and --m");
  if (*o.i < 0 || *o.m < 0) throw ValidationError("--i and --m must be non-negative");
  const Quiver& q = ctx.A.quiver();
  auto classes = medal_classes(q, *o.i, *o.m, o.max_paths);
  auto list = [&](const std::vector<ParallelPair>& ps) {
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : " ") + format_pair(q, p);
    return s;
  };
  if (o.format == "json") {
    ojson arr = ojson::array();
    for (const auto& c : classes) {
      auto pairs = [&](const std::vector<ParallelPair>& ps) {
        ojson a = ojson::array();
        for (const auto& p : ps) a.push_back({format_path(q, p.first), format_path(q, p.second)});
        return a;
      };
      arr.push_back({{"medal", c.is_medal},
                     {"members", pairs(c.members)},
                     {"plus_extremes", pairs(c.plus_extremes)},
                     {"minus_extremes", pairs(c.minus_extremes)}});
    }
    emit(out, {{"i", *o.i}, {"m", *o.m}, {"classes", arr}});
  } else if (o.format == "csv") {
    out << "class,medal,size,members\n";
    for (std::size_t k = 0; k < classes.size(); ++k)
      out << k << "," << (classes[k].is_medal ? "true" : "false") << "," << classes[k].members.size() << ",\""
          << list(classes[k].members) << "\"\n";
  } else {
    std::size_t medals = 0;
    for (const auto& c : classes) medals += c.is_medal;
    out << classes.size() << " classes in Delta_" << *o.i << " || Delta_" << *o.m << ", " << medals << " medals\n";
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const auto& c = classes[k];
      out << "class " << k << (c.is_medal ? " [medal]" : "") << ": " << list(c.members) << "\n";
      out << "  +extremes: " << (c.plus_extremes.empty() ? "none" : list(c.plus_extremes)) << "\n";
      out << "  -extremes: " << (c.minus_extremes.empty() ? "none" : list(c.minus_extremes)) << "\n";
    }
  }
  return kOk;
}

inline int run_cup(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  if (o.left.empty() || o.right.empty()) throw ValidationError("cup needs --left and --right");
  const Quiver& q = ctx.A.quiver();
  Cohomology H(ctx.A, o.max_paths);
  DualCochain f = parse_cochain(q, ctx.A.N(), o.left);
  DualCochain g = parse_cochain(q, ctx.A.N(), o.right);
  DualCochain prod = cup(H, f, g);
  // The bar route is an independent computation of the same class.
  const bool agrees = H.same_class(prod, cup_bar_route(ctx.A, f, g, o.max_words));
  SparseVec coords = H.coordinates(prod);
  if (o.format == "json") {
    ojson c = ojson::object();
    for (const auto& [i, v] : coords) c[std::to_string(i)] = to_string(v);
    emit(out, {{"degree", prod.degree},
               {"zero", prod.empty()},
               {"product", cochain_json(q, prod)},
               {"coordinates", c},
               {"bar_route_agrees", agrees}});
  } else if (o.format == "csv") {
    out << "degree,alpha,pi,coeff\n";
    for (const auto& [p, c] : prod.terms)
      out << prod.degree << "," << format_path(q, p.first) << "," << format_path(q, p.second) << "," << to_string(c)
          << "\n";
  } else {
    out << "degree " << prod.degree << ": " << format_cochain(q, prod) << "\n";
    if (!agrees) out << "bar route disagrees\n";
  }
  if (!agrees) {
    err << "error: bar route product differs from the reduced product\n";
    return kCheckFailed;
  }
  return kOk;
}

inline int print_report(const Report& rep, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    ojson arr = ojson::array();
    for (const auto& c : rep.checks)
      arr.push_back(
          {{"name", c.name}, {"degree", c.degree}, {"pass", c.pass}, {"checked", c.checked}, {"witness", c.witness}});
    emit(out, {{"pass", rep.pass()}, {"checks", arr}});
  } else if (o.format == "csv") {
    out << "name,degree,pass,checked,witness\n";
    for (const auto& c : rep.checks)
      out << "\"" << c.name << "\"," << c.degree << "," << (c.pass ? "true" : "false") << "," << c.checked << ",\""
          << c.witness << "\"\n";
  } else {
    for (const auto& c : rep.checks) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << " (degree " << c.degree << ", " << c.checked << " checked)";
      if (!c.pass) out << ": " << c.witness;
      out << "\n";
    }
    out << (rep.pass() ? "all checks passed" : "some checks failed") << "\n";
  }
  return rep.pass() ? kOk : kCheckFailed;
}

inline int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  if (o.max_degree < 2) throw ValidationError("verify needs --max-degree of at least 2");
  Report rep = verify_resolutions(ctx.A, o.max_degree, o.max_words);
  rep.append(verify_comparison(ctx.A, o.max_degree, o.max_words));
  rep.append(cohomology_checks(ctx.A, o.max_degree, o.max_paths));
  rep.append(ring_checks(ctx.A, o.max_degree, o.max_paths));
  return print_report(rep, o, out);
}

inline int run_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  auto ctx = load(o, err);
  Cohomology H(ctx.A, o.max_paths);
  BarComplex bc(ctx.A, o.max_words);
  bool ok = true;
  ojson arr = ojson::array();
  if (o.format == "csv") out << "degree,minimal,bar\n";
  for (int n = 0; n <= o.max_degree; ++n) {
    std::size_t minimal = H.space(n).total(), bar = bc.dimension(n);
    ok = ok && minimal == bar;
    if (o.format == "json")
      arr.push_back({{"degree", n}, {"minimal", minimal}, {"bar", bar}});
    else if (o.format == "csv")
      out << n << "," << minimal << "," << bar << "\n";
    else
      out << "H^" << n << ": minimal " << minimal << ", bar " << bar << (minimal == bar ? "" : "  MISMATCH") << "\n";
  }
  if (o.format == "json") emit(out, {{"agree", ok}, {"degrees", arr}});
  return ok ? kOk : kCheckFailed;
}

// Blocks and basis table of the three-vertex example, checked against the
// computed complex.
inline int run_table(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.file.empty() || (!o.builtin.empty() && o.builtin != "example83"))
    throw ValidationError("table is only defined for the example83 quiver");
  Options oo = o;
  oo.builtin = "example83";
  auto ctx = load(oo, err);
  const int N = ctx.A.N();
  if (N < 3) throw ValidationError("table needs N >= 3");
  const Quiver& q = ctx.A.quiver();
  Cohomology H(ctx.A, o.max_paths);
  CochainComplex& cx = H.complex();
  bool ok = true;
  ojson degrees = ojson::array();
  if (o.format == "csv") out << "degree,row,kind,element,verified\n";
  auto block_text = [](const Matrix& m) {
    std::string s;
    for (const auto& row : m.dense()) {
      s += "    [";
      for (std::size_t c = 0; c < row.size(); ++c) s += (c ? " " : "") + to_string(row[c]);
      s += "]\n";
    }
    return s;
  };
  for (int n = 0; n <= o.max_degree; ++n) {
    const auto& sp = H.space(n);
    auto cells = ex83::table(n, N);
    Echelon indep(cx.basis(n).size());
    for (const auto& b : sp.image) indep.insert(cx.basis(n).to_vec(b));
    std::size_t listed = 0;
    ojson jcells = ojson::array();
    if (o.format == "text") out << "H^" << n << " (dim " << sp.total() << ")\n";
    for (const auto& cell : cells) {
      ojson jc = {{"row", cell.row}, {"cocycles", ojson::array()}, {"coboundaries", ojson::array()}};
      for (const auto& f : cell.cocycles) {
        bool good = H.is_cocycle(f) && indep.insert(cx.basis(n).to_vec(f));
        ok = ok && good;
        ++listed;
        std::string e = format_cochain(q, f);
        if (o.format == "text") out << "  row " << cell.row << " class      " << e << (good ? "" : "  FAILED") << "\n";
        if (o.format == "csv") out << n << "," << cell.row << ",class,\"" << e << "\"," << (good ? "true" : "false") << "\n";
        jc["cocycles"].push_back({{"element", cochain_json(q, f)}, {"verified", good}});
      }
      for (const auto& f : cell.coboundaries) {
        bool good = H.is_coboundary(f);
        ok = ok && good;
        std::string e = format_cochain(q, f);
        if (o.format == "text") out << "  row " << cell.row << " coboundary " << e << (good ? "" : "  FAILED") << "\n";
        if (o.format == "csv") out << n << "," << cell.row << ",coboundary,\"" << e << "\"," << (good ? "true" : "false") << "\n";
        jc["coboundaries"].push_back({{"element", cochain_json(q, f)}, {"verified", good}});
      }
      jcells.push_back(jc);
    }
    const bool complete = listed == sp.total();
    ok = ok && complete;
    if (o.format == "text" && !complete) out << "  listed " << listed << " classes, expected " << sp.total() << "\n";
    ojson blocks = ojson::array();
    std::vector<std::tuple<std::string, int, int>> shown;
    if (n % 2 == 0)
      for (int j = 0; j <= N - 2; ++j) shown.emplace_back("D_" + std::to_string(j) + "^" + std::to_string(n), j, j + 1);
    else
      shown.emplace_back("D_0^" + std::to_string(n), 0, N - 1);
    for (const auto& [label, s, t] : shown) {
      Matrix b = ex83::display_block(cx, n, s, t);
      if (o.format == "text") out << "  [" << label << "]\n" << block_text(b);
      ojson rows = ojson::array();
      for (const auto& row : b.dense()) {
        ojson r = ojson::array();
        for (const auto& v : row) r.push_back(to_string(v));
        rows.push_back(r);
      }
      blocks.push_back({{"name", label}, {"matrix", rows}});
    }
    degrees.push_back({{"degree", n}, {"dim", sp.total()}, {"cells", jcells}, {"blocks", blocks}});
  }
  if (o.format == "json") emit(out, {{"N", N}, {"verified", ok}, {"degrees", degrees}});
  if (o.format == "text") out << (ok ? "table verified" : "table check failed") << "\n";
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------- dispatch

inline int execute(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hochschild cohomology of truncated quiver algebras", "tqa"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s, bool needs_degree) {
    s->add_option("--builtin", o.builtin, "built-in quiver: example83, loop, cycle<c>, tensor<r>, a<n>, example7-1, example7-2");
    s->add_option("--file", o.file, "quiver file (line DSL or JSON)");
    s->add_option("--N", o.N, "truncation; overrides the file value");
    if (needs_degree) s->add_option("--max-degree", o.max_degree, "highest cohomological degree")->check(CLI::NonNegativeNumber);
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    s->add_option("--max-paths", o.max_paths, "cap on path and pair enumeration")->check(CLI::PositiveNumber);
    s->add_option("--max-words", o.max_words, "cap on bar word enumeration")->check(CLI::PositiveNumber);
  };
  auto* paths_cmd = app.add_subcommand("paths", "list paths of a given length, or the algebra basis");
  common(paths_cmd, false);
  paths_cmd->add_option("--m", o.m, "path length");
  auto* coh = app.add_subcommand("cohomology", "dimensions and representatives per degree and row");
  common(coh, true);
  auto* med = app.add_subcommand("medals", "movement classes of Delta_i || Delta_m");
  common(med, false);
  med->add_option("--i", o.i, "length of the first path");
  med->add_option("--m", o.m, "length of the second path");
  auto* cupc = app.add_subcommand("cup", "product of two classes given as c:(alpha,pi) + ...");
  common(cupc, false);
  cupc->add_option("--left", o.left, "left class");
  cupc->add_option("--right", o.right, "right class");
  auto* ver = app.add_subcommand("verify", "resolution, comparison, complex and ring identities");
  common(ver, true);
  auto* tab = app.add_subcommand("table", "blocks and basis table for example83");
  common(tab, true);
  auto* orc = app.add_subcommand("oracle", "compare dimensions with the bar complex");
  common(orc, true);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (o.max_degree < 0) o.max_degree = 0;
  try {
    if (paths_cmd->parsed()) return run_paths(o, out, err);
    if (coh->parsed()) return run_cohomology(o, out, err);
    if (med->parsed()) return run_medals(o, out, err);
    if (cupc->parsed()) return run_cup(o, out, err);
    if (ver->parsed()) return run_verify(o, out, err);
    if (tab->parsed()) return run_table(o, out, err);
    if (orc->parsed()) return run_oracle(o, out, err);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace tqa::cli
