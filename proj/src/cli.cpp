#include "cjw/cli.hpp"

#include "cjw/homology.hpp"
#include "cjw/projector.hpp"
#include "cjw/simplify.hpp"
#include "cjw/spin.hpp"
#include "cjw/tangle.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace cjw {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text << "\n";
}

struct Options {
  int n = 2, len = 8, window = 3, order = PowerSeries::kExact, strands = 0, color = 2, max_degree = 5;
  long long alpha = 0;
  bool json = false, trace = false;
  std::string out_path, in_path, braid, net_path;
  std::vector<int> labels;
};

using Action = std::function<void(std::ostream&)>;

void add_tl(CLI::App& app, Options& o, Action& act) {
  auto* tl = app.add_subcommand("tl", "Temperley-Lieb algebra")->require_subcommand(1);
  auto* jw = tl->add_subcommand("jw", "Jones-Wenzl projector p_n");
  jw->add_option("--n", o.n, "strands")->required()->check(CLI::Range(1, 8));
  jw->add_flag("--json", o.json, "JSON map from matching to coefficient");
  jw->callback([&] {
    act = [&](std::ostream& out) { out << (o.json ? to_json(jones_wenzl(o.n)) : render(jones_wenzl(o.n))) << "\n"; };
  });
  auto* tr = tl->add_subcommand("trace", "trace of p_n");
  tr->add_option("--n", o.n, "strands")->required()->check(CLI::Range(1, 8));
  tr->callback([&] { act = [&](std::ostream& out) { out << trace(jones_wenzl(o.n)).quantum_str() << "\n"; }; });
}

void add_proj(CLI::App& app, Options& o, Action& act) {
  auto* proj = app.add_subcommand("proj", "truncated universal projectors")->require_subcommand(1);
  auto* build = proj->add_subcommand("build", "build P_{n,l} and print or save its JSON");
  build->add_option("--n", o.n, "strands")->required()->check(CLI::Range(1, 8));
  build->add_option("--len", o.len, "degrees kept")->required()->check(CLI::NonNegativeNumber);
  build->add_option("--out", o.out_path, "output file");
  build->callback([&] {
    act = [&](std::ostream& out) {
      const TruncatedProjector p = truncated_projector(o.n, o.len);
      if (o.out_path.empty()) {
        out << p.complex.json() << "\n";
      } else {
        write_file(o.out_path, p.complex.json());
        out << p.complex.summary();
      }
    };
  });
  auto* verify = proj->add_subcommand("verify", "check the universal-projector axioms");
  verify->add_option("--n", o.n, "strands")->required()->check(CLI::Range(2, 8));
  verify->add_option("--len", o.len, "degrees kept")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--window", o.window, "contractibility window")->check(CLI::PositiveNumber);
  verify->callback([&] {
    act = [&](std::ostream& out) {
      const UniversalReport r = verify_universal(o.n, o.len, o.window);
      out << r.str() << (r.ok ? "PASS" : "FAIL") << "\n";
    };
  });
  auto* eul = proj->add_subcommand("euler", "graded Euler characteristic of P_{n,l}");
  eul->add_option("--n", o.n, "strands")->required()->check(CLI::Range(1, 8));
  eul->add_option("--len", o.len, "degrees kept")->required()->check(CLI::NonNegativeNumber);
  eul->add_option("--order", o.order, "series order");
  eul->callback([&] {
    act = [&](std::ostream& out) { out << render(euler(truncated_projector(o.n, o.len).complex, o.order)) << "\n"; };
  });
}

void add_complex(CLI::App& app, Options& o, Action& act) {
  auto* cx = app.add_subcommand("complex", "chain complexes in JSON")->require_subcommand(1);
  auto* val = cx->add_subcommand("validate", "check d^2 = 0 and shapes");
  val->add_option("--in", o.in_path, "complex JSON")->required();
  val->callback([&] {
    act = [&](std::ostream& out) {
      const ValidationReport r = validate(ChainComplex::parse_json(read_file(o.in_path)));
      if (!r.ok) throw DomainError(r.message);
      out << "PASS\n";
    };
  });
  auto* red = cx->add_subcommand("reduce", "deloop and cancel isomorphisms");
  red->add_option("--in", o.in_path, "complex JSON")->required();
  red->add_flag("--trace", o.trace, "also print the reduction trace JSON");
  red->callback([&] {
    act = [&](std::ostream& out) {
      const Reduced r = reduce(ChainComplex::parse_json(read_file(o.in_path)));
      out << r.complex.json() << "\n";
      if (o.trace) out << r.trace.json() << "\n";
    };
  });
  auto* sum = cx->add_subcommand("summary", "objects per degree");
  sum->add_option("--in", o.in_path, "complex JSON")->required();
  sum->callback([&] { act = [&](std::ostream& out) { out << ChainComplex::parse_json(read_file(o.in_path)).summary(); }; });
}

void add_kh(CLI::App& app, Options& o, Action& act) {
  auto* kh = app.add_subcommand("kh", "braid closures")->require_subcommand(1);
  auto* jn = kh->add_subcommand("jones", "bracket of the closure via the reduced complex");
  jn->add_option("--braid", o.braid, "tokens s<i> / S<i>")->required();
  jn->add_option("--strands", o.strands, "strand count (default: inferred)")->check(CLI::NonNegativeNumber);
  jn->add_flag("--trace", o.trace, "also print the reduction trace JSON");
  jn->callback([&] {
    act = [&](std::ostream& out) {
      const BraidWord w = BraidWord::parse(o.braid, o.strands);
      const Reduced r = reduce(trace(braid_complex(w)));
      out << euler_closed(r.complex).str() << "\n";
      if (o.trace) out << r.trace.json() << "\n";
    };
  });
  auto* col = kh->add_subcommand("colored", "colored series from cabling with projectors");
  col->add_option("--braid", o.braid, "tokens s<i> / S<i>")->required();
  col->add_option("--strands", o.strands, "strand count (default: inferred)")->check(CLI::NonNegativeNumber);
  col->add_option("--color", o.color, "cable color m")->required()->check(CLI::Range(1, 4));
  col->add_option("--len", o.len, "projector length")->required()->check(CLI::NonNegativeNumber);
  col->add_option("--order", o.order, "series order");
  col->callback([&] {
    act = [&](std::ostream& out) {
      out << colored_jones(BraidWord::parse(o.braid, o.strands), o.color, o.len, o.order).str() << "\n";
    };
  });
}

void add_homology(CLI::App& app, Options& o, Action& act) {
  auto* h = app.add_subcommand("homology", "homology of closed complexes")->require_subcommand(1);
  auto* tr = h->add_subcommand("trace", "homology of the trace of P_n");
  tr->add_option("--n", o.n, "strands")->check(CLI::Range(1, 8));
  tr->add_option("--alpha", o.alpha, "integer value of alpha");
  auto* len = tr->add_option("--len", o.len, "projector length (default: max degree + 1)")->check(CLI::NonNegativeNumber);
  tr->add_option("--max-degree", o.max_degree, "last homological degree")->check(CLI::NonNegativeNumber);
  tr->add_flag("--json", o.json, "JSON entries");
  tr->callback([&, len] {
    act = [&, len](std::ostream& out) {
      const int l = len->count() ? o.len : o.max_degree + 1;
      const GradedHomology g = graded_homology(trace(truncated_projector(o.n, l).complex), o.alpha, o.max_degree);
      if (o.json) {
        out << g.json() << "\n";
        return;
      }
      for (int k = 0; k <= o.max_degree; ++k) out << "H" << k << " = " << g.str(k) << "\n";
    };
  });
}

void add_spin(CLI::App& app, Options& o, Action& act) {
  auto* sp = app.add_subcommand("spin", "classical spin networks")->require_subcommand(1);
  auto* ev = sp->add_subcommand("eval", "evaluate a closed network");
  ev->add_option("--net", o.net_path, "network JSON")->required();
  ev->callback([&] {
    act = [&](std::ostream& out) { out << evaluate(SpinNetwork::parse_json(read_file(o.net_path))).quantum_str() << "\n"; };
  });
  auto* sj = sp->add_subcommand("sixj", "6j symbols: horizontal basis in the vertical one");
  sj->add_option("--labels", o.labels, "boundary labels a b c d")->required()->expected(4);
  sj->add_flag("--json", o.json, "JSON matrix");
  sj->callback([&] {
    act = [&](std::ostream& out) {
      const BasisChange s = sixj(o.labels[0], o.labels[1], o.labels[2], o.labels[3]);
      out << (o.json ? s.json() + "\n" : s.str());
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Categorified Jones-Wenzl projectors", "cjw");
  app.require_subcommand(1);
  Options o;
  Action act;
  add_tl(app, o, act);
  add_proj(app, o, act);
  add_complex(app, o, act);
  add_kh(app, o, act);
  add_homology(app, o, act);
  add_spin(app, o, act);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    act(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace cjw
