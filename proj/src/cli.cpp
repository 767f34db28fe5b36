#include "fnf/cli.hpp"

#include <cstdint>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "fnf/algorithms.hpp"
#include "fnf/sinkhorn.hpp"
#include "fnf/state_io.hpp"

namespace fnf {

namespace {

using nlohmann::json;

struct Options {
  std::string path;
  std::string out_path;
  std::uint64_t seed = 0;
  Tolerances tol;
  bool json = false;
  bool embed = false;
};

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Equivalent: return kEquivalent;
    case Outcome::NotEquivalent: return kNotEquivalent;
    case Outcome::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

BipartiteState load(const Options& opt, bool allow_embed) {
  BipartiteState b = read_state_file(opt.path, opt.tol);
  if (allow_embed && opt.embed) return embed_rectangular(b, opt.tol);
  return b;
}

json not_ppt_json() {
  return json{{"outcome", "inconclusive"}, {"blocks", json::array()}, {"min_f", nullptr},
              {"gram_min_eig", nullptr},   {"iterations", 0},          {"stage", "not-ppt"},
              {"flags", json::array()}};
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << "outcome: " << to_string(v.outcome) << "\n";
  out << "iterations: " << v.iterations << "\n";
  for (std::size_t i = 0; i < v.blocks.size(); ++i) {
    out << "block " << i << ": rank " << v.blocks[i].v.rank() << ", lambda "
        << v.blocks[i].lambda << "\n";
  }
  if (v.witness) {
    out << "stage: " << to_string(v.witness->stage) << "\n";
    if (v.witness->min_f) out << "min_f: " << *v.witness->min_f << "\n";
    if (v.witness->gram_min_eig) out << "gram_min_eig: " << *v.witness->gram_min_eig << "\n";
  }
  for (const auto& f : v.flags) out << "flag: " << f << "\n";
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const BipartiteState a = load(opt, false);
  const auto v = find_full_rank_vector(a, 64, opt.seed, opt.tol);
  json report{{"k", a.k()},
              {"m", a.m()},
              {"trace", a.matrix().trace().real()},
              {"rank", rank_eps(a.matrix(), opt.tol)},
              {"ppt", is_ppt(a, opt.tol)},
              {"partial_trace_first", matrix_json(partial_trace_first(a).matrix())},
              {"partial_trace_second", matrix_json(partial_trace_second(a).matrix())},
              {"full_rank_vector", v ? matrix_json(ComplexMatrix(*v)) : json(nullptr)},
              {"operator_schmidt_rank", operator_schmidt(a, opt.tol).size()}};
  if (opt.json) {
    out << report.dump() << "\n";
  } else {
    out << "dims: " << a.k() << " x " << a.m() << "\n";
    out << "trace: " << report["trace"].get<double>() << "\n";
    out << "rank: " << report["rank"].get<long long>() << "\n";
    out << "ppt: " << (report["ppt"].get<bool>() ? "true" : "false") << "\n";
    out << "full-rank vector: " << (v ? "found" : "not found") << "\n";
    out << "operator-Schmidt rank: " << report["operator_schmidt_rank"].get<std::size_t>() << "\n";
  }
  return 0;
}

int cmd_decide(const Options& opt, std::ostream& out, std::ostream& err) {
  const BipartiteState b = load(opt, true);
  if (b.k() != b.m()) {
    err << "decide needs square factors; pass --embed for a rectangular state\n";
    return kMalformed;
  }
  try {
    const Verdict v = algorithm3_decide(b, std::nullopt, opt.tol, opt.seed);
    if (opt.json) {
      out << verdict_json(v).dump() << "\n";
    } else {
      print_verdict(out, v);
    }
    return exit_for(v.outcome);
  } catch (const NotPptError&) {
    if (opt.json) {
      out << not_ppt_json().dump() << "\n";
    } else {
      out << "outcome: inconclusive\nstage: not-ppt\n";
    }
    return kInconclusive;
  }
}

int cmd_normal_form(const Options& opt, std::ostream& out, std::ostream& err) {
  const BipartiteState b = load(opt, true);
  if (b.k() != b.m()) {
    err << "normal-form needs square factors; pass --embed for a rectangular state\n";
    return kMalformed;
  }
  Verdict v;
  try {
    v = algorithm3_decide(b, std::nullopt, opt.tol, opt.seed);
  } catch (const NotPptError&) {
    err << "state is not PPT and no shortcut applies\n";
    return kInconclusive;
  }
  if (v.outcome != Outcome::Equivalent) {
    err << "no filter normal form: " << to_string(v.outcome) << "\n";
    return exit_for(v.outcome);
  }
  const NormalForm nf = filter_normal_form(b, v, opt.tol);
  write_state_file(opt.out_path, nf.state);
  {
    std::ofstream filters(opt.out_path + ".filters.json");
    if (!filters) throw Error("cannot write " + opt.out_path + ".filters.json");
    filters << json{{"R", matrix_json(nf.r)}, {"S", matrix_json(nf.s)}}.dump() << "\n";
  }
  json report{{"outcome", to_string(v.outcome)},
              {"blocks", verdict_json(v)["blocks"]},
              {"partial_trace_residual", nf.residual},
              {"sinkhorn_iterations", nf.iterations}};
  if (b.k() == 2) {
    const PauliCoefficients pc = pauli_coefficients(nf.state);
    report["pauli_lambda"] = pc.lambda;
    report["pauli_cross_terms_norm"] = pc.cross_terms_norm;
    report["separability_inequality"] = check_2x2_inequality(pc.lambda);
  }
  if (opt.json) {
    out << report.dump() << "\n";
  } else {
    out << "outcome: equivalent\n";
    out << "partial-trace residual: " << nf.residual << "\n";
    out << "sinkhorn iterations: " << nf.iterations << "\n";
    if (b.k() == 2) {
      const auto lam = report["pauli_lambda"].get<std::vector<double>>();
      out << "pauli lambda:";
      for (double l : lam) out << " " << l;
      out << "\nseparability inequality: "
          << (report["separability_inequality"].get<bool>() ? "holds" : "fails") << "\n";
    }
    out << "wrote " << opt.out_path << " and " << opt.out_path << ".filters.json\n";
  }
  return kEquivalent;
}

int cmd_embed(const Options& opt, std::ostream& out) {
  const BipartiteState b = read_state_file(opt.path, opt.tol);
  const BipartiteState e = embed_rectangular(b, opt.tol);
  write_state_file(opt.out_path, e);
  if (opt.json) {
    out << json{{"k", e.k()}, {"m", e.m()}, {"pairs", operator_schmidt(b, opt.tol).size()}}.dump()
        << "\n";
  } else {
    out << "wrote " << e.k() << " x " << e.m() << " state to " << opt.out_path << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filter normal forms of PPT bipartite states", "fnf"};
  app.require_subcommand(1);
  Options opt;
  const auto common = [&opt](CLI::App* cmd) {
    cmd->add_option("path", opt.path, "state file")->required();
    cmd->add_option("--seed", opt.seed, "seed for the full-rank vector search");
    cmd->add_option("--tol-rank", opt.tol.rank_rel, "relative singular-value cutoff");
    cmd->add_option("--tol-zero-f", opt.tol.zero_f, "zero threshold for the quadratic minimum");
    cmd->add_option("--tol-residual", opt.tol.sinkhorn_residual, "Sinkhorn residual target");
    cmd->add_flag("--json", opt.json, "machine-readable output");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "summarize a state");
  common(analyze);
  CLI::App* decide = app.add_subcommand("decide", "decide equivalence to a doubly stochastic map");
  common(decide);
  decide->add_flag("--embed", opt.embed, "embed a rectangular state first");
  CLI::App* normal = app.add_subcommand("normal-form", "compute the filter normal form");
  common(normal);
  normal->add_option("out_path", opt.out_path, "output state file")->required();
  normal->add_flag("--embed", opt.embed, "embed a rectangular state first");
  CLI::App* embed = app.add_subcommand("embed", "embed a rectangular state into a square one");
  common(embed);
  embed->add_option("out_path", opt.out_path, "output state file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kMalformed;
  }
  try {
    opt.tol.validate();
    if (analyze->parsed()) return cmd_analyze(opt, out);
    if (decide->parsed()) return cmd_decide(opt, out, err);
    if (normal->parsed()) return cmd_normal_form(opt, out, err);
    return cmd_embed(opt, out);
  } catch (const FormatError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const NotPsdError& e) {
    err << "not positive semidefinite: " << e.what() << "\n";
    return kNotPsd;
  } catch (const DimensionError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace fnf
