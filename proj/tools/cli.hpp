#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "parikh/parikh.hpp"

namespace parikh::cli {

enum Exit : int {
  kOk = 0,
  kFalse = 1,
  kUsage = 2,
  kDomain = 3,
  kInconclusive = 4,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string normalize = "off";  // parikh: off | step | final
  std::optional<std::string> bound;
  bool exact = false;
  bool report_size = false;
  std::optional<std::string> vector;
  std::optional<std::string> matrix;
  std::optional<std::string> target;
  std::optional<std::string> box;
  bool signed_box = false;
  std::string format = "json";  // json | text
  bool exit_status = false;
  bool verbose = false;
};

namespace detail {

inline NormalizeMode mode_from(const RunConfig& c) {
  if (c.bound && c.exact) throw malformed_input("--exact and --bound are mutually exclusive");
  if (!c.bound) return NormalizeMode::exact();
  Integer b = parse_integer(*c.bound);
  if (b < 0) throw malformed_input("--bound must be nonnegative");
  return NormalizeMode::bounded(b);
}

inline std::optional<NormalizeMode> explicit_mode(const RunConfig& c) {
  if (c.bound || c.exact) return mode_from(c);
  return std::nullopt;
}

inline const std::string& input(const RunConfig& c, std::size_t i, const char* what) {
  if (c.inputs.size() <= i) throw malformed_input(std::string("missing ") + what);
  return c.inputs[i];
}

inline Box box_from(const RunConfig& c, std::size_t dim, bool signed_box) {
  if (!c.box) throw malformed_input("--box is required");
  Integer r = parse_integer(*c.box);
  if (r < 0) throw malformed_input("--box must be nonnegative");
  return Box(dim, r, signed_box || c.signed_box);
}

inline long long small_int(const std::string& s, const char* what) {
  Integer v = parse_integer(s);
  if (v < -1'000'000 || v > 1'000'000) throw malformed_input(std::string(what) + " out of range");
  return static_cast<long long>(v);
}

inline bool basis_signed(const SemilinearBasis& b) {
  for (const auto& lb : b) {
    if (!lb.offset.is_nonnegative() || !lb.generators.is_nonnegative()) return true;
  }
  return false;
}

inline io::Json points_json(std::size_t dim, const PointSet& pts) {
  io::Json j;
  j["dim"] = dim;
  io::Json arr = io::Json::array();
  for (const auto& p : pts) arr.push_back(io::vector_json(p));
  j["points"] = std::move(arr);
  return j;
}

inline void emit_basis(const RunConfig& c, std::ostream& out, const SemilinearBasis& b,
                       std::optional<bool> verified) {
  if (c.format == "text") {
    out << b.to_string() << "\n";
    if (verified) out << (*verified ? "verified" : "unverified") << "\n";
    if (c.report_size) out << "unary size " << io::unary_size(b).str() << "\n";
    return;
  }
  io::Json j = io::to_json(b);
  if (verified) j["verified"] = *verified;
  if (c.report_size) j["unary_size"] = io::unary_size(b).str();
  out << io::dump(j);
}

enum class InputKind { nfa, basis, generators };

inline InputKind kind_of(const io::Json& j) {
  if (j.is_object()) {
    if (j.contains("transitions")) return InputKind::nfa;
    if (j.contains("bases")) return InputKind::basis;
    if (j.contains("generators")) return InputKind::generators;
  }
  throw malformed_input("cannot tell the input format (expected an NFA, a semilinear basis or a "
                        "generator set)");
}

inline int cmd_parikh(const RunConfig& c, std::ostream& out) {
  const std::string& path = input(c, 0, "NFA file");
  Nfa a = io::nfa_from_json(io::load_json(path), path);
  ImageNormalization norm;
  if (c.normalize == "step") norm = ImageNormalization::per_step(mode_from(c));
  else if (c.normalize == "final") norm = ImageNormalization::at_end(mode_from(c));
  else if (c.normalize != "off")
    throw malformed_input("--normalize must be off, step or final");
  ParikhImage img = parikh_image(a, norm);
  emit_basis(c, out, img.basis,
             norm.kind == ImageNormalization::Kind::off ? std::nullopt
                                                        : std::optional<bool>(img.verified));
  return kOk;
}

inline int cmd_normalize(const RunConfig& c, std::ostream& out) {
  const std::string& path = input(c, 0, "semilinear basis file");
  SemilinearBasis b = io::semilinear_from_json(io::load_json(path), path);
  SemilinearForm f = normalize_semilinear(b, mode_from(c));
  emit_basis(c, out, f.basis, f.verified);
  return kOk;
}

inline int truth(const RunConfig& c, std::ostream& out, const MemberResult& r) {
  if (!r.member && !r.verified) {
    out << "inconclusive\n";
    return kInconclusive;
  }
  out << (r.member ? "true" : "false") << "\n";
  return c.exit_status && !r.member ? kFalse : kOk;
}

inline int cmd_member(const RunConfig& c, std::ostream& out) {
  const std::string& path = input(c, 0, "NFA or semilinear basis file");
  if (!c.vector) throw malformed_input("--vector is required");
  IntVector b = io::parse_vector(*c.vector);
  io::Json j = io::load_json(path);
  DecisionSession session;
  switch (kind_of(j)) {
    case InputKind::nfa:
      return truth(c, out,
                   session.nfa_member(io::nfa_from_json(j, path), b, {}, explicit_mode(c)));
    case InputKind::basis:
      return truth(c, out,
                   session.semilinear_member(b, io::semilinear_from_json(j, path),
                                             explicit_mode(c)));
    default:
      throw malformed_input(path + ": member expects an NFA or a semilinear basis");
  }
}

inline int cmd_ip(const RunConfig& c, std::ostream& out) {
  if (!c.matrix) throw malformed_input("--matrix is required");
  if (!c.target) throw malformed_input("--target is required");
  const std::string& m = *c.matrix;
  io::Json mj = m.find('[') != std::string::npos ? io::parse_json(m, "matrix") : io::load_json(m);
  IpInstance inst = IpInstance::from_rows(io::parse_matrix(mj, "matrix"), io::parse_vector(*c.target));
  Feasibility f = ip_feasible(inst, mode_from(c));
  out << f.to_string() << "\n";
  if (f.status == Feasibility::Status::inconclusive) return kInconclusive;
  return c.exit_status && !f.feasible() ? kFalse : kOk;
}

inline int cmd_gen(const RunConfig& c, std::ostream& out) {
  const std::string& what = input(c, 0, "fixture name");
  auto arg = [&](std::size_t i, const char* name) {
    return small_int(input(c, i, name), name);
  };
  if (what == "partition-dfa") out << io::dump(io::to_json(gen_partition_dfa(arg(1, "n"), arg(2, "k"))));
  else if (what == "quadratic-dfa") out << io::dump(io::to_json(gen_quadratic_dfa(arg(1, "n"))));
  else if (what == "doubling-cfg") out << io::dump(io::to_json(gen_doubling_cfg(arg(1, "n"))));
  else if (what == "ham-dfa") {
    const std::string& path = input(c, 1, "graph file");
    out << io::dump(io::to_json(gen_hamiltonian_dfa(io::graph_from_json(io::load_json(path), path))));
  } else {
    throw malformed_input("unknown fixture \"" + what +
                          "\" (partition-dfa, quadratic-dfa, doubling-cfg, ham-dfa)");
  }
  return kOk;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const std::string& what = input(c, 0, "oracle kind");
  const std::string& path = input(c, 1, "input file");
  io::Json j = io::load_json(path);
  if (what == "cone") {
    GeneratorSet g = io::generators_from_json(j, path);
    Box box = box_from(c, g.dim(), !g.is_nonnegative());
    out << io::dump(points_json(g.dim(), oracle_cone_points(g, box)));
  } else if (what == "parikh") {
    Nfa a = io::nfa_from_json(j, path);
    Box box = box_from(c, a.alphabet_size(), false);
    out << io::dump(points_json(a.alphabet_size(), oracle_parikh_points(a, box)));
  } else if (what == "semilinear") {
    SemilinearBasis b = io::semilinear_from_json(j, path);
    Box box = box_from(c, b.dim(), basis_signed(b));
    out << io::dump(points_json(b.dim(), oracle_semilinear_points(b, box)));
  } else {
    throw malformed_input("unknown oracle \"" + what + "\" (cone, parikh, semilinear)");
  }
  return kOk;
}

/// Algorithm output against the matching oracle on a box.
inline int cmd_check(const RunConfig& c, std::ostream& out) {
  const std::string& path = input(c, 0, "NFA or generator file");
  io::Json j = io::load_json(path);
  BoxComparison cmp;
  bool verified = true;
  switch (kind_of(j)) {
    case InputKind::nfa: {
      Nfa a = io::nfa_from_json(j, path);
      Box box = box_from(c, a.alphabet_size(), false);
      ParikhImage img = parikh_image(a);
      cmp = compare_on_box(oracle_semilinear_points(img.basis, box), oracle_parikh_points(a, box), box);
      break;
    }
    case InputKind::generators: {
      GeneratorSet g = io::generators_from_json(j, path).without_zero();
      if (g.empty()) throw malformed_input(path + ": generator set has no nonzero vector");
      Box box = box_from(c, g.dim(), !g.is_nonnegative());
      ConeNormalForm f = normalize_cone(g, mode_from(c));
      verified = f.verified;
      cmp = compare_on_box(oracle_semilinear_points(f.basis, box), oracle_cone_points(g, box), box);
      break;
    }
    case InputKind::basis: {
      SemilinearBasis b = io::semilinear_from_json(j, path);
      Box box = box_from(c, b.dim(), basis_signed(b));
      SemilinearForm f = normalize_semilinear(b, mode_from(c));
      verified = f.verified;
      cmp = compare_on_box(oracle_semilinear_points(f.basis, box), oracle_semilinear_points(b, box), box);
      break;
    }
  }
  if (cmp.equal) {
    out << "equal" << (verified ? "" : " (bounded mode)") << "\n";
    return kOk;
  }
  out << "counterexample " << cmp.witness->to_string()
      << (cmp.side == BoxComparison::Side::lhs_only ? " in algorithm only" : " in oracle only")
      << "\n";
  return c.exit_status ? kFalse : kOk;
}

}  // namespace detail

/// Runs one subcommand; diagnostics go to err.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.format != "json" && c.format != "text")
      throw malformed_input("--format must be json or text");
    if (c.command == "parikh") return detail::cmd_parikh(c, out);
    if (c.command == "normalize") return detail::cmd_normalize(c, out);
    if (c.command == "member") return detail::cmd_member(c, out);
    if (c.command == "ip") return detail::cmd_ip(c, out);
    if (c.command == "gen") return detail::cmd_gen(c, out);
    if (c.command == "oracle") return detail::cmd_oracle(c, out);
    if (c.command == "check") return detail::cmd_check(c, out);
    throw malformed_input("unknown subcommand \"" + c.command + "\"");
  } catch (const malformed_input& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int main_with_args(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parikh images, semilinear normal forms, membership and integer programs"};
  app.require_subcommand(1);
  RunConfig c;
  c.format = "json";

  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_flag("-v,--verbose", c.verbose);
  };
  auto bound = [&](CLI::App* s) {
    s->add_option("--bound", c.bound, "bounded-mode table size");
  };

  auto* parikh = app.add_subcommand("parikh", "semilinear basis of an NFA's Parikh image");
  parikh->add_option("nfa", c.inputs, "NFA file")->required();
  parikh->add_option("--normalize", c.normalize, "off, step or final")
      ->check(CLI::IsMember({"off", "step", "final"}));
  bound(parikh);
  parikh->add_flag("--report-size", c.report_size, "include the unary size");
  common(parikh);

  auto* normalize = app.add_subcommand("normalize", "rewrite a semilinear basis into normal form");
  normalize->add_option("basis", c.inputs, "semilinear basis file")->required();
  normalize->add_flag("--exact", c.exact);
  bound(normalize);
  normalize->add_flag("--report-size", c.report_size);
  common(normalize);

  auto* member = app.add_subcommand("member", "membership of a vector");
  member->add_option("input", c.inputs, "NFA or semilinear basis file")->required();
  member->add_option("--vector", c.vector, "query vector, e.g. [3,1]")->required();
  member->add_flag("--exit-status", c.exit_status, "exit 1 when not a member");
  member->add_flag("--exact", c.exact);
  bound(member);
  common(member);

  auto* ip = app.add_subcommand("ip", "feasibility of A x = b over the naturals");
  ip->add_option("--matrix", c.matrix, "row-major matrix inline or a file")->required();
  ip->add_option("--target", c.target, "right-hand side b")->required();
  ip->add_flag("--exit-status", c.exit_status, "exit 1 when infeasible");
  bound(ip);
  common(ip);

  auto* gen = app.add_subcommand("gen", "fixture automata and grammars");
  gen->add_option("args", c.inputs, "partition-dfa N K | quadratic-dfa N | doubling-cfg N | ham-dfa GRAPH")
      ->required();
  common(gen);

  auto* oracle = app.add_subcommand("oracle", "brute-force point sets on a box");
  oracle->add_option("args", c.inputs, "cone|parikh|semilinear FILE")->required();
  oracle->add_option("--box", c.box, "box radius")->required();
  oracle->add_flag("--signed", c.signed_box, "use {-R..R}^k");
  common(oracle);

  auto* check = app.add_subcommand("check", "compare an algorithm with its oracle on a box");
  check->add_option("input", c.inputs, "NFA, generator set or semilinear basis file")->required();
  check->add_option("--box", c.box, "box radius")->required();
  check->add_flag("--exit-status", c.exit_status, "exit 1 on a counterexample");
  bound(check);
  check->add_flag("--signed", c.signed_box, "use {-R..R}^k");
  common(check);

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
    return kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace parikh::cli
