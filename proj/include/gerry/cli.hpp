#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gerry/io.hpp"

namespace gerry {

/// File access for the CLI. The stdio mode swaps in an in-memory map.
struct CliEnv {
  std::function<std::string(const std::string&)> read;
  std::function<void(const std::string&, const std::string&)> write;

  static CliEnv filesystem() {
    CliEnv e;
    e.read = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) fail(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    e.write = [](const std::string& path, const std::string& data) {
      std::ofstream out(path, std::ios::binary);
      if (!out) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
      out << data;
    };
    return e;
  }

  static CliEnv memory(std::map<std::string, std::string>& files) {
    CliEnv e;
    e.read = [&files](const std::string& path) {
      auto it = files.find(path);
      if (it == files.end()) fail(ErrorCode::InvalidArgument, "no virtual file '" + path + "'");
      return it->second;
    };
    e.write = [&files](const std::string& path, const std::string& data) { files[path] = data; };
    return e;
  }
};

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitClaimFailed = 2, kExitBudget = 3 };

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded: return kExitBudget;
    case ErrorCode::PartialPlan:
    case ErrorCode::EmptyDistrict:
    case ErrorCode::InvalidPlan:
    case ErrorCode::DisconnectedDistrict:
    case ErrorCode::NoValidPlanFound:
    case ErrorCode::TilingMismatch: return kExitClaimFailed;
    default: return kExitInvalidInput;
  }
}

namespace detail {

inline json error_json(std::string_view code, const std::string& msg) {
  return {{"error", std::string(code)}, {"message", msg}};
}

inline json load_json(const CliEnv& env, const std::string& path) {
  std::string text = env.read(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline BalanceCriterion balance_for(const std::string& spec, const MapInstance& map) {
  if (spec == "none") return BalanceCriterion::additive(map.total_pop());
  return BalanceCriterion::parse(spec);
}

inline Party parse_party(const std::string& s) {
  if (s == "A" || s == "a") return Party::A;
  if (s == "B" || s == "b") return Party::B;
  fail(ErrorCode::InvalidArgument, "party must be A or B");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "not an integer: '" + t + "'");
    }
  }
  return out;
}

inline std::vector<std::int64_t> parse_int64_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "not an integer: '" + t + "'");
    }
  }
  return out;
}

inline json plan_json(const MapInstance& map, const Plan& p) { return plan_file_to_json(to_plan_file(map, p)); }

}  // namespace detail

/// Runs one CLI invocation. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const CliEnv& env = CliEnv::filesystem()) {
  CLI::App app{"Redistricting models, exact enumeration, local search and hardness gadgets", "gerry"};
  app.require_subcommand(1);

  std::string map_path, plan_path, balance, objective_s, tie_pref = "A", metrics_s = "effgap";
  std::string csv_path, out_path, trace_path, anneal_s, mode_s, graph_path, set_s, variant_s = "a";
  std::string c_s = "11/10", eps_s, emit_trivial;
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> budget_seconds;
  std::size_t max_best = 256;
  std::uint64_t seed = 0;
  int restarts = 1, iters = 1000, kappa = 2;
  unsigned threads = 0;
  bool illustration = false;

  auto* validate = app.add_subcommand("validate", "Check a plan against connectivity and balance");
  validate->add_option("--map", map_path)->required();
  validate->add_option("--plan", plan_path)->required();
  validate->add_option("--balance", balance)->required();

  auto* score = app.add_subcommand("score", "Partisan metrics of a plan");
  score->add_option("--map", map_path)->required();
  score->add_option("--plan", plan_path)->required();
  score->add_option("--tie-pref", tie_pref);
  score->add_option("--metrics", metrics_s, "effgap,bias:uniform,seatvote:RHO,compactness:L1:L2");
  score->add_option("--csv", csv_path, "per-district CSV");

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive enumeration of valid plans");
  enumerate->add_option("--map", map_path)->required();
  enumerate->add_option("--balance", balance)->required();
  enumerate->add_option("--objective", objective_s);
  enumerate->add_option("--tie-pref", tie_pref);
  enumerate->add_option("--budget", budget_nodes, "node budget");
  enumerate->add_option("--max-seconds", budget_seconds);
  enumerate->add_option("--max-best", max_best);

  auto* optimize_cmd = app.add_subcommand("optimize", "Local search over boundary flips");
  optimize_cmd->add_option("--map", map_path)->required();
  optimize_cmd->add_option("--balance", balance)->required();
  optimize_cmd->add_option("--objective", objective_s)->required();
  optimize_cmd->add_option("--tie-pref", tie_pref);
  optimize_cmd->add_option("--seed", seed);
  optimize_cmd->add_option("--restarts", restarts);
  optimize_cmd->add_option("--iters", iters);
  optimize_cmd->add_option("--anneal", anneal_s, "T0:DECAY");
  optimize_cmd->add_option("--threads", threads);
  optimize_cmd->add_option("-o,--out", out_path, "best plan");
  optimize_cmd->add_option("--trace", trace_path, "objective trace CSV");

  auto* gen = app.add_subcommand("gen-gadget", "Generate a hardness gadget map");
  gen->require_subcommand(1);
  auto* gen_sv = gen->add_subcommand("seatvote", "Seat-vote grid gadget from a PARTITION instance");
  gen_sv->add_option("--set", set_s)->required();
  gen_sv->add_option("--kappa", kappa)->required();
  gen_sv->add_option("--variant", variant_s);
  gen_sv->add_option("--c", c_s);
  gen_sv->add_flag("--illustration", illustration);
  gen_sv->add_option("--emit-trivial", emit_trivial, "write the trivial plan here");
  gen_sv->add_option("-o,--out", out_path);
  auto* gen_mis = gen->add_subcommand("mis", "Planar gadget from a cubic planar graph");
  gen_mis->add_option("--graph", graph_path)->required();
  gen_mis->add_option("--epsilon", eps_s)->required();
  gen_mis->add_option("-o,--out", out_path);

  auto* verify = app.add_subcommand("verify-gadget", "Check a gadget's claims");
  verify->add_option("--map", map_path)->required();
  verify->add_option("--mode", mode_s, "completeness:SUBSET|soundness|upsilon:INDSET")->required();
  verify->add_option("--budget", budget_nodes);
  verify->add_option("--max-seconds", budget_seconds);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("UsageError", e.what()).dump() << '\n';
    return kExitInvalidInput;
  }

  try {
    auto load_map = [&]() { return map_from_json(detail::load_json(env, map_path)); };
    auto load_plan = [&](const MapInstance& m) {
      return to_plan(m, plan_file_from_json(detail::load_json(env, plan_path)));
    };
    Party tie = detail::parse_party(tie_pref);

    if (validate->parsed()) {
      auto mf = load_map();
      auto plan = load_plan(mf.map);
      auto rep = check_plan(mf.map, plan, detail::balance_for(balance, mf.map));
      out << validity_to_json(rep).dump(2) << '\n';
      return rep.valid() ? kExitOk : kExitClaimFailed;
    }

    if (score->parsed()) {
      auto mf = load_map();
      auto plan = load_plan(mf.map);
      const auto& map = mf.map;
      auto ds = district_stats(map, plan, tie);
      json j;
      j["metrics"] = metrics_to_json(report_from_stats(ds, map.total_pop(), map.total_party_a()));
      try {
        j["identity_residual"] = to_string(effgap_identity_residual(map, plan, tie));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PreconditionUnequalDistricts) throw;
        j["identity_residual"] = nullptr;
      }
      for (const auto& m : detail::split(metrics_s, ',')) {
        auto parts = detail::split(m, ':');
        if (parts.empty()) continue;
        if (parts[0] == "effgap") continue;
        if (parts[0] == "bias") {
          ShiftModel shift = ShiftModel::uniform();
          if (parts.size() > 1 && parts[1] != "uniform") {
            std::vector<Rational> betas;
            for (std::size_t i = 1; i < parts.size(); ++i) betas.push_back(parse_rational(parts[i]));
            shift = ShiftModel::explicit_betas(betas);
          }
          j["bias"] = to_string(partisan_bias(map, plan, shift, tie));
        } else if (parts[0] == "seatvote") {
          if (parts.size() != 2) fail(ErrorCode::InvalidArgument, "seatvote needs seatvote:RHO");
          auto f = seat_vote_factor(map, plan, {parse_rational(parts[1]), tie});
          json sv{{"value", f.infinite ? json("inf") : json(f.value())},
                  {"power", f.infinite ? json(nullptr) : json(to_string(f.power))},
                  {"root", f.root},
                  {"eq2_prime", f.from_eq2_prime}};
          auto ex = f.exact();
          sv["exact"] = ex ? json(to_string(*ex)) : json(nullptr);
          j["seatvote"] = sv;
        } else if (parts[0] == "compactness") {
          if (parts.size() != 3) fail(ErrorCode::InvalidArgument, "compactness needs compactness:L1:L2");
          auto l1 = PiScaled::pi_times(parse_rational(parts[1]));
          auto l2 = PiScaled::pi_times(parse_rational(parts[2]));
          auto ok = compactness_check(map, plan, l1, l2);
          json pp = json::array();
          for (const auto& cells : district_cells(map, plan)) pp.push_back(polsby_popper(map, cells).to_string());
          j["compactness"] = {{"polsby_popper", pp}, {"within_bounds", ok}};
        } else {
          fail(ErrorCode::InvalidArgument, "unknown metric '" + m + "'");
        }
      }
      if (!csv_path.empty()) {
        std::ostringstream csv;
        write_districts_csv(csv, ds);
        env.write(csv_path, csv.str());
      }
      out << j.dump(2) << '\n';
      return kExitOk;
    }

    if (enumerate->parsed()) {
      auto mf = load_map();
      std::optional<Objective> obj;
      if (!objective_s.empty()) {
        obj = Objective::parse(objective_s);
        obj->tie_pref = tie;
      }
      Budget b{budget_nodes, budget_seconds, max_best};
      auto res = enumerate_plans(mf.map, detail::balance_for(balance, mf.map), obj, b);
      json plans = json::array();
      for (const auto& p : res.best_plans) plans.push_back(detail::plan_json(mf.map, p));
      json j{{"count", res.count},
             {"exhausted", res.exhausted},
             {"nodes", res.nodes},
             {"objective", obj ? json(obj->to_string()) : json(nullptr)},
             {"best_value", objective_value_to_json(res.best_value)},
             {"best_plans", plans},
             {"best_plans_truncated", res.best_plans_truncated},
             {"undefined_objective", res.undefined_objective}};
      out << j.dump(2) << '\n';
      if (!res.exhausted) {
        err << detail::error_json(to_string(ErrorCode::BudgetExceeded), "enumeration stopped by budget").dump()
            << '\n';
        return kExitBudget;
      }
      return kExitOk;
    }

    if (optimize_cmd->parsed()) {
      auto mf = load_map();
      Objective obj = Objective::parse(objective_s);
      obj.tie_pref = tie;
      SearchParams sp;
      sp.seed = seed;
      sp.restarts = restarts;
      sp.max_iters = iters;
      sp.threads = threads;
      if (!anneal_s.empty()) {
        auto parts = detail::split(anneal_s, ':');
        if (parts.size() != 2) fail(ErrorCode::InvalidArgument, "anneal needs T0:DECAY");
        sp.anneal = Anneal{parse_rational(parts[0]), parse_rational(parts[1])};
      }
      auto res = optimize(mf.map, detail::balance_for(balance, mf.map), obj, sp);
      json plan = detail::plan_json(mf.map, res.plan);
      if (!out_path.empty()) env.write(out_path, plan.dump(2) + "\n");
      if (!trace_path.empty()) {
        std::ostringstream csv;
        write_trace_csv(csv, res.trace);
        env.write(trace_path, csv.str());
      }
      json j{{"objective", obj.to_string()},
             {"value", objective_value_to_json(res.value)},
             {"best_restart", res.best_restart},
             {"plan", plan}};
      out << j.dump(2) << '\n';
      return kExitOk;
    }

    if (gen_sv->parsed()) {
      if (variant_s != "a" && variant_s != "b") fail(ErrorCode::InvalidArgument, "variant must be a or b");
      PartitionInstance inst{detail::parse_int64_list(set_s)};
      auto g = gen_seatvote_grid(inst, kappa, variant_s == "a" ? Variant::A : Variant::B, parse_rational(c_s),
                                 illustration);
      json doc = map_to_json(g.map, gadget_metadata(g));
      if (!emit_trivial.empty())
        env.write(emit_trivial, detail::plan_json(g.map, seatvote_reference_plans(g).trivial).dump(2) + "\n");
      if (out_path.empty()) {
        out << doc.dump(2) << '\n';
      } else {
        env.write(out_path, doc.dump(2) + "\n");
        out << json{{"cells", g.map.size()},
                    {"kappa", g.kappa},
                    {"multiplier", g.values.multiplier},
                    {"W", g.W()},
                    {"q", g.q},
                    {"pop", g.map.total_pop()},
                    {"party_a", g.map.total_party_a()}}
                   .dump(2)
            << '\n';
      }
      return kExitOk;
    }

    if (gen_mis->parsed()) {
      auto G = graph_from_json(detail::load_json(env, graph_path));
      auto g = gen_mis_gadget(G, parse_rational(eps_s));
      json doc = map_to_json(g.map, gadget_metadata(g));
      if (out_path.empty()) {
        out << doc.dump(2) << '\n';
      } else {
        env.write(out_path, doc.dump(2) + "\n");
        out << json{{"cells", g.map.size()},
                    {"edges", g.map.edge_count()},
                    {"kappa", g.map.kappa()},
                    {"scale", rational_to_json(g.map.scale())}}
                   .dump(2)
            << '\n';
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      auto mf = load_map();
      std::string kind = mf.gadget.is_object() ? mf.gadget.value("kind", "") : "";
      auto colon = mode_s.find(':');
      std::string mode = mode_s.substr(0, colon);
      std::string arg = colon == std::string::npos ? "" : mode_s.substr(colon + 1);
      GadgetVerdict v;
      if (mode == "completeness" || mode == "soundness") {
        if (kind != "seatvote") fail(ErrorCode::InvalidArgument, mode + " mode needs a seat-vote gadget map");
        auto g = seatvote_from_file(mf);
        SeatVoteMode m = mode == "soundness" ? SeatVoteMode::soundness()
                                             : SeatVoteMode::completeness(detail::parse_int_list(arg));
        v = verify_seatvote_gadget(g, m, Budget{budget_nodes, budget_seconds});
      } else if (mode == "upsilon") {
        if (kind != "mis") fail(ErrorCode::InvalidArgument, "upsilon mode needs an MIS gadget map");
        v = verify_mis_gadget(mis_from_file(mf), detail::parse_int_list(arg));
      } else {
        fail(ErrorCode::InvalidArgument, "unknown mode '" + mode_s + "'");
      }
      out << verdict_to_json(v).dump(2) << '\n';
      return v.all_hold() ? kExitOk : kExitClaimFailed;
    }
  } catch (const Error& e) {
    err << detail::error_json(to_string(e.code()), e.what()).dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << detail::error_json("InternalError", e.what()).dump() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

/// Reads {"argv": [...], "files": {path: text or JSON}} and writes
/// {"exit_code", "stdout", "stderr", "files"} with every file the run wrote.
inline int run_stdio(std::istream& in, std::ostream& out) {
  json req;
  try {
    req = json::parse(in);
  } catch (const json::exception& e) {
    out << json{{"exit_code", kExitInvalidInput},
                {"stdout", ""},
                {"stderr", detail::error_json(to_string(ErrorCode::ParseError), e.what()).dump()},
                {"files", json::object()}}
               .dump()
        << '\n';
    return kExitInvalidInput;
  }
  std::vector<std::string> args;
  std::map<std::string, std::string> files, written;
  std::ostringstream so, se;
  int code = kExitInvalidInput;
  try {
    args = req.at("argv").get<std::vector<std::string>>();
    if (req.contains("files"))
      for (auto it = req["files"].begin(); it != req["files"].end(); ++it)
        files[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    CliEnv env = CliEnv::memory(files);
    auto base_write = env.write;
    env.write = [&](const std::string& p, const std::string& d) {
      base_write(p, d);
      written[p] = d;
    };
    code = run_cli(args, so, se, env);
  } catch (const json::exception& e) {
    se << detail::error_json(to_string(ErrorCode::ParseError), e.what()).dump() << '\n';
  }
  out << json{{"exit_code", code}, {"stdout", so.str()}, {"stderr", se.str()}, {"files", written}}.dump() << '\n';
  return code;
}

}  // namespace gerry
