#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rota/cover.hpp"
#include "rota/exchange.hpp"
#include "rota/generate.hpp"
#include "rota/oracle.hpp"
#include "rota/pack.hpp"
#include "rota/partition.hpp"
#include "rota/report.hpp"
#include "rota/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 2;
constexpr int kExitParse = 3;
constexpr int kExitPartial = 4;

using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ROTA_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      std::cerr << "warning: ignoring malformed ROTA_SEED\n";
    }
  }
  return 1;
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  rota::require(out.good(), rota::Error::Kind::Argument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

rota::IntSet parse_id_list(const rota::ColouredInstance& inst, const std::string& csv) {
  std::map<long long, int> by_external;
  for (int e = 0; e < inst.ground_size(); ++e) by_external[inst.external(e)] = e;
  rota::IntSet out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto it = by_external.find(std::stoll(tok));
    rota::require(it != by_external.end(), rota::Error::Kind::Argument,
                  "unknown element id " + tok);
    rota::set_insert(out, it->second);
  }
  return out;
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int run_command(const std::vector<std::string>& args);

int cmd_batch(const std::string& manifest, int jobs) {
  std::ifstream in(manifest);
  rota::require(in.good(), rota::Error::Kind::Parse, "cannot open manifest '" + manifest + "'");
  std::vector<std::vector<std::string>> commands;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> argv;
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) argv.push_back(tok);
    if (!argv.empty()) commands.push_back(std::move(argv));
  }

  std::mutex mtx;
  std::size_t next = 0;
  int worst = kExitOk;
  auto worker = [&]() {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lock(mtx);
        if (next >= commands.size()) return;
        idx = next++;
      }
      int rc = run_command(commands[idx]);
      std::lock_guard<std::mutex> lock(mtx);
      worst = std::max(worst, rc);
      std::cerr << "batch[" << idx << "] rc=" << rc << "\n";
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::max(1, jobs); ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return worst;
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"matroid packing/covering toolkit for coloured bases"};
  app.require_subcommand(1);

  // --- gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::string gen_kind = "linear", gen_out = "-";
  int gen_n = 4, gen_p = 5, gen_v = 0;
  std::uint64_t gen_seed = default_seed();
  gen->add_option("--kind", gen_kind, "linear|graphic|uniform");
  gen->add_option("-n,--rank", gen_n, "rank / number of bases")->required();
  gen->add_option("-p,--prime", gen_p, "field modulus (linear)");
  gen->add_option("-v,--vertices", gen_v, "vertex count (graphic; must be n+1)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("-o,--out", gen_out, "output path ('-' for stdout)");

  // --- pack
  auto* packc = app.add_subcommand("pack", "find disjoint transversal bases");
  std::string pack_in, pack_json, pack_trace;
  rota::PackConfig pcfg;
  rota::ReservoirConfig rcfg;
  rcfg.seed = default_seed();
  packc->add_option("-i,--instance", pack_in, "instance file")->required();
  packc->add_option("--epsilon", pcfg.epsilon, "target slack");
  packc->add_option("--eta", rcfg.eta, "reservoir sampling probability");
  packc->add_option("--seed", rcfg.seed, "reservoir seed");
  packc->add_option("--sigma", pcfg.sigma, "reservoir budget fraction");
  packc->add_option("--L", pcfg.cost_l, "cascade cost constant");
  packc->add_option("--rmax", pcfg.r_max, "cascade depth cap");
  packc->add_option("--budget", pcfg.improvement_budget, "improvement budget");
  packc->add_option("--budget-ms", pcfg.budget_ms, "wall-clock cap (ms)");
  packc->add_option("--ell", pcfg.ell, "reduction parameter");
  packc->add_option("--depth", pcfg.r, "reduction depth");
  packc->add_option("--shuffle", pcfg.shuffle_seed, "randomized scan order seed");
  packc->add_flag("--exact-fallback", pcfg.exact_fallback, "brute force when n <= 4");
  packc->add_flag("--audit", pcfg.audit, "expensive self-checks");
  packc->add_option("--json", pack_json, "write report ('-' for stdout)");
  packc->add_option("--trace", pack_trace, "write improvement trace (jsonl)");

  // --- cover
  auto* coverc = app.add_subcommand("cover", "cover all elements with transversal bases");
  std::string cover_in, cover_json, cover_trace;
  rota::CoverConfig ccfg;
  coverc->add_option("-i,--instance", cover_in, "instance file")->required();
  coverc->add_option("--epsilon", ccfg.epsilon, "target slack");
  coverc->add_option("--lambda", ccfg.lambda, "family surplus parameter");
  coverc->add_option("--nu", ccfg.nu, "coverage slack parameter");
  coverc->add_option("--budget", ccfg.iteration_budget, "descent budget");
  coverc->add_option("--ell", ccfg.ell, "reduction parameter");
  coverc->add_option("--depth", ccfg.r, "reduction depth");
  coverc->add_option("--shuffle", ccfg.shuffle_seed, "randomized scan order seed");
  coverc->add_flag("--audit", ccfg.audit, "expensive self-checks");
  coverc->add_option("--json", cover_json, "write report ('-' for stdout)");
  coverc->add_option("--trace", cover_trace, "write descent trace (jsonl)");

  // --- deadlock
  auto* dl = app.add_subcommand("deadlock", "maximal overcrowded subset");
  std::string dl_in, dl_elems, dl_json = "-";
  int dl_k = 1;
  bool dl_audit = false;
  dl->add_option("-i,--instance", dl_in, "instance file")->required();
  dl->add_option("-k", dl_k, "deadlock parameter")->required();
  dl->add_option("--elems", dl_elems, "comma separated element ids (default: all)");
  dl->add_flag("--audit", dl_audit, "recompute via contractions");
  dl->add_option("--json", dl_json, "write report ('-' for stdout)");

  // --- bf
  auto* bf = app.add_subcommand("bf", "brute-force reference oracles");
  bf->require_subcommand(1);
  rota::BruteForceBudget budget;
  std::string bf_in, bf_elems, bf_json = "-";
  int bf_k = 1, bf_m = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", bf_in, "instance file")->required();
    sub->add_option("--json", bf_json, "write report ('-' for stdout)");
    sub->add_flag("--force", budget.force, "override size caps");
  };
  auto* bf_dl = bf->add_subcommand("deadlock", "deadlock by subset enumeration");
  add_common(bf_dl);
  bf_dl->add_option("-k", bf_k)->required();
  bf_dl->add_option("--elems", bf_elems, "comma separated element ids (default: all)");
  auto* bf_pack = bf->add_subcommand("pack", "exact disjoint transversal bases");
  add_common(bf_pack);
  auto* bf_cover = bf->add_subcommand("cover", "exact minimum cover");
  add_common(bf_cover);
  auto* bf_rainbow = bf->add_subcommand("rainbow", "rainbow decomposition decision");
  add_common(bf_rainbow);
  bf_rainbow->add_option("-m,--parts", bf_m, "number of parts")->required();
  bf_rainbow->add_option("--elems", bf_elems, "comma separated element ids (default: all)");

  // --- verify
  auto* ver = app.add_subcommand("verify", "check a solution file");
  std::string ver_in, ver_sol;
  ver->add_option("-i,--instance", ver_in, "instance file")->required();
  ver->add_option("-s,--solution", ver_sol, "solution json")->required();

  // --- batch
  auto* batch = app.add_subcommand("batch", "run manifest lines in parallel");
  std::string batch_manifest;
  int batch_jobs = 1;
  batch->add_option("manifest", batch_manifest, "file of rota sub-commands")->required();
  batch->add_option("--jobs", batch_jobs, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      rota::InstanceKind kind = rota::kind_from_string(gen_kind);
      int pv = kind == rota::InstanceKind::Graphic ? (gen_v > 0 ? gen_v : gen_n + 1) : gen_p;
      rota::ColouredInstance inst = rota::generate_instance(kind, gen_n, pv, gen_seed);
      std::string text = rota::serialize_instance(inst);
      if (gen_out == "-")
        std::cout << text;
      else {
        std::ofstream out(gen_out);
        rota::require(out.good(), rota::Error::Kind::Argument,
                      "cannot write '" + gen_out + "'");
        out << text;
      }
      return kExitOk;
    }

    if (packc->parsed()) {
      auto inst = rota::parse_instance_file(pack_in);
      if (pcfg.epsilon >= 0.1)
        std::cerr << "warning: epsilon >= 1/10 leaves the analysed regime\n";
      rota::PackSolution sol = rota::pack(inst, pcfg, rcfg);
      json j = rota::pack_report(inst, sol, pcfg, rcfg);
      rota::attach_run_fields(j, inst, "pack", ms_since(t0));
      emit_json(j, pack_json.empty() ? "-" : pack_json);
      if (!pack_trace.empty()) {
        std::ofstream out(pack_trace);
        for (std::size_t i = 0; i < sol.stats.reservoir_used.size(); ++i) {
          json line{{"improvement", i},
                    {"reservoir_used", sol.stats.reservoir_used[i]},
                    {"reservoir_bound", sol.stats.reservoir_bound[i]}};
          if (i < sol.stats.improvement_chains.size())
            line["chain"] = rota::switch_chain_json(inst, sol.stats.improvement_chains[i]);
          out << line.dump() << "\n";
        }
      }
      int target = static_cast<int>(std::ceil((1.0 - pcfg.epsilon) * inst.n - 1e-9));
      return static_cast<int>(sol.bases.size()) >= std::max(1, target) ? kExitOk
                                                                       : kExitPartial;
    }

    if (coverc->parsed()) {
      auto inst = rota::parse_instance_file(cover_in);
      rota::CoverSolution sol = rota::cover(inst, ccfg);
      json j = rota::cover_report(inst, sol, ccfg);
      rota::attach_run_fields(j, inst, "cover", ms_since(t0));
      emit_json(j, cover_json.empty() ? "-" : cover_json);
      if (!cover_trace.empty()) {
        std::ofstream out(cover_trace);
        for (std::size_t i = 0; i < sol.stats.descent_tuples.size(); ++i) {
          json line{{"step", i}, {"deadlock_tuple", sol.stats.descent_tuples[i]}};
          if (i < sol.stats.descent_chains.size())
            line["chain"] = rota::switch_chain_json(inst, sol.stats.descent_chains[i]);
          out << line.dump() << "\n";
        }
      }
      return sol.partial ? kExitPartial : kExitOk;
    }

    if (dl->parsed()) {
      auto inst = rota::parse_instance_file(dl_in);
      rota::IntSet u = dl_elems.empty() ? inst.ground() : parse_id_list(inst, dl_elems);
      rota::DeadlockReport rep = rota::deadlock(inst, u, dl_k, dl_audit);
      json j = rota::deadlock_report_json(inst, rep);
      rota::attach_run_fields(j, inst, "deadlock", ms_since(t0));
      emit_json(j, dl_json);
      return kExitOk;
    }

    if (bf->parsed()) {
      auto inst = rota::parse_instance_file(bf_in);
      json j;
      std::string mode;
      if (bf_dl->parsed()) {
        mode = "bf-deadlock";
        rota::IntSet u = bf_elems.empty() ? inst.ground() : parse_id_list(inst, bf_elems);
        rota::IntSet d = rota::bf_deadlock(inst, u, bf_k, budget);
        json ids = json::array();
        for (int e : d) ids.push_back(inst.external(e));
        j = {{"k", bf_k},
             {"deadlock", ids},
             {"rank", inst.matroid->rank(d)},
             {"surplus", static_cast<long long>(d.size()) -
                             static_cast<long long>(bf_k) * inst.matroid->rank(d)}};
      } else if (bf_pack->parsed()) {
        mode = "bf-pack";
        auto res = rota::bf_max_disjoint_transversal_bases(inst, budget);
        j["count"] = res.count;
        json arr = json::array();
        for (const auto& b : res.bases) {
          json one = json::array();
          for (int e : b) one.push_back(inst.external(e));
          arr.push_back(one);
        }
        j["bases"] = arr;
      } else if (bf_cover->parsed()) {
        mode = "bf-cover";
        auto res = rota::bf_min_cover(inst, budget);
        j["count"] = res.count;
        json arr = json::array();
        for (const auto& b : res.bases) {
          json one = json::array();
          for (int e : b) one.push_back(inst.external(e));
          arr.push_back(one);
        }
        j["bases"] = arr;
      } else {
        mode = "bf-rainbow";
        rota::IntSet u = bf_elems.empty() ? inst.ground() : parse_id_list(inst, bf_elems);
        auto res = rota::bf_rainbow_decomposition(inst, u, bf_m, budget);
        j["possible"] = res.has_value();
        if (res) {
          json arr = json::array();
          for (const auto& s : *res) {
            json one = json::array();
            for (int e : s) one.push_back(inst.external(e));
            arr.push_back(one);
          }
          j["parts"] = arr;
        }
      }
      rota::attach_run_fields(j, inst, mode, ms_since(t0));
      emit_json(j, bf_json);
      return kExitOk;
    }

    if (ver->parsed()) {
      auto inst = rota::parse_instance_file(ver_in);
      std::ifstream in(ver_sol);
      rota::require(in.good(), rota::Error::Kind::Parse,
                    "cannot open solution '" + ver_sol + "'");
      json j = json::parse(in, nullptr, true);
      auto bases = rota::bases_from_json(inst, j);
      std::string mode = j.value("mode", "pack");
      rota::VerifyReport rep = mode == "cover" ? rota::verify_cover_solution(inst, bases)
                                               : rota::verify_pack_solution(inst, bases);
      if (j.contains("count") && j["count"].get<int>() != static_cast<int>(bases.size()))
        rep.flag("count field disagrees with the number of bases");
      if (j.contains("bases_found") &&
          j["bases_found"].get<int>() != static_cast<int>(bases.size()))
        rep.flag("bases_found field disagrees with the number of bases");
      for (const auto& p : rep.problems) std::cerr << "verify: " << p << "\n";
      std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
      return rep.pass ? kExitOk : kExitVerifyFail;
    }

    if (batch->parsed()) return cmd_batch(batch_manifest, batch_jobs);
  } catch (const rota::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case rota::Error::Kind::Parse:
        return kExitParse;
      default:
        return 1;
    }
  } catch (const json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args);
}
