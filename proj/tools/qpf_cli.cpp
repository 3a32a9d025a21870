// Command-line driver for the phase folding optimizer, on top of the C API.

#include "phasefold.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Budgets {
  uint64_t groebner = 50000;
  uint64_t rewrite = 100000;
  uint32_t star_cap = 64;
};

pf_options make_options(const std::string& mode, bool cleanup, bool toffoli_hczh,
                        const Budgets& b) {
  pf_options opt;
  pf_options_default(&opt);
  opt.mode = mode.c_str();
  opt.cleanup = cleanup ? 1 : 0;
  opt.toffoli_hczh = toffoli_hczh ? 1 : 0;
  opt.star_cap = b.star_cap;
  opt.groebner_pairs = b.groebner;
  opt.rewrite_steps = b.rewrite;
  return opt;
}

int die(pf_status st, const std::string& what) {
  std::cerr << "error: " << what << ": " << pf_last_error() << "\n";
  if (st == PF_PARSE_ERROR) return 2;
  if (st == PF_VERIFY_MISMATCH) return 3;
  return 1;
}

struct Handle {
  pf_program* p = nullptr;
  ~Handle() { pf_program_free(p); }
};

struct ResultHandle {
  pf_result* r = nullptr;
  ~ResultHandle() { pf_result_free(r); }
};

int cmd_opt(const std::string& input, const std::string& out_path, const std::string& mode,
            const std::string& format, bool cleanup, bool toffoli_hczh, int verify_cap,
            uint32_t unroll, const Budgets& budgets) {
  Handle prog;
  pf_status st = pf_parse_file(input.c_str(), &prog.p);
  if (st != PF_OK) return die(st, input);

  pf_options opt = make_options(mode, cleanup, toffoli_hczh, budgets);
  ResultHandle res;
  st = pf_optimize(prog.p, &opt, &res.r);
  if (st != PF_OK) return die(st, "optimize");

  const pf_program* optimized = pf_result_program(res.r);

  if (verify_cap > 0) {
    st = pf_verify(prog.p, optimized, unroll, uint32_t(verify_cap));
    if (st == PF_VERIFY_MISMATCH) {
      std::cerr << "verification FAILED: " << pf_last_error() << "\n";
      return 3;
    }
    if (st == PF_UNSUPPORTED) {
      std::cerr << "verification skipped: " << pf_last_error() << "\n";
    } else if (st != PF_OK) {
      return die(st, "verify");
    } else {
      std::cerr << "verification passed (paths up to unroll " << unroll << ")\n";
    }
  }

  std::string name = fs::path(input).stem().string();
  char* report = nullptr;
  st = format == "json" ? pf_result_json(res.r, name.c_str(), &report)
                        : pf_result_text(res.r, name.c_str(), &report);
  if (st != PF_OK) return die(st, "report");
  std::cout << report;
  pf_string_free(report);

  if (!out_path.empty()) {
    char* text = nullptr;
    st = pf_emit(optimized, nullptr, &text);
    if (st != PF_OK) return die(st, "emit");
    std::ofstream out(out_path);
    out << text;
    pf_string_free(text);
  }
  return 0;
}

int cmd_verify(const std::string& original, const std::string& optimized, uint32_t unroll,
               int cap) {
  Handle a, b;
  pf_status st = pf_parse_file(original.c_str(), &a.p);
  if (st != PF_OK) return die(st, original);
  st = pf_parse_file(optimized.c_str(), &b.p);
  if (st != PF_OK) return die(st, optimized);
  st = pf_verify(a.p, b.p, unroll, uint32_t(cap));
  if (st == PF_OK) {
    std::cout << "equivalent up to per-path global phase (unroll " << unroll << ")\n";
    return 0;
  }
  if (st == PF_UNSUPPORTED) {
    std::cout << "skipped: " << pf_last_error() << "\n";
    return 0;
  }
  if (st == PF_VERIFY_MISMATCH) {
    std::cerr << "MISMATCH: " << pf_last_error() << "\n";
    return 3;
  }
  return die(st, "verify");
}

int cmd_bench(const std::string& manifest_path, const std::string& only_mode,
              const std::string& json_out, const Budgets& budgets) {
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "error: cannot open " << manifest_path << "\n";
    return 1;
  }
  json manifest = json::parse(in, nullptr, false);
  if (manifest.is_discarded()) {
    std::cerr << "error: bad manifest\n";
    return 1;
  }
  fs::path base = fs::path(manifest_path).parent_path();
  std::vector<std::string> modes =
      only_mode == "all" ? std::vector<std::string>{"aff", "quad", "pol"}
                         : std::vector<std::string>{only_mode};
  json out_rows = json::array();
  int mismatches = 0;

  for (const auto& suite : manifest["suites"]) {
    bool cleanup = suite.value("cleanup", true);
    std::cout << "== " << suite.value("name", "suite") << "\n";
    for (const auto& row : suite["rows"]) {
      std::string file = row["file"];
      fs::path path = base / suite.value("dir", ".") / file;
      std::string name = row.value("name", file);
      json jrow;
      jrow["name"] = name;
      if (!fs::exists(path)) {
        std::cout << name << ": absent\n";
        jrow["absent"] = true;
        out_rows.push_back(jrow);
        continue;
      }
      Handle prog;
      pf_status st = pf_parse_file(path.string().c_str(), &prog.p);
      if (st != PF_OK) {
        std::cout << name << ": parse error: " << pf_last_error() << "\n";
        jrow["error"] = pf_last_error();
        out_rows.push_back(jrow);
        continue;
      }
      int t0 = pf_t_count(prog.p);
      jrow["n"] = pf_num_qubits(prog.p);
      jrow["t_before"] = t0;
      std::cout << name << ": n=" << pf_num_qubits(prog.p) << " T=" << t0;
      if (row.contains("t") && row["t"] != t0) {
        std::cout << " (expected " << row["t"] << "!)";
        ++mismatches;
      }
      for (const std::string& m : modes) {
        pf_options opt = make_options(m, cleanup, false, budgets);
        ResultHandle res;
        auto t_start = std::chrono::steady_clock::now();
        st = pf_optimize(prog.p, &opt, &res.r);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
        if (st != PF_OK) {
          std::cout << "  " << m << "=error";
          jrow[m] = "error";
          continue;
        }
        int t1 = pf_t_count(pf_result_program(res.r));
        std::cout << "  " << m << "=" << t1 << " (" << int(ms) << "ms)";
        jrow[m] = t1;
        jrow[m + "_ms"] = ms;
        if (row.contains("expect") && row["expect"].contains(m) && row["expect"][m] != t1) {
          std::cout << " [expected " << row["expect"][m] << "!]";
          ++mismatches;
        }
      }
      std::cout << "\n";
      out_rows.push_back(jrow);
    }
  }
  if (!json_out.empty()) {
    std::ofstream jf(json_out);
    jf << json({{"rows", out_rows}}).dump(2) << "\n";
  }
  if (mismatches) std::cout << mismatches << " row(s) off expectation\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpf: phase folding for quantum programs"};
  app.require_subcommand(1);

  Budgets budgets;
  std::string mode = "pol";
  std::string toffoli = "primitive";
  bool no_cleanup = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "analysis mode: aff, quad or pol")
        ->check(CLI::IsMember({"aff", "quad", "pol"}));
    cmd->add_flag("--no-cleanup", no_cleanup, "keep cancelling gate pairs");
    cmd->add_option("--budget-groebner", budgets.groebner, "completion pair budget");
    cmd->add_option("--budget-rewrite", budgets.rewrite, "path-sum rewrite budget");
    cmd->add_option("--star-cap", budgets.star_cap, "Kleene iteration cap");
    cmd->add_option("--toffoli", toffoli,
                    "Toffoli handling: precise transition or its phase gadget")
        ->check(CLI::IsMember({"primitive", "hczh"}));
  };

  std::string input, out_path, format = "text";
  int verify_cap = 0;
  uint32_t unroll = 2;
  CLI::App* opt = app.add_subcommand("opt", "optimize a program");
  opt->add_option("input", input, "source file (.qc or openQASM 3 subset)")->required();
  opt->add_option("--out", out_path, "write the optimized program here");
  opt->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  opt->add_option("--verify", verify_cap, "check path equivalence up to this many qubits")
      ->expected(0, 1);
  opt->add_option("--unroll", unroll, "loop unrolling for verification");
  add_common(opt);

  std::string manifest = "benchmarks/manifest.json", bench_mode = "all", json_out;
  CLI::App* bench = app.add_subcommand("bench", "run the benchmark suite");
  bench->add_option("manifest", manifest, "manifest path");
  bench->add_option("--mode", bench_mode, "aff, quad, pol or all")
      ->check(CLI::IsMember({"aff", "quad", "pol", "all"}));
  bench->add_option("--json", json_out, "machine-readable results path");
  bench->add_option("--budget-groebner", budgets.groebner, "completion pair budget");

  std::string vorig, vopt;
  uint32_t vunroll = 2;
  int vcap = 8;
  CLI::App* ver = app.add_subcommand("verify", "path equivalence of two programs");
  ver->add_option("original", vorig)->required();
  ver->add_option("optimized", vopt)->required();
  ver->add_option("--unroll", vunroll);
  ver->add_option("--cap", vcap, "qubit cap");

  CLI11_PARSE(app, argc, argv);

  if (opt->parsed()) {
    if (opt->count("--verify") && verify_cap == 0) verify_cap = 8;
    return cmd_opt(input, out_path, mode, format, !no_cleanup, toffoli == "hczh", verify_cap,
                   unroll, budgets);
  }
  if (bench->parsed()) return cmd_bench(manifest, bench_mode, json_out, budgets);
  if (ver->parsed()) return cmd_verify(vorig, vopt, vunroll, vcap);
  return 1;
}
