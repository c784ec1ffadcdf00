// Command line front end for the stable-rank toolkit.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 the instance is
// unsupported or exceeds a search cap, 3 malformed input.

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "srank/harness.hpp"

namespace {

void emit(const srank::json& report, const std::string& out, const std::string& format) {
  std::string text = format == "csv" ? srank::report_to_csv(report) : report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot write file: " + out);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable rank, skew corners, and unimodular row reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", srank::kToolVersion);

  std::string ring_file, corpus_file, out_file, format = "json";
  unsigned max_n = 4, count = 100, jobs = 1;
  std::uint64_t seed = 0;
  long magnitude = 1000;
  bool trace = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out_file, "write the report to a file instead of stdout");
    c->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--jobs", jobs, "worker pool size (runs are sequential and deterministic)");
    c->add_flag("--trace", trace, "embed pipeline traces in the report");
  };

  auto* sr = app.add_subcommand("sr", "compute the stable rank of a finite ring");
  sr->add_option("--ring", ring_file, "ring description file")->required();
  sr->add_option("--max-n", max_n, "give up beyond this candidate rank");
  add_common(sr);

  auto* check = app.add_subcommand("check", "run theorem-check batteries over a ring corpus");
  std::vector<std::string> batteries;
  check->add_option("battery", batteries,
                    "batteries to run (lemma1 lemma2a transforms prop6 theorem7 theorem8 vaserstein)");
  check->add_option("--corpus", corpus_file, "corpus file (defaults to the built-in corpus)");
  add_common(check);

  auto* demo = app.add_subcommand("demo", "seeded random reduction demos");
  std::string demo_name;
  demo->add_option("name", demo_name, "z-reduce or m2z-reduce")
      ->required()
      ->check(CLI::IsMember({"z-reduce", "m2z-reduce"}));
  demo->add_option("--seed", seed, "random seed");
  demo->add_option("--count", count, "number of instances");
  demo->add_option("--magnitude", magnitude, "entry size bound for generated instances");
  add_common(demo);

  auto* verify = app.add_subcommand("verify-report", "re-check every witness embedded in a report");
  std::string report_file;
  verify->add_option("report", report_file, "report file produced by sr/check/demo")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(sr)) {
      srank::json spec = srank::load_json_file(ring_file);
      srank::RunResult rr = srank::run_sr(spec, max_n);
      emit(rr.report, out_file, format);
      return rr.ok ? 0 : 1;
    }

    if (app.got_subcommand(check)) {
      std::vector<srank::CorpusEntry> corpus =
          corpus_file.empty() ? srank::builtin_corpus()
                              : srank::load_corpus(srank::load_json_file(corpus_file));
      if (batteries.empty())
        batteries = {"lemma1", "lemma2a", "transforms", "prop6", "theorem7", "theorem8", "vaserstein"};
      srank::json report = srank::report_shell(0);
      bool ok = true;
      for (const auto& b : batteries) {
        srank::RunResult rr = srank::run_battery(b, corpus, trace);
        ok = ok && rr.ok;
        for (auto& rec : rr.report["records"]) report["records"].push_back(std::move(rec));
      }
      emit(report, out_file, format);
      return ok ? 0 : 1;
    }

    if (app.got_subcommand(demo)) {
      srank::RunResult rr = srank::run_demo(demo_name, seed, count, magnitude, trace);
      emit(rr.report, out_file, format);
      return rr.ok ? 0 : 1;
    }

    if (app.got_subcommand(verify)) {
      srank::json report = srank::load_json_file(report_file);
      std::string why;
      if (srank::verify_report(report, &why)) {
        std::cout << "report verified: " << report.at("records").size() << " records\n";
        return 0;
      }
      std::cerr << "verification failed: " << why << "\n";
      return 1;
    }
  } catch (const srank::json::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "unsupported instance: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
