// Command-line front end: synthesis, optimization, verification, costing,
// the exhaustive 3-line study, template-library regeneration, and the
// benchmark harness.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rls/io.hpp"
#include "rls/pipeline.hpp"

using namespace rls;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitVerify = 2;
constexpr int kExitDiverged = 3;

struct CommonOpts {
  std::string cost = "gates";
  std::string cost_table_file;
  std::string library_file = "data/templates.lib";
  bool no_templates = false;
  std::string resynth = "both";
  int iterations = 10;
  int samples = 25;
  int restarts = 3;
  int max_window = 0;
  std::uint64_t seed = 1;
  std::optional<double> time_limit;
  std::optional<int> max_controls;
  int width_cap = kDefaultWidthCap;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_resynth = true) {
  cmd->add_option("--cost", o.cost, "cost model: gates or quantum")
      ->check(CLI::IsMember({"gates", "quantum"}));
  cmd->add_option("--cost-table", o.cost_table_file,
                  "quantum cost table file");
  cmd->add_option("--library", o.library_file, "template library file");
  cmd->add_flag("--no-templates", o.no_templates,
                "skip the template rewriting pass");
  if (with_resynth) {
    cmd->add_option("--resynth", o.resynth,
                    "resynthesis drivers: none, random, exhaustive, both")
        ->check(CLI::IsMember({"none", "random", "exhaustive", "both"}));
    cmd->add_option("--iterations", o.iterations,
                    "random driver iterations");
    cmd->add_option("--samples", o.samples,
                    "windows sampled per random iteration");
    cmd->add_option("--restarts", o.restarts,
                    "independent random driver runs");
    cmd->add_option("--max-window", o.max_window,
                    "longest randomly sampled window (0 = unbounded)");
    cmd->add_option("--seed", o.seed, "random driver seed");
    cmd->add_option("--time-limit", o.time_limit,
                    "resynthesis time limit in seconds");
  }
  cmd->add_option("--max-controls", o.max_controls,
                  "largest control count the engines may use");
  cmd->add_option("--width-cap", o.width_cap, "widest accepted function");
}

PipelineOptions make_pipeline_options(const CommonOpts& o,
                                      std::vector<Template>& library) {
  PipelineOptions p;
  p.model = o.cost == "quantum"
                ? (o.cost_table_file.empty()
                       ? CostModel::quantum()
                       : parse_cost_table_file(o.cost_table_file))
                : CostModel::gate_count();
  if (p.model.mode == CostModel::Mode::GateCount && !o.cost_table_file.empty())
    p.model = parse_cost_table_file(o.cost_table_file);
  p.use_templates = !o.no_templates;
  if (p.use_templates) {
    library = parse_template_library_file(o.library_file);
    p.library = &library;
  }
  p.resynth = o.resynth == "none"        ? ResynthStage::None
              : o.resynth == "random"    ? ResynthStage::Random
              : o.resynth == "exhaustive" ? ResynthStage::Exhaustive
                                          : ResynthStage::Both;
  p.resynth_cfg.iterations = o.iterations;
  p.resynth_cfg.samples_per_iteration = o.samples;
  p.resynth_cfg.restarts = o.restarts;
  p.resynth_cfg.max_window = o.max_window;
  p.resynth_cfg.rng_seed = o.seed;
  p.resynth_cfg.time_limit_seconds = o.time_limit;
  p.max_controls = o.max_controls;
  return p;
}

void print_report(const PipelineReport& rep) {
  std::printf("engine\tinverse\tconverged\tgates\tcost\tgates+tpl\tcost+tpl\n");
  for (const auto& c : rep.candidates)
    std::printf("%s\t%d\t%d\t%lld\t%lld\t%lld\t%lld\n", c.engine.c_str(),
                c.on_inverse ? 1 : 0, c.converged ? 1 : 0, c.gates_raw,
                c.cost_raw.value, c.gates_templated, c.cost_templated.value);
  std::printf("cost_engines=%lld\n", rep.cost_engines.value);
  std::printf("cost_templates=%lld\n", rep.cost_templates.value);
  std::printf("cost_random=%lld\n", rep.cost_random.value);
  std::printf("cost_exhaustive=%lld\n", rep.cost_exhaustive.value);
  std::printf("gates=%zu\n", rep.best.size());
  std::printf("verified=%d\n", rep.verified ? 1 : 0);
  std::printf("seconds=%.3f\n", rep.seconds);
}

void print_histogram(const StudyHistogram& h, const char* label) {
  std::printf("%s\t", label);
  for (std::size_t g = 0; g < h.counts.size(); ++g)
    std::printf("%lld%s", h.counts[g], g + 1 < h.counts.size() ? " " : "");
  std::printf("\tWA=%.4f\n", h.weighted_average());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible Toffoli-network synthesis and optimization"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a permutation spec");
  std::string spec_file, out_file;
  std::string method = "best", direction = "bi";
  bool report = false;
  CommonOpts so;
  synth->add_option("spec", spec_file, "input .perm file")->required();
  synth->add_option("-o,--output", out_file, "output .tofn file");
  synth->add_option("--method", method,
                    "engine: greedy, rm, mmd, or best (full pipeline)")
      ->check(CLI::IsMember({"greedy", "rm", "mmd", "best"}));
  synth->add_option("--direction", direction, "uni or bi")
      ->check(CLI::IsMember({"uni", "bi"}));
  synth->add_flag("--report", report, "print the candidate table");
  add_common(synth, so);

  // optimize
  auto* optimize =
      app.add_subcommand("optimize", "templates + resynthesis on a .tofn");
  std::string opt_in, opt_out;
  CommonOpts oo;
  optimize->add_option("network", opt_in, "input .tofn file")->required();
  optimize->add_option("-o,--output", opt_out, "output .tofn file");
  add_common(optimize, oo);

  // verify
  auto* verify =
      app.add_subcommand("verify", "check a network against a spec");
  std::string ver_net, ver_spec;
  verify->add_option("network", ver_net, "network .tofn")->required();
  verify->add_option("spec", ver_spec, "specification .perm")->required();

  // cost
  auto* cost = app.add_subcommand("cost", "report a network's cost");
  std::string cost_net;
  CommonOpts co;
  cost->add_option("network", cost_net, "network .tofn")->required();
  add_common(cost, co, /*with_resynth=*/false);

  // study3x3
  auto* study = app.add_subcommand(
      "study3x3", "synthesize every 3-line function and tabulate");
  std::string engine = "pipeline";
  int sample = 0, threads = 0;
  CommonOpts sto;
  study->add_option("--engine", engine,
                    "greedy, rm, mmd, optimal, or pipeline")
      ->check(CLI::IsMember({"greedy", "rm", "mmd", "optimal", "pipeline"}));
  study->add_option("--sample", sample,
                    "sample size (0 = all 40320 functions)");
  study->add_option("--threads", threads, "worker threads (0 = auto)");
  add_common(study, sto);

  // find-templates
  auto* find = app.add_subcommand("find-templates",
                                  "regenerate the template library");
  std::string find_out = "data/templates.lib";
  int max_size = 7;
  bool size9 = true;
  find->add_option("-o,--output", find_out, "library file to write");
  find->add_option("--max-size", max_size, "largest exhaustive size");
  find->add_flag("--size9,!--no-size9", size9, "include size-9 survivors");

  // bench
  auto* bench = app.add_subcommand("bench", "run named benchmarks");
  std::vector<std::string> names;
  std::string out_dir = ".";
  CommonOpts bo;
  bench->add_option("names", names, "benchmark names (empty = list them)");
  bench->add_option("--out-dir", out_dir, "directory for .tofn outputs");
  add_common(bench, bo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      ReversibleFunction f = parse_function_file(spec_file, so.width_cap);
      std::vector<Template> library;
      PipelineOptions p = make_pipeline_options(so, library);
      Network net;
      bool verified = false;
      if (method == "best") {
        PipelineReport rep = synthesize_best(f, p);
        if (report) print_report(rep);
        net = rep.best;
        verified = rep.verified;
      } else {
        SynthOptions eng;
        eng.method = method == "greedy" ? SynthMethod::Greedy
                     : method == "rm"   ? SynthMethod::Rm
                                        : SynthMethod::Mmd;
        eng.direction = direction == "uni" ? SynthDirection::Unidirectional
                                           : SynthDirection::Bidirectional;
        eng.max_controls = p.max_controls;
        eng.cost_model = p.model;
        SynthResult res = synthesize(f, eng);
        if (!res.converged()) {
          std::fprintf(stderr, "diverged after %lld gates\n",
                       res.partial_gate_count);
          return kExitDiverged;
        }
        net = res.network;
        if (p.use_templates)
          net = apply_templates(net, *p.library, p.model, p.template_window);
        verified = network_function(net) == f;
      }
      std::printf("gates=%zu cost=%lld%s verified=%d\n", net.size(),
                  network_cost(net, p.model).value,
                  network_cost(net, p.model).starred ? "*" : "",
                  verified ? 1 : 0);
      if (!out_file.empty()) write_network_file(out_file, net);
      return verified ? kExitOk : kExitVerify;
    }

    if (*optimize) {
      Network net = parse_network_file(opt_in);
      ReversibleFunction f = network_function(net);
      std::vector<Template> library;
      PipelineOptions p = make_pipeline_options(oo, library);
      Network out = net;
      if (p.use_templates)
        out = apply_templates(out, *p.library, p.model, p.template_window);
      Toolchain tool = make_toolchain(p);
      if (p.resynth == ResynthStage::Random || p.resynth == ResynthStage::Both)
        out = random_driver(out, p.resynth_cfg, tool, p.model);
      if (p.resynth == ResynthStage::Exhaustive ||
          p.resynth == ResynthStage::Both)
        out = exhaustive_driver(out, p.resynth_cfg, tool, p.model);
      bool ok = network_function(out) == f;
      std::printf("gates=%zu->%zu cost=%lld verified=%d\n", net.size(),
                  out.size(), network_cost(out, p.model).value, ok ? 1 : 0);
      if (!opt_out.empty()) write_network_file(opt_out, out);
      return ok ? kExitOk : kExitVerify;
    }

    if (*verify) {
      Network net = parse_network_file(ver_net);
      ReversibleFunction f = parse_function_file(ver_spec);
      bool ok = net.width == f.width && network_function(net) == f;
      std::printf("%s\n", ok ? "verified" : "MISMATCH");
      return ok ? kExitOk : kExitVerify;
    }

    if (*cost) {
      Network net = parse_network_file(cost_net);
      CostModel model =
          !co.cost_table_file.empty() ? parse_cost_table_file(co.cost_table_file)
          : co.cost == "quantum"      ? CostModel::quantum()
                                      : CostModel::gate_count();
      CostValue v = network_cost(net, model);
      std::printf("gates=%zu cost=%lld%s\n", net.size(), v.value,
                  v.starred ? "*" : "");
      return kExitOk;
    }

    if (*study) {
      if (engine == "optimal") {
        print_histogram(optimal_distribution(), "optimal");
        return kExitOk;
      }
      std::function<long long(const ReversibleFunction&)> count;
      std::vector<Template> library;
      if (engine == "pipeline") {
        PipelineOptions p = make_pipeline_options(sto, library);
        count = [p](const ReversibleFunction& f) {
          return static_cast<long long>(synthesize_best(f, p).best.size());
        };
      } else {
        SynthOptions eng;
        eng.method = engine == "greedy" ? SynthMethod::Greedy
                     : engine == "rm"   ? SynthMethod::Rm
                                        : SynthMethod::Mmd;
        count = [eng](const ReversibleFunction& f) {
          SynthResult res = synthesize(f, eng);
          if (!res.converged())
            throw std::runtime_error("engine diverged during the study");
          return static_cast<long long>(res.network.size());
        };
      }
      StudyHistogram h =
          sample > 0 ? study3x3_sampled(count, sample, sto.seed, threads)
                     : study3x3(count, threads);
      print_histogram(h, engine.c_str());
      return kExitOk;
    }

    if (*find) {
      std::vector<Template> lib =
          build_template_library(max_size, size9);
      write_template_library_file(find_out, lib);
      std::printf("templates=%zu written to %s\n", lib.size(),
                  find_out.c_str());
      return kExitOk;
    }

    if (*bench) {
      if (names.empty()) {
        for (const auto& n : benchmark_names()) std::printf("%s\n", n.c_str());
        return kExitOk;
      }
      std::vector<Template> library;
      PipelineOptions p = make_pipeline_options(bo, library);
      std::printf("name\tsize\tGC-gc\tQC-gc\tGC-qc\tQC-qc\n");
      bool all_ok = true;
      for (const auto& name : names) {
        ReversibleFunction f = generate_benchmark(name);
        BenchmarkRow row = run_benchmark(f, name, p);
        std::printf("%s\t%d\t%lld\t%lld%s\t%lld\t%lld%s\n", row.name.c_str(),
                    row.width, row.gc_gc, row.qc_gc, row.star_gc ? "*" : "",
                    row.gc_qc, row.qc_qc, row.star_qc ? "*" : "");
        write_network_file(out_dir + "/" + name + "_gc.tofn", row.net_gc);
        write_network_file(out_dir + "/" + name + "_qc.tofn", row.net_qc);
        all_ok = all_ok && row.verified;
      }
      return all_ok ? kExitOk : kExitVerify;
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitOk;
}
