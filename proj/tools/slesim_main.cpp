// Command-line front end for the coupled solver library. Talks to the
// library exclusively through the C API.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "sle_c_api.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 1;
  bool strict_cfl = false;
  bool paper_exact = false;
};

void add_common(CLI::App* sub, CommonArgs* args, bool with_out) {
  sub->add_option("--config", args->config_path, "JSON config file")
      ->required();
  if (with_out)
    sub->add_option("--out", args->out_dir, "output directory for CSV files");
  sub->add_option("--threads", args->threads,
                  "parallel workers for parameter sweeps")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--strict-cfl", args->strict_cfl,
                "treat transport stability violations as errors");
  sub->add_flag("--paper-exact", args->paper_exact,
                "full-size variants of the preset studies");
}

sle_run_options options_of(const CommonArgs& args) {
  sle_run_options opts;
  sle_run_options_init(&opts);
  opts.threads = args.threads;
  opts.strict_cfl = args.strict_cfl ? 1 : 0;
  opts.paper_exact = args.paper_exact ? 1 : 0;
  return opts;
}

int report_failure(sle_status status) {
  std::fprintf(stderr, "error: %s\n", sle_last_error());
  return static_cast<int>(status);
}

int load_config(const CommonArgs& args, const sle_run_options& opts,
                sle_config** cfg) {
  sle_status status = sle_config_load(args.config_path.c_str(), &opts, cfg);
  if (status != SLE_OK) return report_failure(status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled semiclassical Schrodinger / kinetic Liouville solver"};
  app.require_subcommand(1);

  CommonArgs run_args, exp_args, val_args;
  CLI::App* cmd_run = app.add_subcommand(
      "run", "execute a single coupled run and write CSV outputs");
  add_common(cmd_run, &run_args, true);
  CLI::App* cmd_exp = app.add_subcommand(
      "experiment", "execute a parameter study and write CSV outputs");
  add_common(cmd_exp, &exp_args, true);
  CLI::App* cmd_val = app.add_subcommand(
      "validate-config", "check a config file and print the resolved form");
  add_common(cmd_val, &val_args, false);

  CLI11_PARSE(app, argc, argv);

  const CommonArgs& args = cmd_run->parsed()   ? run_args
                           : cmd_exp->parsed() ? exp_args
                                               : val_args;
  sle_run_options opts = options_of(args);

  sle_config* cfg = nullptr;
  if (int rc = load_config(args, opts, &cfg); rc != 0) return rc;

  int rc = 0;
  if (cmd_val->parsed()) {
    std::fputs(sle_config_resolved_json(cfg), stdout);
  } else if (cmd_run->parsed()) {
    if (sle_config_is_experiment(cfg)) {
      std::fprintf(stderr,
                   "error: config describes an experiment; use the "
                   "\"experiment\" subcommand\n");
      rc = static_cast<int>(SLE_ERR_INVALID);
    } else {
      sle_status status = sle_run(cfg, args.out_dir.c_str(), &opts);
      if (status != SLE_OK)
        rc = report_failure(status);
      else
        std::printf("outputs written to %s\n", args.out_dir.c_str());
    }
  } else {
    if (!sle_config_is_experiment(cfg)) {
      std::fprintf(stderr,
                   "error: config describes a single run; use the \"run\" "
                   "subcommand\n");
      rc = static_cast<int>(SLE_ERR_INVALID);
    } else {
      sle_status status = sle_run_experiment(cfg, args.out_dir.c_str(), &opts);
      if (status != SLE_OK)
        rc = report_failure(status);
      else
        std::printf("outputs written to %s\n", args.out_dir.c_str());
    }
  }
  sle_config_free(cfg);
  return rc;
}
