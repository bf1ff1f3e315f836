#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "hoopstyle/commands.hpp"

namespace {

using hoopstyle::cli::Options;

void add_common(CLI::App* sub, Options& o, bool with_data) {
  sub->add_option("--config", o.config_path, "JSON config (defaults when omitted)");
  sub->add_option("--out", o.out_dir, "Output directory, shared by all stages")->capture_default_str();
  if (with_data) sub->add_option("--data", o.data_dir, "Input data directory (default: --out)");
  sub->add_option("--seed", o.seed, "Override the config seed");
  sub->add_option("--threads", o.threads, "Worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hoopstyle::cli;
  CLI::App app{"hoopstyle: shooting-style and role clustering with lineup compatibility models"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with known ground truth");
  add_common(synth, o, false);
  auto* feats = app.add_subcommand("features", "Shot features, PCA and role features");
  add_common(feats, o, true);
  auto* shots = app.add_subcommand("cluster-shots", "EMD distance matrix, Ward clustering, silhouette sweep");
  add_common(shots, o, true);
  auto* roles = app.add_subcommand("cluster-roles", "Fuzzy c-means over playtype role features");
  add_common(roles, o, true);
  auto* design = app.add_subcommand("build-design", "Lineup design matrix from cluster artifacts");
  add_common(design, o, true);
  auto* fit = app.add_subcommand("fit", "Hierarchical model (combos2) or baseline CV (counts5)");
  add_common(fit, o, true);
  auto* report = app.add_subcommand("report", "Markdown summary of all stage artifacts");
  add_common(report, o, false);
  for (auto* sub : {design, fit}) {
    sub->add_option("--source", o.source, "Cluster source")->check(CLI::IsMember({"shots", "roles"}))->capture_default_str();
    sub->add_option("--mode", o.mode, "Feature construction")->check(CLI::IsMember({"counts5", "combos2"}))->capture_default_str();
  }
  fit->add_flag("--force", o.force, "Write effects even when the fit did not converge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*synth) cmd_synth(o);
    else if (*feats) cmd_features(o);
    else if (*shots) cmd_cluster_shots(o);
    else if (*roles) cmd_cluster_roles(o);
    else if (*design) cmd_build_design(o);
    else if (*fit) cmd_fit(o);
    else if (*report) cmd_report(o);
  } catch (const ConvergenceFailure& e) {
    std::cerr << "hoopstyle: error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const hoopstyle::ConfigError& e) {
    std::cerr << "hoopstyle: config error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hoopstyle::ParseError& e) {
    std::cerr << "hoopstyle: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hoopstyle::DataError& e) {
    std::cerr << "hoopstyle: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hoopstyle::InvalidArgument& e) {
    std::cerr << "hoopstyle: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hoopstyle::FeatureExtractionError& e) {
    std::cerr << "hoopstyle: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "hoopstyle: error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
