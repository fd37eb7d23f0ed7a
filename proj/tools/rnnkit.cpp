// rnnkit — command-line front end for the RNN toolkit: steady-state
// solving, stochastic validation, RNN image convolution, and training /
// evaluation of the gradient-free multi-layer classifier.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rnn/conv.hpp"
#include "rnn/dataset.hpp"
#include "rnn/errors.hpp"
#include "rnn/mlrnn.hpp"
#include "rnn/model_io.hpp"
#include "rnn/pgm.hpp"
#include "rnn/simulate.hpp"
#include "rnn/steady_state.hpp"
#include "rnn/textio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonDataArgs {
  std::string csv_path;
  std::string idx_images;
  std::string idx_labels;
  std::string label_column = "label";
};

void add_data_options(CLI::App* cmd, CommonDataArgs& args) {
  cmd->add_option("--data", args.csv_path, "CSV dataset (header row required)");
  cmd->add_option("--idx-images", args.idx_images, "IDX image file");
  cmd->add_option("--idx-labels", args.idx_labels, "IDX label file");
  cmd->add_option("--label-column", args.label_column, "CSV label column name or index");
}

// Loads raw (unnormalized) data; normalization is applied by the caller.
rnn::LabeledDataset load_raw(const CommonDataArgs& args) {
  rnn::DatasetSource src;
  src.normalization = rnn::Normalization::none;
  if (!args.csv_path.empty()) {
    src.format = rnn::DatasetSource::Format::csv;
    src.path = args.csv_path;
    src.label_column = args.label_column;
  } else if (!args.idx_images.empty() && !args.idx_labels.empty()) {
    src.format = rnn::DatasetSource::Format::idx_pair;
    src.path = args.idx_images;
    src.labels_path = args.idx_labels;
  } else {
    throw rnn::DataError("no dataset given: use --data or --idx-images/--idx-labels");
  }
  rnn::LabeledDataset data = load_dataset(src);
  if (!rnn::all_nonnegative(data.x))
    throw rnn::DataError("dataset has negative attributes; minmax normalization required");
  return data;
}

rnn::Matrix normalized_inputs(const rnn::SavedModel& saved, const rnn::Matrix& x) {
  if (saved.norm_mode == rnn::Normalization::minmax) return apply_minmax(x, saved.norm);
  return x;
}

double accuracy_of(const std::vector<std::size_t>& pred, const rnn::Matrix& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    std::size_t truth = 0;
    for (std::size_t j = 1; j < y.cols(); ++j)
      if (y(i, j) > y(i, truth)) truth = j;
    if (truth == pred[i]) ++hits;
  }
  return pred.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(pred.size());
}

int cmd_solve(const std::string& net_path, double tol, std::size_t max_iter) {
  const rnn::RnnNetwork net = rnn::parse_network_file(net_path);
  const rnn::ValidationReport report = rnn::validate_network(net);
  if (!report.passed()) {
    std::cerr << "error[data]: invalid network\n" << report.to_string();
    return kExitData;
  }
  const rnn::SteadyState ss = rnn::solve_steady_state(net, {tol, max_iter});
  std::cout << "neuron  q\n" << std::setprecision(10) << std::fixed;
  for (std::size_t l = 0; l < ss.q.size(); ++l)
    std::cout << std::setw(6) << l << "  " << ss.q[l] << '\n';
  std::cout.unsetf(std::ios::fixed);
  std::cout << "iterations: " << ss.iterations << "\nresidual: " << ss.residual << '\n';
  return kExitOk;
}

int cmd_simulate(const std::string& net_path, std::uint64_t events, std::uint64_t seed,
                 double burn_in, double tol, bool kv) {
  const rnn::RnnNetwork net = rnn::parse_network_file(net_path);
  rnn::SimConfig cfg;
  cfg.total_events = events;
  cfg.seed = seed;
  cfg.burn_in_fraction = burn_in;
  const rnn::AgreementReport rep = rnn::compare_to_analytic(net, cfg, tol);
  const rnn::SimResult sim = rnn::simulate(net, cfg);

  std::cout << "neuron  q_hat       q_analytic  |dev|\n" << std::setprecision(6) << std::fixed;
  for (std::size_t l = 0; l < rep.q.size(); ++l)
    std::cout << std::setw(6) << l << "  " << rep.q_hat[l] << "    " << rep.q[l] << "    "
              << rep.abs_dev[l] << '\n';
  std::cout << "max deviation: " << rep.max_dev << "  (tol " << tol << ", "
            << (rep.passed ? "pass" : "fail") << ")\n";
  std::cout.unsetf(std::ios::fixed);
  std::cout << "model time: " << sim.model_time << " s\n"
            << "events: external_exc=" << sim.event_counts.external_excitatory
            << " external_inh=" << sim.event_counts.external_inhibitory
            << " firings=" << sim.event_counts.firings
            << " departures=" << sim.event_counts.departures << '\n'
            << "rng: " << sim.rng_algorithm << " seed " << seed << '\n';
  if (kv) {
    std::cout << std::setprecision(17);
    for (std::size_t l = 0; l < rep.q.size(); ++l)
      std::cout << "q_hat_" << l << "=" << rep.q_hat[l] << "\nq_" << l << "=" << rep.q[l] << '\n';
    std::cout << "max_dev=" << rep.max_dev << "\npass=" << (rep.passed ? 1 : 0) << '\n';
  }
  return rep.passed ? kExitOk : kExitData;
}

int cmd_conv_demo(const std::string& image_path, const std::string& kernel_path,
                  const std::string& scheme_name, const std::string& out_path, double lambda,
                  double r, bool swapped) {
  const rnn::Image image = rnn::read_pgm(image_path);
  const rnn::Matrix raw_kernel = rnn::read_matrix_text(kernel_path);
  const rnn::KernelScheme scheme = rnn::kernel_scheme_from_string(scheme_name);
  const rnn::ConvKernel kernel = rnn::prepare_kernel(raw_kernel, scheme);

  rnn::Matrix out;
  switch (scheme) {
    case rnn::KernelScheme::single:
      out = rnn::conv_single(image, kernel, rnn::ActivationParams{lambda, r}, swapped);
      break;
    case rnn::KernelScheme::twin: {
      const double response = rnn::twin_max_response(image, kernel);
      std::cout << "twin max |conv(I1,W)| = " << response
                << (response <= 1.0 ? " (<= 1, ok)" : " (violates <= 1)") << '\n';
      out = rnn::conv_twin(image, kernel);
      break;
    }
    case rnn::KernelScheme::cluster:
      out = rnn::conv_cluster(image, kernel);
      break;
  }
  const rnn::PgmRescale scale = rnn::write_pgm(out, out_path);
  std::cout << "output: " << out_path << " (" << out.rows() << "x" << out.cols() << ")\n"
            << "rescale: lo=" << scale.lo << " hi=" << scale.hi << '\n';
  return kExitOk;
}

int cmd_train(const CommonDataArgs& data_args, const std::string& config_path,
              const std::string& out_path, std::int64_t seed_override,
              const std::string& normalize) {
  rnn::TrainFileConfig file_cfg;
  if (!config_path.empty()) file_cfg = rnn::parse_train_config(config_path);
  if (seed_override >= 0) file_cfg.train.seed = static_cast<std::uint64_t>(seed_override);

  const rnn::LabeledDataset raw = load_raw(data_args);
  rnn::DatasetSplit split = rnn::split_dataset(raw, file_cfg.holdout_fraction,
                                               file_cfg.train.seed);

  rnn::SavedModel saved;
  if (normalize == "minmax") {
    saved.norm_mode = rnn::Normalization::minmax;
    saved.norm = rnn::compute_minmax(split.train.x);
    split.train.x = rnn::apply_minmax(split.train.x, saved.norm);
    if (split.test.x.rows() > 0) split.test.x = rnn::apply_minmax(split.test.x, saved.norm);
  } else if (normalize != "none") {
    throw rnn::DataError("unknown normalization '" + normalize + "' (use minmax or none)");
  }

  file_cfg.train.progress = [](const rnn::TrainProgress& p) {
    std::cout << "step2 channel " << p.channel << " layer " << p.layer
              << ": reconstruction objective " << p.objective << " (" << p.fista_iterations
              << " iterations)\n";
  };
  saved.model = rnn::train(split.train, file_cfg.train);

  const rnn::ValidationReport audit = rnn::audit_model(saved.model);
  if (!audit.passed()) {
    std::cerr << "error[data]: trained model failed the constraint audit\n" << audit.to_string();
    return kExitData;
  }

  std::cout << std::setprecision(4) << std::fixed;
  std::cout << "train accuracy: " << accuracy_of(rnn::predict(saved.model, split.train.x),
                                                 split.train.y) << '\n';
  if (split.test.x.rows() > 0)
    std::cout << "test accuracy: " << accuracy_of(rnn::predict(saved.model, split.test.x),
                                                  split.test.y) << '\n';
  std::cout.unsetf(std::ios::fixed);

  rnn::save_model(saved, out_path);
  std::cout << "model written: " << out_path << '\n';
  return kExitOk;
}

int cmd_predict(const std::string& model_path, const CommonDataArgs& data_args) {
  const rnn::SavedModel saved = rnn::load_model(model_path);
  const rnn::LabeledDataset raw = load_raw(data_args);
  const std::vector<std::size_t> labels =
      rnn::predict(saved.model, normalized_inputs(saved, raw.x));
  for (std::size_t v : labels) std::cout << v << '\n';
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const CommonDataArgs& data_args) {
  const rnn::SavedModel saved = rnn::load_model(model_path);
  const rnn::LabeledDataset raw = load_raw(data_args);
  const std::vector<std::size_t> pred =
      rnn::predict(saved.model, normalized_inputs(saved, raw.x));

  const std::size_t n_classes = saved.model.output_width();
  std::vector<std::vector<std::size_t>> confusion(n_classes,
                                                  std::vector<std::size_t>(n_classes, 0));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    std::size_t truth = 0;
    for (std::size_t j = 1; j < raw.y.cols(); ++j)
      if (raw.y(i, j) > raw.y(i, truth)) truth = j;
    if (truth < n_classes && pred[i] < n_classes) ++confusion[truth][pred[i]];
    if (truth == pred[i]) ++hits;
  }
  std::cout << std::setprecision(4) << std::fixed
            << "accuracy: " << static_cast<double>(hits) / static_cast<double>(pred.size())
            << '\n';
  std::cout.unsetf(std::ios::fixed);
  std::cout << "confusion matrix (rows = true class):\n";
  for (std::size_t i = 0; i < n_classes; ++i) {
    for (std::size_t j = 0; j < n_classes; ++j)
      std::cout << (j ? " " : "") << std::setw(5) << confusion[i][j];
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rnnkit - random neural network toolkit"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve the steady-state equations of a network file");
  std::string solve_net;
  double solve_tol = 1e-10;
  std::size_t solve_max_iter = 10000;
  solve->add_option("--network", solve_net, "network description file")->required();
  solve->add_option("--tol", solve_tol, "fixed-point tolerance");
  solve->add_option("--max-iter", solve_max_iter, "maximum sweeps");

  // simulate
  auto* sim = app.add_subcommand("simulate", "stochastic simulation vs the analytic steady state");
  std::string sim_net;
  std::uint64_t sim_events = 1000000, sim_seed = 1;
  double sim_burn_in = 0.1, sim_tol = 0.02;
  bool sim_kv = false;
  sim->add_option("--network", sim_net, "network description file")->required();
  sim->add_option("--events", sim_events, "number of events to simulate");
  sim->add_option("--seed", sim_seed, "rng seed");
  sim->add_option("--burn-in", sim_burn_in, "fraction of model time discarded");
  sim->add_option("--tol", sim_tol, "agreement tolerance");
  sim->add_flag("--kv", sim_kv, "append a machine-readable key=value block");

  // conv-demo
  auto* conv = app.add_subcommand("conv-demo", "RNN convolution of a PGM image");
  std::string conv_image, conv_kernel, conv_scheme = "single", conv_out;
  double conv_lambda = 0.0, conv_r = 0.1;
  bool conv_swapped = false;
  conv->add_option("--image", conv_image, "input image (binary P5 PGM)")->required();
  conv->add_option("--kernel", conv_kernel, "kernel file (text matrix)")->required();
  conv->add_option("--scheme", conv_scheme, "single | twin | cluster");
  conv->add_option("--output", conv_out, "output PGM path")->required();
  conv->add_option("--lambda", conv_lambda, "receptive-cell external rate (single scheme)");
  conv->add_option("--r", conv_r, "receptive-cell firing rate (single scheme)");
  conv->add_flag("--swapped", conv_swapped, "swap kernel part roles (single scheme)");

  // train
  auto* train = app.add_subcommand("train", "train the multi-layer classifier");
  CommonDataArgs train_data;
  std::string train_config, train_out = "model.mlrn", train_norm = "minmax";
  std::int64_t train_seed = -1;
  add_data_options(train, train_data);
  train->add_option("--config", train_config, "training configuration file");
  train->add_option("--output", train_out, "model output path");
  train->add_option("--seed", train_seed, "override the configured seed");
  train->add_option("--normalize", train_norm, "attribute normalization: minmax | none");

  // predict
  auto* predict = app.add_subcommand("predict", "predict label indices for a dataset");
  CommonDataArgs predict_data;
  std::string predict_model;
  predict->add_option("--model", predict_model, "model file")->required();
  add_data_options(predict, predict_data);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a model against a labelled dataset");
  CommonDataArgs eval_data;
  std::string eval_model;
  eval->add_option("--model", eval_model, "model file")->required();
  add_data_options(eval, eval_data);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_net, solve_tol, solve_max_iter);
    if (sim->parsed()) return cmd_simulate(sim_net, sim_events, sim_seed, sim_burn_in, sim_tol, sim_kv);
    if (conv->parsed())
      return cmd_conv_demo(conv_image, conv_kernel, conv_scheme, conv_out, conv_lambda, conv_r,
                           conv_swapped);
    if (train->parsed()) return cmd_train(train_data, train_config, train_out, train_seed, train_norm);
    if (predict->parsed()) return cmd_predict(predict_model, predict_data);
    if (eval->parsed()) return cmd_eval(eval_model, eval_data);
  } catch (const rnn::ParseError& e) {
    std::cerr << "error[parse]: " << e.what() << '\n';
    return kExitData;
  } catch (const rnn::ConvergenceError& e) {
    std::cerr << "error[converge]: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitData;
  } catch (const rnn::DataError& e) {
    std::cerr << "error[data]: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error[data]: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
