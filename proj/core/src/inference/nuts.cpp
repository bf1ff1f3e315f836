#include "hoopstyle/inference/nuts.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace hoopstyle::inference {

int PosteriorSamples::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("unknown parameter '" + name + "'");
  return static_cast<int>(it - names.begin());
}

Eigen::VectorXd PosteriorSamples::pooled(int param) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(n_chains()) * n_draws());
  Eigen::Index k = 0;
  for (const auto& c : chains) {
    out.segment(k, c.rows()) = c.col(param);
    k += c.rows();
  }
  return out;
}

Eigen::MatrixXd PosteriorSamples::by_chain(int param) const {
  Eigen::MatrixXd out(n_draws(), n_chains());
  for (int c = 0; c < n_chains(); ++c) out.col(c) = chains[static_cast<std::size_t>(c)].col(param);
  return out;
}

int PosteriorSamples::total_divergences() const {
  int total = 0;
  for (const auto& d : diagnostics) total += d.divergences;
  return total;
}

double PosteriorSamples::divergent_fraction() const {
  const double n = static_cast<double>(n_chains()) * n_draws();
  return n > 0 ? total_divergences() / n : 0.0;
}

void PosteriorSamples::validate() const {
  if (chains.size() < 2) throw InvalidArgument("posterior needs at least 2 chains");
  for (const auto& c : chains) {
    if (c.rows() != chains.front().rows() || c.cols() != chains.front().cols()) {
      throw InvalidArgument("posterior chains have unequal shapes");
    }
    if (!c.allFinite()) throw InvalidArgument("posterior contains non-finite draws");
  }
  if (!names.empty() && names.size() != static_cast<std::size_t>(dim())) {
    throw InvalidArgument("posterior parameter name count mismatch");
  }
}

namespace {

constexpr double kMaxDeltaH = 1000.0;

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct PhasePoint {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  Eigen::VectorXd g;  // gradient of log density
  double logp = 0.0;
};

class DualAveraging {
 public:
  void restart(double step) {
    mu_ = std::log(10.0 * step);
    counter_ = 0;
    s_bar_ = 0.0;
    x_bar_ = 0.0;
  }
  double learn(double adapt_stat, double delta) {
    ++counter_;
    adapt_stat = std::min(1.0, adapt_stat);
    const double eta = 1.0 / (counter_ + kT0);
    s_bar_ = (1.0 - eta) * s_bar_ + eta * (delta - adapt_stat);
    const double x = mu_ - s_bar_ * std::sqrt(static_cast<double>(counter_)) / kGamma;
    const double x_eta = std::pow(static_cast<double>(counter_), -kKappa);
    x_bar_ = (1.0 - x_eta) * x_bar_ + x_eta * x;
    return std::exp(x);
  }
  double final_step() const { return std::exp(x_bar_); }

 private:
  static constexpr double kGamma = 0.05;
  static constexpr double kT0 = 10.0;
  static constexpr double kKappa = 0.75;
  double mu_ = 0.0;
  double s_bar_ = 0.0;
  double x_bar_ = 0.0;
  long counter_ = 0;
};

// Warmup schedule: an initial fast buffer, doubling slow windows for the
// metric, and a terminal fast buffer.
class MetricWindows {
 public:
  MetricWindows(int warmup, int dim) : warmup_(warmup), dim_(dim) {
    if (warmup < 20) {
      enabled_ = false;
      return;
    }
    if (init_buffer_ + base_window_ + term_buffer_ > warmup) {
      init_buffer_ = static_cast<int>(0.15 * warmup);
      term_buffer_ = static_cast<int>(0.1 * warmup);
      base_window_ = warmup - (init_buffer_ + term_buffer_);
    }
    window_size_ = base_window_;
    next_window_ = init_buffer_ + window_size_ - 1;
    reset_estimator();
  }

  // Feeds the post-transition position; returns true when `var` was updated.
  bool learn(Eigen::VectorXd& var, const Eigen::VectorXd& q) {
    if (!enabled_) return false;
    if (in_window()) add(q);
    if (end_of_window()) {
      compute_next_window();
      const double n = static_cast<double>(count_);
      var = m2_ / (n - 1.0);
      var = (n / (n + 5.0)) * var.array() + 1e-3 * (5.0 / (n + 5.0));
      reset_estimator();
      ++counter_;
      return true;
    }
    ++counter_;
    return false;
  }

 private:
  bool in_window() const {
    return counter_ >= init_buffer_ && counter_ < warmup_ - term_buffer_ && counter_ != warmup_;
  }
  bool end_of_window() const { return counter_ == next_window_ && counter_ != warmup_; }
  void compute_next_window() {
    if (next_window_ == warmup_ - term_buffer_ - 1) return;
    window_size_ *= 2;
    next_window_ = counter_ + window_size_;
    if (next_window_ != warmup_ - term_buffer_ - 1) {
      const int boundary = next_window_ + 2 * window_size_;
      if (boundary >= warmup_ - term_buffer_ - 1) next_window_ = warmup_ - term_buffer_ - 1;
    }
  }
  void add(const Eigen::VectorXd& q) {
    ++count_;
    const Eigen::VectorXd delta = q - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta.cwiseProduct(q - mean_);
  }
  void reset_estimator() {
    count_ = 0;
    mean_ = Eigen::VectorXd::Zero(dim_);
    m2_ = Eigen::VectorXd::Zero(dim_);
  }

  int warmup_;
  int dim_;
  bool enabled_ = true;
  int init_buffer_ = 75;
  int term_buffer_ = 50;
  int base_window_ = 25;
  int window_size_ = 0;
  int next_window_ = 0;
  int counter_ = 0;
  long count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
};

std::mt19937_64 chain_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x6e757473u};
  return std::mt19937_64(seq);
}

class Chain {
 public:
  Chain(const LogDensity& target, const NutsOptions& options, int index)
      : target_(target),
        options_(options),
        rng_(chain_rng(options.seed, index)),
        dim_(target.dim()),
        inv_metric_(Eigen::VectorXd::Ones(target.dim())),
        step_(options.initial_step_size) {}

  void run(Eigen::MatrixXd& draws, ChainDiagnostics& diag) {
    initialize();
    init_step_size();
    DualAveraging da;
    da.restart(step_);
    MetricWindows windows(options_.warmup, dim_);

    for (int it = 0; it < options_.warmup; ++it) {
      const Transition tr = transition();
      step_ = da.learn(tr.accept_stat, options_.target_accept);
      if (windows.learn(inv_metric_, z_.q)) {
        init_step_size();
        da.restart(step_);
      }
    }
    if (options_.warmup > 0) step_ = da.final_step();

    draws.resize(options_.draws, dim_);
    double accept_total = 0.0;
    for (int it = 0; it < options_.draws; ++it) {
      const Transition tr = transition();
      draws.row(it) = target_.reported(z_.q).transpose();
      accept_total += tr.accept_stat;
      if (tr.divergent) ++diag.divergences;
      if (tr.depth >= options_.max_tree_depth) ++diag.max_depth_hits;
    }
    diag.step_size = step_;
    diag.inv_metric = inv_metric_;
    diag.mean_accept_stat = options_.draws > 0 ? accept_total / options_.draws : 0.0;
    diag.gradient_evaluations = gradient_evaluations_;
  }

 private:
  struct Transition {
    double accept_stat = 0.0;
    int depth = 0;
    bool divergent = false;
  };

  void evaluate(PhasePoint& z) {
    ++gradient_evaluations_;
    z.logp = target_.log_density(z.q, z.g);
    if (std::isnan(z.logp)) z.logp = -std::numeric_limits<double>::infinity();
  }

  void initialize() {
    for (int attempt = 0; attempt < 100; ++attempt) {
      z_.q = target_.initial_point(rng_);
      evaluate(z_);
      if (std::isfinite(z_.logp) && z_.g.allFinite()) return;
    }
    throw SolverError("NUTS: no finite initial point after 100 attempts");
  }

  void sample_momentum(PhasePoint& z) {
    std::normal_distribution<double> normal(0.0, 1.0);
    z.p.resize(dim_);
    for (int i = 0; i < dim_; ++i) z.p(i) = normal(rng_) / std::sqrt(inv_metric_(i));
  }

  double hamiltonian(const PhasePoint& z) const {
    return -z.logp + 0.5 * z.p.dot(inv_metric_.cwiseProduct(z.p));
  }

  Eigen::VectorXd p_sharp(const PhasePoint& z) const { return inv_metric_.cwiseProduct(z.p); }

  void leapfrog(PhasePoint& z, double eps) {
    z.p += 0.5 * eps * z.g;
    z.q += eps * inv_metric_.cwiseProduct(z.p);
    evaluate(z);
    z.p += 0.5 * eps * z.g;
  }

  void init_step_size() {
    const PhasePoint start = z_;
    auto trial = [&] {
      z_ = start;
      sample_momentum(z_);
      const double h0 = hamiltonian(z_);
      leapfrog(z_, step_);
      double h = hamiltonian(z_);
      if (std::isnan(h)) h = std::numeric_limits<double>::infinity();
      return h0 - h;
    };
    const double log08 = std::log(0.8);
    const int direction = trial() > log08 ? 1 : -1;
    while (true) {
      const double delta_h = trial();
      if (direction == 1 && !(delta_h > log08)) break;
      if (direction == -1 && !(delta_h < log08)) break;
      step_ = direction == 1 ? 2.0 * step_ : 0.5 * step_;
      if (step_ > 1e7) throw SolverError("NUTS: step size diverged upward; posterior may be improper");
      if (step_ == 0.0) throw SolverError("NUTS: step size collapsed to zero");
    }
    z_ = start;
  }

  static bool criterion(const Eigen::VectorXd& p_sharp_minus, const Eigen::VectorXd& p_sharp_plus,
                        const Eigen::VectorXd& rho) {
    return p_sharp_plus.dot(rho) > 0.0 && p_sharp_minus.dot(rho) > 0.0;
  }

  // Builds a subtree of 2^depth leapfrog steps from the running state z_.
  bool build_tree(int depth, PhasePoint& z_propose, Eigen::VectorXd& p_sharp_beg,
                  Eigen::VectorXd& p_sharp_end, Eigen::VectorXd& rho, Eigen::VectorXd& p_beg,
                  Eigen::VectorXd& p_end, double h0, double sign, int& n_leapfrog,
                  double& log_sum_weight, double& sum_metro_prob, bool& divergent) {
    if (depth == 0) {
      leapfrog(z_, sign * step_);
      ++n_leapfrog;
      double h = hamiltonian(z_);
      if (std::isnan(h)) h = std::numeric_limits<double>::infinity();
      if (h - h0 > kMaxDeltaH) divergent = true;
      log_sum_weight = log_sum_exp(log_sum_weight, h0 - h);
      sum_metro_prob += h0 - h > 0.0 ? 1.0 : std::exp(h0 - h);
      z_propose = z_;
      p_sharp_beg = p_sharp(z_);
      p_sharp_end = p_sharp_beg;
      rho += z_.p;
      p_beg = z_.p;
      p_end = p_beg;
      return !divergent;
    }

    Eigen::VectorXd rho_init = Eigen::VectorXd::Zero(dim_);
    Eigen::VectorXd p_init_end(dim_);
    Eigen::VectorXd p_sharp_init_end(dim_);
    double log_sum_weight_init = -std::numeric_limits<double>::infinity();
    if (!build_tree(depth - 1, z_propose, p_sharp_beg, p_sharp_init_end, rho_init, p_beg,
                    p_init_end, h0, sign, n_leapfrog, log_sum_weight_init, sum_metro_prob,
                    divergent)) {
      return false;
    }

    PhasePoint z_propose_final = z_;
    Eigen::VectorXd rho_final = Eigen::VectorXd::Zero(dim_);
    Eigen::VectorXd p_final_beg(dim_);
    Eigen::VectorXd p_sharp_final_beg(dim_);
    double log_sum_weight_final = -std::numeric_limits<double>::infinity();
    if (!build_tree(depth - 1, z_propose_final, p_sharp_final_beg, p_sharp_end, rho_final,
                    p_final_beg, p_end, h0, sign, n_leapfrog, log_sum_weight_final,
                    sum_metro_prob, divergent)) {
      return false;
    }

    const double log_sum_weight_subtree = log_sum_exp(log_sum_weight_init, log_sum_weight_final);
    log_sum_weight = log_sum_exp(log_sum_weight, log_sum_weight_subtree);
    if (log_sum_weight_final > log_sum_weight_subtree) {
      z_propose = z_propose_final;
    } else {
      const double accept_prob = std::exp(log_sum_weight_final - log_sum_weight_subtree);
      if (uniform_(rng_) < accept_prob) z_propose = z_propose_final;
    }

    const Eigen::VectorXd rho_subtree = rho_init + rho_final;
    rho += rho_subtree;
    bool persist = criterion(p_sharp_beg, p_sharp_end, rho_subtree);
    persist = persist && criterion(p_sharp_beg, p_sharp_final_beg, rho_init + p_final_beg);
    persist = persist && criterion(p_sharp_init_end, p_sharp_end, rho_final + p_init_end);
    return persist;
  }

  Transition transition() {
    sample_momentum(z_);
    PhasePoint z_fwd = z_;
    PhasePoint z_bck = z_;
    PhasePoint z_sample = z_;
    PhasePoint z_propose = z_;

    Eigen::VectorXd p_fwd_fwd = z_.p;
    Eigen::VectorXd p_sharp_fwd_fwd = p_sharp(z_);
    Eigen::VectorXd p_fwd_bck = z_.p;
    Eigen::VectorXd p_sharp_fwd_bck = p_sharp_fwd_fwd;
    Eigen::VectorXd p_bck_fwd = z_.p;
    Eigen::VectorXd p_sharp_bck_fwd = p_sharp_fwd_fwd;
    Eigen::VectorXd p_bck_bck = z_.p;
    Eigen::VectorXd p_sharp_bck_bck = p_sharp_fwd_fwd;
    Eigen::VectorXd rho = z_.p;

    double log_sum_weight = 0.0;
    const double h0 = hamiltonian(z_);
    int n_leapfrog = 0;
    double sum_metro_prob = 0.0;
    bool divergent = false;
    int depth = 0;

    while (depth < options_.max_tree_depth) {
      Eigen::VectorXd rho_fwd = Eigen::VectorXd::Zero(dim_);
      Eigen::VectorXd rho_bck = Eigen::VectorXd::Zero(dim_);
      bool valid_subtree = false;
      double log_sum_weight_subtree = -std::numeric_limits<double>::infinity();

      if (uniform_(rng_) > 0.5) {
        z_ = z_fwd;
        rho_bck = rho;
        p_bck_fwd = p_fwd_bck;
        p_sharp_bck_fwd = p_sharp_fwd_bck;
        valid_subtree = build_tree(depth, z_propose, p_sharp_fwd_bck, p_sharp_fwd_fwd, rho_fwd,
                                   p_fwd_bck, p_fwd_fwd, h0, 1.0, n_leapfrog,
                                   log_sum_weight_subtree, sum_metro_prob, divergent);
        z_fwd = z_;
      } else {
        z_ = z_bck;
        rho_fwd = rho;
        p_fwd_bck = p_bck_fwd;
        p_sharp_fwd_bck = p_sharp_bck_fwd;
        valid_subtree = build_tree(depth, z_propose, p_sharp_bck_fwd, p_sharp_bck_bck, rho_bck,
                                   p_bck_fwd, p_bck_bck, h0, -1.0, n_leapfrog,
                                   log_sum_weight_subtree, sum_metro_prob, divergent);
        z_bck = z_;
      }
      if (!valid_subtree) break;
      ++depth;

      if (log_sum_weight_subtree > log_sum_weight) {
        z_sample = z_propose;
      } else {
        const double accept_prob = std::exp(log_sum_weight_subtree - log_sum_weight);
        if (uniform_(rng_) < accept_prob) z_sample = z_propose;
      }
      log_sum_weight = log_sum_exp(log_sum_weight, log_sum_weight_subtree);

      rho = rho_bck + rho_fwd;
      bool persist = criterion(p_sharp_bck_bck, p_sharp_fwd_fwd, rho);
      persist = persist && criterion(p_sharp_bck_bck, p_sharp_fwd_bck, rho_bck + p_fwd_bck);
      persist = persist && criterion(p_sharp_bck_fwd, p_sharp_fwd_fwd, rho_fwd + p_bck_fwd);
      if (!persist) break;
    }

    z_ = z_sample;
    Transition tr;
    tr.accept_stat = n_leapfrog > 0 ? sum_metro_prob / n_leapfrog : 0.0;
    tr.depth = depth;
    tr.divergent = divergent;
    return tr;
  }

  const LogDensity& target_;
  const NutsOptions& options_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  int dim_;
  Eigen::VectorXd inv_metric_;
  double step_;
  PhasePoint z_;
  long long gradient_evaluations_ = 0;
};

}  // namespace

PosteriorSamples nuts_sample(const LogDensity& target, const NutsOptions& options) {
  if (options.chains < 1) throw InvalidArgument("NUTS: need at least one chain");
  if (options.warmup < 0 || options.draws < 1) throw InvalidArgument("NUTS: bad iteration counts");
  if (!(options.target_accept > 0.0 && options.target_accept < 1.0)) {
    throw InvalidArgument("NUTS: target_accept must lie in (0, 1)");
  }
  if (options.max_tree_depth < 1) throw InvalidArgument("NUTS: max_tree_depth must be >= 1");
  if (target.dim() < 1) throw InvalidArgument("NUTS: target has no parameters");

  PosteriorSamples out;
  out.names = target.parameter_names();
  out.chains.resize(static_cast<std::size_t>(options.chains));
  out.diagnostics.resize(static_cast<std::size_t>(options.chains));

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int c = next++; c < options.chains; c = next++) {
      try {
        Chain chain(target, options, c);
        chain.run(out.chains[static_cast<std::size_t>(c)], out.diagnostics[static_cast<std::size_t>(c)]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(options.threads, 1, options.chains);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace hoopstyle::inference
