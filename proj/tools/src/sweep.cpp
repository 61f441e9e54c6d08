#include "ppprelay/cli/sweep.hpp"

#include <cmath>
#include <sstream>

#include "ppprelay/analytic.hpp"
#include "ppprelay/metrics.hpp"
#include "ppprelay/selection.hpp"
#include "ppprelay/throughput.hpp"

namespace ppprelay::cli {

namespace {

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

double to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<Scheme> schemes_of(SchemeChoice choice) {
  switch (choice) {
    case SchemeChoice::bulk: return {Scheme::bulk};
    case SchemeChoice::per_subcarrier: return {Scheme::per_subcarrier};
    case SchemeChoice::both: return {Scheme::bulk, Scheme::per_subcarrier};
  }
  return {};
}

std::string region_label(const ExperimentConfig& c) {
  return c.region == RegionKind::disc ? "disc" : "plane";
}

Region analytic_region(const ExperimentConfig& c) {
  return c.region == RegionKind::disc ? Region::disc(c.sigma) : Region::plane();
}

SystemParams params_at(const ExperimentConfig& c, double alpha, int K, double snr) {
  return {snr, alpha, c.threshold, K, c.r_sd};
}

// Leading columns shared by every per-point row.
std::vector<std::string> point_header() {
  return {"scheme", "region", "sigma", "alpha", "K", "lambda", "snr", "snr_db"};
}

std::vector<std::string> point_row(const ExperimentConfig& c, Scheme scheme, double alpha, int K,
                                   double lambda, double snr) {
  return {std::string(scheme_name(scheme)), region_label(c), fmt(c.sigma), fmt(alpha), fmt(K),
          fmt(lambda), fmt(snr), fmt(to_db(snr))};
}

template <class F>
void for_each_point(const ExperimentConfig& c, F&& f) {
  for (double alpha : c.alpha)
    for (int K : c.subcarriers)
      for (double lambda : c.lambda)
        for (double snr : c.snr) f(alpha, K, lambda, snr);
}

void run_simulate(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  t.header = point_header();
  const bool plane = c.region == RegionKind::plane;
  if (plane) t.header.push_back("r_max");
  for (const char* h : {"p_outage", "stderr", "empty_fraction", "kappa", "kappa_stderr", "trials",
                        "seed"}) {
    t.header.push_back(h);
  }
  if (c.connection) t.header.push_back("p_connection");
  if (c.verify) {
    for (const char* h : {"p_analytic", "sigma_null", "within_3sigma"}) t.header.push_back(h);
  }

  const std::vector<Scheme> schemes = schemes_of(c.scheme);
  std::vector<std::vector<std::string>> rows_by_scheme[2];
  std::string r_max_list;
  const SimulationOptions options{c.trials, c.seed, c.workers};
  for_each_point(c, [&](double alpha, int K, double lambda, double snr) {
    const SystemParams p = params_at(c, alpha, K, snr);
    const double r_max = plane ? c.rmax.value_or(default_truncation_radius(snr, c.threshold, alpha))
                               : c.sigma;
    if (plane) r_max_list += (r_max_list.empty() ? "" : ",") + fmt(r_max);
    const Region region = plane ? Region::plane(r_max) : Region::disc(c.sigma);
    const PairedEstimate est = estimate_outage_paired(p, region, lambda, options);
    for (Scheme scheme : schemes) {
      const OutageEstimate& e = scheme == Scheme::bulk ? est.bulk : est.per_subcarrier;
      auto row = point_row(c, scheme, alpha, K, lambda, snr);
      if (plane) row.push_back(fmt(r_max));
      row.push_back(fmt(e.p_hat));
      row.push_back(fmt(e.std_error));
      row.push_back(fmt(e.empty_fraction));
      row.push_back(fmt(K * (1.0 - e.p_hat)));
      row.push_back(fmt(K * e.std_error));
      row.push_back(fmt(e.trials));
      row.push_back(fmt(e.seed));
      if (c.connection) row.push_back(fmt(connection_probability_view(e.p_hat)));
      if (c.verify) {
        const double phi = outage(scheme, p, analytic_region(c), lambda, c.quadrature);
        // Null-hypothesis sigma: stays meaningful when p_hat is 0 or 1.
        const double sigma = std::sqrt(phi * (1.0 - phi) / static_cast<double>(e.trials));
        const bool ok = std::abs(e.p_hat - phi) <= 3.0 * sigma;
        ++out.verify.points;
        out.verify.agreeing += ok;
        row.push_back(fmt(phi));
        row.push_back(fmt(sigma));
        row.push_back(ok ? "true" : "false");
      }
      rows_by_scheme[scheme == Scheme::bulk ? 0 : 1].push_back(std::move(row));
    }
  });
  for (auto& group : rows_by_scheme)
    for (auto& row : group) t.rows.push_back(std::move(row));
  if (plane) out.metadata.emplace_back("r_max", r_max_list);
  if (c.verify) {
    out.metadata.emplace_back("verify_points", fmt(static_cast<std::uint64_t>(out.verify.points)));
    out.metadata.emplace_back("verify_agreeing",
                              fmt(static_cast<std::uint64_t>(out.verify.agreeing)));
  }
}

void run_analytic(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  t.header = point_header();
  t.header.push_back("p_outage");
  t.header.push_back("kappa");
  if (c.connection) t.header.push_back("p_connection");
  const Region region = analytic_region(c);
  for (Scheme scheme : schemes_of(c.scheme)) {
    for_each_point(c, [&](double alpha, int K, double lambda, double snr) {
      const double phi = outage(scheme, params_at(c, alpha, K, snr), region, lambda, c.quadrature);
      auto row = point_row(c, scheme, alpha, K, lambda, snr);
      row.push_back(fmt(phi));
      row.push_back(fmt(K * (1.0 - phi)));
      if (c.connection) row.push_back(fmt(connection_probability_view(phi)));
      t.rows.push_back(std::move(row));
    });
  }
}

void run_asymptotic(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  t.header = point_header();
  for (const char* h : {"p_exact", "p_asymptotic", "floor", "in_validity_region"}) {
    t.header.push_back(h);
  }
  if (c.connection) t.header.push_back("p_connection");
  const double area = region_area(Region::disc(c.sigma));
  for (Scheme scheme : schemes_of(c.scheme)) {
    for_each_point(c, [&](double alpha, int K, double lambda, double snr) {
      const SystemParams p = params_at(c, alpha, K, snr);
      const double exact = outage(scheme, p, Region::disc(c.sigma), lambda, c.quadrature);
      const AsymptoticOutage a = scheme == Scheme::bulk ? asymptotic_bulk_disc(p, lambda, c.sigma)
                                                        : asymptotic_ps_disc(p, lambda, c.sigma);
      auto row = point_row(c, scheme, alpha, K, lambda, snr);
      row.push_back(fmt(exact));
      row.push_back(fmt(a.value));
      row.push_back(fmt(outage_floor(lambda, area)));
      row.push_back(a.in_validity_region ? "true" : "false");
      if (c.connection) row.push_back(fmt(connection_probability_view(exact)));
      t.rows.push_back(std::move(row));
    });
  }
}

void run_ratio(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  const Region region = analytic_region(c);
  const bool targets = !c.epsilon.empty();
  t.header = {"region", "sigma", "alpha", "K", "snr", "snr_db"};
  if (targets) {
    for (const char* h : {"epsilon", "eps_bar", "lambda_approx", "lambda_exact"}) {
      t.header.push_back(h);
    }
  } else {
    for (const char* h : {"lambda", "phi", "phi_direct", "phi_approx"}) t.header.push_back(h);
  }
  for (double alpha : c.alpha)
    for (int K : c.subcarriers)
      for (double snr : c.snr) {
        const SystemParams p = params_at(c, alpha, K, snr);
        std::vector<std::string> lead = {region_label(c), fmt(c.sigma), fmt(alpha),
                                         fmt(K),          fmt(snr),     fmt(to_db(snr))};
        if (targets) {
          const DeltaTable table(p, region, c.quadrature);
          for (double eps : c.epsilon) {
            const MinDensityResult m = min_density_for_advantage(eps, table);
            auto row = lead;
            row.push_back(fmt(eps));
            row.push_back(fmt(1.0 - eps));
            row.push_back(fmt(m.approx));
            row.push_back(fmt(m.exact));
            t.rows.push_back(std::move(row));
          }
        } else {
          for (double lambda : c.lambda) {
            const RatioResult r = outage_ratio(p, region, lambda, c.quadrature);
            auto row = lead;
            row.push_back(fmt(lambda));
            row.push_back(fmt(r.phi));
            row.push_back(fmt(r.phi_direct));
            row.push_back(fmt(r.phi_approx));
            t.rows.push_back(std::move(row));
          }
        }
      }
}

void run_diversity(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  t.header = {"scheme", "region", "sigma", "alpha", "K", "lambda", "snr_lo", "snr_hi", "slope"};
  const bool disc = c.region == RegionKind::disc;
  for (Scheme scheme : schemes_of(c.scheme))
    for (double alpha : c.alpha)
      for (int K : c.subcarriers)
        for (double lambda : c.lambda)
          for (std::size_t i = 0; i + 1 < c.snr.size(); ++i) {
            auto at = [&](double snr) { return params_at(c, alpha, K, snr); };
            DiversityEstimate d;
            if (scheme == Scheme::bulk) {
              d = diversity_slope_log(
                  [&](double snr) {
                    return disc ? log_outage_bulk_disc(at(snr), lambda, c.sigma, c.quadrature)
                                : log_outage_bulk_plane(at(snr), lambda, c.quadrature);
                  },
                  c.snr[i], c.snr[i + 1]);
            } else {
              d = diversity_slope(
                  [&](double snr) {
                    return disc ? outage_ps_disc(at(snr), lambda, c.sigma, c.quadrature)
                                : outage_ps_plane(at(snr), lambda, c.quadrature);
                  },
                  c.snr[i], c.snr[i + 1]);
            }
            t.rows.push_back({std::string(scheme_name(scheme)), region_label(c), fmt(c.sigma),
                              fmt(alpha), fmt(K), fmt(lambda), fmt(d.snr_lo), fmt(d.snr_hi),
                              fmt(d.slope)});
          }
}

void run_optimize(const ExperimentConfig& c, SweepResult& out) {
  auto& t = out.table;
  const Region region = analytic_region(c);
  const bool constrained = !c.psi.empty();
  t.header = {"region", "sigma", "alpha", "snr", "snr_db", "lambda"};
  if (constrained) {
    for (const char* h : {"psi", "lambda_c"}) t.header.push_back(h);
  }
  for (const char* h : {"k_relaxed", "K_opt", "kappa_opt"}) t.header.push_back(h);
  if (constrained) t.header.push_back("feasible");
  for (double alpha : c.alpha)
    for (double snr : c.snr) {
      const SystemParams p = params_at(c, alpha, 1, snr);
      std::vector<double> cutoffs;
      for (double psi : c.psi) {
        cutoffs.push_back(psi < 1.0 ? cutoff_density(psi, p, region, c.quadrature) : 0.0);
      }
      for (double lambda : c.lambda) {
        std::vector<std::string> lead = {region_label(c), fmt(c.sigma), fmt(alpha),
                                         fmt(snr),        fmt(to_db(snr)), fmt(lambda)};
        if (!constrained) {
          const OptimizationResult r = optimize_k_unconstrained(p, region, lambda, c.quadrature);
          auto row = lead;
          row.push_back(fmt(r.k_relaxed));
          row.push_back(fmt(r.k_opt));
          row.push_back(fmt(r.kappa_opt));
          t.rows.push_back(std::move(row));
          continue;
        }
        for (std::size_t j = 0; j < c.psi.size(); ++j) {
          const OptimizationResult r =
              optimize_k_constrained(p, region, lambda, c.psi[j], c.quadrature);
          auto row = lead;
          row.push_back(fmt(c.psi[j]));
          row.push_back(fmt(cutoffs[j]));
          row.push_back(fmt(r.k_relaxed));
          row.push_back(fmt(r.k_opt));
          row.push_back(fmt(r.kappa_opt));
          row.push_back(r.feasible ? "true" : "false");
          t.rows.push_back(std::move(row));
        }
      }
    }
}

}  // namespace

double connection_probability_view(double outage) {
  if (!(outage >= 0.0 && outage <= 1.0)) {
    throw ConfigurationError("outage probability must lie in [0, 1]");
  }
  return 1.0 - outage;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  SweepResult out;
  switch (config.run_mode) {
    case Mode::simulate: run_simulate(config, out); break;
    case Mode::analytic: run_analytic(config, out); break;
    case Mode::asymptotic: run_asymptotic(config, out); break;
    case Mode::ratio: run_ratio(config, out); break;
    case Mode::diversity: run_diversity(config, out); break;
    case Mode::optimize_k: run_optimize(config, out); break;
    case Mode::figure:
      throw ConfigurationError("figure mode needs a preset to resolve the run mode");
  }
  return out;
}

std::string render_metadata(const ExperimentConfig& config, const SweepResult& result) {
  std::ostringstream out;
  out << "# ppprelay run metadata\n"
      << "tool = ppprelay\n"
      << "version = " << kToolVersion << '\n'
      << "seed = " << config.seed << '\n'
      << "run_mode = " << mode_name(config.run_mode) << '\n'
      << "rows = " << result.table.rows.size() << '\n';
  for (const auto& [k, v] : result.metadata) out << k << " = " << v << '\n';
  out << "# resolved configuration\n" << render_config(config);
  return out.str();
}

}  // namespace ppprelay::cli
