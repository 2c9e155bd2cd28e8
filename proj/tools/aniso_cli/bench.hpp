#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <aniso/aniso.hpp>
#include <aniso/io/records.hpp>

#include "pool.hpp"

namespace aniso::cli {

inline constexpr std::array<Method, 3> kAllMethods = {Method::CakeWavelet, Method::Ridge,
                                                      Method::Binning};

struct AnalysisConfig {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  int angles = 180;
  WindowSpec window;
  CakeParams cake;
  RidgeParams ridge;
  bool refine = true;
  std::uint64_t seed = 0;
  int trials = 36;
  int threads = 1;
};

struct Table1Config {
  int images = 30;
  std::vector<double> sigmas{5.0, 20.0, 50.0};
  GaborMixSpec gabor;
};

struct BenchTable {
  std::vector<MetricReport> rows;
  std::vector<MetricReport> extra;
};

/// Aligned text rendering: one line per method, mean +- std per metric.
inline std::string text_table(const std::vector<MetricReport>& rows, const std::string& title) {
  std::vector<std::string> metrics;
  std::vector<std::string> methods;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v)
      if (x == s) return;
    v.push_back(s);
  };
  for (const auto& r : rows) {
    add_unique(methods, r.method);
    add_unique(metrics, r.metric);
  }
  std::string out = title + "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-9s", "method");
  out += buf;
  for (const auto& m : metrics) {
    std::snprintf(buf, sizeof buf, " %30s", m.c_str());
    out += buf;
  }
  out += "\n";
  for (const auto& method : methods) {
    std::snprintf(buf, sizeof buf, "%-9s", method.c_str());
    out += buf;
    for (const auto& metric : metrics) {
      std::string cell = "-";
      for (const auto& r : rows) {
        if (r.method != method || r.metric != metric) continue;
        std::snprintf(buf, sizeof buf, "%.4f +- %.4f", r.mean, r.stddev);
        cell = buf;
      }
      std::snprintf(buf, sizeof buf, " %30s", cell.c_str());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

namespace detail {

inline MetricReport report(Method method, const std::string& metric, const std::vector<double>& v,
                           const std::string& params, int failures) {
  const auto s = summarize(v);
  return {std::string(method_name(method)), metric, s.mean, s.stddev, s.count,
          params + ";failures=" + std::to_string(failures), failures};
}

}  // namespace detail

/// Orientation benchmark for one concentration: `images` Gabor mixtures,
/// angular distance of the principal orientation to mu, profile
/// equivariance over `trials` rotations, and the profile distance to the von
/// Mises reference. Image i uses seed derive_seed(base, i).
inline BenchTable run_table1(const AnalysisConfig& cfg, const Table1Config& t1, double sigma,
                             std::uint64_t base_seed) {
  const int w = t1.gabor.width;
  const int h = t1.gabor.height;
  std::vector<FilterBank> banks;
  for (Method m : cfg.methods) banks.push_back(make_bank(m, h, w, cfg.angles, cfg.cake, cfg.ridge));
  std::vector<const FilterBank*> bank_ptrs;
  for (const auto& b : banks) bank_ptrs.push_back(&b);
  const std::size_t nm = banks.size();

  struct PerImage {
    std::vector<std::optional<double>> angdist, reference_db, equiv_db, equiv_maxabs;
  };
  std::vector<PerImage> results(static_cast<std::size_t>(t1.images));
  const AngularProfile reference = von_mises_reference_profile(t1.gabor.mu, sigma, cfg.angles);

  parallel_for(results.size(), cfg.threads, [&](std::size_t i) {
    PerImage& r = results[i];
    r.angdist.assign(nm, std::nullopt);
    r.reference_db.assign(nm, std::nullopt);
    r.equiv_db.assign(nm, std::nullopt);
    r.equiv_maxabs.assign(nm, std::nullopt);
    GaborMixSpec spec = t1.gabor;
    spec.sigma = sigma;
    spec.seed = derive_seed(base_seed, i);
    const Image img = gen_gabor_image(spec).image;
    const Psd psd = periodogram(img, cfg.window);
    for (std::size_t b = 0; b < nm; ++b) {
      try {
        const auto p = normalize(angular_profile(psd, banks[b]));
        r.angdist[b] =
            angular_distance(principal_orientation(p, cfg.refine).eta, t1.gabor.mu, 180.0);
        r.reference_db[b] = profile_distance_db(p, reference);
      } catch (const DegenerateProfileError&) {
      }
    }
    Rng rng(derive_seed(spec.seed, 1));
    const auto alphas = stratified_angles(cfg.trials, rng);
    try {
      const auto trials = profile_equivariance_trials(img, bank_ptrs, cfg.window, alphas);
      for (std::size_t b = 0; b < nm; ++b) {
        std::vector<double> scores;
        double worst = 0.0;
        for (const auto& t : trials[b]) {
          scores.push_back(t.score_db);
          worst = std::max(worst, t.max_abs_error);
        }
        r.equiv_db[b] = summarize(scores).mean;
        r.equiv_maxabs[b] = worst;
      }
    } catch (const DegenerateProfileError&) {
    }
  });

  char params[160];
  std::snprintf(params, sizeof params, "sigma=%g;mu=%g;n=%d;trials=%d;M=%d;seed=%llu", sigma,
                t1.gabor.mu, t1.images, cfg.trials, cfg.angles,
                static_cast<unsigned long long>(base_seed));
  BenchTable table;
  for (std::size_t b = 0; b < nm; ++b) {
    auto collect = [&](auto member, int* failures) {
      std::vector<double> v;
      for (const auto& r : results) {
        const auto& x = (r.*member)[b];
        if (x) {
          v.push_back(*x);
        } else {
          ++*failures;
        }
      }
      return v;
    };
    int f_ang = 0, f_eq = 0, f_ref = 0, f_max = 0;
    const Method m = cfg.methods[b];
    const auto ang = collect(&PerImage::angdist, &f_ang);
    const auto eq = collect(&PerImage::equiv_db, &f_eq);
    const auto ref = collect(&PerImage::reference_db, &f_ref);
    const auto mx = collect(&PerImage::equiv_maxabs, &f_max);
    table.rows.push_back(detail::report(m, "angular_distance_deg", ang, params, f_ang));
    table.rows.push_back(detail::report(m, "profile_equivariance_db", eq, params, f_eq));
    table.extra.push_back(detail::report(m, "profile_reference_db", ref, params, f_ref));
    table.extra.push_back(detail::report(m, "profile_equivariance_maxabs", mx, params, f_max));
    double worst = 0.0;
    for (double v : mx) worst = std::max(worst, v);
    MetricReport wr = detail::report(m, "profile_equivariance_maxabs_worst", {worst}, params, f_max);
    wr.count = static_cast<int>(mx.size());
    table.extra.push_back(wr);
  }
  return table;
}

/// Registration protocol on one pair: gamma per method and registration
/// equivariance over `trials` rotations. With a known ground truth the
/// construct-and-recover error is reported as well.
inline BenchTable run_register_pair(const AnalysisConfig& cfg, const Image& x1, const Image& x2) {
  BenchTable table;
  std::vector<MetricReport> rows(cfg.methods.size() * 2);
  parallel_for(cfg.methods.size(), cfg.threads, [&](std::size_t b) {
    const Method m = cfg.methods[b];
    const auto bank = make_bank(m, x1.height(), x1.width(), cfg.angles, cfg.cake, cfg.ridge);
    const std::string params = "trials=" + std::to_string(cfg.trials) + ";M=" +
                               std::to_string(cfg.angles) + ";seed=" + std::to_string(cfg.seed);
    try {
      const auto r = register_images(x1, x2, bank, cfg.window, cfg.refine);
      rows[2 * b] = detail::report(m, "registration_gamma_deg", {r.gamma}, params, 0);
    } catch (const DegenerateProfileError&) {
      rows[2 * b] = detail::report(m, "registration_gamma_deg", {}, params, 1);
    }
    Rng rng(derive_seed(cfg.seed, 2));
    try {
      auto eq = registration_equivariance_error(x1, x2, bank, cfg.window, cfg.trials, rng, cfg.refine);
      rows[2 * b + 1] = detail::report(m, eq.metric, {}, params, eq.failures);
      rows[2 * b + 1].mean = eq.mean;
      rows[2 * b + 1].stddev = eq.stddev;
      rows[2 * b + 1].count = eq.count;
    } catch (const DegenerateProfileError&) {
      rows[2 * b + 1] = detail::report(m, "registration_equivariance_deg", {}, params, cfg.trials);
    }
  });
  table.rows = std::move(rows);
  return table;
}

/// Construct-and-recover: x1 rotated by `count` stratified angles over
/// [0, 360). Reports the mean registration error and the fraction of pairs
/// whose half-turn ambiguity was resolved (error below 90 degrees).
inline BenchTable run_register_synthetic(const AnalysisConfig& cfg, const Image& x1, int count) {
  Rng rng(derive_seed(cfg.seed, 3));
  const auto gammas = stratified_angles(count, rng, 360.0);
  std::vector<Image> rotated;
  rotated.reserve(gammas.size());
  for (double g : gammas) rotated.push_back(rotate_bilinear(x1, g));

  const std::size_t nm = cfg.methods.size();
  std::vector<FilterBank> banks;
  for (Method m : cfg.methods)
    banks.push_back(make_bank(m, x1.height(), x1.width(), cfg.angles, cfg.cake, cfg.ridge));
  std::vector<std::vector<std::optional<double>>> errors(nm,
                                                         std::vector<std::optional<double>>(gammas.size()));
  parallel_for(nm * gammas.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t b = k / gammas.size();
    const std::size_t j = k % gammas.size();
    try {
      const auto r = register_images(x1, rotated[j], banks[b], cfg.window, cfg.refine);
      errors[b][j] = angular_distance(r.gamma, gammas[j], 360.0);
    } catch (const DegenerateProfileError&) {
    }
  });
  BenchTable table;
  const std::string params = "pairs=" + std::to_string(count) + ";M=" + std::to_string(cfg.angles) +
                             ";seed=" + std::to_string(cfg.seed);
  for (std::size_t b = 0; b < nm; ++b) {
    std::vector<double> err;
    std::vector<double> resolved;
    int failures = 0;
    for (const auto& e : errors[b]) {
      if (!e) {
        ++failures;
        continue;
      }
      err.push_back(*e);
      resolved.push_back(*e < 90.0 ? 1.0 : 0.0);
    }
    table.rows.push_back(detail::report(cfg.methods[b], "registration_error_deg", err, params, failures));
    table.rows.push_back(detail::report(cfg.methods[b], "ambiguity_resolved_fraction", resolved,
                                        params, failures));
  }
  return table;
}

}  // namespace aniso::cli
