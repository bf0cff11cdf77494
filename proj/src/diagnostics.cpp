#include "summa/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "summa/error.hpp"

namespace summa {
namespace {

std::string method_at(Method m, std::size_t n, std::string_view what) {
  return std::string(to_string(m)) + ": " + std::string(what) + " at n = " + std::to_string(n);
}

ContractionVerdict classify_ratio(double r, double epsilon) {
  if (r > 1.0 + epsilon) return ContractionVerdict::contracting;
  if (r >= 1.0 - epsilon) return ContractionVerdict::cyclic;
  return ContractionVerdict::violated;
}

double safe_ratio(Method m, double num, double den, std::size_t n) {
  if (den == 0.0) throw DomainError(method_at(m, n, "zero norm in condition ratio"), n);
  return num / den;
}

// Shared body of the gamma/theta/rho conditions. `trace_norm(n)` is the norm
// of the method's trace at index n.
template <typename TraceNorm>
ContractionReport condition_from_norms(Method method, std::span<const double> s_norm,
                                       TraceNorm&& trace_norm, double epsilon) {
  ContractionReport report;
  report.method = method;
  report.epsilon = epsilon;
  const std::size_t N = s_norm.size() - 1;

  if (method == Method::gamma || method == Method::theta) {
    if (N < 1) throw DomainError(std::string(to_string(method)) + ": needs S_0 and S_1", 0);
    report.first_index = 1;
    for (std::size_t n = 1; n <= N; ++n) {
      const double r = safe_ratio(method, trace_norm(n - 1), s_norm[n], n);
      report.ratio_trace.push_back(r);
      report.verdicts.push_back(classify_ratio(r, epsilon));
      if (method == Method::theta && n < N) {
        const auto nd = static_cast<double>(n);
        const double side = (nd + 1.0) * safe_ratio(method, trace_norm(n), s_norm[n + 1], n + 1) -
                            (nd + 2.0) * r;
        report.secondary_trace.push_back(side);
      }
    }
  } else {
    if (N < 3) throw DomainError("rho: contraction condition needs S_0..S_3", 0);
    report.first_index = 2;
    for (std::size_t n = 2; n + 1 <= N; ++n) {
      const double r_s = safe_ratio(method, s_norm[n], s_norm[n + 1], n);
      const double r_rho = safe_ratio(method, trace_norm(n - 1), trace_norm(n), n);
      report.ratio_trace.push_back(r_s);
      report.secondary_trace.push_back(r_rho);
      const auto a = classify_ratio(r_s, epsilon);
      const auto b = classify_ratio(r_rho, epsilon);
      if (a == ContractionVerdict::violated || b == ContractionVerdict::violated) {
        report.verdicts.push_back(ContractionVerdict::violated);
      } else if (a == ContractionVerdict::contracting && b == ContractionVerdict::contracting) {
        report.verdicts.push_back(ContractionVerdict::contracting);
      } else {
        report.verdicts.push_back(ContractionVerdict::cyclic);
      }
    }
  }
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    if (report.verdicts[i] == ContractionVerdict::contracting) {
      report.onset = report.first_index + i;
      break;
    }
  }
  return report;
}

void require_non_sigma(Method method) {
  if (method == Method::sigma) {
    throw ConfigError("contraction_condition covers gamma, theta and rho; use "
                      "contraction_onset_sigma for sigma");
  }
}

}  // namespace

std::string_view to_string(ContractionVerdict v) noexcept {
  switch (v) {
    case ContractionVerdict::contracting: return "contracting";
    case ContractionVerdict::cyclic: return "cyclic";
    case ContractionVerdict::violated: return "violated";
  }
  return "unknown";
}

std::string_view to_string(ClosedFormCase c) noexcept {
  switch (c) {
    case ClosedFormCase::regular: return "regular";
    case ClosedFormCase::ratio_at_least_two: return "ratio_at_least_two";
    case ClosedFormCase::unit_ratio: return "unit_ratio";
    case ClosedFormCase::ratio_below_one: return "ratio_below_one";
    case ClosedFormCase::zero_norm: return "zero_norm";
  }
  return "unknown";
}

std::string_view to_string(CertificateVerdict v) noexcept {
  switch (v) {
    case CertificateVerdict::certified: return "certified";
    case CertificateVerdict::bounds_violated: return "bounds_violated";
    case CertificateVerdict::undefined_theta: return "undefined_theta";
    case CertificateVerdict::tail_not_met: return "tail_not_met";
  }
  return "unknown";
}

InequalityReport pythagorean_check(const PartialSumSequence& s, double relative_slack) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] > 0.0)) {
      throw DomainError("pythagorean check: nonpositive partial sum at index " +
                            std::to_string(k),
                        k);
    }
  }
  InequalityReport report{{},
                          true,
                          compute_means(Method::sigma, s),
                          compute_means(Method::gamma, s),
                          compute_means(Method::theta, s)};
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double th = report.theta.values[n];
    const double ga = report.gamma.values[n];
    const double si = report.sigma.values[n];
    const bool ok = th <= ga * (1.0 + relative_slack) && ga <= si * (1.0 + relative_slack);
    report.holds.push_back(ok);
    report.all_hold = report.all_hold && ok;
  }
  return report;
}

std::pair<std::optional<double>, ClosedFormCase> closed_form_onset(double norm_n,
                                                                   double norm_n_plus_1) {
  if (norm_n == 0.0) return {std::nullopt, ClosedFormCase::zero_norm};
  const double r = norm_n_plus_1 / norm_n;
  if (r >= 2.0) return {0.0, ClosedFormCase::ratio_at_least_two};
  if (r == 1.0) return {std::nullopt, ClosedFormCase::unit_ratio};
  if (r < 1.0) return {0.0, ClosedFormCase::ratio_below_one};
  return {1.0 / (r - 1.0) - 1.0, ClosedFormCase::regular};
}

ContractionReport contraction_onset_sigma(std::span<const double> norms, double delta,
                                          double epsilon) {
  if (norms.empty()) throw DomainError("sigma contraction onset: empty norm trace");
  if (!(delta > 0.0)) throw ConfigError("sigma contraction onset: delta must be > 0");
  for (double v : norms) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("sigma contraction onset: norms must be finite and nonnegative");
    }
  }
  ContractionReport report;
  report.method = Method::sigma;
  report.delta = delta;
  report.epsilon = epsilon;
  report.first_index = 0;

  const std::size_t pairs = norms.size() - 1;
  for (std::size_t n = 0; n < pairs; ++n) {
    const auto nd = static_cast<double>(n);
    report.ratio_trace.push_back(norms[n] == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : norms[n + 1] / norms[n]);
    const double crit = std::abs(norms[n + 1] / (nd + 2.0) - norms[n] / (nd + 1.0));
    report.delta_criterion.push_back(crit);
    if (!report.onset && crit <= delta) report.onset = n;
  }
  for (std::size_t n = 0; n < pairs; ++n) {
    const auto nd = static_cast<double>(n);
    if (!report.onset || n < *report.onset) {
      report.verdicts.push_back(ContractionVerdict::violated);
    } else if ((nd + 1.0) / (nd + 2.0) >= 1.0 - epsilon) {
      report.verdicts.push_back(ContractionVerdict::cyclic);
    } else {
      report.verdicts.push_back(ContractionVerdict::contracting);
    }
  }
  if (pairs == 0) {
    report.closed_form_onset = std::nullopt;
    report.closed_form_case = ClosedFormCase::unit_ratio;
  } else {
    const std::size_t at = report.onset.value_or(pairs - 1);
    std::tie(report.closed_form_onset, report.closed_form_case) =
        closed_form_onset(norms[at], norms[at + 1]);
  }
  return report;
}

ContractionReport contraction_condition(Method method, std::span<const GridFunction> partials,
                                        ContractionOptions options) {
  require_non_sigma(method);
  if (partials.empty()) throw DomainError("contraction condition: no partial sums");
  const std::size_t points = partials.front().size();
  for (const auto& g : partials) {
    if (g.size() != points) throw ConfigError("contraction condition: partial sums on different grids");
  }
  const std::size_t N = partials.size() - 1;
  std::vector<double> s_norm;
  s_norm.reserve(N + 1);
  for (const auto& g : partials) s_norm.push_back(l2_norm(g));

  // trace_values[n][i]: the method's mean at index n, grid point i.
  std::vector<std::vector<double>> trace_values(N + 1, std::vector<double>(points, 0.0));
  for (std::size_t i = 0; i < points; ++i) {
    std::vector<double> column;
    column.reserve(N + 1);
    for (const auto& g : partials) column.push_back(g.values()[i]);
    const auto trace = compute_means(
        method, PartialSumSequence(std::move(column), SeriesOrigin::fourier_grid,
                                   partials.front().grid()[i]),
        options.means);
    for (std::size_t n = trace.first_index; n <= N; ++n) trace_values[n][i] = trace.at(n);
  }
  const auto grid = partials.front().grid();
  std::vector<double> trace_norm(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    trace_norm[n] = l2_norm(GridFunction({grid.begin(), grid.end()}, trace_values[n]));
  }
  return condition_from_norms(method, s_norm, [&](std::size_t n) { return trace_norm[n]; },
                              options.epsilon);
}

ContractionReport contraction_condition(Method method, const PartialSumSequence& s,
                                        ContractionOptions options) {
  require_non_sigma(method);
  const auto trace = compute_means(method, s, options.means);
  std::vector<double> s_norm;
  s_norm.reserve(s.size());
  for (double v : s.values()) s_norm.push_back(std::abs(v));
  return condition_from_norms(method, s_norm,
                              [&](std::size_t n) { return std::abs(trace.at(n)); },
                              options.epsilon);
}

AdmissibleInterval admissible_interval(double s_next, double m) {
  const double root = std::sqrt(s_next * s_next + 4.0 * m * std::abs(s_next));
  return {0.5 * (s_next - root), 0.5 * (s_next + root)};
}

SummabilityCertificate certify_theorem5(const PartialSumSequence& s, CertificateOptions options) {
  const std::size_t N = s.index_max();
  if (N < 1) throw DomainError("certificate: needs at least S_0 and S_1");
  if (options.tail_span < 1) throw ConfigError("certificate: tail span r must be >= 1");

  SummabilityCertificate cert;
  cert.window_last = N;
  cert.tail_span = options.tail_span;
  cert.tail_epsilon = options.tail_epsilon;
  for (double v : s.values()) cert.K = std::max(cert.K, std::abs(v));

  MeanTrace theta;
  try {
    theta = compute_means(Method::theta, s, MeansOptions{options.zero_convention});
  } catch (const DomainError&) {
    cert.verdict = CertificateVerdict::undefined_theta;
    return cert;
  }
  cert.theta = theta.values;
  cert.zero_convention_used = theta.zero_convention_used;

  for (std::size_t n = 0; n < N; ++n) {
    const double th = cert.theta[n];
    const double s_next = s[n + 1];
    double m = 0.0;
    if (s_next == 0.0) {
      cert.flagged_indices.push_back(n);
      m = static_cast<double>(n + 1) * std::abs(th - cert.theta[n + 1]);
    } else {
      m = std::abs(th * (th / s_next - 1.0));
    }
    cert.m_expression.push_back(m);
    cert.M = std::max(cert.M, m);
  }

  bool violated = false;
  std::size_t flag_pos = 0;
  for (std::size_t n = 0; n < N; ++n) {
    const auto iv = admissible_interval(s[n + 1], cert.M);
    cert.bounds.push_back(iv);
    if (flag_pos < cert.flagged_indices.size() && cert.flagged_indices[flag_pos] == n) {
      ++flag_pos;
      cert.contained.emplace_back(std::nullopt);
      continue;
    }
    const double th = cert.theta[n];
    const double slack =
        options.relative_slack * std::max({std::abs(iv.lower), std::abs(iv.upper), std::abs(th)});
    const bool inside = th >= iv.lower - slack && th <= iv.upper + slack;
    cert.contained.emplace_back(inside);
    violated = violated || !inside;
  }

  const std::size_t r = options.tail_span;
  cert.tail_index = options.tail_index.value_or(N >= r ? N - r : 0);
  if (cert.tail_index >= N) {
    throw ConfigError("certificate: tail index must be below the last partial-sum index");
  }
  const std::size_t window_end = std::min(cert.tail_index + r - 1, N - 1);
  cert.tail_window_complete = cert.tail_index + r - 1 <= N - 1;
  for (std::size_t k = cert.tail_index; k <= window_end; ++k) {
    cert.tail_M = std::max(cert.tail_M, cert.m_expression[k]);
  }
  cert.cauchy_bound =
      static_cast<double>(r) * cert.tail_M / static_cast<double>(cert.tail_index + 1);

  if (violated) {
    cert.verdict = CertificateVerdict::bounds_violated;
  } else if (cert.cauchy_bound <= cert.tail_epsilon) {
    cert.verdict = CertificateVerdict::certified;
  } else {
    cert.verdict = CertificateVerdict::tail_not_met;
  }
  return cert;
}

double golden_ratio_selfcheck(double K) {
  if (!(K > 0.0)) throw DomainError("golden ratio self-check: K must be positive");
  const double ratio = admissible_interval(K, K).upper / K;
  if (!(ratio > 1.0)) throw DomainError("golden ratio self-check: bound ratio must exceed 1");
  return ratio;
}

std::vector<ConvergentSeries> default_axiom_corpus() {
  return {
      {"geometric_1/2", [](std::size_t k) { return std::pow(0.5, static_cast<double>(k)); }, 2.0},
      {"geometric_1/3", [](std::size_t k) { return std::pow(1.0 / 3.0, static_cast<double>(k)); },
       1.5},
      {"alternating_1/2", [](std::size_t k) { return std::pow(-0.5, static_cast<double>(k)); },
       2.0 / 3.0},
      {"alternating_1/3",
       [](std::size_t k) { return std::pow(-1.0 / 3.0, static_cast<double>(k)); }, 0.75},
      {"exponential",
       [](std::size_t k) { return std::exp(-std::lgamma(static_cast<double>(k) + 1.0)); },
       std::numbers::e},
  };
}

std::size_t AxiomsReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const auto& f) { return !f.pass; }));
}

AxiomsReport axioms_check(Method method, std::span<const ConvergentSeries> corpus,
                          AxiomsOptions options) {
  const std::size_t n = options.n;
  auto terms_of = [&](const ConvergentSeries& series, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = series.term(k);
    return v;
  };
  auto limit_of = [&](const std::vector<double>& terms) {
    try {
      return compute_means(method, number_series_partials(terms)).at(terms.size() - 1);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  auto record = [](AxiomsReport& rep, std::string axiom, std::string subject, double observed,
                   double expected, double tol) {
    const double dev = std::abs(observed - expected);
    rep.findings.push_back({std::move(axiom), std::move(subject), observed, expected, dev,
                            std::isfinite(dev) && dev <= tol});
  };

  AxiomsReport report;
  report.method = method;
  report.asserted = method == Method::sigma;

  std::vector<std::vector<double>> all_terms;
  std::vector<double> limits;
  for (const auto& series : corpus) {
    all_terms.push_back(terms_of(series, n + 1));
    limits.push_back(limit_of(all_terms.back()));
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& name = corpus[i].name;
    const auto& v = all_terms[i];
    record(report, "regularity", name, limits[i], corpus[i].sum, options.regularity_tol);

    auto scaled = v;
    for (double& t : scaled) t *= options.scale;
    const double expected_scaled = options.scale * limits[i];
    record(report, "homogeneity", name, limit_of(scaled), expected_scaled,
           options.linearity_tol * std::max(1.0, std::abs(expected_scaled)));

    if (options.dropped_index <= n) {
      auto dropped = terms_of(corpus[i], n + 2);
      const double removed = dropped[options.dropped_index];
      dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(options.dropped_index));
      record(report, "stability", name, limit_of(dropped), limits[i] - removed,
             options.stability_tol);
    }
  }
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    auto sum = all_terms[i];
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += all_terms[i + 1][k];
    const double expected = limits[i] + limits[i + 1];
    record(report, "additivity", corpus[i].name + "+" + corpus[i + 1].name, limit_of(sum),
           expected, options.linearity_tol * std::max(1.0, std::abs(expected)));
  }
  return report;
}

}  // namespace summa
