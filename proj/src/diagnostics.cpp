#include "lcflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "lcflow/errors.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/norms.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {

namespace {

// |f|^2 at node i for a C-component field.
template <int C>
double mag_sq(const Field<C>& f, std::size_t i) {
  double s = 0.0;
  for (int c = 0; c < C; ++c) s += f(c, i) * f(c, i);
  return s;
}

void require_unit(const VectorField& d, double tol, const char* where) {
  const double err = kernels::unit_length_error(d);
  if (!(err <= tol)) {
    std::ostringstream m;
    m << where << " requires a unit director; max ||d|-1| = " << err;
    throw PreconditionError(m.str());
  }
}

// Pointwise |grad^2 d|, assembled from the six distinct second derivatives
// of each component.
ScalarField hessian_magnitude(const SpectralField<3>& d_hat) {
  const Grid& g = d_hat.grid();
  static constexpr int kPairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  SpectralField<18> second(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    for (int c = 0; c < 3; ++c) {
      for (int p = 0; p < 6; ++p) {
        second(6 * c + p, idx) = -k[kPairs[p][0]] * k[kPairs[p][1]] * d_hat(c, idx);
      }
    }
  });
  const Field<18> h = inverse(second);
  ScalarField mag(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (int p = 0; p < 6; ++p) {
        const double v = h(6 * c + p, i);
        sq += (p < 3 ? 1.0 : 2.0) * v * v;
      }
    }
    mag(0, i) = std::sqrt(sq);
  }
  return mag;
}

}  // namespace

DiagnosticsRecord measure(const State& s, const FrankConstants& c) {
  const Grid& g = s.grid();
  const auto u_hat = forward(s.u);
  const auto d_hat = forward(s.d);
  const TensorField grad_u = inverse(spec::gradient(u_hat));
  const TensorField grad_d = inverse(spec::gradient(d_hat));
  const ScalarField hess_d = hessian_magnitude(d_hat);

  TensorField wp(g);
  VectorField wd(g);
  ScalarField w(g);
  kernels::frank_terms(s.d, grad_d, c, wp, wd, &w);

  const Tendencies rates = tendencies(s, c);

  DiagnosticsRecord r;
  r.t = s.t;
  const double u_sq = inner(s.u, s.u);
  r.e_kin = 0.5 * u_sq;
  r.e_frank = integrate(w);
  r.e_total = r.e_kin + r.e_frank;
  const double grad_u_sq = spec::l2_norm_sq(u_hat, 1);
  const double grad_d_sq = spec::l2_norm_sq(d_hat, 1);
  const double hess_d_sq = spec::l2_norm_sq(d_hat, 2);
  r.d_visc = grad_u_sq;
  r.d_dir = inner(rates.h_tangent, rates.h_tangent);

  r.l2_u = std::sqrt(u_sq);
  r.l2_grad_d = std::sqrt(grad_d_sq);
  r.l2_grad_u = std::sqrt(grad_u_sq);
  r.l2_hess_d = std::sqrt(hess_d_sq);
  r.h1_u = std::sqrt(u_sq + grad_u_sq);
  r.h1_grad_d = std::sqrt(grad_d_sq + hess_d_sq);
  r.m_instant = (r.l2_u + r.l2_grad_d) * (r.l2_grad_u + r.l2_hess_d);
  r.m_running = r.m_instant;
  r.lyap0 = u_sq + grad_d_sq + 2.0 * r.e_frank;
  r.lyap1 = grad_u_sq + hess_d_sq;
  r.blowup_ind = u_sq + grad_u_sq + grad_d_sq + hess_d_sq;
  r.unit_err = kernels::unit_length_error(s.d);
  r.div_err = max_magnitude(inverse(spec::divergence(u_hat)));

  r.l2_hess_u = std::sqrt(spec::l2_norm_sq(u_hat, 2));
  r.l2_grad3_d = std::sqrt(spec::l2_norm_sq(d_hat, 3));

  ScalarField first(g), second(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double low = mag_sq(s.u, i) + mag_sq(grad_d, i);
    const double hess = hess_d(0, i) * hess_d(0, i);
    first(0, i) = low * hess_d(0, i);
    second(0, i) = low * (mag_sq(grad_u, i) + hess);
  }
  r.q_first = integrate(first);
  r.q_second = integrate(second);

  const auto d_rate_hat = forward(rates.d_t);
  const auto u_rate_hat = forward(rates.u_t);
  r.rate_grad_d = 2.0 * spec::inner_product(d_hat, d_rate_hat, 1);
  r.rate_lyap1 = 2.0 * (spec::inner_product(u_hat, u_rate_hat, 1) +
                        spec::inner_product(d_hat, d_rate_hat, 2));

  r.holder_max = std::max({holder_ratio(s.u), holder_ratio(grad_d), holder_ratio(grad_u),
                           holder_ratio(hess_d)});
  r.sobolev_u = r.l2_grad_u > 0.0 ? lp_norm(s.u, 6.0) / r.l2_grad_u : 0.0;
  r.sobolev_grad_d = r.l2_hess_d > 0.0 ? lp_norm(grad_d, 6.0) / r.l2_hess_d : 0.0;
  return r;
}

double energy_balance_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& cur,
                               double dt) {
  if (!(dt > 0.0)) throw ConfigError("energy_balance_residual needs dt > 0");
  return (cur.e_total - prev.e_total) / dt +
         0.5 * (prev.d_visc + prev.d_dir) + 0.5 * (cur.d_visc + cur.d_dir);
}

double m_of_t(std::span<const DiagnosticsRecord> history) {
  if (history.empty()) throw ConfigError("m_of_t needs a non-empty history");
  double m = 0.0;
  for (const auto& r : history) m = std::max(m, r.m_instant);
  return m;
}

MonotonicityVerdict check_non_increasing(std::span<const double> times,
                                         std::span<const double> values, double rel_rate) {
  MonotonicityVerdict v;
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double scale = std::max(std::abs(values[i - 1]), std::abs(values[i]));
    const double slack = rel_rate * (times[i] - times[i - 1]) * scale + kRoundoff * scale;
    if (values[i] > values[i - 1] + slack) {
      v.monotone = false;
      v.violated_at = times[i];
      break;
    }
  }
  return v;
}

LyapunovVerdict lyapunov_check(std::span<const DiagnosticsRecord> history, double residual_tol) {
  std::vector<double> t, l0, l1;
  for (const auto& r : history) {
    t.push_back(r.t);
    l0.push_back(r.lyap0);
    l1.push_back(r.lyap1);
  }
  return {check_non_increasing(t, l0, residual_tol), check_non_increasing(t, l1, residual_tol)};
}

namespace {
double first_lhs(const DiagnosticsRecord& r, const FrankConstants& c) {
  return r.rate_grad_d + 2.0 * ellipticity_constant(c) * r.l2_hess_d * r.l2_hess_d;
}
double second_lhs(const DiagnosticsRecord& r, const FrankConstants& c) {
  return r.rate_lyap1 + r.l2_hess_u * r.l2_hess_u +
         1.5 * ellipticity_constant(c) * r.l2_grad3_d * r.l2_grad3_d;
}

template <class Lhs, class Rhs>
double calibrate(std::span<const DiagnosticsRecord> history, Lhs lhs, Rhs rhs) {
  double best = 0.0;
  for (const auto& r : history) {
    const double l = lhs(r);
    const double q = rhs(r);
    if (q > 0.0) {
      best = std::max(best, l / q);
    } else if (l > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return best;
}
}  // namespace

double first_order_inequality_gap(const DiagnosticsRecord& r, const FrankConstants& c,
                                  double constant) {
  return first_lhs(r, c) - constant * r.q_first;
}

double second_order_inequality_gap(const DiagnosticsRecord& r, const FrankConstants& c,
                                   double constant) {
  return second_lhs(r, c) - constant * r.q_second;
}

double calibrate_first_order_constant(std::span<const DiagnosticsRecord> history,
                                      const FrankConstants& c) {
  return calibrate(
      history, [&](const DiagnosticsRecord& r) { return first_lhs(r, c); },
      [](const DiagnosticsRecord& r) { return r.q_first; });
}

double calibrate_second_order_constant(std::span<const DiagnosticsRecord> history,
                                       const FrankConstants& c) {
  return calibrate(
      history, [&](const DiagnosticsRecord& r) { return second_lhs(r, c); },
      [](const DiagnosticsRecord& r) { return r.q_second; });
}

double blowup_indicator(const DiagnosticsRecord& r) {
  return r.l2_u * r.l2_u + r.l2_grad_u * r.l2_grad_u + r.l2_grad_d * r.l2_grad_d +
         r.l2_hess_d * r.l2_hess_d;
}

std::optional<std::size_t> blowup_flag(std::span<const DiagnosticsRecord> history,
                                       double factor) {
  if (history.empty()) return std::nullopt;
  const double threshold = factor * std::max(blowup_indicator(history.front()), 1e-300);
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (blowup_indicator(history[i]) > threshold) return i;
  }
  return std::nullopt;
}

double unit_identity_check(const VectorField& d) {
  require_unit(d, 1e-8, "unit_identity_check");
  const Grid& g = d.grid();
  const auto d_hat = forward(d);
  const TensorField grad_d = inverse(spec::gradient(d_hat));
  const VectorField lap = inverse(spec::laplacian(d_hat));
  ScalarField defect(g), grad_sq(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gs = mag_sq(grad_d, i);
    grad_sq(0, i) = gs;
    defect(0, i) = gs + d(0, i) * lap(0, i) + d(1, i) * lap(1, i) + d(2, i) * lap(2, i);
  }
  const double denom = lp_norm(grad_sq, 2.0);
  if (denom == 0.0) return 0.0;
  return lp_norm(defect, 2.0) / denom;
}

double one_constant_reduction_check(const VectorField& d, double k) {
  require_unit(d, 1e-8, "one_constant_reduction_check");
  const FrankConstants c = FrankConstants::one_constant(k);
  const Grid& g = d.grid();
  const TensorField grad_d = gradient(d);
  TensorField wp(g);
  VectorField wd(g);
  ScalarField w(g);
  kernels::frank_terms(d, grad_d, c, wp, wd, &w);
  const double dirichlet = k * inner(grad_d, grad_d);
  if (dirichlet == 0.0) return 0.0;
  return std::abs(integrate(w) - dirichlet) / dirichlet;
}

// CSV ------------------------------------------------------------------------

std::array<double, 17> csv_values(const DiagnosticsRecord& r) {
  return {r.t,       r.e_kin,     r.e_frank,   r.e_total,   r.d_visc,     r.d_dir,
          r.balance_residual,     r.l2_u,      r.l2_grad_d, r.l2_grad_u,  r.l2_hess_d,
          r.m_running, r.lyap0,   r.lyap1,     r.blowup_ind, r.unit_err,  r.div_err};
}

void write_csv_header(std::ostream& os) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    os << (i ? "," : "") << kCsvColumns[i];
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  const auto v = csv_values(r);
  char buf[40];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    os << (i ? "," : "") << buf;
  }
  os << '\n';
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV ledger");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
  }
  if (table.columns.size() != kCsvColumns.size() ||
      !std::equal(table.columns.begin(), table.columns.end(), kCsvColumns.begin())) {
    throw IoError("CSV header does not match the diagnostics ledger columns");
  }
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 17> row{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= row.size()) {
        throw IoError("CSV line " + std::to_string(line_no) + " has too many cells");
      }
      try {
        std::size_t used = 0;
        row[col] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError("CSV line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
      }
      ++col;
    }
    if (col != row.size()) {
      throw IoError("CSV line " + std::to_string(line_no) + " has " + std::to_string(col) +
                    " cells, expected " + std::to_string(row.size()));
    }
    table.rows.push_back(row);
  }
  return table;
}

// Monitor ----------------------------------------------------------------------

Monitor::Monitor(FrankConstants c, MonitorOptions opts, std::ostream* csv)
    : c_(c), opts_(opts), csv_(csv) {
  if (csv_ != nullptr) write_csv_header(*csv_);
}

bool Monitor::observe(const State& s, long /*step_index*/) {
  DiagnosticsRecord r = measure(s, c_);
  if (!history_.empty()) {
    const DiagnosticsRecord& prev = history_.back();
    if (r.t > prev.t) r.balance_residual = energy_balance_residual(prev, r, r.t - prev.t);
    r.m_running = std::max(prev.m_running, r.m_instant);
  }
  history_.push_back(r);
  if (csv_ != nullptr) write_csv_row(*csv_, r);
  if (!blowup_at_) {
    const double threshold =
        opts_.blowup_factor * std::max(blowup_indicator(history_.front()), 1e-300);
    if (blowup_indicator(r) > threshold) blowup_at_ = history_.size() - 1;
  }
  return !blowup_at_.has_value();
}

std::optional<double> Monitor::blowup_time() const {
  if (!blowup_at_) return std::nullopt;
  return history_[*blowup_at_].t;
}

double Monitor::max_relative_residual() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < history_.size(); ++i) {
    const auto& r = history_[i];
    const double scale = std::max(r.e_total, r.d_visc + r.d_dir);
    if (scale > 0.0) worst = std::max(worst, std::abs(r.balance_residual) / scale);
    else if (r.balance_residual != 0.0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

std::string Monitor::summary_json(const RunSummary& run) const {
  using nlohmann::json;
  json j;
  j["termination"] = blowup_at_ ? std::string("blow_up_suspect") : run.termination;
  if (!run.message.empty()) j["message"] = run.message;
  j["steps"] = run.steps;
  j["rejected_steps"] = run.rejected_steps;
  j["t_final"] = run.t_final;
  j["records"] = history_.size();

  json ranges = json::object();
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& r : history_) {
      const double v = csv_values(r)[c];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ranges[std::string(kCsvColumns[c])] = history_.empty() ? json{} : json{{"min", lo}, {"max", hi}};
  }
  j["columns"] = ranges;

  const LyapunovVerdict v = lyapunov_check(history_, opts_.residual_tol);
  auto verdict_json = [](const MonotonicityVerdict& m) {
    json o{{"monotone", m.monotone}};
    if (m.violated_at) o["violated_at"] = *m.violated_at;
    return o;
  };
  j["lyapunov"] = {{"lyap0", verdict_json(v.lyap0)}, {"lyap1", verdict_json(v.lyap1)}};

  auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  j["calibrated_constants"] = {
      {"first_order", finite_or_null(calibrate_first_order_constant(history_, c_))},
      {"second_order", finite_or_null(calibrate_second_order_constant(history_, c_))}};
  j["max_relative_balance_residual"] = finite_or_null(max_relative_residual());
  j["blowup"] = {{"factor", opts_.blowup_factor}, {"suspect", blowup_at_.has_value()}};
  if (auto t = blowup_time()) j["blowup"]["t"] = *t;

  double holder = 0.0, sob_u_lo = std::numeric_limits<double>::infinity(), sob_u_hi = 0.0;
  double sob_d_lo = sob_u_lo, sob_d_hi = 0.0;
  for (const auto& r : history_) {
    holder = std::max(holder, r.holder_max);
    if (r.sobolev_u > 0.0) {
      sob_u_lo = std::min(sob_u_lo, r.sobolev_u);
      sob_u_hi = std::max(sob_u_hi, r.sobolev_u);
    }
    if (r.sobolev_grad_d > 0.0) {
      sob_d_lo = std::min(sob_d_lo, r.sobolev_grad_d);
      sob_d_hi = std::max(sob_d_hi, r.sobolev_grad_d);
    }
  }
  j["holder_ratio_max"] = holder;
  j["sobolev_ratio"] = {{"u", {finite_or_null(sob_u_lo), sob_u_hi}},
                        {"grad_d", {finite_or_null(sob_d_lo), sob_d_hi}}};
  if (!history_.empty()) {
    j["m0"] = history_.front().m_instant;
    j["blowup_growth"] = history_.front().blowup_ind > 0.0
                             ? json(std::max_element(history_.begin(), history_.end(),
                                                     [](const auto& a, const auto& b) {
                                                       return a.blowup_ind < b.blowup_ind;
                                                     })->blowup_ind /
                                    history_.front().blowup_ind)
                             : json(nullptr);
  }
  return j.dump(2);
}

}  // namespace lcflow
