#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcflow/dynamics.hpp"
#include "lcflow/frank_energy.hpp"

namespace lcflow {

/// One row of the energy ledger. All integrals are equal-weight quadratures
/// over the periodic box; seminorms are computed spectrally.
struct DiagnosticsRecord {
  double t = 0.0;
  double e_kin = 0.0;            // 1/2 ||u||^2
  double e_frank = 0.0;          // int W(d, grad d)
  double e_total = 0.0;
  double d_visc = 0.0;           // ||grad u||^2
  double d_dir = 0.0;            // ||h - (h.d)d||^2 = ||d_t + (u.grad)d||^2
  double balance_residual = 0.0; // 0 on the first record of a run
  double l2_u = 0.0;
  double l2_grad_d = 0.0;
  double l2_grad_u = 0.0;
  double l2_hess_d = 0.0;
  double h1_u = 0.0;
  double h1_grad_d = 0.0;
  double m_instant = 0.0;        // (||u|| + ||grad d||)(||grad u|| + ||grad^2 d||)
  double m_running = 0.0;        // running sup of m_instant
  double lyap0 = 0.0;            // int |u|^2 + |grad d|^2 + 2W
  double lyap1 = 0.0;            // int |grad u|^2 + |grad^2 d|^2
  double blowup_ind = 0.0;       // ||u||_{H1}^2 + ||grad d||_{H1}^2
  double unit_err = 0.0;         // max ||d| - 1|
  double div_err = 0.0;          // max |div u|

  // Not part of the CSV ledger.
  double l2_hess_u = 0.0;
  double l2_grad3_d = 0.0;
  double q_first = 0.0;          // int (|u|^2 + |grad d|^2) |grad^2 d|
  double q_second = 0.0;         // int (|u|^2 + |grad d|^2)(|grad u|^2 + |grad^2 d|^2)
  double rate_grad_d = 0.0;      // d/dt ||grad d||^2 from the director RHS
  double rate_lyap1 = 0.0;       // d/dt lyap1 from both RHS
  double holder_max = 0.0;       // max discrete Hoelder ratio over u, grad d, grad u, grad^2 d
  double sobolev_u = 0.0;        // ||u||_6 / ||grad u||_2 (0 if undefined)
  double sobolev_grad_d = 0.0;   // ||grad d||_6 / ||grad^2 d||_2
};

/// Instantaneous diagnostics of a state. balance_residual is left at 0 and
/// m_running equals m_instant; the Monitor fills both from the history.
DiagnosticsRecord measure(const State& s, const FrankConstants& c);

/// Trapezoidal defect of the energy balance between two records:
/// (E(cur) - E(prev)) / dt + (D(prev) + D(cur)) / 2, D = d_visc + d_dir.
/// Throws ConfigError when dt <= 0.
double energy_balance_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& cur,
                               double dt);

/// Running supremum of m_instant over the history. Throws ConfigError if empty.
double m_of_t(std::span<const DiagnosticsRecord> history);

struct MonotonicityVerdict {
  bool monotone = true;
  std::optional<double> violated_at;  // time of the first increase beyond slack
};

struct LyapunovVerdict {
  MonotonicityVerdict lyap0;
  MonotonicityVerdict lyap1;
  bool monotone() const { return lyap0.monotone && lyap1.monotone; }
};

/// Non-increase check of a sequence sampled at `times`: values[i] may exceed
/// values[i-1] by at most rel_rate * (times[i] - times[i-1]) * max(values[i-1],
/// values[i]) plus round-off.
MonotonicityVerdict check_non_increasing(std::span<const double> times,
                                         std::span<const double> values, double rel_rate);

/// Applies check_non_increasing to lyap0 and lyap1 with rel_rate = residual_tol.
LyapunovVerdict lyapunov_check(std::span<const DiagnosticsRecord> history, double residual_tol);

/// d/dt ||grad d||^2 + 2a ||grad^2 d||^2 - C * int (|u|^2 + |grad d|^2)|grad^2 d|.
double first_order_inequality_gap(const DiagnosticsRecord& r, const FrankConstants& c,
                                  double constant);
/// d/dt lyap1 + ||grad^2 u||^2 + 3/2 a ||grad^3 d||^2
///   - C * int (|u|^2 + |grad d|^2)(|grad u|^2 + |grad^2 d|^2).
double second_order_inequality_gap(const DiagnosticsRecord& r, const FrankConstants& c,
                                   double constant);

/// Smallest C making the corresponding gap <= 0 on every record; records with
/// zero right-hand side and non-positive left-hand side are skipped. Returns
/// +inf if some record has a positive left side with zero right side.
double calibrate_first_order_constant(std::span<const DiagnosticsRecord> history,
                                      const FrankConstants& c);
double calibrate_second_order_constant(std::span<const DiagnosticsRecord> history,
                                       const FrankConstants& c);

double blowup_indicator(const DiagnosticsRecord& r);

/// Index of the first record whose indicator exceeds factor * (first indicator),
/// if any. A zero initial indicator makes any positive growth beyond 1e-300 fire.
std::optional<std::size_t> blowup_flag(std::span<const DiagnosticsRecord> history, double factor);

/// || |grad d|^2 + d . Delta d ||_2 / || |grad d|^2 ||_2, 0 when both vanish.
/// Requires max||d|-1| <= 1e-8 (PreconditionError otherwise).
double unit_identity_check(const VectorField& d);

/// |int W_k(d, grad d) - k ||grad d||^2| / (k ||grad d||^2) for the
/// one-constant density, 0 when ||grad d|| = 0. Requires max||d|-1| <= 1e-8.
double one_constant_reduction_check(const VectorField& d, double k);

// CSV ledger ---------------------------------------------------------------

inline constexpr std::array<std::string_view, 17> kCsvColumns = {
    "t",         "e_kin",     "e_frank", "e_total", "d_visc",     "d_dir",
    "balance_residual", "l2_u", "l2_grad_d", "l2_grad_u", "l2_hess_d", "m",
    "lyap0",     "lyap1",     "blowup_ind", "unit_err", "div_err"};

std::array<double, 17> csv_values(const DiagnosticsRecord& r);
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRecord& r);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::array<double, 17>> rows;
};
/// Parses a ledger. Throws IoError on a wrong header, a short or long row,
/// or a non-numeric cell.
CsvTable read_csv(std::istream& is);

// Run monitor ----------------------------------------------------------------

struct MonitorOptions {
  double residual_tol = 1e-3;
  double blowup_factor = 1e3;
};

/// StateObserver that measures each reported state, completes the history
/// dependent fields, optionally streams CSV rows, and stops the run when the
/// blow-up indicator grows past blowup_factor.
class Monitor : public StateObserver {
 public:
  Monitor(FrankConstants c, MonitorOptions opts, std::ostream* csv = nullptr);

  bool observe(const State& s, long step_index) override;

  const std::vector<DiagnosticsRecord>& history() const { return history_; }
  bool blowup_suspect() const { return blowup_at_.has_value(); }
  std::optional<double> blowup_time() const;

  /// Largest |balance_residual| / max(e_total, d_visc + d_dir) over the run.
  double max_relative_residual() const;

  /// Run summary as a JSON document (termination, column ranges, verdicts,
  /// calibrated constants).
  std::string summary_json(const RunSummary& run) const;

 private:
  FrankConstants c_;
  MonitorOptions opts_;
  std::ostream* csv_;
  std::vector<DiagnosticsRecord> history_;
  std::optional<std::size_t> blowup_at_;
};

}  // namespace lcflow
