#include "qscatter/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "qscatter/closed_form.hpp"
#include "qscatter/observables.hpp"
#include "qscatter/oracle.hpp"

namespace qscatter {

std::vector<DimensionlessPoint> sample_points(std::size_t n, std::uint64_t seed, ModelKind model) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_omega = [&]() {
    const double pick = unit(rng);
    if (pick < 0.05) return 0.0;
    if (pick < 0.5) return 20.0 * unit(rng);
    return 1e-3 * std::pow(2e4, unit(rng));  // log-uniform on [1e-3, 20]
  };
  std::vector<DimensionlessPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DimensionlessPoint p;
    p.omega_a = draw_omega();
    p.omega_b = draw_omega();
    p.phase = std::numbers::pi * unit(rng);
    p.model = model;
    pts.push_back(p);
  }
  return pts;
}

cplx sigma_by_series(double omega_self, double omega_other, double phase, int terms) {
  const SiteCoefficients self = site_coefficients(omega_self, ModelKind::HeisenbergContact);
  const SiteCoefficients other = site_coefficients(omega_other, ModelKind::HeisenbergContact);
  const cplx e2 = std::polar(1.0, 2.0 * phase);
  const cplx step = self.r * other.r_same * e2;
  cplx term = self.f * self.f * other.r_same * e2;
  cplx sum = 0.0;
  for (int j = 0; j < terms; ++j) {
    sum += term;
    term *= step;
  }
  return sum;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

struct Tracker {
  CheckResult result;
  void observe(double dev, const DimensionlessPoint& p) {
    if (!(dev <= result.max_deviation)) {  // NaN counts as worst
      result.max_deviation = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
      result.worst = p;
    }
  }
};

int series_terms(double omega_self, double omega_other) {
  const SiteCoefficients self = site_coefficients(omega_self, ModelKind::HeisenbergContact);
  const SiteCoefficients other = site_coefficients(omega_other, ModelKind::HeisenbergContact);
  const double q = std::abs(self.r * other.r_same);
  if (q == 0.0) return 50;
  const double needed = std::ceil(std::log(1e-18) / std::log(q));
  return static_cast<int>(std::clamp(needed, 50.0, 1e7));
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  const AmplitudeFunction closed = opts.closed_form
                                       ? opts.closed_form
                                       : AmplitudeFunction([](const CheckedPoint& p) { return amplitudes(p); });
  VerifyReport rep;
  for (ModelKind model : opts.models) {
    const auto make = [&](const char* name) {
      Tracker t;
      t.result.name = name;
      t.result.model = model;
      return t;
    };
    Tracker agree = make("oracle_vs_closed_form");
    Tracker flux_closed = make("unitarity_closed_form");
    Tracker flux_oracle = make("unitarity_oracle");
    Tracker continuity = make("oracle_continuity");
    Tracker sides = make("side_symmetry");
    Tracker closure = make("closure");
    Tracker scalar = make("scalar_formulas");
    Tracker dressed = make("dressed_series");

    for (const DimensionlessPoint& raw : sample_points(opts.samples, opts.seed, model)) {
      const CheckedPoint pt = validate(raw);
      const AmplitudeSet cf = closed(pt);
      const oracle::MatchingSolution sol = oracle::solve_matching_system(pt);

      agree.observe(cf.max_deviation(sol.amplitudes), raw);
      flux_closed.observe(std::abs(cf.flux() - 1.0), raw);
      flux_oracle.observe(std::abs(sol.amplitudes.flux() - 1.0), raw);
      double jump = 0.0;
      for (Channel c : kChannels) {
        for (oracle::Site s : {oracle::Site::A, oracle::Site::B}) {
          const oracle::SiteValues v = oracle::wave_at_site(pt, sol, c, s);
          jump = std::max(jump, std::abs(v.left - v.right));
        }
      }
      continuity.observe(jump, raw);

      const ObservableSet obs = observables_from(cf);
      if (model == ModelKind::SpinExchange) {
        sides.observe(std::max(std::abs(obs.concurrence_t - obs.concurrence_r),
                               std::abs(obs.probability_t - obs.probability_r)),
                      raw);
        closure.observe(std::abs(std::norm(cf.t_noflip) + std::norm(cf.r_noflip) + 2.0 * obs.probability_t - 1.0),
                        raw);
        const double s2 = std::pow(std::sin(pt.phase()), 2);
        double dev = std::abs(obs.probability_t - spin_exchange::probability(pt.omega_a(), pt.omega_b(), s2));
        if (obs.concurrence_t_defined) {
          dev = std::max(dev, std::abs(obs.concurrence_t - spin_exchange::concurrence(pt.omega_a(), pt.omega_b(), s2)));
        }
        scalar.observe(dev, raw);
      } else {
        const DressedCoefficients dc = dressed_coefficients(pt);
        const cplx sa = sigma_by_series(pt.omega_a(), pt.omega_b(), pt.phase(), series_terms(pt.omega_a(), pt.omega_b()));
        const cplx sb = sigma_by_series(pt.omega_b(), pt.omega_a(), pt.phase(), series_terms(pt.omega_b(), pt.omega_a()));
        dressed.observe(std::max(std::abs(dc.sigma_a - sa), std::abs(dc.sigma_b - sb)), raw);
      }
    }

    std::vector<Tracker*> used = {&agree, &flux_closed, &flux_oracle, &continuity};
    if (model == ModelKind::SpinExchange) {
      used.insert(used.end(), {&sides, &closure, &scalar});
    } else {
      used.push_back(&dressed);
    }
    for (Tracker* t : used) {
      t->result.passed = t->result.max_deviation < opts.tolerance;
      rep.checks.push_back(t->result);
    }
  }
  return rep;
}

void print_report(std::ostream& os, const VerifyReport& rep, double tolerance) {
  const auto old_prec = os.precision(17);
  for (const CheckResult& c : rep.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << to_string(c.model) << ' ' << c.name << " max_dev=" << c.max_deviation
       << " tol=" << tolerance << '\n';
    if (!c.passed) {
      os << "  worst point: omega_a=" << c.worst.omega_a << " omega_b=" << c.worst.omega_b
         << " phase=" << c.worst.phase << '\n';
    }
  }
  os << (rep.passed() ? "verification passed" : "verification FAILED") << '\n';
  os.precision(old_prec);
}

}  // namespace qscatter
