#include "chiral_tmm/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <variant>

#include "chiral_tmm/direct.hpp"
#include "chiral_tmm/errors.hpp"

namespace chiral_tmm {

PowerBreakdown powers(const Response& resp) {
  const double incident = resp.incident.squaredNorm();
  if (!(incident > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "incident amplitude must be nonzero");
  }
  PowerBreakdown p;
  p.r_co = std::norm(resp.r_co) / incident;
  p.r_cross = std::norm(resp.r_cross) / incident;
  p.t_co = std::norm(resp.t_co) / incident;
  p.t_cross = std::norm(resp.t_cross) / incident;
  p.r_total = p.r_co + p.r_cross;
  p.t_total = p.t_co + p.t_cross;
  p.conservation_residual = std::abs(p.r_total + p.t_total - 1.0);
  return p;
}

double rotation_angle(const Response& resp) {
  const PowerBreakdown p = powers(resp);
  if (!(p.t_total > kMinRotationTransmission)) {
    std::ostringstream os;
    os << "rotation undefined: transmitted power " << p.t_total << " <= "
       << kMinRotationTransmission;
    throw Error(ErrorKind::NegligibleTransmission, os.str());
  }
  return rad_to_deg(std::atan2(std::abs(resp.t_cross), std::abs(resp.t_co)));
}

const char* to_string(SweepAxis axis) {
  return axis == SweepAxis::Frequency ? "frequency" : "angle";
}

const char* to_string(Engine engine) { return engine == Engine::Cascade ? "cascade" : "direct"; }

void SweepGrid::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); };
  if (count < 1) fail("sweep needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(fixed)) {
    fail("sweep bounds must be finite");
  }
  if (count > 1 && !(stop > start)) fail("sweep stop must exceed start");
  const double lo = start;
  const double hi = count > 1 ? value(count - 1) : start;
  if (axis == SweepAxis::Frequency) {
    if (!(lo > 0.0)) fail("frequencies must be positive");
    if (!(fixed >= 0.0 && fixed < 90.0)) fail("incidence angle must lie in [0, 90) degrees");
  } else {
    if (!(lo >= 0.0 && hi < 90.0)) fail("incidence angles must lie in [0, 90) degrees");
    if (!(fixed > 0.0)) fail("frequency must be positive");
  }
}

double SweepGrid::value(int i) const {
  if (count <= 1) return start;
  const int intervals = include_stop ? count - 1 : count;
  if (include_stop && i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(intervals);
}

SweepGrid frequency_grid(double start_hz, double stop_hz, int count, double theta_deg) {
  SweepGrid g{SweepAxis::Frequency, start_hz, stop_hz, count, true, theta_deg};
  g.validate();
  return g;
}

SweepGrid angle_grid(double start_deg, double stop_deg, int count, double freq_hz,
                     bool include_stop) {
  SweepGrid g{SweepAxis::Angle, start_deg, stop_deg, count, include_stop, freq_hz};
  g.validate();
  return g;
}

Response evaluate(const Stack& stack, double freq_hz, double theta_deg,
                  const Vector2c& incident, Engine engine) {
  const double theta = deg_to_rad(theta_deg);
  if (engine == Engine::Direct) return direct::solve_direct(stack, freq_hz, theta, incident).response;
  return evaluate_cascade(stack, freq_hz, theta, incident);
}

SweepRow make_row(double freq_hz, double theta_deg, const Response& resp) {
  SweepRow row;
  row.frequency_hz = freq_hz;
  row.theta_deg = theta_deg;
  row.power = powers(resp);
  if (row.power.t_total > kMinRotationTransmission) row.rotation_deg = rotation_angle(resp);
  return row;
}

SweepResult run_sweep(const Stack& stack, const SweepGrid& grid, const Vector2c& incident,
                      Engine engine, int threads) {
  grid.validate();
  const int n = grid.count;
  std::vector<std::variant<SweepRow, PointFailure>> slots(static_cast<std::size_t>(n));

  auto work = [&](int i) {
    const double f = grid.frequency_hz(i);
    const double th = grid.theta_deg(i);
    auto& slot = slots[static_cast<std::size_t>(i)];
    try {
      slot = make_row(f, th, evaluate(stack, f, th, incident, engine));
    } catch (const Error& e) {
      slot = PointFailure{i, f, th, to_string(e.kind()), e.what()};
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) work(i);
      });
    }
  }

  SweepResult result;
  result.points = n;
  for (auto& slot : slots) {
    if (auto* row = std::get_if<SweepRow>(&slot)) {
      result.rows.push_back(*row);
    } else {
      result.failures.push_back(std::get<PointFailure>(slot));
    }
  }
  return result;
}

}  // namespace chiral_tmm
