#include "gps/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <thread>

namespace gps {

Real hulthen_exact_s(int n, Real delta) {
  if (n < 1 || !(delta > 0)) throw std::invalid_argument("hulthen_exact_s: need n >= 1, delta > 0");
  const Real n2 = Real(n) * n;
  const Real gap = 2 / delta - n2;
  if (gap < 0) {
    throw NoBoundStateError("hulthen_exact_s: no " + std::to_string(n) +
                            "s bound state at delta = " + std::to_string(double(delta)));
  }
  return -(delta * delta / (8 * n2)) * gap * gap;
}

Real critical_screening_estimate(int n, int ell) {
  if (n < 1 || ell < 0 || ell >= n) {
    throw std::invalid_argument("critical_screening_estimate: need 0 <= l < n");
  }
  const Real denom = n * std::sqrt(Real(2)) + 0.1645L * ell + 0.0983L * ell / n;
  return 1 / (denom * denom);
}

Real s_state_critical(int n) {
  if (n < 1) throw std::invalid_argument("s_state_critical: need n >= 1");
  return Real(2) / (Real(n) * n);
}

namespace {

struct DecimalDigits {
  bool negative = false;
  std::string digits;  // significant digits, no leading zeros
  int exponent = 0;    // value = 0.d1d2d3... * 10^(exponent + 1)
  bool zero = true;
};

// Exact decimal expansion: a long double has at most a few thousand
// significant decimal digits, and glibc prints them exactly.
DecimalDigits expand(Real value) {
  if (!std::isfinite(value)) throw std::invalid_argument("truncate: non-finite value");
  DecimalDigits out;
  out.negative = std::signbit(value) && value != 0;
  if (value == 0) return out;
  out.zero = false;
  std::vector<char> buf(6000);
  std::snprintf(buf.data(), buf.size(), "%.5000Le", std::abs(value));
  const std::string s(buf.data());
  const auto e = s.find('e');
  out.exponent = std::stoi(s.substr(e + 1));
  out.digits.reserve(e);
  for (std::size_t i = 0; i < e; ++i) {
    if (s[i] != '.') out.digits.push_back(s[i]);
  }
  while (out.digits.size() > 1 && out.digits.back() == '0') out.digits.pop_back();
  return out;
}

// Positional string from the first `count` digits starting at the leading one.
std::string positional(const DecimalDigits& d, std::size_t keep, int min_places) {
  std::string kept = d.digits.substr(0, std::min(keep, d.digits.size()));
  std::string out;
  if (d.exponent < 0) {
    out = "0." + std::string(-d.exponent - 1, '0') + kept;
    const int places = static_cast<int>(out.size()) - 2;
    if (places < min_places) out.append(min_places - places, '0');
  } else {
    const std::size_t int_len = d.exponent + 1;
    if (kept.size() < int_len) kept.append(int_len - kept.size(), '0');
    out = kept.substr(0, int_len);
    std::string frac = kept.substr(int_len);
    if (static_cast<int>(frac.size()) < min_places) frac.append(min_places - frac.size(), '0');
    if (!frac.empty()) out += "." + frac;
  }
  bool all_zero = true;
  for (char c : out) all_zero = all_zero && (c == '0' || c == '.');
  return (d.negative && !all_zero ? "-" : "") + out;
}

}  // namespace

std::string truncate_digits(Real value, int digits) {
  if (digits < 1) throw std::invalid_argument("truncate_digits: digits must be >= 1");
  const auto d = expand(value);
  if (d.zero) return "0";
  // Pad to `digits` significant figures so the width matches the request.
  DecimalDigits padded = d;
  if (padded.digits.size() < static_cast<std::size_t>(digits)) {
    padded.digits.append(digits - padded.digits.size(), '0');
  }
  return positional(padded, digits, 0);
}

std::string truncate_places(Real value, int places) {
  if (places < 0) throw std::invalid_argument("truncate_places: places must be >= 0");
  const auto d = expand(value);
  if (d.zero) return places == 0 ? "0" : "0." + std::string(places, '0');
  const long keep = static_cast<long>(d.exponent) + 1 + places;
  if (keep <= 0) return (places == 0 ? "0" : "0." + std::string(places, '0'));
  return positional(d, static_cast<std::size_t>(keep), places);
}

int stable_digits(Real a, Real b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return 0;
  const std::string sa = truncate_places(a, kMaxStableDigits);
  const std::string sb = truncate_places(b, kMaxStableDigits);
  const auto dot_a = sa.find('.');
  const auto dot_b = sb.find('.');
  if (sa.substr(0, dot_a) != sb.substr(0, dot_b)) return 0;
  int count = 0;
  for (std::size_t i = dot_a + 1; i < sa.size() && i < sb.size() && sa[i] == sb[i]; ++i) ++count;
  return count;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<Real> ConvergenceReport::first_converged_r_max(std::size_t state) const {
  for (std::size_t row = 0; row < r_max_values.size(); ++row) {
    if (row_digits[row][state] >= target_digits) return r_max_values[row];
  }
  return std::nullopt;
}

std::size_t ConvergenceReport::row_of(Real r_max) const {
  for (std::size_t row = 0; row < r_max_values.size(); ++row) {
    if (r_max_values[row] == r_max) return row;
  }
  throw std::out_of_range("convergence report has no row for r_max = " +
                          std::to_string(double(r_max)));
}

ConvergenceReport converge_r_max(const PotentialSpec& potential,
                                 const std::vector<std::pair<int, int>>& states,
                                 const std::vector<Real>& r_max_schedule, int target_digits,
                                 const SolverParams& params) {
  if (r_max_schedule.empty()) throw std::invalid_argument("converge_r_max: empty schedule");
  if (!std::is_sorted(r_max_schedule.begin(), r_max_schedule.end()) ||
      std::adjacent_find(r_max_schedule.begin(), r_max_schedule.end()) != r_max_schedule.end()) {
    throw std::invalid_argument("converge_r_max: schedule must be strictly increasing");
  }
  std::map<int, int> max_n_per_ell;
  for (auto [n, ell] : states) {
    if (ell < 0 || n < ell + 1) throw std::invalid_argument("converge_r_max: bad (n, l)");
    max_n_per_ell[ell] = std::max(max_n_per_ell[ell], n);
  }

  const std::size_t rows = r_max_schedule.size();
  const std::vector<std::pair<int, int>> channels(max_n_per_ell.begin(), max_n_per_ell.end());
  std::vector<std::vector<std::vector<Real>>> levels(rows,
                                                     std::vector<std::vector<Real>>(channels.size()));
  parallel_for(rows * channels.size(), [&](std::size_t job) {
    const std::size_t row = job / channels.size();
    const std::size_t ch = job % channels.size();
    SolverParams p = params;
    p.r_max = r_max_schedule[row];
    levels[row][ch] = bound_energies({potential, channels[ch].first}, p, channels[ch].second);
  });

  ConvergenceReport rep;
  rep.r_max_values = r_max_schedule;
  rep.states = states;
  rep.target_digits = target_digits;
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  rep.energies.assign(rows, std::vector<Real>(states.size(), nan));
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const auto [n, ell] = states[s];
      const std::size_t ch = std::distance(
          channels.begin(), std::find_if(channels.begin(), channels.end(),
                                         [ell = ell](auto c) { return c.first == ell; }));
      const auto& e = levels[row][ch];
      const std::size_t k = n - ell - 1;
      if (k < e.size()) rep.energies[row][s] = e[k];
    }
  }

  rep.row_digits.assign(rows, std::vector<int>(states.size(), 0));
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t row = 0; row < rows; ++row) {
      if (rows == 1) break;
      const std::size_t other = row + 1 < rows ? row + 1 : row - 1;
      rep.row_digits[row][s] = stable_digits(rep.energies[row][s], rep.energies[other][s]);
    }

    std::optional<std::size_t> best;
    Real best_spread = std::numeric_limits<Real>::infinity();
    for (std::size_t row = 0; row < rows; ++row) {
      const Real e = rep.energies[row][s];
      if (std::isnan(e)) continue;
      Real spread = 0;
      bool has_neighbour = false;
      for (std::size_t other : {row - 1, row + 1}) {
        if (other >= rows || std::isnan(rep.energies[other][s])) continue;
        spread = std::max(spread, std::abs(e - rep.energies[other][s]));
        has_neighbour = true;
      }
      if (!has_neighbour) spread = std::numeric_limits<Real>::max();
      if (spread < best_spread) {
        best_spread = spread;
        best = row;
      }
    }
    if (best) {
      const std::size_t row = *best;
      int digits = kMaxStableDigits;
      bool any = false;
      for (std::size_t other : {row - 1, row + 1}) {
        if (other >= rows || std::isnan(rep.energies[other][s])) continue;
        digits = std::min(digits, stable_digits(rep.energies[row][s], rep.energies[other][s]));
        any = true;
      }
      rep.recommended_r_max.push_back(r_max_schedule[row]);
      rep.recommended_energy.push_back(rep.energies[row][s]);
      rep.stable_digits.push_back(any ? digits : 0);
    } else {
      rep.recommended_r_max.push_back(std::nullopt);
      rep.recommended_energy.push_back(nan);
      rep.stable_digits.push_back(0);
    }
    rep.converged.push_back(rep.stable_digits.back() >= target_digits);
  }
  return rep;
}

std::optional<Real> SweepResult::energy(std::size_t index, int n, int ell) const {
  for (const auto& level : levels.at(index)) {
    if (level.n == n && level.ell == ell) return level.energy;
  }
  return std::nullopt;
}

SweepResult sweep_screening(Family family, int n_max, const std::vector<Real>& screening_values,
                            const SolverParams& params) {
  if (screening_values.empty()) throw std::invalid_argument("sweep_screening: empty grid");
  if (n_max < 1) throw std::invalid_argument("sweep_screening: n_max must be >= 1");
  SweepResult out;
  out.screening_values = screening_values;
  const std::size_t channels = n_max;
  std::vector<std::vector<Real>> energies(screening_values.size() * channels);
  parallel_for(energies.size(), [&](std::size_t job) {
    const Real s = screening_values[job / channels];
    const int ell = static_cast<int>(job % channels);
    energies[job] = bound_energies({{family, 1, s}, ell}, params, n_max);
  });
  for (std::size_t i = 0; i < screening_values.size(); ++i) {
    std::vector<SweepLevel> row;
    for (std::size_t ell = 0; ell < channels; ++ell) {
      const auto& e = energies[i * channels + ell];
      for (std::size_t k = 0; k < e.size(); ++k) {
        const int n = static_cast<int>(ell + 1 + k);
        row.push_back({spectroscopic_label(n, static_cast<int>(ell)), n, static_cast<int>(ell), e[k]});
      }
    }
    std::sort(row.begin(), row.end(),
              [](const SweepLevel& a, const SweepLevel& b) {
                return a.n != b.n ? a.n < b.n : a.ell < b.ell;
              });
    out.levels.push_back(std::move(row));
  }
  return out;
}

}  // namespace gps
