#include "catprobe/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace catprobe {

namespace {

constexpr complex imag_unit{0.0, 1.0};

struct VacuumSector {
  std::vector<std::vector<int>> occupations;          // index -> occupation vector
  std::vector<std::vector<int>> raise_index;          // [m][j] -> index of m + e_j, or -1
  std::vector<std::vector<int>> lower_index;          // [m][j] -> index of m - e_j, or -1

  static VacuumSector build(int n_modes, int cap) {
    VacuumSector s;
    std::vector<int> occ(n_modes, 0);
    std::map<std::vector<int>, int> lookup;
    // lexicographic enumeration; the all-zero vector comes first
    enumerate(occ, 0, cap, s.occupations);
    for (size_t m = 0; m < s.occupations.size(); ++m) lookup[s.occupations[m]] = static_cast<int>(m);
    s.raise_index.assign(s.occupations.size(), std::vector<int>(n_modes, -1));
    s.lower_index.assign(s.occupations.size(), std::vector<int>(n_modes, -1));
    for (size_t m = 0; m < s.occupations.size(); ++m) {
      for (int j = 0; j < n_modes; ++j) {
        std::vector<int> up = s.occupations[m];
        up[j] += 1;
        auto it = lookup.find(up);
        if (it != lookup.end()) s.raise_index[m][j] = it->second;
        if (s.occupations[m][j] > 0) {
          std::vector<int> dn = s.occupations[m];
          dn[j] -= 1;
          s.lower_index[m][j] = lookup.at(dn);
        }
      }
    }
    return s;
  }

 private:
  static void enumerate(std::vector<int>& occ, int mode, int budget,
                        std::vector<std::vector<int>>& out) {
    if (mode == static_cast<int>(occ.size())) {
      out.push_back(occ);
      return;
    }
    for (int n = 0; n <= budget; ++n) {
      occ[mode] = n;
      enumerate(occ, mode + 1, budget - n, out);
    }
    occ[mode] = 0;
  }
};

struct FockSpace {
  int kappa = 0;
  int n_kappa_levels = 0;            // occupied-mode levels 0..n_max
  std::vector<int> vacuum_modes;     // retained modes except kappa
  VacuumSector sector;
  long dim = 0;

  long index(int p, int q, int n, int m) const {
    return ((static_cast<long>(p) * 2 + q) * n_kappa_levels + n) * sector.occupations.size() + m;
  }
};

std::vector<complex> coherent_ladder(complex amp, int levels) {
  std::vector<complex> c(levels);
  c[0] = std::exp(-0.5 * std::norm(amp));
  for (int n = 1; n < levels; ++n) c[n] = c[n - 1] * amp / std::sqrt(static_cast<double>(n));
  return c;
}

// -i H(t) psi, scatter form.
void rhs(const FockSpace& fs, const ProbeConfig& probe, const QubitConfig& qubit,
         const CavityConfig& cavity, double t, const std::vector<complex>& psi,
         std::vector<complex>& out) {
  std::fill(out.begin(), out.end(), complex{0.0, 0.0});

  const int n_modes = static_cast<int>(fs.vacuum_modes.size()) + 1;  // +1 for kappa
  // Per-mode stage coefficients: vertex factor for probe/qubit raise/lower
  // and field phases.
  std::vector<complex> field_up(n_modes), probe_raise(n_modes), probe_lower(n_modes),
      qubit_raise(n_modes), qubit_lower(n_modes);
  const complex probe_phase = std::exp(imag_unit * (probe.gap * t));
  const complex qubit_phase = std::exp(imag_unit * (qubit.gap * t));
  for (int j = 0; j < n_modes; ++j) {
    const int mode = (j == 0) ? fs.kappa : fs.vacuum_modes[j - 1];
    const double w = cavity.mode_frequency(mode);
    const double root = std::sqrt(static_cast<double>(mode) * pi);
    const double u = std::sin(cavity.wavenumber(mode) * probe.speed * t) / root;
    const double wq = std::sin(cavity.wavenumber(mode) * qubit.position) / root;
    field_up[j] = std::exp(imag_unit * (w * t));
    probe_raise[j] = probe.coupling * u * probe_phase;
    probe_lower[j] = probe.coupling * u * std::conj(probe_phase);
    qubit_raise[j] = qubit.coupling * wq * qubit_phase;
    qubit_lower[j] = qubit.coupling * wq * std::conj(qubit_phase);
  }

  const int nk = fs.n_kappa_levels;
  const long nv = static_cast<long>(fs.sector.occupations.size());

  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      for (int n = 0; n < nk; ++n) {
        const long base = fs.index(p, q, n, 0);
        for (long m = 0; m < nv; ++m) {
          const complex c = psi[base + m];
          if (c == complex{0.0, 0.0}) continue;

          // the two vertices: probe spin flip and qubit spin flip
          for (int vertex = 0; vertex < 2; ++vertex) {
            const int pp = (vertex == 0) ? 1 - p : p;
            const int qq = (vertex == 0) ? q : 1 - q;
            for (int j = 0; j < n_modes; ++j) {
              complex vfac;
              if (vertex == 0)
                vfac = (p == 0) ? probe_raise[j] : probe_lower[j];
              else
                vfac = (q == 0) ? qubit_raise[j] : qubit_lower[j];
              if (vfac == complex{0.0, 0.0}) continue;
              const complex coupling = -imag_unit * vfac * c;

              if (j == 0) {
                if (n + 1 < nk)
                  out[fs.index(pp, qq, n + 1, 0) + m] +=
                      coupling * field_up[j] * std::sqrt(static_cast<double>(n + 1));
                if (n > 0)
                  out[fs.index(pp, qq, n - 1, 0) + m] +=
                      coupling * std::conj(field_up[j]) * std::sqrt(static_cast<double>(n));
              } else {
                const int vj = j - 1;
                const int up = fs.sector.raise_index[m][vj];
                const int dn = fs.sector.lower_index[m][vj];
                const int occ = fs.sector.occupations[m][vj];
                if (up >= 0)
                  out[fs.index(pp, qq, n, 0) + up] +=
                      coupling * field_up[j] * std::sqrt(static_cast<double>(occ + 1));
                if (dn >= 0)
                  out[fs.index(pp, qq, n, 0) + dn] +=
                      coupling * std::conj(field_up[j]) * std::sqrt(static_cast<double>(occ));
              }
            }
          }
        }
      }
    }
  }
}

double norm_of(const std::vector<complex>& v) {
  double s = 0.0;
  for (const complex& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

int FockTruncation::recommended_n_max(double amp_sum) {
  const double a = std::ceil(amp_sum);
  return static_cast<int>(std::ceil(amp_sum * amp_sum) + 8.0 * a + 8.0);
}

FockTruncation FockTruncation::recommended(const BellCatState& state, const CavityConfig& cavity) {
  FockTruncation t;
  t.n_max = recommended_n_max(std::abs(state.alpha) + std::abs(state.beta));
  const int k = cavity.resonant_mode;
  for (int m = std::max(1, k - 3); m <= k + 3; ++m) t.modes.push_back(m);
  for (int m = k + 4; m <= 8; ++m) t.modes.push_back(m);
  return t;
}

OracleResult fock_evolve(const BellCatState& state, const ProbeConfig& probe,
                         const QubitConfig& qubit, const CavityConfig& cavity,
                         const FockTruncation& trunc, int steps) {
  const int kappa = cavity.resonant_mode;
  std::vector<int> modes = trunc.modes;
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  if (std::find(modes.begin(), modes.end(), kappa) == modes.end())
    throw oracle_error("retained modes must include the resonant mode");
  if (trunc.require_neighborhood) {
    for (int m = std::max(1, kappa - 3); m <= kappa + 3; ++m)
      if (std::find(modes.begin(), modes.end(), m) == modes.end())
        throw oracle_error("retained modes must cover kappa +- 3 (mode " + std::to_string(m) +
                           " missing)");
  }
  const double t_total = probe.transit_time(cavity);
  const double lt = std::max(std::abs(probe.coupling), std::abs(qubit.coupling)) * t_total;
  if (lt > 0.1 + 1e-12) throw oracle_error("oracle regime requires lambda T <= 0.1");
  if (std::abs(state.alpha) > 2.0 + 1e-12 || std::abs(state.beta) > 2.0 + 1e-12)
    throw oracle_error("oracle regime requires |alpha|, |beta| <= 2");
  const int needed = FockTruncation::recommended_n_max(std::abs(state.alpha) + std::abs(state.beta));
  if (trunc.n_max < needed)
    throw oracle_error("n_max below the coherent-ladder requirement " + std::to_string(needed));

  FockSpace fs;
  fs.kappa = kappa;
  fs.n_kappa_levels = trunc.n_max + 1;
  for (int m : modes)
    if (m != kappa) fs.vacuum_modes.push_back(m);
  fs.sector = VacuumSector::build(static_cast<int>(fs.vacuum_modes.size()),
                                  trunc.vacuum_total_cap);
  fs.dim = 4L * fs.n_kappa_levels * static_cast<long>(fs.sector.occupations.size());

  // initial state  |g_p> (A |g_q, alpha> + B |e_q, beta>) |vac>
  std::vector<complex> psi(fs.dim, complex{0.0, 0.0});
  const std::vector<complex> ladder_a = coherent_ladder(state.alpha, fs.n_kappa_levels);
  const std::vector<complex> ladder_b = coherent_ladder(state.beta, fs.n_kappa_levels);
  for (int n = 0; n < fs.n_kappa_levels; ++n) {
    psi[fs.index(0, 0, n, 0)] = state.amp_ground * ladder_a[n];
    psi[fs.index(0, 1, n, 0)] = state.amp_excited * ladder_b[n];
  }
  const std::vector<complex> psi0 = psi;
  const double norm0 = norm_of(psi0);

  // RK4
  std::vector<complex> k1(fs.dim), k2(fs.dim), k3(fs.dim), k4(fs.dim), tmp(fs.dim);
  const double h = t_total / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    rhs(fs, probe, qubit, cavity, t, psi, k1);
    for (long i = 0; i < fs.dim; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
    rhs(fs, probe, qubit, cavity, t + 0.5 * h, tmp, k2);
    for (long i = 0; i < fs.dim; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
    rhs(fs, probe, qubit, cavity, t + 0.5 * h, tmp, k3);
    for (long i = 0; i < fs.dim; ++i) tmp[i] = psi[i] + h * k3[i];
    rhs(fs, probe, qubit, cavity, t + h, tmp, k4);
    for (long i = 0; i < fs.dim; ++i)
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  OracleResult r;
  r.overlap = complex{0.0, 0.0};
  for (long i = 0; i < fs.dim; ++i) r.overlap += std::conj(psi0[i]) * psi[i];

  for (int q = 0; q < 2; ++q)
    for (int n = 0; n < fs.n_kappa_levels; ++n)
      for (long m = 0; m < static_cast<long>(fs.sector.occupations.size()); ++m)
        r.p_excite += std::norm(psi[fs.index(1, q, n, 0) + m]);

  complex rq[2][2] = {};
  for (int p = 0; p < 2; ++p)
    for (int qa = 0; qa < 2; ++qa)
      for (int qb = 0; qb < 2; ++qb)
        for (int n = 0; n < fs.n_kappa_levels; ++n)
          for (long m = 0; m < static_cast<long>(fs.sector.occupations.size()); ++m)
            rq[qa][qb] += psi[fs.index(p, qa, n, 0) + m] * std::conj(psi[fs.index(p, qb, n, 0) + m]);
  r.rho_q.gg = rq[0][0];
  r.rho_q.ge = rq[0][1];
  r.rho_q.eg = rq[1][0];
  r.rho_q.ee = rq[1][1];
  r.rho_q.hermiticity_residual = std::abs(rq[0][1] - std::conj(rq[1][0]));

  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int n = fs.n_kappa_levels - 2; n < fs.n_kappa_levels; ++n)
        for (long m = 0; m < static_cast<long>(fs.sector.occupations.size()); ++m)
          r.report.top_level_population += std::norm(psi[fs.index(p, q, n, 0) + m]);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int n = 0; n < fs.n_kappa_levels; ++n)
        for (long m = 0; m < static_cast<long>(fs.sector.occupations.size()); ++m) {
          int total = 0;
          for (int occ : fs.sector.occupations[m]) total += occ;
          if (total == trunc.vacuum_total_cap)
            r.report.cap_sector_population += std::norm(psi[fs.index(p, q, n, 0) + m]);
        }
  r.report.norm_drift = std::abs(norm_of(psi) - norm0);
  r.report.steps = steps;
  r.report.dimension = fs.dim;
  if (r.report.norm_drift > 1e-9)
    throw oracle_error("integrator norm drift " + std::to_string(r.report.norm_drift) +
                       " exceeds 1e-9; increase steps");
  return r;
}

OracleResult fock_evolve_adaptive(const BellCatState& state, const ProbeConfig& probe,
                                  const QubitConfig& qubit, const CavityConfig& cavity,
                                  const FockTruncation& trunc, double overlap_tol,
                                  int initial_steps, int max_steps) {
  OracleResult prev = fock_evolve(state, probe, qubit, cavity, trunc, initial_steps);
  for (int steps = initial_steps * 2; steps <= max_steps; steps *= 2) {
    OracleResult next = fock_evolve(state, probe, qubit, cavity, trunc, steps);
    if (std::abs(next.overlap - prev.overlap) < overlap_tol) return next;
    prev = next;
  }
  throw oracle_error("overlap did not converge within the step budget");
}

}  // namespace catprobe
