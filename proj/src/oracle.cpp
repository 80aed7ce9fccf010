#include "monolat/oracle.hpp"

#include <cmath>
#include <vector>

namespace monolat::oracle {

std::optional<DualCertificate> brute_force_dual(const ReducedModel& m, const StencilSpec& spec,
                                                double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("brute_force_dual: resolution must be positive");
  const int s = spec.s;
  const double arho = std::fabs(m.rho);
  if (arho == 0.0) return std::nullopt;
  const double z1_max = 2.0 * arho / m.R;
  const double threshold = 2.0 * m.R * arho;

  for (double z1 = resolution; z1 < z1_max; z1 += resolution) {
    double z2_lo = 0.0;
    for (int i = -s; i <= s; ++i) {
      for (int j = -s; j <= s; ++j) {
        if (j == 0) continue;  // i^2 z1 >= 0 holds automatically
        const double need = (2.0 * i * j - static_cast<double>(i) * i * z1) / (static_cast<double>(j) * j);
        z2_lo = std::max(z2_lo, need);
      }
    }
    const double z2_hi = threshold - m.R * m.R * z1;
    if (!(z2_lo < z2_hi)) continue;

    const double z2 = 0.5 * (z2_lo + z2_hi);
    bool ok = z1 >= 0.0 && z2 >= 0.0;
    for (int i = -s; ok && i <= s; ++i)
      for (int j = -s; ok && j <= s; ++j)
        if (static_cast<double>(i) * i * z1 + static_cast<double>(j) * j * z2 - 2.0 * i * j < -1e-12) ok = false;
    if (ok && m.R * m.R * z1 - threshold + z2 < 0.0)
      return DualCertificate{z1, z2, m.rho < 0.0 ? -1 : 1};
  }
  return std::nullopt;
}

namespace {

// Solve the 6x6 system given by the selected columns; false on singularity.
bool solve6(double a[6][6], double b[6], double x[6]) {
  int perm[6] = {0, 1, 2, 3, 4, 5};
  for (int k = 0; k < 6; ++k) {
    int piv = k;
    double best = std::fabs(a[k][k]);
    for (int r = k + 1; r < 6; ++r)
      if (std::fabs(a[r][k]) > best) {
        best = std::fabs(a[r][k]);
        piv = r;
      }
    if (best < 1e-9) return false;
    if (piv != k) {
      for (int c = 0; c < 6; ++c) std::swap(a[k][c], a[piv][c]);
      std::swap(b[k], b[piv]);
      std::swap(perm[k], perm[piv]);
    }
    for (int r = k + 1; r < 6; ++r) {
      const double f = a[r][k] / a[k][k];
      if (f == 0.0) continue;
      for (int c = k; c < 6; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  for (int r = 5; r >= 0; --r) {
    double v = b[r];
    for (int c = r + 1; c < 6; ++c) v -= a[r][c] * x[c];
    x[r] = v / a[r][r];
  }
  return true;
}

}  // namespace

bool exhaustive_small_lp(const ReducedModel& m, const StencilSpec& spec) {
  const int s = spec.s;
  if (s > 2) throw std::invalid_argument("exhaustive_small_lp: tractable only for s <= 2");

  // Columns: off-centre p_ij in (i, j) order, then the scale, then the mass slack.
  struct Col {
    double row[6];
  };
  std::vector<Col> cols;
  for (int i = -s; i <= s; ++i) {
    for (int j = -s; j <= s; ++j) {
      if (i == 0 && j == 0) continue;
      Col c{};
      c.row[0] = static_cast<double>(i) * i;
      c.row[1] = static_cast<double>(j) * j;
      c.row[2] = static_cast<double>(i) * j;
      c.row[3] = i;
      c.row[4] = j;
      c.row[5] = 1.0;
      cols.push_back(c);
    }
  }
  const int scale_col = static_cast<int>(cols.size());
  {
    Col c{};
    c.row[0] = -1.0;
    c.row[1] = -1.0 / (m.R * m.R);
    c.row[2] = -m.rho / m.R;
    cols.push_back(c);  // scale variable
    Col sl{};
    sl.row[5] = 1.0;
    cols.push_back(sl);  // mass slack
  }
  const int n = static_cast<int>(cols.size());
  const double rhs[6] = {0, 0, 0, 0, 0, 1};

  // A vertex with positive scale must carry the scale column in its basis, so
  // only 5-subsets of the remaining columns need enumerating.
  std::vector<int> pick(5);
  for (int i = 0; i < 5; ++i) pick[i] = i;
  const int n_other = n - 1;  // indices skip scale_col via remap below
  auto remap = [&](int idx) { return idx < scale_col ? idx : idx + 1; };

  while (true) {
    double a[6][6], b[6], x[6];
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 5; ++c) a[r][c] = cols[remap(pick[c])].row[r];
      a[r][5] = cols[scale_col].row[r];
      b[r] = rhs[r];
    }
    if (solve6(a, b, x)) {
      bool nonneg = true;
      for (int c = 0; c < 6 && nonneg; ++c)
        if (x[c] < -1e-9) nonneg = false;
      if (nonneg && x[5] > 1e-9) return true;
    }

    int pos = 4;
    while (pos >= 0 && pick[pos] == n_other - (5 - pos)) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int q = pos + 1; q < 5; ++q) pick[q] = pick[q - 1] + 1;
  }
  return false;
}

}  // namespace monolat::oracle
