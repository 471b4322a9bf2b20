#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "chenciner/curves.hpp"
#include "chenciner/diagram.hpp"
#include "chenciner/simulator.hpp"

namespace chenciner {

// All CSV numeric output uses 17 significant digits, enough to round-trip
// any double exactly.
inline std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Long-format table of expansion coefficients: the double value plus the
// exact rational it was derived from.
inline std::string write_curves_csv(const CurveExpansion& b1, const CurveExpansion& b2,
                                    const CurveExpansion& c) {
  std::string out = "name,value,exact\n";
  auto row = [&](const std::string& name, const Rational& r) {
    out += name + "," + fmt17(to_double(r)) + "," + to_exact_string(r) + "\n";
  };
  for (int i = 0; i < 4; ++i) row("c" + std::to_string(i + 1), b1.k[static_cast<size_t>(i)]);
  for (int i = 0; i < 4; ++i) row("d" + std::to_string(i + 1), b2.k[static_cast<size_t>(i)]);
  for (int i = 0; i < 4; ++i) row("m" + std::to_string(i + 1), c.k[static_cast<size_t>(i)]);
  row("gamma", c.gamma);
  row("sigma1", b1.sigma1);
  row("sigma2", b1.sigma2);
  row("m4_minus_c4", c.k[3] - b1.k[3]);
  return out;
}

inline std::string write_trace_csv(const CurveTrace& t) {
  std::string out = "alpha1,alpha2,residual\n";
  for (size_t i = 0; i < t.points.size(); ++i)
    out += fmt17(t.points[i].alpha1) + "," + fmt17(t.points[i].alpha2) + "," +
           fmt17(t.residuals[i]) + "\n";
  return out;
}

inline std::string write_orbit_csv(const OrbitTrace& tr) {
  std::string out = "n,rho,phi,x,y\n";
  for (size_t n = 0; n < tr.states.size(); ++n) {
    const OrbitState& s = tr.states[n];
    out += std::to_string(n) + "," + fmt17(s.rho) + "," + fmt17(s.phi) + "," +
           fmt17(s.x()) + "," + fmt17(s.y()) + "\n";
  }
  return out;
}

// One row per grid cell; region_id left empty for cells on a curve band.
inline std::string write_regions_csv(const DiagramSpec& d) {
  std::string out = "alpha1,alpha2,region_id\n";
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      int r = d.region_at(i, j);
      out += fmt17(d.a1_at(i)) + "," + fmt17(d.a2_at(j)) + "," +
             (r == 0 ? std::string() : std::to_string(r)) + "\n";
    }
  return out;
}

// Writes through a temp file in the same directory, then renames, so
// readers never observe a partial file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f.flush()) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace chenciner
