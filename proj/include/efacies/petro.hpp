#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/curve_set.hpp"
#include "efacies/error.hpp"

namespace efacies {

enum class PercentMode { automatic, yes, no };

/// Density-neutron constants. Defaults: limestone matrix, fresh-water fluid.
struct PetroParams {
    double rho_ma = 2.71;  // g/cm3
    double rho_f = 1.0;    // g/cm3
    std::string rhoz_mnemonic = "RHOZ";
    std::string nphi_mnemonic = "NPHI";
    /// NPHI in percent units is divided by 100; `automatic` follows the curve unit.
    PercentMode nphi_percent = PercentMode::automatic;

    void validate() const {
        if (!(rho_f > 0 && rho_ma > rho_f)) {
            throw ConfigError("petro parameters need rho_ma > rho_f > 0");
        }
    }
};

inline double density_porosity(double rho_b, const PetroParams& p) {
    return (p.rho_ma - rho_b) / (p.rho_ma - p.rho_f);
}

/// NPHI is taken as porosity directly (limestone units).
inline double neutron_porosity(double nphi) { return nphi; }

inline double average_porosity(double phi_d, double phi_n) { return (phi_d + phi_n) / 2.0; }

/// Raw (unclamped) porosities per depth. `clipped[i]` marks samples where
/// phi_d or phi_n lies outside [0, 1]; missing samples have `missing[i]` set
/// and hold 0 in the value arrays.
struct PorosityProfile {
    std::vector<double> depth;
    std::vector<double> phi_d;
    std::vector<double> phi_n;
    std::vector<double> phi_avg;
    std::vector<bool> phi_d_missing;
    std::vector<bool> phi_n_missing;
    std::vector<bool> clipped;

    std::size_t size() const { return depth.size(); }
    bool avg_missing(std::size_t i) const { return phi_d_missing[i] || phi_n_missing[i]; }

    std::string to_csv() const {
        CsvWriter w({"depth", "phi_d", "phi_n", "phi_avg", "clipped"});
        for (std::size_t i = 0; i < size(); ++i) {
            w.row({format_double(depth[i]), phi_d_missing[i] ? "" : format_double(phi_d[i]),
                   phi_n_missing[i] ? "" : format_double(phi_n[i]),
                   avg_missing(i) ? "" : format_double(phi_avg[i]), clipped[i] ? "1" : "0"});
        }
        return w.str();
    }
};

inline bool is_percent_unit(const std::string& unit) {
    return unit == "%" || iequals(unit, "PU") || iequals(unit, "PERCENT");
}

inline PorosityProfile porosity_profile(const CurveSet& cs, const PetroParams& p) {
    p.validate();
    const Curve& rhoz = cs.at(p.rhoz_mnemonic);
    const Curve& nphi = cs.at(p.nphi_mnemonic);
    const bool percent = p.nphi_percent == PercentMode::yes ||
                         (p.nphi_percent == PercentMode::automatic && is_percent_unit(nphi.unit));
    const double nphi_divisor = percent ? 100.0 : 1.0;

    PorosityProfile pp;
    const std::size_t n = cs.rows();
    pp.depth.assign(cs.depth().begin(), cs.depth().end());
    pp.phi_d.assign(n, 0.0);
    pp.phi_n.assign(n, 0.0);
    pp.phi_avg.assign(n, 0.0);
    pp.phi_d_missing.assign(n, false);
    pp.phi_n_missing.assign(n, false);
    pp.clipped.assign(n, false);
    auto outside = [](double v) { return v < 0.0 || v > 1.0; };
    for (std::size_t i = 0; i < n; ++i) {
        pp.phi_d_missing[i] = rhoz.is_missing(i);
        pp.phi_n_missing[i] = nphi.is_missing(i);
        if (!pp.phi_d_missing[i]) pp.phi_d[i] = density_porosity(rhoz.values[i], p);
        if (!pp.phi_n_missing[i]) pp.phi_n[i] = neutron_porosity(nphi.values[i] / nphi_divisor);
        if (!pp.avg_missing(i)) pp.phi_avg[i] = average_porosity(pp.phi_d[i], pp.phi_n[i]);
        pp.clipped[i] = (!pp.phi_d_missing[i] && outside(pp.phi_d[i])) ||
                        (!pp.phi_n_missing[i] && outside(pp.phi_n[i]));
    }
    return pp;
}

}  // namespace efacies
